"""
Adversaries map a connected graph to an exact probability distribution
over the edge that gets deleted: the simple-minded adversary picks an
edge uniformly, the smart one picks uniformly among the edges of maximum
separation, and a custom adversary is a table bound to one graph.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, NamedTuple

from error import (
    get_logger, DisconnectedInput, EmptyGraph, InvalidTable,
)
from graph_core import (
    Edge, Graph, bridge_tree, canonical_edge, is_connected, sep,
)
log = get_logger()


class AdversaryKind(Enum):
    SIMPLE_MINDED = "simple"
    SMART = "smart"
    CUSTOM = "custom"


@dataclass(frozen=True)
class AdversarySpec:
    kind: AdversaryKind
    table: tuple[tuple[Edge, Fraction], ...] = ()

    @classmethod
    def custom(cls, probs: Mapping[tuple[int, int], Fraction | int | str]) -> "AdversarySpec":
        table = {}
        for e, p in probs.items():
            ce = canonical_edge(*e)
            if ce in table:
                raise InvalidTable(f"edge {ce} listed twice")
            table[ce] = Fraction(p)
        return cls(AdversaryKind.CUSTOM, tuple(sorted(table.items())))

    @property
    def label(self) -> str:
        return self.kind.value


SIMPLE_MINDED = AdversarySpec(AdversaryKind.SIMPLE_MINDED)
SMART = AdversarySpec(AdversaryKind.SMART)


@dataclass(frozen=True)
class EdgeDistribution:
    """Probabilities per edge, sorted by edge; zero entries may be present."""
    probs: tuple[tuple[Edge, Fraction], ...]

    def prob(self, e: tuple[int, int]) -> Fraction:
        ce = canonical_edge(*e)
        for edge, p in self.probs:
            if edge == ce:
                return p
        return Fraction(0)

    def support(self) -> frozenset[Edge]:
        return frozenset(e for e, p in self.probs if p > 0)

    def as_dict(self) -> dict[Edge, Fraction]:
        return dict(self.probs)


class CriticalEdges(NamedTuple):
    edges: frozenset[Edge]
    sep_max: int
    m_max: int


def critical_edges(g: Graph) -> CriticalEdges:
    """Edges of maximum separation; every edge when g is bridgeless."""
    if not is_connected(g):
        raise DisconnectedInput("critical_edges needs a connected graph")
    seps = {e: sep(g, e) for e in g.edges}
    sep_max = max(seps.values(), default=0)
    found = frozenset(e for e, s in seps.items() if s == sep_max)
    return CriticalEdges(found, sep_max, len(found))


def critical_edges_form_star(g: Graph) -> bool:
    """
    With at least two critical bridges, all of them share one node of
    the bridge tree. Trivially true otherwise.
    """
    crit = critical_edges(g)
    if crit.m_max < 2 or crit.sep_max == 0:
        return True
    tree = bridge_tree(g)
    ends = [{i, j} for i, j, bridge in tree.tree_edges if bridge in crit.edges]
    return bool(set.intersection(*ends))


def _validated_table(spec: AdversarySpec, g: Graph) -> dict[Edge, Fraction]:
    """A table is bound to one graph: its edges must be exactly g's edges."""
    table = dict(spec.table)
    missing, extra = sorted(g.edges - table.keys()), sorted(table.keys() - g.edges)
    if missing or extra:
        raise InvalidTable(
            f"table edges differ from the graph: missing {missing}, not in the graph {extra}")
    for e in sorted(table):
        if table[e] < 0:
            raise InvalidTable(f"negative probability {table[e]} on {e}")
    total = sum(table.values(), Fraction(0))
    if total != 1:
        raise InvalidTable(f"table probabilities sum to {total}, not 1")
    return table


@lru_cache(maxsize=1 << 18)
def distribution(spec: AdversarySpec, g: Graph) -> EdgeDistribution:
    if g.m == 0:
        raise EmptyGraph("the adversary needs at least one edge")
    if not is_connected(g):
        raise DisconnectedInput("the adversary acts on connected graphs only")

    if spec.kind is AdversaryKind.SIMPLE_MINDED:
        share = Fraction(1, g.m)
        probs = {e: share for e in g.edges}
    elif spec.kind is AdversaryKind.SMART:
        crit = critical_edges(g)
        share = Fraction(1, crit.m_max)
        probs = {e: (share if e in crit.edges else Fraction(0)) for e in g.edges}
    else:
        probs = _validated_table(spec, g)
    return EdgeDistribution(tuple(sorted(probs.items())))


def is_symmetric_on(spec: AdversarySpec, g: Graph) -> bool:
    """True iff edges of equal separation get equal probability."""
    dist = distribution(spec, g).as_dict()
    by_sep: dict[int, set[Fraction]] = {}
    for e in g.edges:
        by_sep.setdefault(sep(g, e), set()).add(dist.get(e, Fraction(0)))
    return all(len(values) == 1 for values in by_sep.values())


__all__ = [
    "AdversaryKind", "AdversarySpec", "SIMPLE_MINDED", "SMART",
    "EdgeDistribution", "CriticalEdges", "critical_edges",
    "critical_edges_form_star", "distribution", "is_symmetric_on",
]
