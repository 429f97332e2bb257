"""
Strategy profiles as directed request relations, the unilateral and
bilateral final-graph maps, essentiality and deviations S + A - D.
"""

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Callable, Iterable, Iterator

from error import get_logger, NotEssential, SelfRequest, UnknownVertex
from graph_core import Graph, canonical_edge, vertex_pairs
log = get_logger()

Request = tuple[int, int]


class FormationRule(Enum):
    UNILATERAL = "ulf"
    BILATERAL = "blf"


@dataclass(frozen=True)
class StrategyProfile:
    """
    Requests (v, w) mean player v asks for the link to w.
    """
    n: int
    requests: frozenset[Request]

    def __post_init__(self):
        if not isinstance(self.requests, frozenset):
            object.__setattr__(self, "requests", frozenset(self.requests))
        if not isinstance(self.n, int) or self.n < 1:
            raise UnknownVertex(f"player count must be >= 1, got {self.n!r}")
        for v, w in self.requests:
            if v == w:
                raise SelfRequest(f"player {v} requests itself")
            for p in (v, w):
                if not isinstance(p, int) or not 0 <= p < self.n:
                    raise UnknownVertex(f"player id {p!r} outside 0..{self.n - 1}")

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "StrategyProfile":
        return cls(n, frozenset((int(v), int(w)) for v, w in pairs))

    def targets(self, v: int) -> frozenset[int]:
        return frozenset(w for u, w in self.requests if u == v)

    def request_count(self, v: int) -> int:
        return sum(1 for u, _ in self.requests if u == v)

    def sorted_requests(self) -> list[Request]:
        return sorted(self.requests)


@lru_cache(maxsize=1 << 16)
def final_graph(s: StrategyProfile, rule: FormationRule) -> Graph:
    if rule is FormationRule.UNILATERAL:
        edges = {canonical_edge(v, w) for v, w in s.requests}
    else:
        edges = {canonical_edge(v, w) for v, w in s.requests
                 if (w, v) in s.requests}
    return Graph(s.n, frozenset(edges))


def is_essential(s: StrategyProfile, rule: FormationRule) -> bool:
    if rule is FormationRule.UNILATERAL:
        return not any((w, v) in s.requests for v, w in s.requests)
    return all((w, v) in s.requests for v, w in s.requests)


def require_essential(s: StrategyProfile, rule: FormationRule) -> None:
    if not is_essential(s, rule):
        raise NotEssential(
            f"profile is not essential for the {rule.value} rule")


def essentialize(s: StrategyProfile, rule: FormationRule) -> StrategyProfile:
    """
    Drops unnecessary (ULF) or useless (BLF) requests. Under ULF a doubly
    requested link is kept for the player with the smaller id.
    """
    if rule is FormationRule.UNILATERAL:
        kept = {(v, w) for v, w in s.requests
                if (w, v) not in s.requests or v < w}
    else:
        kept = {(v, w) for v, w in s.requests if (w, v) in s.requests}
    return StrategyProfile(s.n, frozenset(kept))


def apply_deviation(s: StrategyProfile, v: int, add: Iterable[int] = (),
                    drop: Iterable[int] = ()) -> StrategyProfile:
    add, drop = frozenset(add), frozenset(drop)
    if v in add:
        raise SelfRequest(f"player {v} cannot request itself")
    if add & drop:
        raise ValueError(f"targets {sorted(add & drop)} both added and dropped")
    requests = (s.requests - {(v, w) for w in drop}) | {(v, w) for w in add}
    return StrategyProfile(s.n, requests)


def to_bilateral(s: StrategyProfile) -> StrategyProfile:
    """Symmetrises requests so the bilateral graph equals the unilateral one."""
    return StrategyProfile(s.n, s.requests | {(w, v) for v, w in s.requests})


def profile_from_graph(g: Graph, rule: FormationRule,
                       owner: Callable[[int, int], int] | None = None) -> StrategyProfile:
    """
    Essential profile with final graph g. Under ULF, owner(u, v) picks who
    requests edge (u, v), u < v; by default the smaller id.
    """
    if rule is FormationRule.BILATERAL:
        requests = {r for u, v in g.edges for r in ((u, v), (v, u))}
        return StrategyProfile(g.n, frozenset(requests))
    requests = set()
    for u, v in g.edges:
        o = u if owner is None else owner(u, v)
        requests.add((o, v if o == u else u))
    return StrategyProfile(g.n, frozenset(requests))


def unilateral_profile_count(n: int) -> int:
    return 3 ** len(vertex_pairs(n))


def unilateral_profile_from_index(n: int, index: int) -> StrategyProfile:
    """Base-3 digit i: 0 no link, 1 the smaller id owns, 2 the larger id owns."""
    requests = set()
    for u, v in vertex_pairs(n):
        index, digit = divmod(index, 3)
        if digit == 1:
            requests.add((u, v))
        elif digit == 2:
            requests.add((v, u))
    return StrategyProfile(n, frozenset(requests))


def iter_unilateral_profiles(n: int, start: int = 0,
                             stop: int | None = None) -> Iterator[StrategyProfile]:
    stop = unilateral_profile_count(n) if stop is None else stop
    for index in range(start, stop):
        yield unilateral_profile_from_index(n, index)


__all__ = [
    "Request", "FormationRule", "StrategyProfile", "final_graph",
    "is_essential", "require_essential", "essentialize", "apply_deviation",
    "to_bilateral", "profile_from_graph", "unilateral_profile_count",
    "unilateral_profile_from_index", "iter_unilateral_profiles",
]
