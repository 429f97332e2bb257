"""
Exact individual, disconnection, building and social cost.

C_v(S) = |S_v| * alpha + I_v(G(S)), where I_v is the expected number of
vertices v loses when the adversary deletes one edge. I_v is infinite
when G(S) is disconnected.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

from adversary import AdversarySpec, EdgeDistribution, distribution
from error import (
    get_logger, DistributionMismatch, InconsistentCost, NonPositiveAlpha,
    UnknownVertex,
)
from graph_core import Graph, is_connected, rel, sep
from strategy import FormationRule, StrategyProfile, final_graph, require_essential
log = get_logger()


class Infinite:
    """
    The cost of a disconnected network. Larger than every rational and
    absorbing under addition.
    """
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __hash__(self):
        return hash("inf")

    def __eq__(self, other):
        return isinstance(other, Infinite)

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return isinstance(other, Infinite)

    def __gt__(self, other):
        return not isinstance(other, Infinite)

    def __ge__(self, other):
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Infinite):
            raise ValueError("inf - inf is undefined")
        return self


INF = Infinite()
ExtendedRational = Union[Fraction, Infinite]


def as_alpha(value: Fraction | int | str) -> Fraction:
    """Link cost as a positive exact rational; accepts "p/q" strings."""
    if isinstance(value, bool):
        raise NonPositiveAlpha(f"alpha must be a positive rational, got {value!r}")
    try:
        alpha = Fraction(value)
    except (ValueError, TypeError, ZeroDivisionError) as e:
        raise NonPositiveAlpha(f"alpha {value!r} is not a rational") from e
    if alpha <= 0:
        raise NonPositiveAlpha(f"alpha must be positive, got {alpha}")
    return alpha


def disconnection_cost(g: Graph, dist: EdgeDistribution, v: int) -> ExtendedRational:
    """Sum over edges of rel(e, v) * P(e)."""
    stray = sorted(dist.support() - g.edges)
    if stray:
        raise DistributionMismatch(f"distribution puts mass on non-edges {stray}")
    if not 0 <= v < g.n:
        raise UnknownVertex(f"vertex {v} outside 0..{g.n - 1}")
    if not is_connected(g):
        return INF
    return sum((rel(g, e, v) * p for e, p in dist.probs if p > 0), Fraction(0))


@lru_cache(maxsize=1 << 18)
def disconnection_costs(g: Graph, spec: AdversarySpec) -> tuple[ExtendedRational, ...]:
    """I_v for all players of g under spec."""
    if not is_connected(g):
        return (INF,) * g.n
    if g.m == 0:
        return (Fraction(0),) * g.n
    dist = distribution(spec, g)
    return tuple(disconnection_cost(g, dist, v) for v in range(g.n))


def total_disconnection(g: Graph, spec: AdversarySpec) -> ExtendedRational:
    """Sum over edges of sep(e) * P(e), the indirect part of the social cost."""
    if not is_connected(g):
        return INF
    if g.m == 0:
        return Fraction(0)
    return sum((sep(g, e) * p for e, p in distribution(spec, g).probs),
               Fraction(0))


def cost_on_graph(g: Graph, request_count: int, spec: AdversarySpec,
                  alpha: Fraction, v: int) -> ExtendedRational:
    return request_count * alpha + disconnection_costs(g, spec)[v]


def individual_cost(s: StrategyProfile, rule: FormationRule, spec: AdversarySpec,
                    alpha: Fraction | int | str, v: int) -> ExtendedRational:
    require_essential(s, rule)
    alpha = as_alpha(alpha)
    if not 0 <= v < s.n:
        raise UnknownVertex(f"player {v} outside 0..{s.n - 1}")
    return cost_on_graph(final_graph(s, rule), s.request_count(v), spec, alpha, v)


@dataclass(frozen=True)
class CostReport:
    building: tuple[Fraction, ...]
    disconnection: tuple[ExtendedRational, ...]
    total: tuple[ExtendedRational, ...]
    social: ExtendedRational


def _edge_form(g: Graph, rule: FormationRule, spec: AdversarySpec,
               alpha: Fraction) -> ExtendedRational:
    owners = 1 if rule is FormationRule.UNILATERAL else 2
    return owners * g.m * alpha + total_disconnection(g, spec)


def social_cost_of_graph(g: Graph, rule: FormationRule, spec: AdversarySpec,
                         alpha: Fraction | int | str) -> ExtendedRational:
    """Social cost of any essential profile with final graph g."""
    return _edge_form(g, rule, spec, as_alpha(alpha))


def cost_report(s: StrategyProfile, rule: FormationRule, spec: AdversarySpec,
                alpha: Fraction | int | str) -> CostReport:
    require_essential(s, rule)
    alpha = as_alpha(alpha)
    g = final_graph(s, rule)
    building = tuple(s.request_count(v) * alpha for v in range(s.n))
    disconnection = disconnection_costs(g, spec)
    total = tuple(b + d for b, d in zip(building, disconnection))
    social = sum(total, Fraction(0))

    edge_form = _edge_form(g, rule, spec, alpha)
    if social != edge_form:
        log.error(f"Social cost mismatch: per-player {social}, edge form {edge_form}")
        raise InconsistentCost(
            f"per-player sum {social} differs from edge form {edge_form}")
    return CostReport(building, disconnection, total, social)


def social_cost(s: StrategyProfile, rule: FormationRule, spec: AdversarySpec,
                alpha: Fraction | int | str) -> ExtendedRational:
    return cost_report(s, rule, spec, alpha).social


def is_anonymous_on(spec: AdversarySpec, g: Graph,
                    orbits: Iterable[Iterable[int]]) -> bool:
    """Disconnection cost is equal within every given vertex orbit."""
    costs = disconnection_costs(g, spec)
    return all(len({costs[v] for v in orbit}) <= 1 for orbit in orbits)


__all__ = [
    "Infinite", "INF", "ExtendedRational", "as_alpha", "disconnection_cost",
    "disconnection_costs", "total_disconnection", "cost_on_graph",
    "individual_cost", "CostReport", "cost_report", "social_cost",
    "social_cost_of_graph", "is_anonymous_on",
]
