"""
Exhaustive verifiers for the four equilibrium concepts.

NE and MaxNE are checked under unilateral link formation, PNE and
pairwise stability under bilateral link formation. Every failing verdict
carries the deviation that breaks the concept, so it can be replayed.
"""

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from adversary import AdversarySpec
from constants import DEFAULT_CONVEXITY_MAX_K, DEFAULT_SEARCH_BUDGET
from cost import (
    INF, ExtendedRational, as_alpha, cost_on_graph, disconnection_costs,
)
from error import (
    get_logger, DisconnectedInput, IncompatibleConcept, SearchTooLarge,
    UnknownVertex,
)
from graph_core import Graph, canonical_edge
from strategy import (
    FormationRule, Request, StrategyProfile, final_graph, require_essential,
)
log = get_logger()


class ConceptKind(Enum):
    NE = "ne"
    MAX_NE = "maxne"
    PNE = "pne"
    PS = "ps"

    @property
    def rule(self) -> FormationRule:
        if self in (ConceptKind.NE, ConceptKind.MAX_NE):
            return FormationRule.UNILATERAL
        return FormationRule.BILATERAL


def require_compatible(concept: ConceptKind, rule: FormationRule) -> None:
    if concept.rule is not rule:
        raise IncompatibleConcept(
            f"{concept.value} is defined for the {concept.rule.value} rule, "
            f"not {rule.value}")


@dataclass(frozen=True)
class Deviation:
    """
    kind is one of "unilateral", "drop", "addition" or "pairwise".
    old_costs/new_costs line up with players.
    """
    kind: str
    players: tuple[int, ...]
    added: tuple[Request, ...]
    dropped: tuple[Request, ...]
    old_costs: tuple[ExtendedRational, ...]
    new_costs: tuple[ExtendedRational, ...]


@dataclass(frozen=True)
class Verdict:
    concept: ConceptKind
    holds: bool
    witness: Deviation | None = None


@dataclass(frozen=True)
class ConvexityViolation:
    subset: tuple[int, ...]
    joint_change: Fraction
    single_sum: Fraction
    slack: Fraction


def _check_budget(size: int, budget: int, what: str) -> None:
    if size > budget:
        log.warning(f"Refusing {what}: {size} candidates exceed budget {budget}")
        raise SearchTooLarge(
            f"{what} needs {size} candidates, budget is {budget}")


def _subsets(items: list[int]):
    """All subsets of items, in bitmask order."""
    for mask in range(1 << len(items)):
        yield [w for i, w in enumerate(items) if mask >> i & 1]


def best_unilateral_deviation(s: StrategyProfile, v: int, rule: FormationRule,
                              spec: AdversarySpec, alpha: Fraction | int | str,
                              budget: int = DEFAULT_SEARCH_BUDGET
                              ) -> tuple[Deviation, ExtendedRational]:
    """
    Exhaustive minimisation of v's cost over her request sets.

    Under ULF the candidates are all w != v that do not already request v.
    Under BLF only dropping mutual links changes the graph, so the search
    runs over the subsets of v's partners to keep; a request the partner
    does not answer only adds alpha.
    Returns the first minimum in bitmask order. When nothing strictly
    improves, the deviation is empty and the new cost equals the old one.
    """
    require_essential(s, rule)
    alpha = as_alpha(alpha)
    if not 0 <= v < s.n:
        raise UnknownVertex(f"player {v} outside 0..{s.n - 1}")

    g = final_graph(s, rule)
    current = s.targets(v)
    old = cost_on_graph(g, len(current), spec, alpha, v)
    own_links = {canonical_edge(v, w) for w in current}
    others = g.edges - own_links

    if rule is FormationRule.UNILATERAL:
        candidates = sorted(w for w in range(s.n)
                            if w != v and (w, v) not in s.requests)
    else:
        candidates = sorted(current)
    _check_budget(1 << len(candidates), budget, f"deviation search of player {v}")

    best_targets, best = sorted(current), old
    for chosen in _subsets(candidates):
        graph = Graph(s.n, others | {canonical_edge(v, w) for w in chosen})
        candidate = cost_on_graph(graph, len(chosen), spec, alpha, v)
        if candidate < best:
            best_targets, best = chosen, candidate

    chosen = set(best_targets)
    deviation = Deviation(
        kind="unilateral" if rule is FormationRule.UNILATERAL else "drop",
        players=(v,),
        added=tuple((v, w) for w in sorted(chosen - current)),
        dropped=tuple((v, w) for w in sorted(current - chosen)),
        old_costs=(old,),
        new_costs=(best,),
    )
    return deviation, best


def is_nash(s: StrategyProfile, spec: AdversarySpec, alpha: Fraction | int | str,
            budget: int = DEFAULT_SEARCH_BUDGET) -> Verdict:
    require_essential(s, FormationRule.UNILATERAL)
    for v in range(s.n):
        deviation, new = best_unilateral_deviation(
            s, v, FormationRule.UNILATERAL, spec, alpha, budget)
        if new < deviation.old_costs[0]:
            log.debug(f"NE fails: player {v} improves {deviation.old_costs[0]} -> {new}")
            return Verdict(ConceptKind.NE, False, deviation)
    return Verdict(ConceptKind.NE, True)


def is_max_nash(s: StrategyProfile, spec: AdversarySpec, alpha: Fraction | int | str,
                budget: int = DEFAULT_SEARCH_BUDGET) -> Verdict:
    """NE where additionally every set of new links strictly hurts its buyer."""
    alpha = as_alpha(alpha)
    nash = is_nash(s, spec, alpha, budget)
    if not nash.holds:
        return Verdict(ConceptKind.MAX_NE, False, nash.witness)

    g = final_graph(s, FormationRule.UNILATERAL)
    for v in range(s.n):
        count = s.request_count(v)
        old = cost_on_graph(g, count, spec, alpha, v)
        absent = [w for w in range(s.n) if w != v and not g.has_edge(v, w)]
        _check_budget(1 << len(absent), budget, f"addition search of player {v}")
        for chosen in itertools.islice(_subsets(absent), 1, None):
            graph = g.with_edges((v, w) for w in chosen)
            new = cost_on_graph(graph, count + len(chosen), spec, alpha, v)
            if new <= old:
                log.debug(f"MaxNE fails: player {v} adds {chosen} at no loss")
                return Verdict(ConceptKind.MAX_NE, False, Deviation(
                    kind="addition", players=(v,),
                    added=tuple((v, w) for w in chosen), dropped=(),
                    old_costs=(old,), new_costs=(new,)))
    return Verdict(ConceptKind.MAX_NE, True)


def pairwise_violation(g: Graph, spec: AdversarySpec, alpha: Fraction,
                        v: int, w: int) -> Deviation | None:
    """
    Joint addition of the absent link {v, w}: if it does not worsen one
    endpoint, it must strictly worsen the other.
    """
    before = disconnection_costs(g, spec)
    after = disconnection_costs(g.with_edges([(v, w)]), spec)
    dv, dw = g.degree(v), g.degree(w)
    old = (dv * alpha + before[v], dw * alpha + before[w])
    new = ((dv + 1) * alpha + after[v], (dw + 1) * alpha + after[w])
    v_accepts, w_accepts = new[0] <= old[0], new[1] <= old[1]
    if (v_accepts and not new[1] > old[1]) or (w_accepts and not new[0] > old[0]):
        return Deviation(kind="pairwise", players=(v, w),
                         added=((v, w), (w, v)), dropped=(),
                         old_costs=old, new_costs=new)
    return None


def _first_pairwise_violation(g: Graph, spec: AdversarySpec,
                              alpha: Fraction) -> Deviation | None:
    for v, w in itertools.combinations(range(g.n), 2):
        if not g.has_edge(v, w):
            violation = pairwise_violation(g, spec, alpha, v, w)
            if violation is not None:
                return violation
    return None


def is_pne(s: StrategyProfile, spec: AdversarySpec, alpha: Fraction | int | str,
           budget: int = DEFAULT_SEARCH_BUDGET) -> Verdict:
    require_essential(s, FormationRule.BILATERAL)
    alpha = as_alpha(alpha)
    for v in range(s.n):
        deviation, new = best_unilateral_deviation(
            s, v, FormationRule.BILATERAL, spec, alpha, budget)
        if new < deviation.old_costs[0]:
            log.debug(f"PNE fails: player {v} gains by dropping {deviation.dropped}")
            return Verdict(ConceptKind.PNE, False, deviation)

    violation = _first_pairwise_violation(final_graph(s, FormationRule.BILATERAL),
                                          spec, alpha)
    if violation is not None:
        log.debug(f"PNE fails: pair {violation.players} wants to link")
        return Verdict(ConceptKind.PNE, False, violation)
    return Verdict(ConceptKind.PNE, True)


def is_pairwise_stable(s: StrategyProfile, spec: AdversarySpec,
                       alpha: Fraction | int | str) -> Verdict:
    """Only single-link deviations: one drop, or one joint addition."""
    require_essential(s, FormationRule.BILATERAL)
    alpha = as_alpha(alpha)
    g = final_graph(s, FormationRule.BILATERAL)
    before = disconnection_costs(g, spec)

    for u, w in g.sorted_edges():
        after = disconnection_costs(g.without_edges([(u, w)]), spec)
        for x, y in ((u, w), (w, u)):
            degree = g.degree(x)
            old = degree * alpha + before[x]
            new = (degree - 1) * alpha + after[x]
            if new < old:
                log.debug(f"PS fails: player {x} gains by dropping {y}")
                return Verdict(ConceptKind.PS, False, Deviation(
                    kind="drop", players=(x,), added=(), dropped=((x, y),),
                    old_costs=(old,), new_costs=(new,)))

    violation = _first_pairwise_violation(g, spec, alpha)
    if violation is not None:
        return Verdict(ConceptKind.PS, False, violation)
    return Verdict(ConceptKind.PS, True)


def check_concept(s: StrategyProfile, concept: ConceptKind, spec: AdversarySpec,
                  alpha: Fraction | int | str,
                  budget: int = DEFAULT_SEARCH_BUDGET) -> Verdict:
    match concept:
        case ConceptKind.NE:
            return is_nash(s, spec, alpha, budget)
        case ConceptKind.MAX_NE:
            return is_max_nash(s, spec, alpha, budget)
        case ConceptKind.PNE:
            return is_pne(s, spec, alpha, budget)
        case ConceptKind.PS:
            return is_pairwise_stable(s, spec, alpha)


def replay_deviation(s: StrategyProfile, rule: FormationRule, spec: AdversarySpec,
                     alpha: Fraction | int | str,
                     deviation: Deviation) -> tuple[ExtendedRational, ...]:
    """
    Costs of the deviating players after applying the deviation. A bilateral
    drop may leave the partner's request unanswered; that request does not
    change anybody's cost, so no essentiality check is made here.
    """
    alpha = as_alpha(alpha)
    requests = (s.requests - set(deviation.dropped)) | set(deviation.added)
    after = StrategyProfile(s.n, requests)
    g = final_graph(after, rule)
    return tuple(cost_on_graph(g, after.request_count(p), spec, alpha, p)
                 for p in deviation.players)


def convexity_violations(s: StrategyProfile, v: int, spec: AdversarySpec,
                         alpha: Fraction | int | str,
                         max_k: int = DEFAULT_CONVEXITY_MAX_K,
                         rule: FormationRule = FormationRule.UNILATERAL
                         ) -> list[ConvexityViolation]:
    """
    Subsets of v's requests, of size 2..max_k, where the change of I_v from
    dropping them jointly is smaller than the sum of the single-drop
    changes. alpha cancels on both sides. max_k is capped at v's request
    count.
    """
    require_essential(s, rule)
    as_alpha(alpha)
    g = final_graph(s, rule)
    base = disconnection_costs(g, spec)[v]
    if base is INF:
        raise DisconnectedInput("convexity is checked on connected profiles only")

    targets = sorted(s.targets(v))
    single = {}
    for w in targets:
        after = disconnection_costs(g.without_edges([(v, w)]), spec)[v]
        single[w] = after - base

    violations = []
    for k in range(2, min(max_k, len(targets)) + 1):
        for subset in itertools.combinations(targets, k):
            single_sum = sum((single[w] for w in subset), Fraction(0))
            after = disconnection_costs(
                g.without_edges((v, w) for w in subset), spec)[v]
            if after is INF or single_sum is INF:
                continue
            joint = after - base
            if joint < single_sum:
                violations.append(ConvexityViolation(
                    subset, joint, single_sum, single_sum - joint))
    return violations


__all__ = [
    "ConceptKind", "Deviation", "Verdict", "ConvexityViolation",
    "require_compatible", "best_unilateral_deviation", "is_nash",
    "is_max_nash", "is_pne", "is_pairwise_stable", "check_concept",
    "replay_deviation", "convexity_violations", "pairwise_violation",
]
