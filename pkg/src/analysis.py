"""
Brute-force optima, exhaustive equilibrium enumeration, price of
anarchy and stability, better-response dynamics and the structural
audit of equilibrium networks.

Enumerations split their index range into contiguous chunks. With
jobs > 1 the chunks go to a multiprocessing pool; results are merged in
chunk order, so the outcome does not depend on the worker count.
"""

import itertools
import multiprocessing as mp
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import floor
from typing import Iterable, NamedTuple

from adversary import (
    SMART, AdversaryKind, AdversarySpec, critical_edges, critical_edges_form_star,
)
from constants import (
    DEFAULT_BLF_ENUMERATION_LIMIT, DEFAULT_BRUTE_FORCE_LIMIT, DEFAULT_MAX_ROUNDS,
    DEFAULT_SEARCH_BUDGET, DEFAULT_ULF_ENUMERATION_LIMIT,
)
from constructions import cycle_profile, star_profile, three_stars_parts, three_stars_profile
from cost import (
    ExtendedRational, as_alpha, social_cost, total_disconnection,
)
from equilibrium import (
    ConceptKind, Deviation, Verdict, best_unilateral_deviation, check_concept,
    is_nash, is_pairwise_stable, is_pne, pairwise_violation, require_compatible,
)
from error import ConceptMismatch, SearchTooLarge, TooSmall, get_logger
from graph_core import (
    Graph, bridge_tree, bridge_tree_diameter, girth, graph_count,
    graph_from_index, is_chord_free, is_connected,
)
from strategy import (
    FormationRule, StrategyProfile, essentialize, final_graph, profile_from_graph,
    require_essential, unilateral_profile_count, unilateral_profile_from_index,
)
log = get_logger()


class NoEquilibrium:
    """Ratio marker for (n, alpha) combinations without any equilibrium."""
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NO_EQUILIBRIUM"

    def __str__(self):
        return "none"


NO_EQUILIBRIUM = NoEquilibrium()


class OptimumShape(NamedTuple):
    value: Fraction
    shape: str


def optimum_closed_form(n: int, alpha: Fraction | int | str,
                        rule: FormationRule) -> OptimumShape:
    """
    ULF: min(n*alpha, (n-1)(alpha+2)), the cycle up to alpha = 2(n-1).
    BLF: min(2n*alpha, 2(n-1)(alpha+1)), the cycle up to alpha = n-1.
    """
    if n < 3:
        raise TooSmall(f"optimum needs n >= 3, got {n}")
    alpha = as_alpha(alpha)
    if rule is FormationRule.UNILATERAL:
        cycle, star = n * alpha, (n - 1) * (alpha + 2)
    else:
        cycle, star = 2 * n * alpha, 2 * (n - 1) * (alpha + 1)
    if cycle < star:
        return OptimumShape(cycle, "cycle")
    if star < cycle:
        return OptimumShape(star, "star")
    return OptimumShape(cycle, "both")


def _chunks(total: int, jobs: int) -> list[tuple[int, int]]:
    jobs = max(1, min(jobs, total))
    step = -(-total // jobs)
    return [(start, min(start + step, total)) for start in range(0, total, step)]


def _run_chunks(worker, args: list[tuple], jobs: int) -> list:
    """Applies worker to every chunk, keeping chunk order."""
    if jobs <= 1 or len(args) <= 1:
        return [worker(a) for a in args]
    with mp.Pool(processes=jobs) as pool:
        return pool.map(worker, args)


def _graph_cost_chunk(args: tuple) -> list[tuple[int, int, ExtendedRational]]:
    n, spec, start, stop = args
    rows = []
    for index in range(start, stop):
        g = graph_from_index(n, index)
        if is_connected(g):
            rows.append((index, g.m, total_disconnection(g, spec)))
    return rows


@lru_cache(maxsize=32)
def _graph_cost_table(n: int, spec: AdversarySpec,
                      jobs: int) -> tuple[tuple[int, int, Fraction], ...]:
    """(index, m, total disconnection) of every connected labeled graph."""
    total = graph_count(n)
    log.info(f"Tabulating {total} labeled graphs on {n} vertices ({spec.label})")
    chunks = [(n, spec, start, stop) for start, stop in _chunks(total, jobs)]
    rows = _run_chunks(_graph_cost_chunk, chunks, jobs)
    return tuple(itertools.chain.from_iterable(rows))


@dataclass(frozen=True)
class OptimumResult:
    value: Fraction
    witness: Graph


def brute_force_optimum(n: int, alpha: Fraction | int | str, rule: FormationRule,
                        spec: AdversarySpec,
                        limit: int = DEFAULT_BRUTE_FORCE_LIMIT,
                        jobs: int = 1) -> OptimumResult:
    """
    Minimum social cost over all connected labeled graphs. The witness is
    the minimiser with the lexicographically smallest sorted edge list.
    """
    if n > limit:
        raise SearchTooLarge(f"brute-force optimum limited to n <= {limit}, got {n}")
    if n < 3:
        raise TooSmall(f"optimum needs n >= 3, got {n}")
    alpha = as_alpha(alpha)
    owners = 1 if rule is FormationRule.UNILATERAL else 2

    best, tied = None, []
    for index, m, disconnection in _graph_cost_table(n, spec, jobs):
        value = owners * m * alpha + disconnection
        if best is None or value < best:
            best, tied = value, [index]
        elif value == best:
            tied.append(index)
    witness = min((graph_from_index(n, i) for i in tied), key=Graph.sorted_edges)
    log.info(f"Optimum for n={n}, alpha={alpha}, {rule.value}, {spec.label}: {best}")
    return OptimumResult(best, witness)


def _enumeration_size(n: int, rule: FormationRule, limit: int | None) -> int:
    if rule is FormationRule.UNILATERAL:
        cap = DEFAULT_ULF_ENUMERATION_LIMIT if limit is None else limit
        size = unilateral_profile_count(n)
    else:
        cap = DEFAULT_BLF_ENUMERATION_LIMIT if limit is None else limit
        size = graph_count(n)
    if n > cap:
        raise SearchTooLarge(
            f"{rule.value} enumeration limited to n <= {cap}, got {n}")
    return size


def _profile_at(n: int, rule: FormationRule, index: int) -> StrategyProfile:
    if rule is FormationRule.UNILATERAL:
        return unilateral_profile_from_index(n, index)
    return profile_from_graph(graph_from_index(n, index), FormationRule.BILATERAL)


def _equilibria_chunk(args: tuple) -> list[int]:
    n, alpha, rule, spec, concept, budget, start, stop = args
    found = []
    for index in range(start, stop):
        s = _profile_at(n, rule, index)
        # disconnected networks are never equilibria: linking is always an improvement
        if not is_connected(final_graph(s, rule)):
            continue
        if check_concept(s, concept, spec, alpha, budget).holds:
            found.append(index)
    return found


def enumerate_equilibria(n: int, alpha: Fraction | int | str, rule: FormationRule,
                         spec: AdversarySpec, concept: ConceptKind,
                         limit: int | None = None, jobs: int = 1,
                         budget: int = DEFAULT_SEARCH_BUDGET) -> list[StrategyProfile]:
    """
    Every essential profile passing the concept verifier, in index order:
    ULF profiles by their base-3 pair code, BLF profiles by graph index.
    """
    require_compatible(concept, rule)
    alpha = as_alpha(alpha)
    total = _enumeration_size(n, rule, limit)
    log.info(f"Enumerating {total} {rule.value} profiles for {concept.value} "
             f"(n={n}, alpha={alpha}, {spec.label}, jobs={jobs})")
    chunks = [(n, alpha, rule, spec, concept, budget, start, stop)
              for start, stop in _chunks(total, jobs)]
    indices = itertools.chain.from_iterable(_run_chunks(_equilibria_chunk, chunks, jobs))
    profiles = [_profile_at(n, rule, i) for i in indices]
    log.info(f"Found {len(profiles)} equilibria")
    return profiles


@dataclass(frozen=True)
class AnalysisResult:
    n: int
    alpha: Fraction
    rule: FormationRule
    spec: AdversarySpec
    concept: ConceptKind
    optimum: Fraction
    witness: Graph
    equilibria: tuple[tuple[StrategyProfile, Fraction], ...]
    poa: Fraction | NoEquilibrium
    pos: Fraction | NoEquilibrium


def analyze(n: int, alpha: Fraction | int | str, rule: FormationRule,
            spec: AdversarySpec, concept: ConceptKind,
            enumeration_limit: int | None = None,
            brute_force_limit: int = DEFAULT_BRUTE_FORCE_LIMIT,
            jobs: int = 1, budget: int = DEFAULT_SEARCH_BUDGET) -> AnalysisResult:
    alpha = as_alpha(alpha)
    optimum = brute_force_optimum(n, alpha, rule, spec, brute_force_limit, jobs)
    profiles = enumerate_equilibria(n, alpha, rule, spec, concept,
                                    enumeration_limit, jobs, budget)
    equilibria = tuple((s, social_cost(s, rule, spec, alpha)) for s in profiles)
    if equilibria:
        costs = [c for _, c in equilibria]
        poa, pos = max(costs) / optimum.value, min(costs) / optimum.value
    else:
        poa = pos = NO_EQUILIBRIUM
    return AnalysisResult(n, alpha, rule, spec, concept, optimum.value,
                          optimum.witness, equilibria, poa, pos)


def price_of_anarchy(n: int, alpha: Fraction | int | str, rule: FormationRule,
                     spec: AdversarySpec, concept: ConceptKind,
                     **limits) -> Fraction | NoEquilibrium:
    return analyze(n, alpha, rule, spec, concept, **limits).poa


def price_of_stability(n: int, alpha: Fraction | int | str, rule: FormationRule,
                       spec: AdversarySpec, concept: ConceptKind,
                       **limits) -> Fraction | NoEquilibrium:
    return analyze(n, alpha, rule, spec, concept, **limits).pos


def sweep(n: int, alphas: Iterable[Fraction | int | str], rule: FormationRule,
          spec: AdversarySpec, concept: ConceptKind, **limits) -> list[dict]:
    """One row per alpha with the CSV columns of the sweep report."""
    rows = []
    for alpha in alphas:
        result = analyze(n, alpha, rule, spec, concept, **limits)
        rows.append({
            "n": n, "alpha": result.alpha, "rule": rule.value,
            "adversary": spec.label, "concept": concept.value,
            "optimum": result.optimum, "poa": result.poa, "pos": result.pos,
            "equilibrium_count": len(result.equilibria),
        })
    return rows


def find_ps_not_pne(n: int, alpha: Fraction | int | str, spec: AdversarySpec,
                    limit: int | None = None,
                    budget: int = DEFAULT_SEARCH_BUDGET) -> StrategyProfile | None:
    """First bilateral profile, by graph index, that is PS but not a PNE."""
    alpha = as_alpha(alpha)
    total = _enumeration_size(n, FormationRule.BILATERAL, limit)
    for index in range(total):
        g = graph_from_index(n, index)
        if not is_connected(g):
            continue
        s = profile_from_graph(g, FormationRule.BILATERAL)
        if is_pairwise_stable(s, spec, alpha).holds and not is_pne(s, spec, alpha, budget).holds:
            log.info(f"PS profile that is not a PNE found at graph index {index}")
            return s
    return None


@dataclass(frozen=True)
class DynamicsResult:
    profile: StrategyProfile
    rounds: int
    converged: bool
    moves: tuple[Deviation, ...] = ()
    verdict: Verdict | None = None


def _stability_verdict(s: StrategyProfile, rule: FormationRule, spec: AdversarySpec,
                       alpha: Fraction, budget: int) -> Verdict:
    if rule is FormationRule.UNILATERAL:
        return is_nash(s, spec, alpha, budget)
    return is_pairwise_stable(s, spec, alpha)


def better_response_dynamics(s0: StrategyProfile, rule: FormationRule,
                             spec: AdversarySpec, alpha: Fraction | int | str,
                             max_rounds: int = DEFAULT_MAX_ROUNDS,
                             budget: int = DEFAULT_SEARCH_BUDGET) -> DynamicsResult:
    """
    Round-robin best responses by player id. Under BLF each round ends
    with a pass over absent links in lexicographic order, adding every
    link that one endpoint does not mind and the other does not refuse.
    Stops after a round without change, or after max_rounds.
    """
    require_essential(s0, rule)
    alpha = as_alpha(alpha)
    if max_rounds <= 0:
        verdict = _stability_verdict(s0, rule, spec, alpha, budget)
        return DynamicsResult(s0, 0, verdict.holds, (), verdict)

    s, moves = s0, []
    for rounds in range(1, max_rounds + 1):
        changed = False
        for v in range(s.n):
            deviation, new = best_unilateral_deviation(s, v, rule, spec, alpha, budget)
            if new < deviation.old_costs[0]:
                requests = (s.requests - set(deviation.dropped)) | set(deviation.added)
                s = essentialize(StrategyProfile(s.n, requests), rule)
                moves.append(deviation)
                changed = True

        if rule is FormationRule.BILATERAL:
            for v, w in itertools.combinations(range(s.n), 2):
                g = final_graph(s, rule)
                if g.has_edge(v, w):
                    continue
                violation = pairwise_violation(g, spec, alpha, v, w)
                if violation is not None:
                    s = StrategyProfile(s.n, s.requests | set(violation.added))
                    moves.append(violation)
                    changed = True

        log.debug(f"Dynamics round {rounds}: {len(moves)} moves so far")
        if not changed:
            verdict = _stability_verdict(s, rule, spec, alpha, budget)
            if not verdict.holds:
                log.error("Dynamics stopped at a profile that fails its verifier")
            log.info(f"Dynamics converged after {rounds} rounds, {len(moves)} moves")
            return DynamicsResult(s, rounds, verdict.holds, tuple(moves), verdict)

    log.info(f"Dynamics stopped after {max_rounds} rounds without converging")
    return DynamicsResult(s, max_rounds, False, tuple(moves), None)


def star_ne_threshold(n: int) -> Fraction:
    """
    Smallest alpha at which the outward star is an NE under the
    simple-minded adversary: a leaf's gain from one link to another leaf.
    At this alpha the link is a zero-gain addition, so MaxNE fails.
    """
    if n < 4:
        raise TooSmall(f"the leaf-to-leaf deviation needs n >= 4, got {n}")
    return 2 - Fraction(1, n - 1) - Fraction(n - 3, n)


def poa_bound(c1: Fraction | int, c0: Fraction | int, n: int) -> Fraction:
    """Equilibrium social cost <= (c1*n + c0)*alpha gives PoA <= c1 + (c1 + c0)/(n-1)."""
    return Fraction(c1) + Fraction(Fraction(c1) + Fraction(c0), n - 1)


@dataclass(frozen=True)
class StabilityWitness:
    shape: str
    profile: StrategyProfile
    social: Fraction
    optimum: Fraction
    ratio: Fraction
    bound: Fraction
    certified: bool | None = None


def stability_witness(n: int, alpha: Fraction | int | str, spec: AdversarySpec,
                      certify: bool = False,
                      budget: int = DEFAULT_SEARCH_BUDGET) -> StabilityWitness:
    """
    Constructive PoS check for anonymous adversaries and n >= 9: the
    oriented cycle is an NE up to alpha = floor((n-1)/2)/2, the outward
    star from 2 - 1/(n-1) on. The ratio to the optimum stays within
    1 + 8/(n-2).
    """
    if n < 9:
        raise TooSmall(f"the stability construction needs n >= 9, got {n}")
    alpha = as_alpha(alpha)
    if alpha <= Fraction(floor((n - 1) / 2), 2):
        shape, profile = "cycle", cycle_profile(n)
    else:
        shape, profile = "star", star_profile(n)
    social = social_cost(profile, FormationRule.UNILATERAL, spec, alpha)
    optimum = optimum_closed_form(n, alpha, FormationRule.UNILATERAL).value
    certified = is_nash(profile, spec, alpha, budget).holds if certify else None
    return StabilityWitness(shape, profile, social, optimum, social / optimum,
                            1 + Fraction(8, n - 2), certified)


@dataclass(frozen=True)
class ThreeStarsReport:
    n0: int
    total_disconnection: Fraction
    social: Fraction
    optimum: Fraction
    ratio: Fraction
    constant: Fraction


def three_stars_report(n: int, alpha: Fraction | int | str,
                       spec: AdversarySpec | None = None) -> ThreeStarsReport:
    """
    Social cost of the three-stars PNE against the bilateral optimum,
    with constant = ratio / (1 + n/alpha).
    """
    spec = SMART if spec is None else spec
    alpha = as_alpha(alpha)
    parts = three_stars_parts(n)
    s = three_stars_profile(n)
    g = final_graph(s, FormationRule.BILATERAL)
    social = social_cost(s, FormationRule.BILATERAL, spec, alpha)
    optimum = optimum_closed_form(n, alpha, FormationRule.BILATERAL).value
    ratio = social / optimum
    return ThreeStarsReport(len(parts["s1"]) + 1, total_disconnection(g, spec),
                            social, optimum, ratio, ratio / (1 + n / alpha))


@dataclass(frozen=True)
class AuditEntry:
    claim: str
    instance: str
    holds: bool
    details: str


@dataclass(frozen=True)
class AuditReport:
    n: int
    alpha: Fraction
    rule: FormationRule
    spec: AdversarySpec
    concept: ConceptKind
    entries: tuple[AuditEntry, ...] = field(default_factory=tuple)

    @property
    def all_hold(self) -> bool:
        return all(entry.holds for entry in self.entries)

    def failures(self) -> list[AuditEntry]:
        return [entry for entry in self.entries if not entry.holds]


def _audit_profile(s: StrategyProfile, rule: FormationRule, spec: AdversarySpec,
                   alpha: Fraction, concept: ConceptKind,
                   budget: int) -> list[tuple[str, bool, str]]:
    n = s.n
    g = final_graph(s, rule)
    m = g.m
    owners = 1 if rule is FormationRule.UNILATERAL else 2
    social = social_cost(s, rule, spec, alpha)
    optimum = optimum_closed_form(n, alpha, rule).value
    simple = spec.kind is AdversaryKind.SIMPLE_MINDED
    smart = spec.kind is AdversaryKind.SMART
    checks = [("connected", is_connected(g), f"m={m}")]
    if not is_connected(g):
        return checks

    if m <= 2 * n - 1:
        bound = owners * m * alpha + n * n
        checks.append(("simple-bound", social <= bound,
                       f"social={social} <= {owners}*m*alpha + n^2 = {bound}"))

    diameter = bridge_tree_diameter(bridge_tree(g))
    chord_free = is_chord_free(g)

    if rule is FormationRule.UNILATERAL and (simple or smart):
        checks.append(("chord-free", chord_free, f"m={m}"))
        checks.append(("edges-at-most-2n-1", m <= 2 * n - 1, f"m={m}, 2n-1={2 * n - 1}"))

    if rule is FormationRule.UNILATERAL and simple:
        shortest = girth(g)
        checks += [
            ("no-short-cycles", shortest is None or shortest >= alpha + Fraction(1, 2),
             f"girth={shortest}, alpha+1/2={alpha + Fraction(1, 2)}"),
            ("bridge-tree-diameter-8alpha", diameter <= 8 * alpha,
             f"diameter={diameter}, 8alpha={8 * alpha}"),
            ("social-at-most-10n-alpha", social <= 10 * n * alpha,
             f"social={social}, 10n*alpha={10 * n * alpha}"),
            ("poa-at-most-10-plus", social / optimum <= poa_bound(10, 0, n),
             f"ratio={social / optimum}, bound={poa_bound(10, 0, n)}"),
        ]

    if rule is FormationRule.UNILATERAL and smart:
        crit = critical_edges(g)
        if alpha >= Fraction(n, 6):
            sep_ok, branch = True, "alpha >= n/6"
        elif crit.m_max >= 3:
            sep_ok, branch = crit.sep_max <= 5 * n * alpha, "m_max >= 3: sep_max <= 5n*alpha"
        else:
            sep_ok, branch = crit.sep_max <= 4 * n * alpha, "m_max <= 2: sep_max <= 4n*alpha"
        checks += [
            ("smart-sep-max-bound", sep_ok, f"{branch}; sep_max={crit.sep_max}, m_max={crit.m_max}"),
            ("social-at-most-8n-alpha", social <= 8 * n * alpha,
             f"social={social}, 8n*alpha={8 * n * alpha}"),
            ("poa-at-most-8-plus", social / optimum <= poa_bound(8, 0, n),
             f"ratio={social / optimum}, bound={poa_bound(8, 0, n)}"),
        ]

    if rule is FormationRule.BILATERAL and simple:
        if alpha > Fraction(1, 2):
            sparse_ok, how = chord_free, "alpha > 1/2: chord-free"
        else:
            sparse_ok = chord_free or (m - 1) ** 2 * 2 * alpha <= n * n
            how = "alpha <= 1/2: chord-free or m <= n/sqrt(2 alpha) + 1"
        checks.append(("bilateral-chord-free-or-sparse", sparse_ok, f"{how}; m={m}"))
        if m <= 2 * n - 1:
            checks.append(("bilateral-diameter-square", diameter ** 2 <= 4 * n * alpha,
                           f"diameter={diameter}, 4n*alpha={4 * n * alpha}"))

    if smart:
        checks.append(("critical-edges-star", critical_edges_form_star(g), ""))

    if concept is ConceptKind.PNE:
        checks.append(("pne-implies-ps", is_pairwise_stable(s, spec, alpha).holds, ""))
    return checks


def theorem_audit(profiles: Iterable[StrategyProfile], n: int,
                  alpha: Fraction | int | str, rule: FormationRule,
                  spec: AdversarySpec, concept: ConceptKind,
                  budget: int = DEFAULT_SEARCH_BUDGET) -> AuditReport:
    """
    Re-verifies every profile for the concept, then evaluates each
    structural claim that applies to the rule, adversary and concept.
    """
    require_compatible(concept, rule)
    alpha = as_alpha(alpha)
    entries = []
    for number, s in enumerate(profiles):
        if s.n != n or not check_concept(s, concept, spec, alpha, budget).holds:
            raise ConceptMismatch(
                f"profile #{number} is not a {concept.value} for n={n}, alpha={alpha}")
        instance = f"#{number} requests={s.sorted_requests()}"
        for claim, holds, details in _audit_profile(s, rule, spec, alpha, concept, budget):
            if not holds:
                log.error(f"Audit claim {claim} fails on {instance}: {details}")
            entries.append(AuditEntry(claim, instance, holds, details))
    report = AuditReport(n, alpha, rule, spec, concept, tuple(entries))
    log.info(f"Audit: {len(entries)} checks, {len(report.failures())} failures")
    return report


__all__ = [
    "NoEquilibrium", "NO_EQUILIBRIUM", "OptimumShape", "optimum_closed_form",
    "OptimumResult", "brute_force_optimum", "enumerate_equilibria",
    "AnalysisResult", "analyze", "price_of_anarchy", "price_of_stability",
    "sweep", "find_ps_not_pne", "DynamicsResult", "better_response_dynamics",
    "star_ne_threshold", "poa_bound", "StabilityWitness", "stability_witness",
    "ThreeStarsReport", "three_stars_report", "AuditEntry", "AuditReport",
    "theorem_audit",
]
