"""
Generators for the named instances: stars, cycles, paths, three stars,
a cycle with a path attached, the non-convexity gadget and two fixed
example graphs. Labels are fixed so reports are reproducible.
"""

from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from adversary import AdversarySpec, critical_edges
from constants import DEFAULT_GADGET_CYCLE
from error import get_logger, BadShape, TooSmall
from graph_core import Edge, Graph, canonical_edge
from strategy import (
    FormationRule, StrategyProfile, essentialize, profile_from_graph, to_bilateral,
)
log = get_logger()


def _require_players(n: int, minimum: int = 3) -> None:
    if n < minimum:
        raise TooSmall(f"need at least {minimum} players, got {n}")


def _oriented(n: int, owned: list[tuple[int, int]], rule: FormationRule) -> StrategyProfile:
    """owned lists (owner, target) pairs; BLF makes every link mutual."""
    requests = set(owned)
    if rule is FormationRule.BILATERAL:
        requests |= {(w, v) for v, w in owned}
    return StrategyProfile(n, frozenset(requests))


def star_profile(n: int, rule: FormationRule = FormationRule.UNILATERAL) -> StrategyProfile:
    """Center 0 owns every edge."""
    _require_players(n)
    return _oriented(n, [(0, i) for i in range(1, n)], rule)


def cycle_profile(n: int, rule: FormationRule = FormationRule.UNILATERAL) -> StrategyProfile:
    """Player i owns {i, i+1 mod n}."""
    _require_players(n)
    return _oriented(n, [(i, (i + 1) % n) for i in range(n)], rule)


def path_nearest_end_profile(n: int) -> StrategyProfile:
    """
    Path 0-1-...-(n-1) with every edge pointing to its nearer path end:
    it is requested by the endpoint farther from that end. For even n the
    middle edge belongs to the lower id.
    """
    _require_players(n)

    def depth(x: int) -> int:
        return min(x, n - 1 - x)

    owned = []
    for i in range(n - 1):
        if depth(i) > depth(i + 1):
            owned.append((i, i + 1))
        elif depth(i + 1) > depth(i):
            owned.append((i + 1, i))
        else:
            owned.append((i, i + 1))
    return StrategyProfile(n, frozenset(owned))


def three_stars_parts(n: int) -> dict[str, list[int]]:
    """
    Vertex groups of the three-stars graph: hub u0 = 0, centers u1..u3 = 1..3,
    then the leaves of the three stars, then the extra leaves of the hub.
    Star i has n0 - i + 1 vertices including its center.
    """
    if n < 9:
        raise TooSmall(f"three stars need n >= 9, got {n}")
    n0 = (n + 2) // 3
    parts = {"hub": [0], "centers": [1, 2, 3]}
    next_id = 4
    for star, size in (("s1", n0), ("s2", n0 - 1), ("s3", n0 - 2)):
        parts[star] = list(range(next_id, next_id + size - 1))
        next_id += size - 1
    parts["extras"] = list(range(next_id, n))
    return parts


def three_stars_profile(n: int) -> StrategyProfile:
    parts = three_stars_parts(n)
    links = [(0, c) for c in parts["centers"]]
    for center, star in zip(parts["centers"], ("s1", "s2", "s3")):
        links += [(center, leaf) for leaf in parts[star]]
    links += [(0, leaf) for leaf in parts["extras"]]
    return _oriented(n, links, FormationRule.BILATERAL)


def cycle_with_path_profile(n: int, l: int) -> StrategyProfile:
    """
    Bilateral cycle on vertices 0..n-l-1 with the path
    0 - (n-l) - ... - (n-1) of l edges hung from vertex 0.
    """
    _require_players(n)
    if l < 1 or n < 3 * l:
        raise BadShape(f"cycle with path needs 1 <= l and n >= 3l, got n={n}, l={l}")
    ring = n - l
    links = [(i, (i + 1) % ring) for i in range(ring)]
    path = [0] + list(range(ring, n))
    links += list(zip(path, path[1:]))
    return _oriented(n, links, FormationRule.BILATERAL)


class NonConvexGadget(NamedTuple):
    profile: StrategyProfile
    player: int
    e1: Edge
    e2: Edge
    f1: Edge
    f2: Edge


# x, w, u, v, uu, y; the cycle through y uses ids 6 onwards.
_X, _W, _U, _V, _UU, _Y = range(6)


def _gadget_graph(k: int) -> Graph:
    ring = [_Y] + list(range(6, 5 + k))
    edges = [(_X, _W), (_W, _U), (_W, _V), (_U, _V),
             (_V, _Y), (_V, _UU), (_UU, _Y)]
    edges += [(ring[i], ring[(i + 1) % k]) for i in range(k)]
    return Graph.from_edges(k + 5, edges)


def _gadget_conditions_hold(k: int) -> bool:
    g = _gadget_graph(k)
    e1, e2 = canonical_edge(_W, _V), canonical_edge(_V, _Y)
    f1, f2 = canonical_edge(_U, _V), canonical_edge(_UU, _Y)
    return (critical_edges(g).edges == {(_X, _W)}
            and critical_edges(g.without_edges([e1])).edges == {f1}
            and critical_edges(g.without_edges([e2])).edges == {f2}
            and critical_edges(g.without_edges([e1, e2])).edges == {f2})


@lru_cache(maxsize=None)
def min_gadget_cycle() -> int:
    """Smallest cycle length for which the gadget's critical edges behave as intended."""
    for k in range(3, 13):
        if _gadget_conditions_hold(k):
            return k
    raise BadShape("no cycle length up to 12 yields the gadget")


def non_convex_gadget(k: int = DEFAULT_GADGET_CYCLE) -> NonConvexGadget:
    """
    Pendant x - w, triangles w-u-v and v-uu-y, and y on a cycle of k
    vertices. Player v requests exactly e1 = {w, v} and e2 = {v, y};
    the other links belong to the other endpoint (the smaller id when v
    is not involved).
    """
    k_min = min_gadget_cycle()
    if k < k_min:
        raise TooSmall(f"gadget cycle needs at least {k_min} vertices, got {k}")

    def owner(a: int, b: int) -> int:
        if _V in (a, b):
            other = b if a == _V else a
            return _V if other in (_W, _Y) else other
        return a

    profile = profile_from_graph(_gadget_graph(k), FormationRule.UNILATERAL, owner)
    return NonConvexGadget(
        profile, _V,
        e1=canonical_edge(_W, _V), e2=canonical_edge(_V, _Y),
        f1=canonical_edge(_U, _V), f2=canonical_edge(_UU, _Y),
    )


# Orbits of the 11-vertex example: left 5-cycle with u, then v, then w's gadget.
ANONYMOUS_NONSYMMETRIC_ORBITS = ([0, 1, 2, 3, 4], [5], [6, 7, 8, 9, 10])


def fig_anonymous_nonsymmetric() -> tuple[Graph, AdversarySpec]:
    """
    5-cycle 0..4 with u = 4, bridge u - v (v = 5), bridge v - w (w = 6),
    and a bridgeless 5-vertex gadget around w: the 4-cycle 7-8-6-9 plus
    vertex 10 joined to 8 and 9. The adversary hits {u, v} with 2/3 and
    {v, w} with 1/3.
    """
    edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
             (4, 5), (5, 6),
             (7, 8), (8, 6), (6, 9), (9, 7), (10, 9), (10, 8)]
    g = Graph.from_edges(11, edges)
    probs = {e: Fraction(0) for e in g.edges}
    probs[(4, 5)] = Fraction(2, 3)
    probs[(5, 6)] = Fraction(1, 3)
    return g, AdversarySpec.custom(probs)


def fig_bridge_tree_graph() -> Graph:
    """
    22 vertices whose bridgeless components have sizes 4, 7 and 3, plus
    eight single vertices; the bridge tree has 11 nodes and 10 edges.
    """
    edges = [(0, 1), (1, 2), (2, 3), (3, 0),
             (0, 4), (4, 10),
             (5, 6), (6, 7), (7, 8), (8, 9), (9, 10), (10, 5), (6, 11), (11, 9),
             (5, 12), (3, 13), (13, 14),
             (9, 15), (15, 16), (16, 17), (17, 15),
             (7, 18), (18, 19), (19, 20), (20, 21)]
    return Graph.from_edges(22, edges)


def _as_rule(s: StrategyProfile, native: FormationRule,
             rule: FormationRule | None) -> StrategyProfile:
    if rule is None or rule is native:
        return s
    if rule is FormationRule.BILATERAL:
        return to_bilateral(s)
    return essentialize(s, FormationRule.UNILATERAL)


# name -> (builder(n, l, k), native rule)
CONSTRUCTIONS = {
    "star": (lambda n, l, k: star_profile(n), FormationRule.UNILATERAL),
    "cycle": (lambda n, l, k: cycle_profile(n), FormationRule.UNILATERAL),
    "path": (lambda n, l, k: path_nearest_end_profile(n), FormationRule.UNILATERAL),
    "three-stars": (lambda n, l, k: three_stars_profile(n), FormationRule.BILATERAL),
    "cycle-with-path": (lambda n, l, k: cycle_with_path_profile(n, l),
                        FormationRule.BILATERAL),
    "gadget": (lambda n, l, k: non_convex_gadget(k).profile, FormationRule.UNILATERAL),
    "anonymous-nonsymmetric": (
        lambda n, l, k: profile_from_graph(fig_anonymous_nonsymmetric()[0],
                                           FormationRule.UNILATERAL),
        FormationRule.UNILATERAL),
    "bridge-tree": (
        lambda n, l, k: profile_from_graph(fig_bridge_tree_graph(),
                                           FormationRule.UNILATERAL),
        FormationRule.UNILATERAL),
}


def construct(name: str, n: int | None = None, rule: FormationRule | None = None,
              l: int | None = None, k: int | None = None) -> StrategyProfile:
    """
    Builds a registered construction. A rule other than the native one
    symmetrises the requests (BLF) or keeps the smaller id's request (ULF).
    """
    if name not in CONSTRUCTIONS:
        raise BadShape(f"unknown construction {name!r}, choose from {sorted(CONSTRUCTIONS)}")
    builder, native = CONSTRUCTIONS[name]
    if name in ("star", "cycle", "path", "three-stars", "cycle-with-path") and n is None:
        raise BadShape(f"construction {name} needs --n")
    if name == "cycle-with-path" and l is None:
        raise BadShape("construction cycle-with-path needs --l")
    profile = builder(n, l, DEFAULT_GADGET_CYCLE if k is None else k)
    log.info(f"Constructed {name} on {profile.n} players")
    return _as_rule(profile, native, rule)


__all__ = [
    "star_profile", "cycle_profile", "path_nearest_end_profile",
    "three_stars_parts", "three_stars_profile", "cycle_with_path_profile",
    "NonConvexGadget", "min_gadget_cycle", "non_convex_gadget",
    "ANONYMOUS_NONSYMMETRIC_ORBITS", "fig_anonymous_nonsymmetric",
    "fig_bridge_tree_graph", "CONSTRUCTIONS", "construct",
]
