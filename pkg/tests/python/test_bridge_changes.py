import unittest
import itertools
import os
import random
import sys
from fractions import Fraction

import networkx as nx

# Add the source directory to the path to import graph_core
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', '..', 'src'))
from adversary import SIMPLE_MINDED, critical_edges
from cost import disconnection_costs
from graph_core import (
    bridges, canonical_edge, graph_count, graph_from_index, is_connected, iter_graphs,
    relevance_sum,
)

MAX_N = 7
SEED = 11


def connected_graphs(exhaustive_up_to: int, samples: int):
    """All connected graphs up to exhaustive_up_to vertices, seeded samples above, up to 7."""
    for n in range(2, exhaustive_up_to + 1):
        for g in iter_graphs(n):
            if is_connected(g):
                yield g
    rng = random.Random(SEED)
    for n in range(exhaustive_up_to + 1, MAX_N + 1):
        found = 0
        while found < samples:
            g = graph_from_index(n, rng.randrange(graph_count(n)))
            if is_connected(g):
                found += 1
                yield g


def non_edges(g):
    return [(v, w) for v, w in itertools.combinations(range(g.n), 2) if not g.has_edge(v, w)]


def non_bridges(g):
    return sorted(g.edges - bridges(g))


def path_edges(path):
    return {canonical_edge(a, b) for a, b in zip(path, path[1:])}


def shortest_cycle_through(g, v, w):
    """Length of a shortest cycle using the link {v, w} on top of g without it."""
    rest = g.without_edges([(v, w)]) if g.has_edge(v, w) else g
    return nx.shortest_path_length(rest.to_networkx(), v, w) + 1


class TestBridgeChanges(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.graphs = list(connected_graphs(6, 2000))
        cls.small_graphs = list(connected_graphs(5, 500))

    def test_added_edge_cycles_hold_former_bridges(self):
        """Bridges healed by a new edge lie on every cycle through it."""
        for g in self.graphs:
            for v, w in non_edges(g):
                healed = bridges(g) - bridges(g.with_edges([(v, w)]))
                if not healed:
                    continue
                for path in nx.all_simple_paths(g.to_networkx(), v, w):
                    with self.subTest(edges=g.sorted_edges(), e=(v, w), path=path):
                        self.assertLessEqual(healed, path_edges(path))

    def test_removed_edge_cycles_hold_new_bridges(self):
        """Bridges created by removing a non-bridge lie on every cycle through it."""
        for g in self.graphs:
            for v, w in non_bridges(g):
                rest = g.without_edges([(v, w)])
                created = bridges(rest) - bridges(g)
                if not created:
                    continue
                for path in nx.all_simple_paths(rest.to_networkx(), v, w):
                    with self.subTest(edges=g.sorted_edges(), e=(v, w), path=path):
                        self.assertLessEqual(created, path_edges(path))

    def test_removing_more_links_at_v_keeps_new_bridges(self):
        """Edges turned into bridges by dropping e still are once v also drops F."""
        checked = 0
        for g in self.small_graphs:
            for e in g.sorted_edges():
                for v in e:
                    others = [f for f in g.edges if v in f and f != e]
                    for size in range(len(others) + 1):
                        for dropped in itertools.combinations(others, size):
                            reduced = g.without_edges(dropped)
                            both = reduced.without_edges([e])
                            if not is_connected(both):
                                continue
                            first = bridges(g.without_edges([e])) - bridges(g)
                            second = bridges(both) - bridges(reduced)
                            checked += 1
                            with self.subTest(edges=g.sorted_edges(), e=e, dropped=dropped):
                                self.assertLessEqual(first, second)
        self.assertGreater(checked, 0)

    def test_buying_an_edge(self):
        """The gain lies in [dR/(m+1), 1/2 + dR/(m+1)], below the cycle-length cap and n/2."""
        for g in self.graphs:
            m = g.m
            before = disconnection_costs(g, SIMPLE_MINDED)
            for v, w in non_edges(g):
                after_graph = g.with_edges([(v, w)])
                after = disconnection_costs(after_graph, SIMPLE_MINDED)
                cycle = shortest_cycle_through(g, v, w)
                cap = Fraction(1, 2) + Fraction((cycle - 1) * (2 * g.n - cycle), 2 * (m + 1))
                for p in (v, w):
                    gain = before[p] - after[p]
                    delta = relevance_sum(g, p) - relevance_sum(after_graph, p)
                    with self.subTest(edges=g.sorted_edges(), e=(v, w), player=p):
                        self.assertGreaterEqual(delta, 0)
                        self.assertGreaterEqual(gain, Fraction(delta, m + 1))
                        self.assertLessEqual(gain, Fraction(1, 2) + Fraction(delta, m + 1))
                        self.assertLessEqual(Fraction(1, 2) + Fraction(delta, m + 1),
                                             Fraction(g.n, 2))
                        self.assertLessEqual(gain, cap)

    def test_selling_a_non_bridge(self):
        """The loss lies in [dR/m, 1/2 + dR/m], below the cycle-length cap and n/2."""
        for g in self.graphs:
            m = g.m
            before = disconnection_costs(g, SIMPLE_MINDED)
            for v, w in non_bridges(g):
                rest = g.without_edges([(v, w)])
                after = disconnection_costs(rest, SIMPLE_MINDED)
                cycle = shortest_cycle_through(g, v, w)
                cap = Fraction(1, 2) + Fraction((cycle - 1) * (2 * g.n - cycle), 2 * m)
                for p in (v, w):
                    loss = after[p] - before[p]
                    delta = relevance_sum(rest, p) - relevance_sum(g, p)
                    with self.subTest(edges=g.sorted_edges(), e=(v, w), player=p):
                        self.assertGreaterEqual(delta, 0)
                        self.assertGreaterEqual(loss, Fraction(delta, m))
                        self.assertLessEqual(loss, Fraction(1, 2) + Fraction(delta, m))
                        self.assertLessEqual(Fraction(1, 2) + Fraction(delta, m),
                                             Fraction(g.n, 2))
                        self.assertLessEqual(loss, cap)

    def test_critical_edges_off_the_cycle_stay_critical(self):
        """Critical edges not put on a cycle by a new edge are exactly the new critical set."""
        seen = set()
        for g in self.graphs:
            crit = critical_edges(g)
            if crit.m_max < 2 or crit.sep_max == 0:
                continue
            for v, w in non_edges(g):
                grown = g.with_edges([(v, w)])
                healed = crit.edges - bridges(grown)
                if len(healed) == crit.m_max:
                    continue
                seen.add(len(healed))
                with self.subTest(edges=g.sorted_edges(), e=(v, w)):
                    self.assertEqual(critical_edges(grown).edges, crit.edges - healed)
        self.assertTrue({1, 2} <= seen)


if __name__ == "__main__":
    # Run the tests with verbose output
    unittest.main(verbosity=2)
