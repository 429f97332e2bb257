import unittest
import os
import sys
from fractions import Fraction

# Add the source directory to the path to import adversary
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', '..', 'src'))
import adversary
from adversary import SIMPLE_MINDED, SMART, AdversarySpec
from constructions import fig_anonymous_nonsymmetric, three_stars_profile
from error import DisconnectedInput, EmptyGraph, InvalidTable
from graph_core import Graph, cycle_graph, path_graph, star_graph
from strategy import FormationRule, final_graph


class TestDistribution(unittest.TestCase):

    def test_simple_minded_uniform(self):
        """Each star edge gets 1/4."""
        dist = adversary.distribution(SIMPLE_MINDED, star_graph(5))
        self.assertEqual(set(dist.as_dict().values()), {Fraction(1, 4)})
        self.assertEqual(sum(p for _, p in dist.probs), 1)

    def test_smart_path(self):
        """The smart adversary hits the two middle edges of the 5-path."""
        dist = adversary.distribution(SMART, path_graph(5))
        self.assertEqual(dist.prob((1, 2)), Fraction(1, 2))
        self.assertEqual(dist.prob((3, 2)), Fraction(1, 2))
        self.assertEqual(dist.prob((0, 1)), 0)
        self.assertEqual(dist.support(), frozenset({(1, 2), (2, 3)}))

    def test_smart_bridgeless_uniform(self):
        """On a bridgeless graph all edges are critical."""
        dist = adversary.distribution(SMART, cycle_graph(6))
        self.assertEqual(set(dist.as_dict().values()), {Fraction(1, 6)})

    def test_empty_graph(self):
        """A single vertex has no edge to delete."""
        with self.assertRaises(EmptyGraph):
            adversary.distribution(SIMPLE_MINDED, Graph(1, frozenset()))

    def test_disconnected(self):
        """Adversaries act on connected graphs."""
        with self.assertRaises(DisconnectedInput):
            adversary.distribution(SIMPLE_MINDED, Graph.from_edges(4, [(0, 1), (2, 3)]))


class TestCustomTable(unittest.TestCase):

    def setUp(self):
        """Set up test fixtures before each test method."""
        self.g = path_graph(3)

    def test_valid_table(self):
        """A table summing to one is used as is."""
        spec = AdversarySpec.custom({(0, 1): "1/3", (1, 2): Fraction(2, 3)})
        dist = adversary.distribution(spec, self.g)
        self.assertEqual(dist.prob((2, 1)), Fraction(2, 3))

    def test_missing_edge(self):
        """A graph edge absent from the table is named."""
        spec = AdversarySpec.custom({(0, 1): 1})
        with self.assertRaisesRegex(InvalidTable, r"missing \[\(1, 2\)\]"):
            adversary.distribution(spec, self.g)

    def test_mass_on_non_edge(self):
        """Positive mass outside the graph names the edge."""
        spec = AdversarySpec.custom({(0, 1): "1/2", (0, 2): "1/2"})
        with self.assertRaisesRegex(InvalidTable, r"\(0, 2\)"):
            adversary.distribution(spec, self.g)

    def test_zero_on_non_edge(self):
        """Even a zero entry for a non-edge binds the table to another graph."""
        spec = AdversarySpec.custom({(0, 1): 1, (1, 2): 0, (0, 2): 0})
        with self.assertRaises(InvalidTable):
            adversary.distribution(spec, self.g)

    def test_zero_entries_kept(self):
        """Zero entries for graph edges stay in the distribution."""
        spec = AdversarySpec.custom({(0, 1): 1, (1, 2): 0})
        dist = adversary.distribution(spec, self.g)
        self.assertEqual(dist.support(), frozenset({(0, 1)}))
        self.assertEqual(dist.prob((1, 2)), 0)

    def test_table_on_another_graph(self):
        """The figure's table does not apply once a zero-mass edge is gone."""
        g, spec = fig_anonymous_nonsymmetric()
        with self.assertRaises(InvalidTable):
            adversary.distribution(spec, g.without_edges([(0, 1)]))

    def test_wrong_total(self):
        """The exact total is reported."""
        spec = AdversarySpec.custom({(0, 1): "1/3", (1, 2): "1/3"})
        with self.assertRaisesRegex(InvalidTable, "2/3"):
            adversary.distribution(spec, self.g)

    def test_negative(self):
        """Negative probabilities are rejected."""
        spec = AdversarySpec.custom({(0, 1): 2, (1, 2): -1})
        with self.assertRaises(InvalidTable):
            adversary.distribution(spec, self.g)

    def test_duplicate_entry(self):
        """An edge listed in both orientations is rejected."""
        with self.assertRaises(InvalidTable):
            AdversarySpec.custom({(0, 1): "1/2", (1, 0): "1/2"})


class TestCriticalEdges(unittest.TestCase):

    def test_three_stars(self):
        """The hub edge of the largest star is the only critical edge."""
        g = final_graph(three_stars_profile(13), FormationRule.BILATERAL)
        self.assertEqual(adversary.critical_edges(g), (frozenset({(0, 1)}), 80, 1))

    def test_three_stars_with_extra_leaf(self):
        """One extra hub leaf keeps a single critical edge."""
        g = final_graph(three_stars_profile(14), FormationRule.BILATERAL)
        self.assertEqual(adversary.critical_edges(g).m_max, 1)

    def test_path(self):
        """The two middle edges of the 5-path."""
        crit = adversary.critical_edges(path_graph(5))
        self.assertEqual(crit.edges, frozenset({(1, 2), (2, 3)}))
        self.assertEqual((crit.sep_max, crit.m_max), (12, 2))

    def test_cycle(self):
        """All cycle edges, separation 0."""
        crit = adversary.critical_edges(cycle_graph(5))
        self.assertEqual((crit.sep_max, crit.m_max), (0, 5))

    def test_star_of_critical_edges(self):
        """Critical edges of a star share the center block."""
        self.assertTrue(adversary.critical_edges_form_star(star_graph(6)))
        self.assertTrue(adversary.critical_edges_form_star(path_graph(5)))


class TestSymmetry(unittest.TestCase):

    def test_builtin_adversaries_symmetric(self):
        """Simple-minded and smart depend on separation only."""
        for g in (path_graph(6), star_graph(5), cycle_graph(4)):
            for spec in (SIMPLE_MINDED, SMART):
                with self.subTest(graph=g, spec=spec.label):
                    self.assertTrue(adversary.is_symmetric_on(spec, g))

    def test_custom_not_symmetric(self):
        """The 2/3 - 1/3 table treats two equal bridges differently."""
        g, spec = fig_anonymous_nonsymmetric()
        self.assertFalse(adversary.is_symmetric_on(spec, g))


if __name__ == "__main__":
    # Run the tests with verbose output
    unittest.main(verbosity=2)
