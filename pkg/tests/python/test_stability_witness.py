import unittest
import os
import sys
from fractions import Fraction
from math import floor

# Add the source directory to the path to import analysis
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', '..', 'src'))
from analysis import stability_witness
from adversary import SIMPLE_MINDED, SMART
from error import TooSmall

SIZES = (9, 10, 12, 20)
CERTIFY_UP_TO = 12


def alphas_for(n: int) -> list[Fraction]:
    edge = Fraction(floor((n - 1) / 2), 2)
    return [edge, edge + Fraction(1, 100), Fraction(2 * (n - 1))]


class TestStabilityWitness(unittest.TestCase):

    def test_ratio_within_bound(self):
        """The construction stays within 1 + 8/(n-2) of the optimum."""
        for n in SIZES:
            for alpha in alphas_for(n):
                for spec in (SIMPLE_MINDED, SMART):
                    with self.subTest(n=n, alpha=alpha, spec=spec.label):
                        witness = stability_witness(n, alpha, spec, certify=n <= CERTIFY_UP_TO)
                        self.assertEqual(witness.bound, 1 + Fraction(8, n - 2))
                        self.assertLessEqual(witness.ratio, witness.bound)
                        self.assertEqual(witness.ratio, witness.social / witness.optimum)
                        if n <= CERTIFY_UP_TO:
                            self.assertTrue(witness.certified)
                        else:
                            self.assertIsNone(witness.certified)

    def test_shape_switch(self):
        """Cycle up to the edge value, star after it."""
        for n in SIZES:
            edge, above, far = alphas_for(n)
            with self.subTest(n=n):
                self.assertEqual(stability_witness(n, edge, SMART).shape, "cycle")
                self.assertEqual(stability_witness(n, above, SMART).shape, "star")
                self.assertEqual(stability_witness(n, far, SMART).shape, "star")

    def test_cycle_is_optimal(self):
        """At the edge value the cycle is the optimum itself."""
        witness = stability_witness(10, 2, SIMPLE_MINDED)
        self.assertEqual(witness.social, 20)
        self.assertEqual(witness.ratio, 1)

    def test_too_small(self):
        """Fewer than nine players are refused."""
        with self.assertRaises(TooSmall):
            stability_witness(8, 1, SMART)


if __name__ == "__main__":
    # Run the tests with verbose output
    unittest.main(verbosity=2)
