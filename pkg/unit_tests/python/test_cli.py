import unittest
import io
import json
import os
import sys
import tempfile
from fractions import Fraction
from unittest.mock import patch

# Add the source directory to the path to import cli
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', '..', 'src'))
import cli
from adversary import SMART, AdversaryKind
from constructions import star_profile
from equilibrium import ConceptKind
from error import IncompatibleConcept, UsageError
from formats import SWEEP_COLUMNS, profile_to_json
from strategy import FormationRule, StrategyProfile


class TestCli(unittest.TestCase):

    def setUp(self):
        """Set up test fixtures before each test method."""
        self.tmp = tempfile.TemporaryDirectory()
        self.out = os.path.join(self.tmp.name, "report.out")

    def tearDown(self):
        self.tmp.cleanup()

    def write_profile(self, s: StrategyProfile, name: str = "profile.json") -> str:
        path = os.path.join(self.tmp.name, name)
        with open(path, "w", encoding="utf-8") as f:
            json.dump(profile_to_json(s), f)
        return path

    def run_main(self, *argv: str) -> int:
        with patch("sys.stderr", new_callable=io.StringIO):
            return cli.main([*argv, "--output", self.out])

    def read_out(self) -> str:
        with open(self.out, "r", encoding="utf-8") as f:
            return f.read()

    def assert_fails(self, *argv: str):
        with self.assertRaises(SystemExit) as cm:
            self.run_main(*argv)
        self.assertEqual(cm.exception.code, 1)


class TestCost(TestCli):

    def test_path_social_cost(self):
        """The 5-path at alpha 1 costs 14."""
        path = self.write_profile(
            StrategyProfile.from_pairs(5, [(0, 1), (1, 2), (2, 3), (3, 4)]))
        self.assertEqual(self.run_main("cost", "--profile", path, "--alpha", "1"), 0)
        self.assertEqual(json.loads(self.read_out())["social"], "14/1")

    def test_graph_input(self):
        """A graph file is turned into a profile for the rule."""
        graph = os.path.join(self.tmp.name, "star.txt")
        with open(graph, "w", encoding="utf-8") as f:
            f.write("n 5\ne 0 1\ne 0 2\ne 0 3\ne 0 4\n")
        self.run_main("cost", "--graph", graph, "--alpha", "1", "--rule", "blf")
        self.assertEqual(json.loads(self.read_out())["social"], "16/1")

    def test_missing_alpha(self):
        """cost needs --alpha."""
        path = self.write_profile(star_profile(5))
        self.assert_fails("cost", "--profile", path)

    def test_missing_profile_file(self):
        """An unreadable input file is fatal."""
        self.assert_fails("cost", "--profile", os.path.join(self.tmp.name, "nope.json"),
                          "--alpha", "1")

    def test_non_positive_alpha(self):
        """alpha must be positive."""
        path = self.write_profile(star_profile(5))
        self.assert_fails("cost", "--profile", path, "--alpha", "0")


class TestCheck(TestCli):

    def test_exit_codes(self):
        """0 when the concept holds, 2 with a witness otherwise."""
        path = self.write_profile(star_profile(5))
        self.assertEqual(self.run_main("check", "--profile", path, "--alpha", "2",
                                       "--concept", "ne"), 0)
        self.assertTrue(json.loads(self.read_out())["holds"])
        self.assertEqual(self.run_main("check", "--profile", path, "--alpha", "1/2",
                                       "--concept", "ne"), 2)
        self.assertEqual(json.loads(self.read_out())["witness"]["added"], [[1, 2]])

    def test_incompatible_rule(self):
        """PNE under ULF is a usage error."""
        path = self.write_profile(star_profile(5))
        self.assert_fails("check", "--profile", path, "--alpha", "2",
                          "--concept", "pne", "--rule", "ulf")


class TestOptimum(TestCli):

    def test_closed_form(self):
        """Both shapes tie at alpha 8 on 5 players."""
        self.run_main("optimum", "--n", "5", "--alpha", "8")
        report = json.loads(self.read_out())
        self.assertEqual(report, {"closed_form": {"value": "40/1", "shape": "both"}})

    def test_brute_force(self):
        """The brute-force value matches the closed form."""
        self.run_main("optimum", "--n", "4", "--alpha", "1", "--brute-force")
        report = json.loads(self.read_out())
        self.assertEqual(report["brute_force"]["value"], report["closed_form"]["value"])


class TestRatios(TestCli):

    def test_pos(self):
        """The optimal star is an NE at alpha 10."""
        self.run_main("pos", "--n", "4", "--alpha", "10", "--concept", "ne")
        self.assertEqual(json.loads(self.read_out())["ratio"], "1/1")

    def test_sweep_csv(self):
        """--alphas emits one CSV row per alpha."""
        self.run_main("poa", "--n", "4", "--alphas", "1/2,2", "--concept", "ps")
        lines = self.read_out().splitlines()
        self.assertEqual(lines[0], ",".join(SWEEP_COLUMNS))
        self.assertEqual(len(lines), 3)
        self.assertTrue(lines[1].startswith("4,1/2,blf,simple,ps,"))


class TestOtherSubcommands(TestCli):

    def test_construct_native_rule(self):
        """Three stars are built bilateral unless a rule is given."""
        self.run_main("construct", "three-stars", "--n", "13")
        self.assertEqual(len(json.loads(self.read_out())["requests"]), 24)
        self.run_main("construct", "three-stars", "--n", "13", "--rule", "ulf")
        self.assertEqual(len(json.loads(self.read_out())["requests"]), 12)

    def test_construct_unknown(self):
        """Unknown construction names are rejected by the parser."""
        self.assert_fails("construct", "wheel", "--n", "5")

    def test_dynamics(self):
        """The 5-path closes into a cycle at alpha 1/2."""
        start = self.write_profile(
            StrategyProfile.from_pairs(5, [(0, 1), (1, 2), (2, 3), (3, 4)]))
        self.run_main("dynamics", "--start", start, "--alpha", "1/2")
        report = json.loads(self.read_out())
        self.assertTrue(report["converged"])
        self.assertEqual(len(report["moves"]), 1)

    def test_audit_given_profile(self):
        """Auditing the 9-star at alpha 2 finds no failure."""
        path = self.write_profile(star_profile(9))
        self.run_main("audit", "--profile", path, "--alpha", "2")
        self.assertTrue(json.loads(self.read_out())["all_hold"])

    def test_convexity_gadget(self):
        """The gadget player's two links violate convexity for smart."""
        self.run_main("construct", "gadget")
        gadget = os.path.join(self.tmp.name, "gadget.json")
        os.replace(self.out, gadget)
        self.run_main("convexity", "--profile", gadget, "--alpha", "1", "--adversary", "smart")
        report = json.loads(self.read_out())
        self.assertEqual(report["max_k"], 4)
        self.assertEqual(report["violations"]["3"], [
            {"subset": [1, 5], "joint_change": "11/1", "single_sum": "13/1", "slack": "2/1"}])


class TestConfig(unittest.TestCase):

    def setUp(self):
        """Set up test fixtures before each test method."""
        self.parser = cli.build_parser()

    def test_rule_from_concept(self):
        """A bilateral concept selects BLF when no rule is given."""
        config = cli.config_from_args(self.parser.parse_args(
            ["check", "--concept", "ps", "--alpha", "3/2"]))
        self.assertIs(config.rule, FormationRule.BILATERAL)
        self.assertFalse(config.rule_given)
        self.assertIs(config.concept, ConceptKind.PS)
        self.assertEqual(config.alpha, Fraction(3, 2))

    def test_incompatible(self):
        """Explicit rule and concept must agree."""
        with self.assertRaises(IncompatibleConcept):
            cli.config_from_args(self.parser.parse_args(
                ["check", "--concept", "ne", "--rule", "blf"]))

    def test_alphas(self):
        """The alpha grid is parsed exactly."""
        config = cli.config_from_args(self.parser.parse_args(
            ["poa", "--n", "4", "--alphas", "1/4, 2,3"]))
        self.assertEqual(config.alphas, [Fraction(1, 4), Fraction(2), Fraction(3)])

    def test_parser_errors_raise(self):
        """Argument problems become UsageError."""
        with self.assertRaises(UsageError):
            self.parser.parse_args(["frobnicate"])
        with self.assertRaises(UsageError):
            self.parser.parse_args(["cost", "--n", "five"])

    def test_limit_caps_both(self):
        """--limit sets the enumeration and the brute-force caps together."""
        for argv in (["poa", "--n", "4", "--limit", "4"],
                     ["pos", "--n", "4", "--concept", "ps", "--limit", "4"],
                     ["optimum", "--n", "4", "--brute-force", "--limit", "4"]):
            with self.subTest(argv=argv):
                config = cli.config_from_args(self.parser.parse_args(argv))
                self.assertEqual(config.enumeration_limit, 4)
                self.assertEqual(config.brute_force_limit, 4)

    def test_limit_help_names_both_caps(self):
        """The --limit help mentions both caps."""
        with patch("sys.stdout", new_callable=io.StringIO) as out:
            with self.assertRaises(SystemExit):
                self.parser.parse_args(["poa", "--help"])
        help_text = " ".join(out.getvalue().split())
        self.assertIn("equilibrium enumeration and the brute-force optimum", help_text)

    def test_parse_adversary(self):
        """simple, smart and custom tables."""
        self.assertIs(cli.parse_adversary("smart"), SMART)
        with self.assertRaises(UsageError):
            cli.parse_adversary("clever")
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "table.json")
            with open(path, "w", encoding="utf-8") as f:
                f.write('{"probs": [[0, 1, "1/1"]]}')
            self.assertIs(cli.parse_adversary(f"custom:{path}").kind, AdversaryKind.CUSTOM)


if __name__ == "__main__":
    # Run the tests with verbose output
    unittest.main(verbosity=2)
