"""
Command-line front end of the workbench.
"""

import argparse
from dataclasses import dataclass, field
from fractions import Fraction

from adversary import SIMPLE_MINDED, SMART, AdversarySpec
from analysis import (
    analyze, better_response_dynamics, brute_force_optimum, enumerate_equilibria,
    optimum_closed_form, sweep, theorem_audit,
)
from check_jsons import check_json_configs
from constants import CONFIG_DIR
from constructions import CONSTRUCTIONS, construct
from cost import as_alpha, cost_report
from equilibrium import (
    ConceptKind, check_concept, convexity_violations, require_compatible,
)
from error import UsageError, WorkbenchError, fatal_error, get_logger
from formats import (
    analysis_to_dict, audit_to_dict, cost_report_to_dict, dumps_report,
    dynamics_to_dict, optimum_to_dict, profile_to_json, read_custom_table,
    read_graph, read_profile, sweep_csv, to_jsonable, verdict_to_dict,
    write_report,
)
from option import get_limit
from strategy import FormationRule, StrategyProfile, profile_from_graph

DESCRIPTION = """
Workbench for the adversarial network-formation game. Subcommands:

cost       Cost report of a profile.
check      Equilibrium verdict of a profile (exit 2 when it fails).
optimum    Closed-form optimum, optionally confirmed by brute force.
poa, pos   Price of anarchy / stability by exhaustive enumeration,
           or a CSV sweep over --alphas.
dynamics   Better-response dynamics from a start profile.
audit      Structural checks on enumerated (or given) equilibria.
convexity  Drop subsets violating convexity, per player.
construct  Profile JSON of a named construction.
"""

SUBCOMMANDS = ["cost", "check", "optimum", "poa", "pos", "dynamics", "audit",
               "convexity", "construct"]


class WorkbenchArgumentParser(argparse.ArgumentParser):
    """Reports usage problems as UsageError instead of exiting."""

    def error(self, message):
        raise UsageError(message)


@dataclass
class RunConfig:
    subcommand: str
    n: int | None = None
    alpha: Fraction | None = None
    rule: FormationRule = FormationRule.UNILATERAL
    rule_given: bool = False
    adversary: AdversarySpec = SIMPLE_MINDED
    concept: ConceptKind | None = None
    profile: str | None = None
    graph: str | None = None
    start: str | None = None
    output: str | None = None
    name: str | None = None
    l: int | None = None
    k: int | None = None
    alphas: list[Fraction] = field(default_factory=list)
    brute_force: bool = False
    budget: int = 0
    enumeration_limit: int | None = None
    brute_force_limit: int = 0
    max_rounds: int = 0
    max_k: int = 0
    jobs: int = 1


def build_parser() -> WorkbenchArgumentParser:
    parser = WorkbenchArgumentParser(
        prog="formation_workbench",
        description=DESCRIPTION,
        usage='%(prog)s <subcommand> --help for more info',
        formatter_class=argparse.RawTextHelpFormatter,
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, help="number of players")
    common.add_argument("--alpha", help='link cost, integer or "p/q"')
    common.add_argument("--rule", choices=["ulf", "blf"], help="link formation rule")
    common.add_argument("--adversary", default="simple",
                        help="simple | smart | custom:PATH (default: simple)")
    common.add_argument("--concept", choices=[c.value for c in ConceptKind],
                        help="equilibrium concept")
    common.add_argument("--profile", help="profile JSON file")
    common.add_argument("--graph", help="graph file (text or JSON)")
    common.add_argument("--output", help="report file (default: stdout)")
    common.add_argument("--jobs", type=int, help="worker processes")
    common.add_argument("--budget", type=int, help="deviation search budget")
    common.add_argument("--limit", type=int,
                        help="largest n for both the equilibrium enumeration "
                             "and the brute-force optimum")
    common.add_argument("--max-rounds", type=int, dest="max_rounds",
                        help="dynamics round limit")
    common.add_argument("--max-k", type=int, dest="max_k",
                        help="largest drop subset in convexity checks")

    subparsers = parser.add_subparsers(dest="subcommand", required=True)
    for name in SUBCOMMANDS:
        sub = subparsers.add_parser(name, parents=[common],
                                    formatter_class=argparse.RawTextHelpFormatter)
        if name == "construct":
            sub.add_argument("name", choices=sorted(CONSTRUCTIONS))
            sub.add_argument("--l", type=int, help="path length of cycle-with-path")
            sub.add_argument("--k", type=int, help="cycle length of the gadget")
        if name == "optimum":
            sub.add_argument("--brute-force", action="store_true", dest="brute_force",
                             help="confirm by enumerating all graphs")
        if name in ("poa", "pos"):
            sub.add_argument("--alphas", help="comma separated alpha grid, emits CSV")
        if name == "dynamics":
            sub.add_argument("--start", help="start profile JSON file")
    return parser


def parse_adversary(text: str) -> AdversarySpec:
    if text == "simple":
        return SIMPLE_MINDED
    if text == "smart":
        return SMART
    if text.startswith("custom:") and len(text) > len("custom:"):
        return read_custom_table(text[len("custom:"):])
    raise UsageError(f"--adversary: expected simple, smart or custom:PATH, got {text!r}")


def config_from_args(args: argparse.Namespace) -> RunConfig:
    concept = ConceptKind(args.concept) if args.concept else None
    if args.rule is not None:
        rule = FormationRule(args.rule)
    elif concept is not None:
        rule = concept.rule
    else:
        rule = FormationRule.UNILATERAL
    if concept is not None:
        require_compatible(concept, rule)

    alphas = []
    if getattr(args, "alphas", None):
        alphas = [as_alpha(a.strip()) for a in args.alphas.split(",") if a.strip()]

    def limit(flag, name):
        return get_limit(name) if flag is None else flag

    return RunConfig(
        subcommand=args.subcommand,
        n=args.n,
        alpha=None if args.alpha is None else as_alpha(args.alpha),
        rule=rule,
        rule_given=args.rule is not None,
        adversary=parse_adversary(args.adversary),
        concept=concept,
        profile=args.profile,
        graph=args.graph,
        start=getattr(args, "start", None),
        output=args.output,
        name=getattr(args, "name", None),
        l=getattr(args, "l", None),
        k=limit(getattr(args, "k", None), "gadget_cycle"),
        alphas=alphas,
        brute_force=getattr(args, "brute_force", False),
        budget=limit(args.budget, "search_budget"),
        enumeration_limit=limit(
            args.limit,
            "ulf_enumeration_limit" if rule is FormationRule.UNILATERAL
            else "blf_enumeration_limit"),
        brute_force_limit=limit(args.limit, "brute_force_limit"),
        max_rounds=limit(args.max_rounds, "max_rounds"),
        max_k=limit(args.max_k, "convexity_max_k"),
        jobs=max(1, limit(args.jobs, "jobs")),
    )


def _require(config: RunConfig, *names: str) -> None:
    for name in names:
        if getattr(config, name) is None:
            flag = "--" + name.replace("_", "-")
            raise UsageError(f"{config.subcommand} needs {flag}")


def _load_profile(config: RunConfig, path: str | None = None) -> StrategyProfile:
    path = path or config.profile
    if path is not None:
        return read_profile(path)
    if config.graph is not None:
        return profile_from_graph(read_graph(config.graph), config.rule)
    raise UsageError(f"{config.subcommand} needs --profile or --graph")


def _concept(config: RunConfig) -> ConceptKind:
    if config.concept is not None:
        return config.concept
    return ConceptKind.NE if config.rule is FormationRule.UNILATERAL else ConceptKind.PNE


def run(config: RunConfig) -> int:
    """Executes one subcommand; 0 on success, 2 when `check` finds no equilibrium."""
    log = get_logger()
    log.info(f"Running {config.subcommand} ({config.rule.value}, {config.adversary.label})")
    status = 0

    match config.subcommand:
        case "cost":
            _require(config, "alpha")
            report = cost_report(_load_profile(config), config.rule,
                                 config.adversary, config.alpha)
            text = dumps_report(cost_report_to_dict(report))

        case "check":
            _require(config, "alpha", "concept")
            verdict = check_concept(_load_profile(config), config.concept,
                                    config.adversary, config.alpha, config.budget)
            text = dumps_report(verdict_to_dict(verdict))
            status = 0 if verdict.holds else 2

        case "optimum":
            _require(config, "n", "alpha")
            closed = optimum_closed_form(config.n, config.alpha, config.rule)
            brute = None
            if config.brute_force:
                brute = brute_force_optimum(config.n, config.alpha, config.rule,
                                            config.adversary, config.brute_force_limit,
                                            config.jobs)
            text = dumps_report(optimum_to_dict(closed, brute))

        case "poa" | "pos":
            _require(config, "n")
            limits = dict(enumeration_limit=config.enumeration_limit,
                          jobs=config.jobs, budget=config.budget)
            if config.alphas:
                rows = sweep(config.n, config.alphas, config.rule, config.adversary,
                             _concept(config), **limits)
                text = sweep_csv(rows)
            else:
                _require(config, "alpha")
                result = analyze(config.n, config.alpha, config.rule, config.adversary,
                                 _concept(config), **limits)
                report = analysis_to_dict(result)
                report["ratio"] = to_jsonable(
                    result.poa if config.subcommand == "poa" else result.pos)
                text = dumps_report(report)

        case "dynamics":
            _require(config, "alpha")
            start = _load_profile(config, config.start)
            result = better_response_dynamics(start, config.rule, config.adversary,
                                              config.alpha, config.max_rounds,
                                              config.budget)
            text = dumps_report(dynamics_to_dict(result))

        case "audit":
            _require(config, "alpha")
            concept = _concept(config)
            if config.profile is not None or config.graph is not None:
                profiles = [_load_profile(config)]
                n = profiles[0].n
            else:
                _require(config, "n")
                n = config.n
                profiles = enumerate_equilibria(n, config.alpha, config.rule,
                                                config.adversary, concept,
                                                config.enumeration_limit,
                                                config.jobs, config.budget)
            report = theorem_audit(profiles, n, config.alpha, config.rule,
                                   config.adversary, concept, config.budget)
            text = dumps_report(audit_to_dict(report))

        case "convexity":
            _require(config, "alpha")
            profile = _load_profile(config)
            report = {
                str(v): [to_jsonable(x) for x in convexity_violations(
                    profile, v, config.adversary, config.alpha, config.max_k, config.rule)]
                for v in range(profile.n)
            }
            text = dumps_report({"max_k": config.max_k, "violations": report})

        case "construct":
            rule = config.rule if config.rule_given else None
            profile = construct(config.name, config.n, rule, config.l, config.k)
            text = dumps_report(profile_to_json(profile))

        case _:
            raise UsageError(f"unknown subcommand {config.subcommand!r}")

    write_report(text, config.output)
    return status


def main(argv: list[str] | None = None) -> int:
    # This should be the first call to the logging framework,
    # so this call will also properly set up the logger.
    get_logger()
    check_json_configs(CONFIG_DIR)

    try:
        config = config_from_args(build_parser().parse_args(argv))
        return run(config)
    except WorkbenchError as e:
        raise fatal_error(f"{type(e).__name__}: {e}", e, 1)
    except OSError as e:
        raise fatal_error(f"Cannot access {e.filename}: {e.strerror}", e, 1)


__all__ = ["RunConfig", "build_parser", "config_from_args", "parse_adversary",
           "run", "main"]
