"""
Reading and writing the workbench file formats.

Graph text: a line "n <count>", then "e <u> <v>" per edge. Graph JSON:
{"n": N, "edges": [[u, v], ...]}. Profile JSON: {"n": N, "requests":
[[v, w], ...]}. Custom table JSON: {"probs": [[u, v, "p/q"], ...]}.
Every rational is written as "p/q" (integers as "k/1"), an infinite cost
as "inf". Reports use sorted keys, so equal inputs give identical bytes.
"""

import csv
import io
import json
from dataclasses import fields, is_dataclass
from enum import Enum
from fractions import Fraction

from adversary import AdversarySpec
from analysis import (
    AnalysisResult, AuditReport, DynamicsResult, NoEquilibrium, OptimumShape,
)
from constants import INFINITY_TOKEN
from cost import INF, CostReport, ExtendedRational, Infinite
from equilibrium import Deviation, Verdict
from error import InvalidGraph, InvalidTable, UsageError, get_logger
from graph_core import Graph
from strategy import StrategyProfile
log = get_logger()

SWEEP_COLUMNS = ["n", "alpha", "rule", "adversary", "concept",
                 "optimum", "poa", "pos", "equilibrium_count"]


def format_rational(value: ExtendedRational | int) -> str:
    if isinstance(value, Infinite):
        return INFINITY_TOKEN
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str | int) -> ExtendedRational:
    if isinstance(text, str) and text.strip() == INFINITY_TOKEN:
        return INF
    return Fraction(text)


def to_jsonable(obj):
    """Recursively converts workbench values into JSON-ready data."""
    if isinstance(obj, (Fraction, Infinite)):
        return format_rational(obj)
    if isinstance(obj, NoEquilibrium):
        return str(obj)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, Graph):
        return graph_to_json(obj)
    if isinstance(obj, StrategyProfile):
        return profile_to_json(obj)
    if isinstance(obj, AdversarySpec):
        return obj.label
    if is_dataclass(obj):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in fields(obj)}
    if isinstance(obj, tuple) and hasattr(obj, "_fields"):
        return {name: to_jsonable(value) for name, value in zip(obj._fields, obj)}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [to_jsonable(x) for x in items]
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps_report(obj) -> str:
    return json.dumps(to_jsonable(obj), indent=2, sort_keys=True) + "\n"


def graph_to_json(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.sorted_edges()]}


def graph_to_text(g: Graph) -> str:
    lines = [f"n {g.n}"] + [f"e {u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def _graph_from_text(text: str) -> Graph:
    n, edges = None, []
    for number, line in enumerate(text.splitlines(), start=1):
        parts = line.split()
        if not parts or parts[0].startswith("#"):
            continue
        try:
            if parts[0] == "n" and len(parts) == 2 and n is None:
                n = int(parts[1])
            elif parts[0] == "e" and len(parts) == 3:
                edges.append((int(parts[1]), int(parts[2])))
            else:
                raise ValueError(line)
        except ValueError as e:
            raise InvalidGraph(f"line {number}: cannot parse {line!r}") from e
    if n is None:
        raise InvalidGraph("graph text is missing its 'n <count>' line")
    return Graph.from_edges(n, edges)


def parse_graph(text: str) -> Graph:
    """Accepts the text format and the JSON form."""
    if text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
            return Graph.from_edges(int(data["n"]), [tuple(e) for e in data["edges"]])
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
            raise InvalidGraph(f"malformed graph JSON: {e}") from e
    return _graph_from_text(text)


def read_graph(path: str) -> Graph:
    with open(path, "r", encoding="utf-8") as f:
        return parse_graph(f.read())


def profile_to_json(s: StrategyProfile) -> dict:
    return {"n": s.n, "requests": [list(r) for r in s.sorted_requests()]}


def parse_profile(text: str) -> StrategyProfile:
    try:
        data = json.loads(text)
        n, pairs = int(data["n"]), [tuple(r) for r in data["requests"]]
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
        raise UsageError(f"malformed profile JSON: {e}") from e
    if any(len(p) != 2 for p in pairs):
        raise UsageError("every request must be a [v, w] pair")
    return StrategyProfile.from_pairs(n, pairs)


def read_profile(path: str) -> StrategyProfile:
    with open(path, "r", encoding="utf-8") as f:
        return parse_profile(f.read())


def table_to_json(spec: AdversarySpec) -> dict:
    return {"probs": [[u, v, format_rational(p)] for (u, v), p in spec.table]}


def parse_custom_table(text: str) -> AdversarySpec:
    try:
        rows = json.loads(text)["probs"]
        probs = {(int(u), int(v)): Fraction(p) for u, v, p in rows}
    except (json.JSONDecodeError, KeyError, TypeError, ValueError, ZeroDivisionError) as e:
        raise InvalidTable(f"malformed custom table: {e}") from e
    return AdversarySpec.custom(probs)


def read_custom_table(path: str) -> AdversarySpec:
    with open(path, "r", encoding="utf-8") as f:
        return parse_custom_table(f.read())


def cost_report_to_dict(report: CostReport) -> dict:
    return to_jsonable(report)


def deviation_to_dict(deviation: Deviation | None) -> dict | None:
    return None if deviation is None else to_jsonable(deviation)


def verdict_to_dict(verdict: Verdict) -> dict:
    return {"concept": verdict.concept.value, "holds": verdict.holds,
            "witness": deviation_to_dict(verdict.witness)}


def optimum_to_dict(closed: OptimumShape, brute_force=None) -> dict:
    report = {"closed_form": {"value": format_rational(closed.value),
                              "shape": closed.shape}}
    if brute_force is not None:
        report["brute_force"] = {"value": format_rational(brute_force.value),
                                 "witness": graph_to_json(brute_force.witness)}
    return report


def analysis_to_dict(result: AnalysisResult) -> dict:
    return {
        "n": result.n,
        "alpha": format_rational(result.alpha),
        "rule": result.rule.value,
        "adversary": result.spec.label,
        "concept": result.concept.value,
        "optimum": format_rational(result.optimum),
        "witness": graph_to_json(result.witness),
        "equilibria": [{"profile": profile_to_json(s), "social": format_rational(c)}
                       for s, c in result.equilibria],
        "poa": to_jsonable(result.poa),
        "pos": to_jsonable(result.pos),
    }


def dynamics_to_dict(result: DynamicsResult) -> dict:
    return {
        "profile": profile_to_json(result.profile),
        "rounds": result.rounds,
        "converged": result.converged,
        "moves": [deviation_to_dict(m) for m in result.moves],
        "verdict": None if result.verdict is None else verdict_to_dict(result.verdict),
    }


def audit_to_dict(report: AuditReport) -> dict:
    return {
        "n": report.n,
        "alpha": format_rational(report.alpha),
        "rule": report.rule.value,
        "adversary": report.spec.label,
        "concept": report.concept.value,
        "all_hold": report.all_hold,
        "entries": [to_jsonable(entry) for entry in report.entries],
    }


def sweep_csv(rows: list[dict]) -> str:
    out = io.StringIO()
    writer = csv.DictWriter(out, fieldnames=SWEEP_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: to_jsonable(row[k]) for k in SWEEP_COLUMNS})
    return out.getvalue()


def write_report(text: str, path: str | None) -> None:
    """Writes to path, or to stdout when no path is given."""
    if path is None:
        print(text, end="")
        return
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)
    log.info(f"Report written to {path}")


__all__ = [
    "SWEEP_COLUMNS", "format_rational", "parse_rational", "to_jsonable",
    "dumps_report", "graph_to_json", "graph_to_text", "parse_graph",
    "read_graph", "profile_to_json", "parse_profile", "read_profile",
    "table_to_json", "parse_custom_table", "read_custom_table",
    "cost_report_to_dict", "deviation_to_dict", "verdict_to_dict",
    "optimum_to_dict", "analysis_to_dict", "dynamics_to_dict",
    "audit_to_dict", "sweep_csv", "write_report",
]
