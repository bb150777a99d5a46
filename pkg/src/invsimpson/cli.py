"""Command-line front end.

Reads one table (or a pair of tables) as CSV or JSON, runs an analysis and
writes a report. Reports are JSON by default, with every float written to
17 significant digits; ``--format text`` gives an aligned listing instead.

Exit status: 0 on success, 1 when the data are valid but the analysis
cannot be carried out, 2 for bad input.
"""

from __future__ import annotations

import argparse
import csv
import enum
import io
import json
import math
import sys
from dataclasses import dataclass, field
from importlib import resources
from typing import List, Optional, Sequence, Tuple, Union

from . import oracle
from .asymptotics import aggregate_confidence, prob_a_beats_b_normal
from .bayes import prob_a_beats_b_exact
from .core import FractionalTable, TrialTable, direction, merge, rates
from .decompose import (
    cprime_ceiling_exact,
    cprime_ceiling_printed,
    cprime_ceiling_sufficient,
    integerize,
    maximize_reversal,
    necessary_feasible,
    neutralize,
    neutralizing_split,
    solve_reversal,
    special_alpha_beta,
    suggest_lambda_mu,
)
from .errors import (
    AnalysisError,
    CountExceedsTrialsError,
    DegenerateRateError,
    DomainError,
    EmptyArmError,
    InfeasibleError,
    InputError,
    ParseError,
    TieError,
)
from .paradox import simpson_check

SCHEMA_VERSION = "1.0"
PRINTED_CEILING_NOTE = "reference-only; see docs"
MC_SAMPLES = 10**6
GRID_LATTICE = 41

EXIT_OK = 0
EXIT_ANALYSIS = 1
EXIT_INPUT = 2


class Method(enum.Enum):
    EXACT = "exact"
    NORMAL = "normal"
    BOTH = "both"


@dataclass
class AnalysisReport:
    command: str
    input_echo: List[TrialTable]
    results: List[dict] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)
    schema_version: str = SCHEMA_VERSION

    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "command": self.command,
            "input_echo": [_table_dict(t) for t in self.input_echo],
            "results": self.results,
            "warnings": self.warnings,
        }


# -- input -------------------------------------------------------------------

_ONE_TABLE_HEADER = ["label", "successes", "trials"]
_TWO_TABLE_HEADER = ["part", "label", "successes", "trials"]


def _count(text, line, column):
    try:
        return int(text.strip())
    except ValueError:
        raise ParseError(f"expected a whole number, got {text!r}", line, column) from None


def _build(sa, na, sb, nb, where):
    try:
        return TrialTable(sa, na, sb, nb)
    except (CountExceedsTrialsError, EmptyArmError, DomainError) as exc:
        raise type(exc)(f"{where}: {exc}") from None


def _check_arm(s, n, where):
    if n == 0:
        raise EmptyArmError(f"{where}: arm has no trials")
    if s > n:
        raise CountExceedsTrialsError(f"{where}: {s} successes exceed {n} trials")


def _parse_csv(source: str):
    rows = list(csv.reader(io.StringIO(source)))
    rows = [(i, r) for i, r in enumerate(rows, start=1) if any(c.strip() for c in r)]
    if not rows:
        raise ParseError("empty input", 1)
    line, header = rows[0]
    header = [h.strip() for h in header]
    if header not in (_ONE_TABLE_HEADER, _TWO_TABLE_HEADER):
        raise ParseError(
            "header must be 'label,successes,trials' or 'part,label,successes,trials'", line, 1
        )
    two = header == _TWO_TABLE_HEADER
    offset = 1 if two else 0
    expected = [(p, lab) for p in ((1, 2) if two else (None,)) for lab in ("A", "B")]
    body = rows[1:]
    if len(body) != len(expected):
        raise ParseError(
            f"expected {len(expected)} data rows, found {len(body)}",
            body[len(expected)][0] if len(body) > len(expected) else rows[-1][0] + 1,
        )
    arms = []
    for (line, row), (part, label) in zip(body, expected):
        if len(row) != len(header):
            raise ParseError(f"expected {len(header)} fields, found {len(row)}", line, len(row) + 1)
        if two and _count(row[0], line, 1) != part:
            raise ParseError(f"expected part {part}", line, 1)
        if row[offset].strip() != label:
            raise ParseError(f"expected label {label!r}, got {row[offset].strip()!r}", line, offset + 1)
        s = _count(row[offset + 1], line, offset + 2)
        n = _count(row[offset + 2], line, offset + 3)
        if s < 0 or n < 0:
            raise DomainError(f"line {line}: counts must be non-negative")
        _check_arm(s, n, f"line {line}")
        arms.append((s, n))
    tables = [
        _build(*arms[i], *arms[i + 1], f"lines {body[i][0]}-{body[i + 1][0]}")
        for i in range(0, len(arms), 2)
    ]
    return tables[0] if len(tables) == 1 else tuple(tables)


def _json_count(obj, key, where):
    if not isinstance(obj, dict) or key not in obj:
        raise ParseError(f"{where}: missing {key!r}")
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParseError(f"{where}.{key}: expected a whole number, got {value!r}")
    if isinstance(value, float):
        if not value.is_integer():
            raise ParseError(f"{where}.{key}: expected a whole number, got {value!r}")
        value = int(value)
    if value < 0:
        raise DomainError(f"{where}.{key}: counts must be non-negative")
    return value


def _json_table(obj, where):
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object")
    counts = []
    for arm in ("a", "b"):
        s = _json_count(obj.get(arm), "successes", f"{where}.{arm}")
        n = _json_count(obj.get(arm), "trials", f"{where}.{arm}")
        _check_arm(s, n, f"{where}.{arm}")
        counts.extend((s, n))
    return _build(*counts, where)


def _parse_json(source: str):
    try:
        doc = json.loads(source)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if isinstance(doc, dict) and "parts" in doc:
        parts = doc["parts"]
        if not isinstance(parts, list) or len(parts) != 2:
            raise ParseError("'parts' must be a list of two tables")
        return tuple(_json_table(p, f"parts[{i}]") for i, p in enumerate(parts))
    return _json_table(doc, "table")


def parse_table(source: str, fmt: str = "csv") -> Union[TrialTable, Tuple[TrialTable, TrialTable]]:
    """Parse the documented CSV or JSON grammar into one table or a pair."""
    fmt = fmt.lower()
    if fmt == "csv":
        return _parse_csv(source)
    if fmt == "json":
        return _parse_json(source)
    raise DomainError(f"unknown input format {fmt!r}")


def emit_table(tables, fmt: str = "csv") -> str:
    """Inverse of :func:`parse_table`."""
    fmt = fmt.lower()
    pair = isinstance(tables, (tuple, list))
    items = list(tables) if pair else [tables]
    if fmt == "json":
        objs = [
            {"a": {"successes": t.successes_a, "trials": t.trials_a},
             "b": {"successes": t.successes_b, "trials": t.trials_b}}
            for t in items
        ]
        return json.dumps({"parts": objs} if pair else objs[0]) + "\n"
    if fmt != "csv":
        raise DomainError(f"unknown output format {fmt!r}")
    lines = [",".join(_TWO_TABLE_HEADER if pair else _ONE_TABLE_HEADER)]
    for i, t in enumerate(items, start=1):
        prefix = f"{i}," if pair else ""
        lines.append(f"{prefix}A,{t.successes_a},{t.trials_a}")
        lines.append(f"{prefix}B,{t.successes_b},{t.trials_b}")
    return "\n".join(lines) + "\n"


def _detect_format(source: str) -> str:
    return "json" if source.lstrip().startswith(("{", "[")) else "csv"


# -- report pieces -----------------------------------------------------------


def _table_dict(t) -> dict:
    return {
        "successes_a": t.successes_a,
        "trials_a": t.trials_a,
        "successes_b": t.successes_b,
        "trials_b": t.trials_b,
    }


def _fractional_dict(part: FractionalTable) -> dict:
    if part.is_integral():
        return {k: int(v) for k, v in _table_dict(part).items()}
    return _table_dict(part)


def _confidence_dict(conf, n_total) -> Optional[dict]:
    if conf is None:
        return None
    return {
        "part": conf.part_index,
        "c_prime": conf.c_prime,
        "sigma": conf.sigma_i,
        "z": math.sqrt(n_total) * conf.c_prime,
    }


def _comparison_dict(name, result) -> dict:
    return {
        "name": name,
        "method": result.method.value,
        "prob_superiority": result.prob_superiority,
        "c_value": result.c_value,
        "sigma": result.sigma,
        "z": result.z,
    }


def _oracle_dict(name, rep) -> dict:
    out = {
        "name": name,
        "method": rep.method.value,
        "value": rep.value,
        "error_estimate": rep.error_estimate,
    }
    if rep.seed is not None:
        out["seed"] = rep.seed
    return out


# -- commands ----------------------------------------------------------------


def run_compare(
    table: TrialTable,
    method: Method = Method.BOTH,
    verify: bool = False,
    seed: int = 0,
    force_exact: bool = False,
) -> AnalysisReport:
    report = AnalysisReport("compare", [table])
    method = Method(method)
    if method in (Method.EXACT, Method.BOTH):
        prob = prob_a_beats_b_exact(table, force=force_exact)
        report.results.append({"name": "exact", "method": "EXACT", "prob_superiority": prob})
    if method in (Method.NORMAL, Method.BOTH):
        try:
            normal = prob_a_beats_b_normal(table)
        except DegenerateRateError as exc:
            if method is Method.NORMAL:
                raise
            report.warnings.append(f"normal approximation skipped: {exc}")
        else:
            report.results.append(_comparison_dict("normal", normal))
            try:
                report.results.append(_comparison_dict("aggregate_confidence", aggregate_confidence(table)))
            except TieError:
                report.warnings.append("arms tie; aggregate confidence C_AB is undefined")
    if verify:
        _add_probability_oracles(report, table, seed)
    return report


def _add_probability_oracles(report, table, seed):
    for name, fn, limit in (
        ("oracle_quadrature", oracle.prob_a_beats_b_quadrature, oracle.QUADRATURE_MAX_TRIALS),
        ("oracle_rational", oracle.prob_a_beats_b_rational, oracle.RATIONAL_MAX_TRIALS),
    ):
        if table.total_trials <= limit:
            report.results.append(_oracle_dict(name, fn(table)))
        else:
            report.warnings.append(f"{name} skipped: N={table.total_trials} exceeds {limit}")
    mc = oracle.prob_a_beats_b_montecarlo(table, MC_SAMPLES, seed)
    report.results.append(_oracle_dict("oracle_monte_carlo", mc))


def run_merge_check(t1: TrialTable, t2: TrialTable) -> AnalysisReport:
    report = AnalysisReport("merge-check", [t1, t2])
    rep = simpson_check(t1, t2)
    merged = merge(t1, t2)
    report.results.append({
        "name": "directions",
        "part_directions": [d.value for d in rep.part_directions],
        "merged_direction": rep.merged_direction.value,
        "reversal": rep.reversal,
        "merged_table": _table_dict(merged),
    })
    for i, res in enumerate(rep.part_confidences, start=1):
        report.results.append(_comparison_dict(f"part_{i}_comparison", res))
    report.results.append(_comparison_dict("merged_comparison", rep.merged_confidence))
    return report


def run_neutralize(
    table: TrialTable, lam: Optional[float] = None, mu: Optional[float] = None, auto: bool = False
) -> AnalysisReport:
    report = AnalysisReport("neutralize", [table])
    if auto:
        lam, mu = suggest_lambda_mu(table)
    elif lam is None or mu is None:
        raise DomainError("give both --lambda and --mu, or --auto")
    alpha, beta = neutralizing_split(table, lam, mu)
    parts = neutralize(table, lam, mu)
    section = {
        "name": "neutralizing_split",
        "lambda": float(lam),
        "mu": float(mu),
        "alpha": alpha,
        "beta": beta,
        "parts": [_fractional_dict(p) for p in parts],
    }
    report.results.append(section)
    if not all(p.is_integral() for p in parts):
        split = integerize(parts)
        report.results.append({
            "name": "integer_parts",
            "parts": [_table_dict(t) for t in split.parts],
            "realized_confidences": [
                _confidence_dict(c, table.total_trials) for c in split.realized_confidences
            ],
        })
        report.warnings.append("the exact split is fractional; integer parts are rounded")
    return report


def run_reverse(
    table: TrialTable,
    alpha: Optional[float] = None,
    beta: Optional[float] = None,
    c_prime: Optional[float] = None,
    maximize: bool = False,
    integer_output: bool = False,
    verify: bool = False,
) -> AnalysisReport:
    report = AnalysisReport("reverse", [table])
    work = table
    if direction(table).value == "B_AHEAD":
        work = table.swapped()
        report.warnings.append("arm B leads in aggregate; arms were swapped so that A leads")
    if maximize:
        solution = maximize_reversal(work)
    else:
        if alpha is None or beta is None or c_prime is None:
            raise DomainError("give --alpha, --beta and --cprime, or --maximize")
        if direction(work).value == "TIE":
            raise InfeasibleError("the arms tie; no split can make B lead in both parts")
        solution = solve_reversal(work, alpha, beta, c_prime)
    plan = solution.plan
    n_total = work.total_trials
    report.results.append({
        "name": "plan",
        "mode": "maximize" if maximize else "fixed",
        "swapped": work is not table,
        "alpha": plan.alpha,
        "beta": plan.beta,
        "requested_c_prime": plan.c_prime,
        "k1": plan.k1,
        "k2": plan.k2,
        "sigma_1": plan.sigma_1,
        "sigma_2": plan.sigma_2,
        "sigma_alpha": plan.sigma_alpha,
        "sigma_beta": plan.sigma_beta,
        "p_a1": plan.p_a1,
        "p_a2": plan.p_a2,
        "p_b1": plan.p_b1,
        "p_b2": plan.p_b2,
    })
    report.results.append({
        "name": "realized",
        "verified": solution.verified,
        "parts": [_table_dict(p) for p in solution.parts],
        "realized_confidences": [_confidence_dict(c, n_total) for c in solution.realized_confidences],
    })
    if not solution.verified:
        report.warnings.append("the realized parts do not reach the requested C'")
    report.results.append(_ceilings(work, plan))
    if integer_output:
        split = integerize(solution.parts, plan.c_prime)
        report.results.append({
            "name": "integer_parts",
            "verified": split.verified,
            "parts": [_table_dict(t) for t in split.parts],
            "realized_confidences": [_confidence_dict(c, n_total) for c in split.realized_confidences],
        })
        if not split.verified:
            report.warnings.append("after rounding to whole counts a part falls below the requested C'")
    if verify and maximize:
        grid = oracle.maximize_reversal_grid(work, GRID_LATTICE)
        section = _oracle_dict("oracle_grid", grid)
        section["lattice"] = GRID_LATTICE
        report.results.append(section)
    return report


def _ceilings(table, plan) -> dict:
    rp = rates(table)
    out = {"name": "ceilings"}
    out["exact_at_plan"] = cprime_ceiling_exact(rp, plan.alpha, plan.beta, plan.sigma_alpha, plan.sigma_beta)
    if necessary_feasible(rp, plan.alpha, plan.beta):
        out["sufficient_at_plan"] = cprime_ceiling_sufficient(rp, plan.alpha, plan.beta)
    else:
        out["sufficient_at_plan"] = None
    try:
        sa, sb = special_alpha_beta(rp)
        out["special_alpha"] = sa
        out["special_beta"] = sb
        out["sufficient_at_special"] = cprime_ceiling_sufficient(rp, sa, sb)
        out["printed"] = cprime_ceiling_printed(rp)
        out["printed_note"] = PRINTED_CEILING_NOTE
    except (DegenerateRateError, TieError, DomainError):
        pass
    return out


# -- output ------------------------------------------------------------------


def _dump(obj) -> str:
    """JSON text with floats at 17 significant digits (non-finite become null)."""
    if obj is None or isinstance(obj, bool):
        return json.dumps(obj)
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return "null"
        text = format(obj, ".17g")
        if not any(ch in text for ch in ".en"):
            text += ".0"
        return text
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(k)}: {_dump(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_dump(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def render_json(report: AnalysisReport) -> str:
    return _dump(report.to_dict()) + "\n"


def _flatten(prefix, obj, out):
    if isinstance(obj, dict):
        for k, v in obj.items():
            _flatten(f"{prefix}.{k}" if prefix else k, v, out)
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            _flatten(f"{prefix}[{i}]", v, out)
    else:
        out.append((prefix, obj))


def render_text(report: AnalysisReport) -> str:
    rows = [("schema_version", report.schema_version), ("command", report.command)]
    for i, t in enumerate(report.input_echo, start=1):
        rows.append((f"input[{i}]", "A {}/{}  B {}/{}".format(*t.as_tuple())))
    for section in report.results:
        name = section["name"]
        flat = []
        _flatten("", {k: v for k, v in section.items() if k != "name"}, flat)
        rows.extend((f"{name}.{k}", v) for k, v in flat)
    for w in report.warnings:
        rows.append(("warning", w))
    width = max(len(k) for k, _ in rows)

    def fmt(v):
        if isinstance(v, float):
            return format(v, ".10g")
        return "null" if v is None else str(v)

    return "\n".join(f"{k.ljust(width)}  {fmt(v)}" for k, v in rows) + "\n"


def report_schema() -> dict:
    text = resources.files(__package__).joinpath("report_schema.json").read_text(encoding="utf-8")
    return json.loads(text)


# -- entry point -------------------------------------------------------------


def _common_flags() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("input", nargs="?", default="-", help="CSV or JSON file ('-' for stdin)")
    p.add_argument("--input-format", choices=("csv", "json"), help="default: guess from content")
    p.add_argument("--method", choices=[m.value for m in Method], default="both")
    p.add_argument("--verify", action="store_true", help="add independent oracle checks")
    p.add_argument("--seed", type=int, default=0, help="Monte Carlo seed (default 0)")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--force-exact", action="store_true", help="lift the exact-mode size cap")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(
        prog="invsimpson", description="Simpson reversals and inverse-Simpson decompositions."
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("compare", parents=[common], help="probability that A beats B")
    sub.add_parser("merge-check", parents=[common], help="Simpson check on a pair of tables")
    neu = sub.add_parser("neutralize", parents=[common], help="split so neither arm leads")
    neu.add_argument("--lambda", dest="lam", type=float)
    neu.add_argument("--mu", type=float)
    neu.add_argument("--auto", action="store_true", help="use mid-point lambda and mu")
    rev = sub.add_parser("reverse", parents=[common], help="split so B leads in both parts")
    rev.add_argument("--alpha", type=float)
    rev.add_argument("--beta", type=float)
    rev.add_argument("--cprime", type=float)
    rev.add_argument("--maximize", action="store_true")
    rev.add_argument("--integer", action="store_true", help="also report whole-count parts")
    return parser


def _read_input(args):
    if args.input == "-":
        return sys.stdin.read()
    try:
        with open(args.input, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {args.input}: {exc.strerror}") from None


def _single(parsed, command):
    if isinstance(parsed, tuple):
        raise DomainError(f"{command} takes one table, got two parts")
    return parsed


def _dispatch(args) -> AnalysisReport:
    source = _read_input(args)
    parsed = parse_table(source, args.input_format or _detect_format(source))
    if args.command == "compare":
        return run_compare(
            _single(parsed, "compare"), Method(args.method), args.verify, args.seed, args.force_exact
        )
    if args.command == "merge-check":
        if not isinstance(parsed, tuple):
            raise DomainError("merge-check needs two parts")
        return run_merge_check(*parsed)
    if args.command == "neutralize":
        if args.auto and (args.lam is not None or args.mu is not None):
            raise DomainError("--auto cannot be combined with --lambda/--mu")
        return run_neutralize(_single(parsed, "neutralize"), args.lam, args.mu, args.auto)
    if args.maximize and any(v is not None for v in (args.alpha, args.beta, args.cprime)):
        raise DomainError("--maximize cannot be combined with --alpha/--beta/--cprime")
    return run_reverse(
        _single(parsed, "reverse"),
        args.alpha,
        args.beta,
        args.cprime,
        maximize=args.maximize,
        integer_output=args.integer,
        verify=args.verify,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        report = _dispatch(args)
    except InputError as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except AnalysisError as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return EXIT_ANALYSIS
    render = render_text if args.format == "text" else render_json
    sys.stdout.write(render(report))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
