"""Command-line frontend.

Subcommands: decide (run the decision pipeline or a single stage),
coefficients (dump final truncated-product terms), oracle (independent
slow cross-checks), bench (compare ordering heuristics), gen (emit a
problem file for a built-in family).  `-` reads the problem from stdin.
Exit codes: 0 CHOOSABLE, 1 NOT_CHOOSABLE, 2 UNKNOWN, 3 usage or input
error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys

from . import decide as decide_mod
from . import oracle as oracle_mod
from .graphs import (
    DEFAULT_HEURISTIC,
    FAMILIES,
    HEURISTICS,
    Problem,
    ProblemFormatError,
    format_problem,
    generate_family,
    order_vertices,
    parse_problem,
)
from .kernels import current_backend
from .poly import CoefficientOverflow, run_truncated_product, unpack_terms

EXIT_CODES = {
    decide_mod.CHOOSABLE: 0,
    decide_mod.NOT_CHOOSABLE: 1,
    decide_mod.UNKNOWN: 2,
}
EXIT_ERROR = 3

DECIDE_MODES = ("standard", "extended", "pipeline")


@dataclasses.dataclass(frozen=True)
class Config:
    """Effective settings for a run; echoed in every report."""

    mode: str = "pipeline"
    heuristic: str = DEFAULT_HEURISTIC
    branch_limit: int | None = 100000
    pattern_cap: int = 100
    feasible_cap: int = 25
    prune_matching: bool = False
    output: str = "text"

    def __post_init__(self):
        if self.heuristic not in HEURISTICS:
            raise ValueError("unknown heuristic %r" % (self.heuristic,))
        if self.branch_limit is not None and self.branch_limit <= 0:
            raise ValueError("branch limit must be positive (or unlimited)")
        if self.pattern_cap <= 0 or self.feasible_cap <= 0:
            raise ValueError("caps must be positive")
        if self.output not in ("text", "json"):
            raise ValueError("unknown output format %r" % (self.output,))

    def as_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["backend"] = current_backend()
        return d


def read_problem(path: str) -> Problem:
    if path == "-":
        return parse_problem(sys.stdin.read(), name="<stdin>")
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    name = path.rsplit("/", 1)[-1]
    if name.endswith(".prob"):
        name = name[: -len(".prob")]
    return parse_problem(text, name=name)


def _add_run_flags(sp, modes=None, default_mode=None):
    if modes:
        sp.add_argument("--mode", choices=modes, default=default_mode)
    sp.add_argument("--heuristic", choices=HEURISTICS, default=DEFAULT_HEURISTIC)
    sp.add_argument(
        "--branch-limit",
        type=int,
        default=100000,
        metavar="N",
        help="segment size before partitioning; 0 disables partitioning",
    )
    sp.add_argument("--json", action="store_true", help="emit a JSON report")


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; 2 means UNKNOWN here, so
    usage problems exit 3 like every other input error."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print("error: %s" % message, file=sys.stderr)
        raise SystemExit(EXIT_ERROR)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(
        prog="choosability",
        description="Decide list-colorability and choosability of small "
        "graphs via truncated graph-polynomial coefficients.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("decide", help="run the decision pipeline")
    sp.add_argument("problem", help="problem file, or - for stdin")
    _add_run_flags(sp, modes=DECIDE_MODES, default_mode="pipeline")
    sp.add_argument("--pattern-cap", type=int, default=100, metavar="C")
    sp.add_argument("--feasible-cap", type=int, default=25, metavar="C")
    sp.add_argument("--prune-matching", action="store_true")

    sp = sub.add_parser(
        "coefficients", help="print every final truncated-product term"
    )
    sp.add_argument("problem", help="problem file, or - for stdin")
    _add_run_flags(sp, modes=("standard", "extended"), default_mode="standard")

    sp = sub.add_parser("oracle", help="independent slow cross-checks")
    sp.add_argument(
        "action", choices=("coefficient", "table", "choosable"),
        help="coefficient: signed orientation count for one degree vector; "
        "table: all of them; choosable: exhaustive decision",
    )
    sp.add_argument("problem", help="problem file, or - for stdin")
    sp.add_argument(
        "degrees", nargs="*", type=int,
        help="degree vector f(0) .. f(n-1) (coefficient action only)",
    )
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("bench", help="compare ordering heuristics")
    sp.add_argument("problem", help="problem file, or - for stdin")
    sp.add_argument(
        "--heuristics",
        default=",".join(HEURISTICS),
        help="comma-separated list (default: all)",
    )
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("gen", help="emit a problem file for a family")
    sp.add_argument("family", choices=FAMILIES)
    sp.add_argument("params", nargs="+", type=int)
    sp.add_argument("-o", "--output", default="-", help="file, or - for stdout")

    return ap


def _config_from_args(args, mode: str) -> Config:
    return Config(
        mode=mode,
        heuristic=args.heuristic,
        branch_limit=None if args.branch_limit == 0 else args.branch_limit,
        pattern_cap=getattr(args, "pattern_cap", 100),
        feasible_cap=getattr(args, "feasible_cap", 25),
        prune_matching=getattr(args, "prune_matching", False),
        output="json" if args.json else "text",
    )


def _report(p: Problem, cfg: Config, verdict: decide_mod.Verdict) -> dict:
    return {
        "problem": {"name": p.name, "n": p.n, "m": p.m},
        "config": cfg.as_dict(),
        "verdict": verdict.status,
        "certificate": verdict.certificate,
        "reason": verdict.reason,
        "details": verdict.details,
    }


def _print_report(report: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(report, indent=2, sort_keys=True))
        return
    prob = report["problem"]
    label = prob["name"] or "<unnamed>"
    print("problem: %s (n=%d, m=%d)" % (label, prob["n"], prob["m"]))
    cfg = report["config"]
    print(
        "config: mode=%s heuristic=%s branch-limit=%s backend=%s"
        % (cfg["mode"], cfg["heuristic"], cfg["branch_limit"], cfg["backend"])
    )
    print("verdict: %s" % report["verdict"])
    cert = report["certificate"]
    if cert is not None:
        print("certificate: %s" % cert["kind"])
        if cert["kind"] == "WitnessMonomial":
            print("  f = %s  coefficient = %d" % (cert["f"], cert["coefficient"]))
        elif cert["kind"] == "BadAssignment":
            for entry in cert["pattern"]:
                print(
                    "  vector %s x%d" % (entry["vector"], entry["multiplicity"])
                )
        elif cert["kind"] == "EdgeDeletion":
            print("  deleted edges: %s" % (cert["edges"],))
            inner = cert["inner"]
            print("  inner certificate: %s" % (inner and inner["kind"]))
        elif cert["kind"] == "AllPatternsColorable":
            print("  patterns checked: %d" % cert["count"])
        elif cert["kind"] == "NoFeasibleVectors":
            print("  constraint rank: %d" % cert["rank"])
    if report["reason"]:
        print("reason: %s" % report["reason"])
    details = report["details"]
    for key in (
        "constraint_rank",
        "feasible_vectors",
        "pattern_count",
        "deletable_edges",
    ):
        if key in details:
            print("%s: %s" % (key.replace("_", " "), details[key]))
    for key in ("standard_stats", "extended_stats"):
        if key in details:
            st = details[key]
            print(
                "%s: monomials=%d peak=%d branches=%d"
                % (
                    key.replace("_stats", " run"),
                    st["total_monomials"],
                    st["peak_terms"],
                    st["branches"],
                )
            )


def _cmd_decide(args) -> int:
    cfg = _config_from_args(args, args.mode)
    p = read_problem(args.problem)
    if cfg.mode == "standard":
        ordering = order_vertices(p, cfg.heuristic)
        try:
            witness, stats = decide_mod.standard_alon_tarsi(
                p, ordering, cfg.branch_limit, cfg.prune_matching
            )
        except CoefficientOverflow as exc:
            verdict = decide_mod.Verdict(
                decide_mod.UNKNOWN, reason="Overflow", details={"overflow": str(exc)}
            )
        else:
            details = {"standard_stats": decide_mod._stats_json(stats)}
            if witness is None:
                verdict = decide_mod.Verdict(
                    decide_mod.UNKNOWN, reason="NoWitness", details=details
                )
            else:
                f, coeff = witness
                verdict = decide_mod.Verdict(
                    decide_mod.CHOOSABLE,
                    {
                        "kind": "WitnessMonomial",
                        "f": list(f),
                        "coefficient": coeff,
                    },
                    details=details,
                )
    else:
        verdict = decide_mod.pipeline_decide(
            p,
            heuristic=cfg.heuristic,
            branch_limit=cfg.branch_limit,
            pattern_cap=cfg.pattern_cap,
            feasible_cap=cfg.feasible_cap,
            prune_matching=cfg.prune_matching,
            run_standard=(cfg.mode == "pipeline"),
        )
    _print_report(_report(p, cfg, verdict), cfg.output == "json")
    return EXIT_CODES[verdict.status]


class _CollectSink:
    """Keeps every delivered final term."""

    def __init__(self):
        self.rows = []

    def __call__(self, layout, terms):
        degrees, markers, coeffs = unpack_terms(layout, terms)
        for k in range(len(coeffs)):
            self.rows.append(
                (
                    tuple(int(x) for x in degrees[k]),
                    int(markers[k]),
                    int(coeffs[k]),
                )
            )
        return False


def _cmd_coefficients(args) -> int:
    cfg = _config_from_args(args, args.mode)
    p = read_problem(args.problem)
    ordering = order_vertices(p, cfg.heuristic)
    sink = _CollectSink()
    try:
        run_truncated_product(
            p, ordering, mode=cfg.mode, branch_limit=cfg.branch_limit, sink=sink
        )
    except CoefficientOverflow as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_CODES[decide_mod.UNKNOWN]
    rows = sorted(
        sink.rows, key=lambda r: (r[0], 0 if r[1] < 0 else 1, r[1])
    )
    if cfg.output == "json":
        print(
            json.dumps(
                {
                    "problem": {"name": p.name, "n": p.n, "m": p.m},
                    "config": cfg.as_dict(),
                    "terms": [
                        {
                            "f": list(f),
                            "marker": None if marker < 0 else marker,
                            "coefficient": coeff,
                        }
                        for f, marker, coeff in rows
                    ],
                },
                indent=2,
                sort_keys=True,
            )
        )
    else:
        for f, marker, coeff in rows:
            mark = "-" if marker < 0 else str(marker)
            print("%s %s %d" % (" ".join(str(x) for x in f), mark, coeff))
    return 0


def _cmd_oracle(args) -> int:
    p = read_problem(args.problem)
    if args.action == "coefficient":
        if len(args.degrees) != p.n:
            raise ValueError(
                "expected %d degree values, got %d" % (p.n, len(args.degrees))
            )
        coeff = oracle_mod.direct_coefficient(p, tuple(args.degrees))
        if args.json:
            print(json.dumps({"f": args.degrees, "coefficient": coeff}))
        else:
            print(coeff)
        return 0
    if args.action == "table":
        table = oracle_mod.coefficient_table(p)
        entries = sorted(table.items())
        if args.json:
            print(
                json.dumps(
                    {
                        "entries": [
                            {
                                "f": list(f),
                                "coefficient": signed,
                                "orientations": count,
                            }
                            for f, (signed, count) in entries
                        ]
                    },
                    indent=2,
                )
            )
        else:
            for f, (signed, count) in entries:
                print(
                    "%s %d %d" % (" ".join(str(x) for x in f), signed, count)
                )
        return 0
    # choosable
    try:
        ok, witness = oracle_mod.brute_force_choosable(p)
    except oracle_mod.OracleLimitError as exc:
        print("refused: %s" % exc, file=sys.stderr)
        return EXIT_CODES[decide_mod.UNKNOWN]
    if args.json:
        print(
            json.dumps(
                {
                    "choosable": ok,
                    "witness": None
                    if witness is None
                    else [
                        {"vector": list(vec), "multiplicity": mult}
                        for vec, mult in witness
                    ],
                }
            )
        )
    else:
        if ok:
            print("choosable")
        else:
            print("not choosable")
            for vec, mult in witness:
                print("  vector %s x%d" % (list(vec), mult))
    return 0 if ok else 1


def bench_orderings(p: Problem, heuristics=HEURISTICS) -> list[dict]:
    """Total monomial counts per ordering heuristic.

    Runs the standard-mode product to completion with partitioning
    disabled, once per heuristic, and reports counts relative to the
    INPUT ordering.
    """
    wanted = list(dict.fromkeys(heuristics))
    runs = {}
    for h in dict.fromkeys(["INPUT", *wanted]):
        ordering = order_vertices(p, h)
        try:
            _, stats = run_truncated_product(
                p, ordering, mode="standard", branch_limit=None
            )
            runs[h] = (tuple(ordering.order), stats.total_monomials, None)
        except CoefficientOverflow as exc:
            runs[h] = (tuple(ordering.order), None, str(exc))
    baseline = runs["INPUT"][1]
    rows = []
    for h in wanted:
        order, count, error = runs[h]
        relative = (
            100.0 * count / baseline if count is not None and baseline else None
        )
        rows.append(
            {
                "heuristic": h,
                "order": list(order),
                "monomials": count,
                "relative_percent": relative,
                "error": error,
            }
        )
    return rows


def _cmd_bench(args) -> int:
    p = read_problem(args.problem)
    heuristics = [h.strip() for h in args.heuristics.split(",") if h.strip()]
    for h in heuristics:
        if h not in HEURISTICS:
            raise ValueError("unknown heuristic %r" % (h,))
    rows = bench_orderings(p, heuristics)
    if args.json:
        print(
            json.dumps(
                {"problem": {"name": p.name, "n": p.n, "m": p.m}, "rows": rows},
                indent=2,
            )
        )
        return 0
    print("%-10s %14s %10s" % ("heuristic", "monomials", "relative"))
    for row in rows:
        if row["error"] is not None:
            print("%-10s %14s %10s" % (row["heuristic"], "overflow", "-"))
            continue
        rel = (
            "%.1f%%" % row["relative_percent"]
            if row["relative_percent"] is not None
            else "-"
        )
        print("%-10s %14d %10s" % (row["heuristic"], row["monomials"], rel))
    return 0


def _cmd_gen(args) -> int:
    p = generate_family(args.family, *args.params)
    text = format_problem(p)
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    return 0


_COMMANDS = {
    "decide": _cmd_decide,
    "coefficients": _cmd_coefficients,
    "oracle": _cmd_oracle,
    "bench": _cmd_bench,
    "gen": _cmd_gen,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ProblemFormatError, ValueError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
