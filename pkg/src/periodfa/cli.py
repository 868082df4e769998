"""Command-line front end.

Exit codes: 0 on success (and on a positive decision), 1 when a decision
comes back negative so shell pipelines can branch on it, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bench as bench_mod
from . import io as aio
from .decide import Classification, decide
from .dfa import Dfa, complete, trim_accessible
from .builders import (
    PeriodicParameter,
    build_eventually_periodic_automaton,
    build_mismatch_automaton,
    build_mod_automaton,
)
from .minimize import minimize
from .oracle import (
    DEFAULT_MAX_PERIOD,
    DEFAULT_MAX_THRESHOLD,
    DEFAULT_VALUES,
    enumerate_membership,
    find_eventual_period,
)
from .structure import sccs, ult_eq_merge, zero_circuit_states


def _parse_int_set(text: str, flag: str) -> frozenset[int]:
    if not text:
        return frozenset()
    try:
        return frozenset(int(tok) for tok in text.split(",") if tok != "")
    except ValueError:
        raise SystemExit(f"error: {flag} expects a comma-separated list of integers") from None


def _load(path: str) -> Dfa:
    try:
        return aio.load_file(path)
    except FileNotFoundError:
        print(f"error: no such file: {path}", file=sys.stderr)
        raise SystemExit(2) from None
    except aio.FormatError as exc:
        print(f"error: {path}: {exc}", file=sys.stderr)
        raise SystemExit(2) from None


def _write_out(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def cmd_decide(args) -> int:
    dfa = _load(args.file)
    decision = decide(dfa)
    if args.json:
        print(json.dumps(decision.to_json_dict()))
    else:
        print(_human_summary(decision))
    return 0 if decision.periodic else 1


def _human_summary(decision) -> str:
    param = decision.parameter
    if decision.classification is Classification.PURELY_PERIODIC:
        return (
            f"purely periodic, period={param.period}"
            f" remainders={_braced(param.remainders)}"
        )
    if decision.classification is Classification.IMPURELY_PERIODIC:
        return (
            f"impurely periodic, period={param.period}"
            f" remainders={_braced(param.remainders)}"
            f" mismatches={_braced(param.mismatches)}"
        )
    if decision.classification is Classification.NOT_BY_VALUE:
        return "not accepted by value (leading zeros change the verdict)"
    return f"not eventually periodic (reason: {decision.reason})"


def _braced(values) -> str:
    if values is None:
        return "(implicit)"
    return "{" + ",".join(str(v) for v in sorted(values)) + "}"


def cmd_build(args) -> int:
    if args.kind == "mod":
        if args.period is None:
            raise SystemExit("error: build mod requires --period")
        remainders = (
            _parse_int_set(args.remainders, "--remainders")
            if args.remainders is not None
            else None
        )
        dfa = build_mod_automaton(args.period, remainders, args.base)
    elif args.kind == "mismatch":
        if not args.set:
            raise SystemExit("error: build mismatch requires --set")
        dfa = build_mismatch_automaton(_parse_int_set(args.set, "--set"), args.base)
    else:
        if args.period is None:
            raise SystemExit("error: build eventually requires --period")
        param = PeriodicParameter(
            args.period,
            _parse_int_set(args.remainders or "", "--remainders"),
            _parse_int_set(args.mismatches or "", "--mismatches"),
        )
        dfa = build_eventually_periodic_automaton(param, args.base)
    if args.minimize:
        dfa, _ = minimize(trim_accessible(complete(dfa)))
    _write_out(aio.emit_text(dfa), args.out)
    return 0


def cmd_minimize(args) -> int:
    dfa = _load(args.file)
    minimal, _ = minimize(trim_accessible(complete(dfa)))
    _write_out(aio.emit_text(minimal), args.out)
    return 0


def cmd_analyze(args) -> int:
    dfa = _load(args.file)
    components = sccs(dfa)
    nontrivial = sum(1 for _, flag in components if flag)
    print(f"states: {dfa.num_states}")
    print(f"sccs: {len(components)} ({nontrivial} non-trivial)")
    if dfa.is_complete():
        cycle = sorted(zero_circuit_states(dfa))
        print(f"zero-circuit states: {len(cycle)} -> {cycle}")
        partition = ult_eq_merge(dfa)
        largest = max(partition.index_of_class.tolist(), default=0)
        print(
            f"ultimate-equivalence classes: {partition.num_classes}"
            f" (largest stabilisation index {largest})"
        )
    else:
        print("automaton is incomplete; complete it for circuit analyses")
    return 0


def cmd_export_dot(args) -> int:
    dfa = _load(args.file)
    _write_out(aio.to_dot(dfa), args.out)
    return 0


def cmd_oracle(args) -> int:
    dfa = _load(args.file)
    table = enumerate_membership(complete(dfa), args.values)
    found = find_eventual_period(table, args.max_period, args.max_threshold)
    if found is None:
        print("none in box")
        return 1
    period, threshold = found
    print(f"period={period} threshold={threshold}")
    return 0


def cmd_bench(args) -> int:
    sizes = [int(tok) for tok in args.sizes.split(",") if tok]
    rows = bench_mod.run_bench(args.family, sizes, args.base, args.repeats, args.seed)
    csv_text = bench_mod.rows_to_csv(rows)
    _write_out(csv_text, args.out)
    if len(rows) >= 2:
        slope = bench_mod.fit_loglog_slope(rows)
        print(f"log-log slope: {slope:.3f}", file=sys.stderr)
    if not args.no_plot:
        plot_path = args.plot
        if plot_path is None and args.out is not None:
            plot_path = str(Path(args.out).with_suffix(".png"))
        if plot_path is not None:
            bench_mod.plot_scaling(rows, plot_path)
            print(f"wrote figure: {plot_path}", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="periodfa",
        description=(
            "Decide whether a base-b automaton (digits read most significant "
            "first) accepts an eventually periodic set of integers."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decide", help="classify the set accepted by an automaton file")
    p.add_argument("file")
    p.add_argument("--json", action="store_true", help="emit the JSON report")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("build", help="construct a canonical automaton")
    p.add_argument("kind", choices=["mod", "eventually", "mismatch"])
    p.add_argument("--base", type=int, default=2)
    p.add_argument("--period", type=int)
    p.add_argument(
        "--remainders",
        help="comma-separated residues; omit on 'mod' to leave finals unset",
    )
    p.add_argument("--mismatches", help="comma-separated values (eventually)")
    p.add_argument("--set", help="comma-separated values (mismatch)")
    p.add_argument("--minimize", action="store_true", help="minimise before writing")
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("minimize", help="minimise an automaton file")
    p.add_argument("file")
    p.add_argument("--out")
    p.set_defaults(func=cmd_minimize)

    p = sub.add_parser("analyze", help="print structural statistics")
    p.add_argument("file")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("export-dot", help="write a GraphViz rendering")
    p.add_argument("file")
    p.add_argument("--out")
    p.set_defaults(func=cmd_export_dot)

    p = sub.add_parser("oracle", help="brute-force period search on a value box")
    p.add_argument("file")
    p.add_argument("--max-period", type=int, default=DEFAULT_MAX_PERIOD)
    p.add_argument("--max-threshold", type=int, default=DEFAULT_MAX_THRESHOLD)
    p.add_argument("--values", type=int, default=DEFAULT_VALUES)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("bench", help="time the decision pipeline over a size sweep")
    p.add_argument("--family", choices=list(bench_mod.FAMILIES), default="mod")
    p.add_argument("--sizes", required=True, help="comma-separated ascending sizes")
    p.add_argument("--base", type=int, default=2)
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="CSV file (default stdout)")
    p.add_argument("--plot", help="figure file (default: CSV path with .png)")
    p.add_argument("--no-plot", action="store_true")
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
