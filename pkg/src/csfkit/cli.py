"""Command-line front end: ``csfkit {list,run,bench,check-plan}``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from collections.abc import Mapping, Sequence

from .addonly import ArithmeticOverflow
from .core import (
    BUDGET_ENV,
    TRACE_LEVELS,
    BudgetExceeded,
    CheckMode,
    DomainBounds,
    NonTermination,
    PlanError,
    ProcedureSpec,
    RunReport,
    check_plan_sufficiency,
    check_pragmatic,
    run_procedure,
)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_INSUFFICIENT = 3
EXIT_OVERFLOW = 4
EXIT_NONTERMINATION = 5
EXIT_BUDGET = 6

BENCH_HEADER = ("algorithm", "n", "result", "adds", "subs", "compares", "selects", "iterations")

EPILOG = f"""\
exit status:
  {EXIT_OK}  success
  {EXIT_VIOLATION}  a checked run reported a violation (or --verify found a wrong result)
  {EXIT_USAGE}  bad usage: unknown procedure or subgoal, malformed arguments
  {EXIT_INSUFFICIENT}  check-plan found the plan insufficient
  {EXIT_OVERFLOW}  64-bit arithmetic overflow
  {EXIT_NONTERMINATION}  a loop exceeded its iteration cap
  {EXIT_BUDGET}  check-plan exceeded its enumeration budget

environment:
  {BUDGET_ENV}  node budget for check-plan (default 2000000)
"""


class UsageError(Exception):
    pass


def _registry_default() -> Mapping[str, ProcedureSpec]:
    from .algorithms import REGISTRY

    return REGISTRY


def _lookup(registry: Mapping[str, ProcedureSpec], name: str) -> ProcedureSpec:
    try:
        return registry[name]
    except KeyError:
        known = ", ".join(sorted(registry)) or "(none)"
        raise UsageError(f"unknown procedure {name!r}; available: {known}") from None


def _parse_array(text: str) -> tuple[int, ...]:
    body = text.strip().strip("[]").strip()
    if not body:
        return ()
    try:
        return tuple(int(x) for x in body.split(","))
    except ValueError:
        raise UsageError(f"--array expects comma-separated integers, got {text!r}") from None


def _params_for(spec: ProcedureSpec, n, m, array) -> dict:
    params: dict = {}
    for name in spec.param_scalars:
        value = {"N": n, "M": m}.get(name)
        if value is None:
            raise UsageError(f"{spec.name} needs --{name.lower()}")
        params[name] = value
    for name in spec.param_arrays:
        if array is None:
            raise UsageError(f"{spec.name} needs --array")
        params[name] = array
    return params


def _plain(value):
    return list(value) if isinstance(value, tuple) else value


def _cell(value) -> str:
    """Arrays print as ``1;0;1`` so a CSV cell never holds a comma."""
    if isinstance(value, tuple):
        return ";".join(str(v) for v in value)
    return str(value)


# -- list --------------------------------------------------------------------


def cmd_list(registry, args, out) -> int:
    for name, spec in registry.items():
        for i, sg in enumerate(spec.subgoals, start=1):
            out.write(f"{name}: {sg.notation(i)}  {sg.formula}".rstrip() + "\n")
    return EXIT_OK


# -- run ---------------------------------------------------------------------


def run_record(name: str, report: RunReport) -> dict:
    """The structured run report; stable for identical configurations."""
    return {
        "algorithm": name,
        "params": {k: _plain(v) for k, v in report.params.items()},
        "mode": report.mode.value,
        "result": _plain(report.result),
        "counters": report.counters.as_dict(),
        "violations": [report.violation.as_dict()] if report.violation else [],
        "trace": [e.as_dict() for e in report.trace],
    }


def cmd_run(registry, args, out) -> int:
    spec = _lookup(registry, args.algorithm)
    params = _params_for(spec, args.n, args.m, args.array)
    report = run_procedure(spec, params, args.mode, trace=args.trace)
    status = EXIT_OK if report.ok else EXIT_VIOLATION
    if args.format == "json":
        out.write(json.dumps(run_record(spec.name, report)) + "\n")
    elif args.format == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(BENCH_HEADER)
        writer.writerow(_bench_cells(spec.name, args.n, report))
    else:
        args_text = ", ".join(f"{k}={_cell(v)}" for k, v in report.params.items())
        if report.ok:
            out.write(f"{spec.name}({args_text}) = {_cell(report.result)}\n")
        else:
            v = report.violation
            where = "precondition" if v.block is None else f"block {v.block}"
            if v.iteration is not None:
                where += f", iteration {v.iteration}"
            out.write(f"{spec.name}({args_text}): VIOLATION of {v.failed} at {where}\n")
            out.write(f"  state: {v.state}\n")
        c = report.counters
        out.write(
            f"  adds={c.adds} subs={c.subs} compares={c.compares} selects={c.selects} "
            f"assigns={c.assigns} iterations={report.iterations}\n"
        )
        for e in report.trace:
            checks = " ".join(f"{label}={'ok' if ok else 'FAIL'}" for label, ok in e.checks)
            pos = "" if e.block is None else f" block {e.block}"
            pos += "" if e.iteration is None else f" iteration {e.iteration}"
            out.write(f"  [{e.seq}] {e.kind}{pos} adds={e.counters.adds} {checks}".rstrip() + "\n")
    return status


# -- bench -------------------------------------------------------------------


def _bench_params(spec: ProcedureSpec, n: int, m: int) -> dict:
    params: dict = {}
    for name in spec.param_scalars:
        params[name] = m if name == "M" else n
    for name in spec.param_arrays:
        params[name] = tuple(range(n))
    return params


def _oracle(spec: ProcedureSpec, params: Mapping):
    """Independent reference value, or None when none is defined."""
    if spec.name.startswith("v"):
        return params["N"] ** 3
    if spec.name == "pow":
        return params["N"] ** params["M"]
    if spec.name == "getmax":
        return max(params["anArr"])
    if spec.name == "getbin":
        return tuple(int(d) for d in reversed(format(params["N"], "b")))
    return None


def _bench_cells(name, n, report: RunReport):
    c = report.counters
    result = _cell(report.result) if report.ok else f"violation:{report.violation.failed}"
    return [name, n, result, c.adds, c.subs, c.compares, c.selects, report.iterations]


def bench_rows(registry, algorithms: Sequence[str], n_values: Sequence[int], m: int, verify: bool):
    """Yield ``(cells, seconds, verified)`` per (algorithm, N) in input order.

    ``verified`` is None without ``verify``.
    """
    specs = [_lookup(registry, a) for a in algorithms]
    for spec in specs:
        for n in n_values:
            params = _bench_params(spec, n, m)
            start = time.perf_counter()
            try:
                report = run_procedure(spec, params, CheckMode.OFF, trace="none")
            except ArithmeticOverflow:
                yield [spec.name, n, "overflow", "", "", "", "", ""], time.perf_counter() - start, None
                continue
            except NonTermination:
                yield [spec.name, n, "nontermination", "", "", "", "", ""], time.perf_counter() - start, None
                continue
            elapsed = time.perf_counter() - start
            verified = None
            if verify and report.ok:
                expected = _oracle(spec, report.params)
                verified = expected is None or report.result == expected
            elif verify:
                verified = False
            yield _bench_cells(spec.name, n, report), elapsed, verified


def _int_list(text: str, flag: str) -> list[int]:
    try:
        values = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"{flag} expects comma-separated integers, got {text!r}") from None
    if not values:
        raise UsageError(f"{flag} needs at least one value")
    return values


def cmd_bench(registry, args, out) -> int:
    algorithms = [a for a in args.algorithms.split(",") if a.strip()]
    if not algorithms:
        raise UsageError("--algorithms needs at least one name")
    n_values = _int_list(args.n, "--n")
    rows = list(bench_rows(registry, algorithms, n_values, args.m, args.verify))
    status = EXIT_OK
    if any(v is False for _, _, v in rows):
        status = EXIT_VIOLATION
    if args.format == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(BENCH_HEADER)
        for cells, _, _ in rows:
            writer.writerow(cells)
    elif args.format == "json":
        for cells, seconds, verified in rows:
            record = dict(zip(BENCH_HEADER, cells))
            record["seconds"] = round(seconds, 6)
            if verified is not None:
                record["verified"] = verified
            out.write(json.dumps(record) + "\n")
    else:
        widths = [max(len(str(h)), *(len(str(r[0][i])) for r in rows)) for i, h in enumerate(BENCH_HEADER)]
        out.write("  ".join(h.ljust(w) for h, w in zip(BENCH_HEADER, widths)) + "  seconds\n")
        for cells, seconds, verified in rows:
            line = "  ".join(str(c).ljust(w) for c, w in zip(cells, widths))
            mark = "" if verified is None else ("  ok" if verified else "  WRONG")
            out.write(f"{line}  {seconds:.6f}{mark}\n")
    return status


# -- check-plan --------------------------------------------------------------


def _show_point(params, state) -> str:
    values = {**params.snapshot(), **state.snapshot()}
    return ", ".join(f"{k}={_cell(v)}" for k, v in sorted(values.items()))


def cmd_check_plan(registry, args, out) -> int:
    spec = _lookup(registry, args.plan)
    plan = spec
    if args.drop:
        plan = spec.without_subgoal(spec.subgoal_index(args.drop))
    dom = DomainBounds.uniform(plan, 0, args.bound, args.max_len)
    verdict = check_plan_sufficiency(plan, dom)
    pragmatic = {}
    if verdict.sufficient:
        for i, sg in enumerate(plan.subgoals):
            if sg.pragmatic:
                pragmatic[sg.label] = check_pragmatic(plan, i, dom)
    if args.format == "json":
        record = {
            "plan": spec.name,
            "dropped": args.drop,
            "bound": args.bound,
            "max_len": args.max_len,
            "sufficient": verdict.sufficient,
            "explored": verdict.explored,
            "counterexample": None,
            "pragmatic": pragmatic,
        }
        if verdict.counterexample:
            p, s = verdict.counterexample
            record["counterexample"] = {
                "params": {k: _plain(v) for k, v in p.snapshot().items()},
                "state": {k: _plain(v) for k, v in s.snapshot().items()},
            }
        out.write(json.dumps(record) + "\n")
    else:
        name = spec.name + (f" without {args.drop}" if args.drop else "")
        word = "sufficient" if verdict.sufficient else "insufficient"
        out.write(f"{name}: {word} (explored {verdict.explored} points)\n")
        if verdict.counterexample:
            out.write(f"  counterexample: {_show_point(*verdict.counterexample)}\n")
        for label, redundant in pragmatic.items():
            out.write(f"  {label} pragmatic: {'yes' if redundant else 'no'}\n")
    return EXIT_OK if verdict.sufficient else EXIT_INSUFFICIENT


# -- entry point -------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="csfkit",
        description="Run, benchmark and check addition-only CSF procedures.",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("list", help="registered procedures and their subgoals",
                   epilog=EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter)

    fmt = dict(choices=("human", "json", "csv"), default="human")

    run = sub.add_parser("run", help="execute one procedure with checking",
                         epilog=EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter)
    run.add_argument("algorithm")
    run.add_argument("--n", type=int)
    run.add_argument("--m", type=int)
    run.add_argument("--array", type=_parse_array)
    run.add_argument("--mode", choices=[m.value for m in CheckMode], default="strict")
    run.add_argument("--trace", choices=TRACE_LEVELS, default="none")
    run.add_argument("--format", **fmt)

    bench = sub.add_parser("bench", help="operation counts across N",
                           epilog=EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter)
    bench.add_argument("--algorithms", default="v1,v2,v3,v4,v5",
                       help="comma-separated procedure names")
    bench.add_argument("--n", default="1,10,100,1000", help="comma-separated N values")
    bench.add_argument("--m", type=int, default=3, help="exponent for pow (default 3)")
    bench.add_argument("--verify", action="store_true", help="compare results with an oracle")
    bench.add_argument("--format", **fmt)

    check = sub.add_parser("check-plan", help="bounded plan sufficiency and pragmatism",
                           epilog=EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter)
    check.add_argument("plan")
    check.add_argument("--bound", type=int, default=8, help="scalars and entries range over 0..BOUND")
    check.add_argument("--max-len", type=int, default=3, help="longest array enumerated")
    check.add_argument("--drop", metavar="LABEL", help="remove this subgoal before checking")
    check.add_argument("--format", choices=("human", "json"), default="human")
    return parser


COMMANDS = {"list": cmd_list, "run": cmd_run, "bench": cmd_bench, "check-plan": cmd_check_plan}


def main(argv: Sequence[str] | None = None, registry: Mapping[str, ProcedureSpec] | None = None,
         out=None) -> int:
    out = sys.stdout if out is None else out
    if registry is None:
        registry = _registry_default()
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](registry, args, out)
    except UsageError as exc:
        print(f"csfkit: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PlanError as exc:
        print(f"csfkit: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ArithmeticOverflow as exc:
        print(f"csfkit: overflow: {exc}", file=sys.stderr)
        return EXIT_OVERFLOW
    except NonTermination as exc:
        print(f"csfkit: {exc}", file=sys.stderr)
        return EXIT_NONTERMINATION
    except BudgetExceeded as exc:
        print(f"csfkit: {exc}", file=sys.stderr)
        return EXIT_BUDGET


def render(argv: Sequence[str], registry=None) -> tuple[int, str]:
    """Run ``main`` capturing stdout; convenient for tests and scripting."""
    buf = io.StringIO()
    status = main(argv, registry, out=buf)
    return status, buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())
