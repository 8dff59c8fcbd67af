"""Command-line front end: membership checks, counts, sweeps, verification.

Exit codes: 0 on success (and membership true), 1 on a semantic negative
(not a parking function, method mismatch, verification disagreements),
2 on usage errors, malformed input, or a refused oversized enumeration.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from dataclasses import dataclass, field

from . import oracle, permcount, recursion
from .core import Params, Status, simulate, simulate_contained
from .oracle import EnumerationLimitError, ensure_within_ceiling

METHODS = ("brute", "perm", "recursive")
AUTO_BRUTE_LIMIT = 100_000


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# argument plumbing


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=("plain", "json", "csv"), default="plain",
        help="output format (default plain)",
    )
    common.add_argument(
        "--ceiling", type=int, default=None, metavar="N",
        help="max simulations an enumeration may take "
        "(default 10^8, or the PULLBACK_CEILING environment variable)",
    )
    common.add_argument(
        "--jobs", type=int, default=1, metavar="J",
        help="worker processes for enumeration/sweeps; results are "
        "identical at any degree",
    )
    common.add_argument(
        "--seedless", action="store_true",
        help="reserved; all computation is deterministic",
    )

    sugar = argparse.ArgumentParser(add_help=False)
    sugar.add_argument("--naples", action="store_true", help="shorthand for --l n-1")
    sugar.add_argument(
        "--classical", action="store_true", help="shorthand for --k 0 --l n-1"
    )
    sugar.add_argument(
        "--vacillating", action="store_true", help="shorthand for --k 1 --l 1"
    )
    sugar.add_argument(
        "--interval", metavar="L", default=None, help="shorthand for --k 0 --l L"
    )

    parser = argparse.ArgumentParser(
        prog="pullback",
        description="Pullback parking functions: check lists, count them three "
        "ways, sweep parameter tables, list outcome fibers, and cross-verify.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "check", parents=[common, sugar],
        help="run one preference list through the parking rule",
    )
    p.add_argument("--prefs", required=True, help="comma-separated preferences")
    p.add_argument("--n", required=True, type=int, help="number of spots")
    p.add_argument("--k", type=int, default=None, help="backward allowance")
    p.add_argument("--l", type=int, default=None, help="forward allowance")
    p.add_argument(
        "--contained", action="store_true",
        help="use the street with a permanently vacant spot 0",
    )
    p.set_defaults(func=cmd_check)

    p = sub.add_parser(
        "count", parents=[common, sugar], help="count parking functions"
    )
    p.add_argument("--m", required=True, type=int, help="number of cars")
    p.add_argument("--n", required=True, type=int, help="number of spots")
    p.add_argument("--k", type=int, default=None, help="backward allowance")
    p.add_argument("--l", type=int, default=None, help="forward allowance")
    p.add_argument(
        "--method", choices=METHODS + ("auto", "all"), default="auto",
        help="counting method (default auto: brute for tiny instances, "
        "recursive otherwise)",
    )
    p.set_defaults(func=cmd_count)

    p = sub.add_parser(
        "table", parents=[common, sugar],
        help="sweep (m, n, k, l) ranges and tabulate counts",
    )
    p.add_argument("--m", required=True, help="range: INT, INT..INT, n, or n-INT")
    p.add_argument("--n", required=True, help="range: INT or INT..INT")
    p.add_argument("--k", default=None, help="range: INT, INT..INT, n, or n-INT")
    p.add_argument("--l", default=None, help="range: INT, INT..INT, n, or n-INT")
    p.add_argument(
        "--method", choices=METHODS + ("auto", "all"), default="auto",
        help="counting method per cell (default auto)",
    )
    p.set_defaults(func=cmd_table)

    p = sub.add_parser(
        "outcomes", parents=[common, sugar],
        help="list every outcome word with its fiber size",
    )
    p.add_argument("--m", required=True, type=int, help="number of cars")
    p.add_argument("--n", required=True, type=int, help="number of spots")
    p.add_argument("--k", type=int, default=None, help="backward allowance")
    p.add_argument("--l", type=int, default=None, help="forward allowance")
    p.add_argument(
        "--with-oracle", action="store_true",
        help="also enumerate preference lists and report each fiber's "
        "brute-force size",
    )
    p.set_defaults(func=cmd_outcomes)

    p = sub.add_parser(
        "verify", parents=[common],
        help="cross-check the three counting methods and the identity suite",
    )
    p.add_argument(
        "--max-n", type=int, default=6,
        help="three-way grid bound (default 6)",
    )
    p.add_argument(
        "--inject-fault", action="store_true",
        help="self-test: perturb the forward preference count and confirm "
        "the harness reports disagreements",
    )
    p.set_defaults(func=cmd_verify)
    return parser


def _resolve_kl(args, n: int) -> tuple[int, int]:
    """Apply sugar flags; require explicit --k/--l otherwise."""
    picked = [
        name
        for name, on in (
            ("--naples", args.naples),
            ("--classical", args.classical),
            ("--vacillating", args.vacillating),
            ("--interval", args.interval is not None),
        )
        if on
    ]
    if len(picked) > 1:
        raise UsageError(f"conflicting shorthand flags: {' '.join(picked)}")
    reach = max(n - 1, 0)
    k, l = args.k, args.l
    if args.classical:
        if k is not None or l is not None:
            raise UsageError("--classical conflicts with --k/--l")
        return 0, reach
    if args.vacillating:
        if k is not None or l is not None:
            raise UsageError("--vacillating conflicts with --k/--l")
        return 1, 1
    if args.interval is not None:
        if k is not None or l is not None:
            raise UsageError("--interval conflicts with --k/--l")
        return 0, _to_int(args.interval, "--interval")
    if args.naples:
        if l is not None:
            raise UsageError("--naples conflicts with --l")
        l = reach
    if k is None or l is None:
        raise UsageError("missing --k/--l (or a shorthand flag)")
    return k, l


def _to_int(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"{what} expects an integer, got {text!r}") from None


def _parse_prefs(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise UsageError(f"cannot parse preference list {text!r}") from None


def _eval_term(term: str, n: int | None, what: str) -> int:
    term = term.strip()
    if term == "n" or term.startswith(("n-", "n+")):
        if n is None:
            raise UsageError(f"{what} may not reference n")
        if term == "n":
            return n
        offset = _to_int(term[2:], what)
        return n + offset if term[1] == "+" else n - offset
    return _to_int(term, what)


def _eval_range(spec: str, n: int | None, what: str) -> range:
    if ".." in spec:
        lo_text, hi_text = spec.split("..", 1)
        lo = _eval_term(lo_text, n, what)
        hi = _eval_term(hi_text, n, what)
    else:
        lo = hi = _eval_term(spec, n, what)
    return range(lo, hi + 1)


# ---------------------------------------------------------------------------
# output helpers


def _word_text(word) -> str:
    return ",".join(str(v) for v in word)


def _print_json(doc) -> None:
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")


def _csv_writer():
    return csv.writer(sys.stdout, lineterminator="\n")


def _count_rows_plain(rows: list[dict]) -> None:
    if len(rows) == 1:
        print(rows[0]["count"])
        return
    for row in rows:
        print(f"{row['method']} {row['count']}")


def _emit_count_rows(fmt: str, rows: list[dict]) -> None:
    if fmt == "json":
        _print_json(rows[0] if len(rows) == 1 else rows)
    elif fmt == "csv":
        writer = _csv_writer()
        writer.writerow(["m", "n", "k", "l", "count", "method"])
        for row in rows:
            writer.writerow(
                [row["m"], row["n"], row["k"], row["l"], row["count"], row["method"]]
            )
    else:
        _count_rows_plain(rows)


# ---------------------------------------------------------------------------
# commands


def cmd_check(args) -> int:
    prefs = _parse_prefs(args.prefs)
    k, l = _resolve_kl(args, args.n)
    if args.contained:
        result = simulate_contained(prefs, len(prefs), args.n, k, l)
    else:
        result = simulate(prefs, Params(len(prefs), args.n, k, l))
    ok = result.status is Status.SUCCESS
    if args.format == "json":
        _print_json(
            {
                "prefs": list(prefs),
                "m": len(prefs),
                "n": args.n,
                "k": k,
                "l": l,
                "contained": args.contained,
                "status": result.status.value,
                "is_parking_function": ok,
                "failed_car": result.failed_car,
                "outcome": None if result.outcome is None else _word_text(result.outcome),
                "traces": [
                    {
                        "car": t.car,
                        "preferred": t.preferred,
                        "backward_checked": list(t.backward_checked),
                        "forward_checked": list(t.forward_checked),
                        "parked_at": t.parked_at,
                    }
                    for t in result.traces
                ],
            }
        )
    elif args.format == "csv":
        writer = _csv_writer()
        writer.writerow(
            ["car", "preferred", "backward_checked", "forward_checked", "parked_at"]
        )
        for t in result.traces:
            writer.writerow(
                [
                    t.car,
                    t.preferred,
                    ";".join(map(str, t.backward_checked)),
                    ";".join(map(str, t.forward_checked)),
                    "FAIL" if t.parked_at is None else t.parked_at,
                ]
            )
    else:
        print(f"is-parking-function: {'true' if ok else 'false'}")
        print(f"status: {result.status.value}")
        if result.failed_car is not None:
            print(f"failed-car: {result.failed_car}")
        if result.outcome is not None:
            print(f"outcome: {_word_text(result.outcome)}")
        for t in result.traces:
            step = f"car {t.car}: preferred {t.preferred}"
            if t.backward_checked:
                step += f", checked back {list(t.backward_checked)}"
            if t.forward_checked:
                step += f", checked ahead {list(t.forward_checked)}"
            where = "failed to park" if t.parked_at is None else f"parked at {t.parked_at}"
            print(f"{step} -> {where}")
    return 0 if ok else 1


def _count_one(method: str, m: int, n: int, k: int, l: int, ceiling, jobs: int) -> int:
    if method == "brute":
        return oracle.count_by_enumeration(Params(m, n, k, l), ceiling, jobs)
    if method == "perm":
        return permcount.total_count(Params(m, n, k, l), ceiling)
    return recursion.pf_count_recursive(Params(m, n, k, l), ceiling)


def _resolve_method(method: str, m: int, n: int) -> str:
    if method != "auto":
        return method
    return "brute" if n**m <= AUTO_BRUTE_LIMIT else "recursive"


def cmd_count(args) -> int:
    k, l = _resolve_kl(args, args.n)
    m, n = args.m, args.n
    methods = METHODS if args.method == "all" else (_resolve_method(args.method, m, n),)
    rows = [
        {
            "m": m,
            "n": n,
            "k": k,
            "l": l,
            "method": method,
            "count": str(_count_one(method, m, n, k, l, args.ceiling, args.jobs)),
        }
        for method in methods
    ]
    _emit_count_rows(args.format, rows)
    values = {row["count"] for row in rows}
    if len(values) > 1:
        print(f"methods disagree: {rows}", file=sys.stderr)
        return 1
    return 0


def _table_cells(args) -> list[tuple[int, int, int, int]]:
    k_spec, l_spec = args.k, args.l
    if args.classical:
        if k_spec is not None or l_spec is not None:
            raise UsageError("--classical conflicts with --k/--l")
        k_spec, l_spec = "0", "n-1"
    elif args.vacillating:
        if k_spec is not None or l_spec is not None:
            raise UsageError("--vacillating conflicts with --k/--l")
        k_spec, l_spec = "1", "1"
    elif args.interval is not None:
        if k_spec is not None or l_spec is not None:
            raise UsageError("--interval conflicts with --k/--l")
        k_spec, l_spec = "0", args.interval
    elif args.naples:
        if l_spec is not None:
            raise UsageError("--naples conflicts with --l")
        l_spec = "n-1"
    if k_spec is None or l_spec is None:
        raise UsageError("missing --k/--l (or a shorthand flag)")
    cells = set()
    for n in _eval_range(args.n, None, "--n"):
        if n < 0:
            continue
        for m in _eval_range(args.m, n, "--m"):
            if m < 0:
                continue
            for k in _eval_range(k_spec, n, "--k"):
                if k < 0:
                    continue
                for l in _eval_range(l_spec, n, "--l"):
                    if l < 0:
                        continue
                    cells.add((m, n, k, l))
    return sorted(cells)


def _table_worker(task):
    m, n, k, l, method, ceiling = task
    return str(_count_one(method, m, n, k, l, ceiling, 1))


def cmd_table(args) -> int:
    cells = _table_cells(args)
    tasks = []
    for m, n, k, l in cells:
        methods = (
            METHODS if args.method == "all" else (_resolve_method(args.method, m, n),)
        )
        for method in methods:
            tasks.append((m, n, k, l, method, args.ceiling))
    if args.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            counts = list(pool.map(_table_worker, tasks))
    else:
        counts = [_table_worker(task) for task in tasks]
    rows = [
        {"m": m, "n": n, "k": k, "l": l, "method": method, "count": count}
        for (m, n, k, l, method, _), count in zip(tasks, counts)
    ]
    if args.format == "json":
        _print_json(rows)
    elif args.format == "csv":
        writer = _csv_writer()
        writer.writerow(["m", "n", "k", "l", "count", "method"])
        for row in rows:
            writer.writerow(
                [row["m"], row["n"], row["k"], row["l"], row["count"], row["method"]]
            )
    else:
        print("m n k l count method")
        for row in rows:
            print(
                f"{row['m']} {row['n']} {row['k']} {row['l']} "
                f"{row['count']} {row['method']}"
            )
    return 0


def cmd_outcomes(args) -> int:
    k, l = _resolve_kl(args, args.n)
    m, n = args.m, args.n
    if not 0 <= m <= n:
        raise UsageError(f"need 0 <= m <= n, got m={m}, n={n}")
    ensure_within_ceiling(
        math.perm(n, m), args.ceiling, f"listing outcome words for ({m},{n})"
    )
    hist = None
    if args.with_oracle:
        hist = oracle.fiber_histogram(Params(m, n, k, l), args.ceiling, args.jobs)

    words = permcount.outcome_words(m, n)
    if args.format == "json":
        sys.stdout.write("[")
        first = True
        for word in words:
            row = {"outcome": _word_text(word), "fiber": str(permcount.fiber_size(word, k, l))}
            if hist is not None:
                row["oracle_fiber"] = str(hist.get(word, 0))
            sys.stdout.write(("" if first else ",") + "\n  " + json.dumps(row))
            first = False
        sys.stdout.write("\n]\n")
    elif args.format == "csv":
        writer = _csv_writer()
        header = ["outcome", "fiber"] + (["oracle_fiber"] if hist is not None else [])
        writer.writerow(header)
        for word in words:
            row = [_word_text(word), str(permcount.fiber_size(word, k, l))]
            if hist is not None:
                row.append(str(hist.get(word, 0)))
            writer.writerow(row)
    else:
        for word in words:
            line = f"{_word_text(word)} -> {permcount.fiber_size(word, k, l)}"
            if hist is not None:
                line += f" (oracle {hist.get(word, 0)})"
            print(line)
    return 0


# ---------------------------------------------------------------------------
# verification harness


@dataclass
class VerifyReport:
    max_n: int
    cells: list[dict] = field(default_factory=list)
    identities: list[dict] = field(default_factory=list)
    disagreements: list[str] = field(default_factory=list)
    elapsed: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.disagreements


def _faulty_f_count(word, spot, k, l):
    # Deliberately wrong: ignores the backward allowance in the interior
    # branch.  Used only by `verify --inject-fault` to prove the harness
    # actually detects a broken method.
    if word[spot - 1] == 0:
        return 0
    run = permcount.left_run(word, spot)
    if run == 0:
        return 0
    if run == spot - 1:
        return min(spot - 1, l)
    return max(min(run, l), 0)


@contextmanager
def _fault_injection(enabled: bool):
    if not enabled:
        yield
        return
    original = permcount.f_count
    permcount.f_count = _faulty_f_count
    try:
        yield
    finally:
        permcount.f_count = original


def _verify_cell(task):
    m, n, k, l, ceiling = task
    params = Params(m, n, k, l)
    timed = {}
    values = {}
    for method, fn in (
        ("brute", lambda: oracle.count_by_enumeration(params, ceiling)),
        ("perm", lambda: permcount.total_count(params, ceiling)),
        ("recursive", lambda: recursion.pf_count_recursive(params, ceiling)),
    ):
        start = time.perf_counter()
        values[method] = fn()
        timed[method] = time.perf_counter() - start
    return m, n, k, l, values, timed


def _identity(report: VerifyReport, check: str, instance: str, expected, actual) -> None:
    ok = expected == actual
    report.identities.append(
        {
            "check": check,
            "instance": instance,
            "expected": str(expected),
            "actual": str(actual),
            "ok": ok,
        }
    )
    if not ok:
        report.disagreements.append(
            f"{check} at {instance}: expected {expected}, got {actual}"
        )


def _run_verify(max_n: int, ceiling, jobs: int) -> VerifyReport:
    report = VerifyReport(max_n=max_n)
    grid = [
        (m, n, k, l, ceiling)
        for n in range(1, max_n + 1)
        for m in range(1, n + 1)
        for k in range(n)
        for l in range(n)
    ]
    if jobs > 1 and grid:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_verify_cell, grid, chunksize=16))
    else:
        results = [_verify_cell(task) for task in grid]
    elapsed = {method: 0.0 for method in METHODS}
    for m, n, k, l, values, timed in results:
        for method in METHODS:
            elapsed[method] += timed[method]
        report.cells.append(
            {
                "m": m,
                "n": n,
                "k": k,
                "l": l,
                **{method: str(values[method]) for method in METHODS},
            }
        )
        if len(set(values.values())) > 1:
            report.disagreements.append(
                f"three-way mismatch at (m={m}, n={n}, k={k}, l={l}): "
                + ", ".join(f"{method}={values[method]}" for method in METHODS)
            )

    start = time.perf_counter()
    for n in range(1, max_n + 2):
        for m in range(1, n + 1):
            params = Params(m, n, 0, n - 1)
            expect = recursion.classical_closed_form(m, n)
            _identity(
                report, "classical-closed-form-brute", f"(m={m}, n={n})",
                expect, oracle.count_by_enumeration(params, ceiling, jobs),
            )
            _identity(
                report, "classical-closed-form-perm", f"(m={m}, n={n})",
                expect, permcount.total_count(params, ceiling),
            )
            _identity(
                report, "classical-closed-form-recursive", f"(m={m}, n={n})",
                expect, recursion.pf_count_recursive(params, ceiling),
            )
    for n in range(1, max_n + 2):
        for k in range(n):
            _identity(
                report, "naples-published-recursion", f"(n={n}, k={k})",
                recursion.knaples_published(n, k),
                recursion.knaples_count_recursive(n, n, k, ceiling),
            )
    for n in range(1, max_n + 1):
        for k in range(n + 1):
            _identity(
                report, "contained-square-naples", f"(n={n}, k={k})",
                (n + 1) ** (n - 1),
                permcount.contained_count(n, n, k, max(n - 1, 0), ceiling),
            )
    for b in range(1, max_n + 1):
        for a in range(b + 1):
            for k in range(b):
                for l in range(b):
                    _identity(
                        report, "contained-vs-enumeration",
                        f"(a={a}, b={b}, k={k}, l={l})",
                        oracle.count_contained_by_enumeration(a, b, k, l, ceiling),
                        permcount.contained_count(a, b, k, l, ceiling),
                    )
                    if k == 0:
                        _identity(
                            report, "contained-open-street-k0",
                            f"(a={a}, b={b}, l={l})",
                            permcount.total_count(Params(a, b, 0, l), ceiling),
                            permcount.contained_count(a, b, 0, l, ceiling),
                        )
    for n in range(1, max_n + 3):
        _identity(
            report, "weakly-increasing-doubling", f"(n={n})",
            2 ** (n - 1),
            oracle.count_weakly_increasing(Params(n, n, 0, 1), ceiling),
        )
    numerators = oracle.sqrt2_numerators(max_n)
    for n in range(1, max_n + 1):
        _identity(
            report, "weakly-increasing-sqrt2", f"(n={n})",
            numerators[n - 1],
            oracle.count_weakly_increasing(Params(n, n, 1, 1), ceiling),
        )
    elapsed["identities"] = time.perf_counter() - start
    report.elapsed = elapsed
    return report


def cmd_verify(args) -> int:
    if args.max_n < 0:
        raise UsageError("--max-n must be nonnegative")
    with _fault_injection(args.inject_fault):
        report = _run_verify(args.max_n, args.ceiling, args.jobs)
    identity_total = len(report.identities)
    identity_bad = sum(1 for row in report.identities if not row["ok"])
    if args.format == "json":
        _print_json(
            {
                "max_n": report.max_n,
                "cells": report.cells,
                "identities": report.identities,
                "disagreements": report.disagreements,
                "ok": report.ok,
            }
        )
    elif args.format == "csv":
        writer = _csv_writer()
        writer.writerow(["m", "n", "k", "l", "brute", "perm", "recursive", "agree"])
        for cell in report.cells:
            agree = cell["brute"] == cell["perm"] == cell["recursive"]
            writer.writerow(
                [cell["m"], cell["n"], cell["k"], cell["l"],
                 cell["brute"], cell["perm"], cell["recursive"],
                 "true" if agree else "false"]
            )
    else:
        print(f"three-way grid: n <= {report.max_n}, {len(report.cells)} cells")
        print(f"identity checks: {identity_total}, failing {identity_bad}")
        for line in report.disagreements:
            print(f"disagreement: {line}")
        print(f"verdict: {'PASS' if report.ok else 'FAIL'}")
    timing = ", ".join(f"{name} {secs:.2f}s" for name, secs in report.elapsed.items())
    print(f"timing: {timing}", file=sys.stderr)
    return 0 if report.ok else 1


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except EnumerationLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
