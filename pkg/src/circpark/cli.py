"""Command-line front end.

Every command builds one JSON-able record::

    {"schema_version": "1", "command": ..., "exit_status": ..., "payload": ..., "timing": ...}

``--format json`` prints it as is; ``csv`` and ``table`` print rows derived
from the payload.  Wall-clock numbers live only under ``timing``; strip that
key before comparing two runs.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 refused because an exhaustive run exceeds its bound.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time

from circpark import counts, verifier
from circpark.enumeration import iter_weakly_increasing, partition_orbits
from circpark.errors import InvalidInput, ResourceBoundExceeded
from circpark.parking import PrefTuple, is_parking_function_sim, park_circular, park_linear

SCHEMA_VERSION = "1"

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_REFUSED = 3


class UsageError(Exception):
    pass


def _parse_prefs(text: str) -> tuple[int, ...]:
    prefs = []
    for token in text.split(","):
        tok = token.strip()
        if not tok.isdigit() or int(tok) < 1:
            raise UsageError(f"--prefs: {token!r} is not a positive integer")
        prefs.append(int(tok))
    return tuple(prefs)


def _parse_range(text: str) -> list[int]:
    lo, sep, hi = text.partition("..")
    try:
        a = int(lo)
        b = int(hi) if sep else a
    except ValueError:
        raise UsageError(f"--n: {text!r} is not an integer or an a..b range") from None
    if a < 1 or b < a:
        raise UsageError(f"--n: {text!r} must satisfy 1 <= a <= b")
    return list(range(a, b + 1))


def _seconds(x: float) -> str:
    # Fixed-point text; float reprs can switch to exponent notation.
    return f"{x:.6f}"


def _workers(args) -> int:
    if getattr(args, "workers", None) is not None:
        if args.workers < 1:
            raise UsageError("--workers must be at least 1")
        return args.workers
    return verifier.default_workers()


def cmd_park(args) -> tuple[dict, list[dict], int]:
    prefs = _parse_prefs(args.prefs)
    m = args.spots if args.spots is not None else len(prefs)
    if m < max(prefs):
        raise UsageError(f"--spots {m} is smaller than the largest preference {max(prefs)}")
    alpha = PrefTuple(prefs, m)
    if args.circular:
        if m < len(prefs):
            raise UsageError(f"circular street needs --spots >= {len(prefs)} cars")
        outcome = park_circular(alpha)
    else:
        outcome = park_linear(alpha)
    payload = {
        "prefs": list(prefs),
        "spots": m,
        "circular": args.circular,
        "assignment": list(outcome.assignment),
        "failed": list(outcome.failed),
        "unoccupied": list(outcome.unoccupied),
    }
    if not args.circular and m == len(prefs):
        payload["parking_function"] = is_parking_function_sim(alpha)
    return payload, [payload], EXIT_OK


def _enumerated_count(family: str, n: int) -> int:
    if family == "pf":
        verifier.check_pf_bound(n)
        return verifier.verify_pollak(n).pf_count
    verifier.check_orbit_bound(n)
    if family == "pf-weak":
        return len(verifier.weak_pf_by_circular_hole(n))
    if family == "pp-weak":
        return sum(1 for _ in iter_weakly_increasing(n, n + 1))
    return sum(1 for _ in partition_orbits(n))


def cmd_count(args) -> tuple[dict, list[dict], int]:
    n, family, method = args.n, args.family, args.method
    if n < 1:
        raise UsageError("--n must be at least 1")
    formulas = {
        "pf": counts.pollak_count,
        "pf-weak": counts.catalan_closed,
        "pp-weak": counts.central_binomial,
        "orbits": counts.catalan_closed,
    }
    formula = formulas[family](n)
    payload = {"family": family, "n": n, "method": method}
    status = EXIT_OK
    if method == "formula":
        value = formula
    elif method == "recurrence":
        if family != "pf-weak":
            raise UsageError("--method recurrence applies only to pf-weak")
        value = counts.catalan_recursive(n)
    else:
        value = _enumerated_count(family, n)
    payload["count"] = value
    if method != "formula":
        payload["formula"] = formula
        payload["matches_formula"] = value == formula
        if value != formula:
            status = EXIT_FAILED
    return payload, [payload], status


def cmd_orbits(args) -> tuple[dict, list[dict], int]:
    n = args.n
    if n < 1:
        raise UsageError("--n must be at least 1")
    verifier.check_orbit_bound(n)
    records = []
    ok = True
    for orbit in partition_orbits(n):
        report = verifier.verify_orbit(orbit)
        ok = ok and report.ok
        records.append(report.to_payload(orbit if args.members else None))
    payload = {"n": n, "orbit_count": len(records), "orbits": records}
    return payload, records, EXIT_OK if ok else EXIT_FAILED


def cmd_verify(args) -> tuple[dict, list[dict], int, dict]:
    ns = _parse_range(args.n)
    workers = _workers(args)
    reports = []
    if args.sample:
        if args.seed is None:
            raise UsageError("--sample requires --seed")
        for n in ns:
            reports.append(verifier.sample_verify(n, args.trials, args.seed, workers))
    else:
        for n in ns:
            verifier.check_orbit_bound(n)
        for n in ns:
            reports.append(verifier.verify_theorem(n, workers))
            if args.pollak:
                reports.append(verifier.verify_pollak(n))
    success = all(r.success for r in reports)
    payload = {
        "mode": "sample" if args.sample else "exhaustive",
        "success": success,
        "reports": [r.to_payload() for r in reports],
    }
    timing = {"reports": [{"kind": r.kind, "n": r.n, "elapsed_s": _seconds(r.elapsed)} for r in reports]}
    rows = []
    for r in reports:
        row = r.to_payload()
        row["failures"] = len(r.failures)
        rows.append(row)
    return payload, rows, EXIT_OK if success else EXIT_FAILED, timing


def cmd_demo(args) -> tuple[dict, list[dict], int]:
    trace = verifier.reproduce_example()
    payload = trace.to_payload()
    return payload, [{"line": line} for line in trace.lines()], EXIT_OK


def _cell(value, fmt: str) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, list):
        if value and isinstance(value[0], list):
            return " ".join(_cell(v, fmt) for v in value)
        body = ",".join("fail" if v is None else str(v) for v in value)
        return f"({body})" if fmt == "table" else body
    return str(value)


def _columns(rows: list[dict]) -> list[str]:
    return list(dict.fromkeys(k for row in rows for k in row))


def _render_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    if not rows:
        return ""
    writer = csv.DictWriter(buf, fieldnames=_columns(rows), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: _cell(v, "csv") for k, v in row.items()})
    return buf.getvalue()


def _render_table(command: str, rows: list[dict], timing: dict) -> str:
    if command == "demo":
        return "".join(row["line"] + "\n" for row in rows)
    if not rows:
        return ""
    header = _columns(rows)
    if command == "verify":
        header.append("elapsed_s")
        rows = [dict(row, elapsed_s=t["elapsed_s"]) for row, t in zip(rows, timing["reports"])]
    cells = [[_cell(row.get(h), "table") for h in header] for row in rows]
    widths = [max(len(h), *(len(c[i]) for c in cells)) for i, h in enumerate(header)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
    for c in cells:
        lines.append("  ".join(v.ljust(w) for v, w in zip(c, widths)).rstrip())
    return "\n".join(lines) + "\n"


def canonical(record: dict) -> dict:
    """Record with the ``timing`` key removed, for comparing runs."""
    return {k: v for k, v in record.items() if k != "timing"}


COMMANDS = {
    "park": cmd_park,
    "count": cmd_count,
    "orbits": cmd_orbits,
    "verify": cmd_verify,
    "demo": cmd_demo,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "table"], default=argparse.SUPPRESS)
    common.add_argument("--workers", type=int, default=argparse.SUPPRESS,
                        help="worker processes (default: $CS_WORKERS or CPU count)")

    parser = argparse.ArgumentParser(
        prog="circpark",
        description="Parking functions on a circular street and the Catalan count of weakly increasing ones.",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("park", parents=[common], help="simulate one preference tuple")
    p.add_argument("--prefs", required=True, help="comma-separated preferred spots, e.g. 3,4,1,1")
    p.add_argument("--spots", type=int, help="number of spots (default: number of cars)")
    p.add_argument("--circular", action="store_true", help="wrap from the last spot to spot 1")

    p = sub.add_parser("count", parents=[common], help="exact counts")
    p.add_argument("family", choices=["pf", "pf-weak", "pp-weak", "orbits"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=["formula", "enumerate", "recurrence"], default="formula")

    p = sub.add_parser("orbits", parents=[common], help="list shift orbits of contents")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--members", action="store_true", help="include all members of each orbit")

    p = sub.add_parser("verify", parents=[common], help="check the Catalan count orbit by orbit")
    p.add_argument("--n", required=True, help="n or an inclusive range a..b")
    p.add_argument("--sample", action="store_true", help="check random orbits instead of all")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int)
    p.add_argument("--pollak", action="store_true", help="also brute-force all parking functions")

    sub.add_parser("demo", parents=[common], help="replay the 4-car, 5-spot worked example")
    return parser


def main(argv=None) -> int:
    try:
        sys.stdout.reconfigure(encoding="utf-8")
    except (AttributeError, ValueError):
        pass
    args = build_parser().parse_args(argv)
    fmt = getattr(args, "format", "table")
    t0 = time.monotonic()
    try:
        result = COMMANDS[args.command](args)
    except (UsageError, InvalidInput) as exc:
        print(f"circpark {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceBoundExceeded as exc:
        print(f"circpark {args.command}: refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    payload, rows, status = result[:3]
    timing = result[3] if len(result) > 3 else {}
    timing = dict(timing, total_s=_seconds(time.monotonic() - t0))
    record = {
        "schema_version": SCHEMA_VERSION,
        "command": args.command,
        "exit_status": status,
        "payload": payload,
        "timing": timing,
    }
    if fmt == "json":
        out = json.dumps(record, indent=2, ensure_ascii=False) + "\n"
    elif fmt == "csv":
        out = _render_csv(rows)
    else:
        out = _render_table(args.command, rows, timing)
    sys.stdout.write(out)
    return status
