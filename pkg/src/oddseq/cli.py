"""Command-line front end: pi, count, gen, tseries, verify, bench.

Every command takes --format text|json|csv.  Exit codes: 0 on success,
1 when verify finds a mismatch in an exact-variant check, 2 on usage or
domain errors.  The ODSQ_SIEVE_CACHE environment variable names a file
used to persist the sieve between runs.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import statistics
import sys
import time
from dataclasses import dataclass

import numpy as np

from . import counting, oracle, pcomposites, primegen, sequences

FORMATS = ("text", "json", "csv")

DEFAULT_VERIFY_CLASSES = "3,p:5,p:7,p:11,kl,kkl,kpow:2,kpow:3,w"

CLASSIC_CLASSES = {"p:5", "p:7", "p:11", "kkl"}


def _positive_number(text: str) -> float | int:
    try:
        return int(text)
    except ValueError:
        return float(text)


def _get_table(limit: int) -> oracle.SieveTable:
    """Sieve covering [2, limit], through the cache file if configured."""
    path = os.environ.get("ODSQ_SIEVE_CACHE")
    if path and os.path.exists(path):
        try:
            table = oracle.SieveTable.load(path)
            if table.limit >= limit:
                return table
        except (ValueError, OSError):
            pass
    table = oracle.SieveTable.build(max(limit, 3))
    if path:
        table.dump(path)
    return table


def _render_csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue().rstrip("\n")


def _emit(text: str) -> None:
    print(text)


# -- pi -------------------------------------------------------------------


def _cmd_pi(args) -> int:
    strategy = counting.Strategy(args.strategy)
    table = None
    if strategy is counting.Strategy.ORACLE and args.x >= 3:
        table = _get_table(int(args.x))
    breakdown = counting.pi_of(args.x, strategy, table)
    data = breakdown.to_dict()
    if args.format == "json":
        _emit(json.dumps(data, indent=2))
    elif args.format == "csv":
        header = ["x", "strategy", "n", "m_n", "w_n", "m", "pi"]
        _emit(_render_csv(header, [[data[h] for h in header]]))
    else:
        lines = [
            f"x = {data['x']}",
            f"strategy = {data['strategy']}",
            f"n = {data['n']}",
            f"M_n = {data['m_n']}",
            f"W_n = {data['w_n']}",
            f"m = {data['m']}",
            f"pi = {data['pi']}",
        ]
        if data["class_counts"]:
            lines.append("class counts:")
            for name, value in data["class_counts"].items():
                lines.append(f"  {name} = {value}")
        _emit("\n".join(lines))
    return 0


# -- count ----------------------------------------------------------------


def _position_index(args) -> int:
    if args.at_n is not None:
        if args.at_n < 0:
            raise ValueError(f"--at-n must be >= 0, got {args.at_n}")
        return args.at_n
    return sequences.index_of(sequences.floor_element(args.at_x))


def _eval_class(token: str, variant: str, n: int) -> int:
    if token == "3":
        return pcomposites.count_three_composites(n)
    if token.startswith("p:"):
        p = int(token[2:])
        if variant == "classic":
            return pcomposites.count_p_composites_classic(p, n)
        return pcomposites.count_p_composites(p, n)
    if token == "kl":
        return counting.count_kl(n)
    if token == "kkl":
        if variant == "classic":
            return counting.count_kkl_classic(n)
        return counting.count_kkl(n)
    if token.startswith("kpow:"):
        return counting.count_kpow(int(token[5:]), n)
    raise ValueError(f"unknown class {token!r}")


def _cmd_count(args) -> int:
    token = args.cls
    n = _position_index(args)
    if args.variant == "classic" and token not in CLASSIC_CLASSES:
        raise ValueError(f"class {token!r} has no classic variant")

    if args.variant == "both":
        if token not in CLASSIC_CLASSES:
            raise ValueError(f"class {token!r} has no classic variant")
        exact = _eval_class(token, "exact", n)
        classic = _eval_class(token, "classic", n)
        data = {
            "class": token,
            "n": n,
            "exact": exact,
            "classic": classic,
            "delta": classic - exact,
        }
        if args.format == "json":
            _emit(json.dumps(data, indent=2))
        elif args.format == "csv":
            header = ["class", "n", "exact", "classic", "delta"]
            _emit(_render_csv(header, [[data[h] for h in header]]))
        else:
            _emit(
                f"exact = {exact}\nclassic = {classic}\ndelta = {classic - exact}"
            )
        return 0

    value = _eval_class(token, args.variant, n)
    if args.format == "json":
        _emit(json.dumps(
            {"class": token, "variant": args.variant, "n": n, "count": value},
            indent=2,
        ))
    elif args.format == "csv":
        _emit(_render_csv(
            ["class", "variant", "n", "count"],
            [[token, args.variant, n, value]],
        ))
    else:
        _emit(str(value))
    return 0


# -- gen ------------------------------------------------------------------


def _cmd_gen(args) -> int:
    primes = primegen.first_n_primes(
        args.n, include_two=args.include_two, guard=args.guard
    )
    if args.format == "json":
        _emit(json.dumps(
            {"count": args.n, "include_two": args.include_two, "primes": primes}
        ))
    elif args.format == "csv":
        rows = [[i + 1, p] for i, p in enumerate(primes)]
        _emit(_render_csv(["index", "prime"], rows))
    else:
        _emit(" ".join(str(p) for p in primes))
    return 0


# -- tseries --------------------------------------------------------------


def _cmd_tseries(args) -> int:
    divisors = [int(tok) for tok in args.divisors.split(",") if tok]
    spec = sequences.build_wheel(divisors)
    elements = sequences.wheel_elements(spec, args.limit)
    if args.format == "json":
        _emit(json.dumps({
            "divisors": list(spec.divisors),
            "period": spec.period,
            "offsets": list(spec.offsets),
            "seeds": list(spec.seeds),
            "limit": args.limit,
            "elements": elements,
        }))
    elif args.format == "csv":
        rows = [[i, u] for i, u in enumerate(elements)]
        _emit(_render_csv(["index", "element"], rows))
    else:
        _emit(" ".join(str(u) for u in elements))
    return 0


# -- verify ---------------------------------------------------------------


@dataclass
class ReportRow:
    """One mismatch between a closed form and the oracle."""

    quantity: str
    formula: int
    oracle: int
    delta: int
    n: int

    def to_dict(self) -> dict:
        return {
            "quantity": self.quantity,
            "formula": self.formula,
            "oracle": self.oracle,
            "delta": self.delta,
            "n": self.n,
        }


def _oracle_sweep(token: str, n_max: int, table: oracle.SieveTable) -> np.ndarray:
    """Enumeration-based counts for every index 0..n_max."""
    u_max = 3 + 2 * n_max
    if token == "3":
        hits = [(3 * m - 3) // 2 for m in range(3, u_max // 3 + 1, 2)]
        counts = np.bincount(np.asarray(hits, dtype=np.int64), minlength=n_max + 1)
        return np.cumsum(counts[: n_max + 1])
    if token.startswith("p:"):
        p = int(token[2:])
        values = pcomposites.p_composite_values(p, n_max)
        hits = [(v - 3) // 2 for v in values]
        counts = np.bincount(
            np.asarray(hits, dtype=np.int64), minlength=n_max + 1
        ) if hits else np.zeros(n_max + 1, dtype=np.int64)
        return np.cumsum(counts[: n_max + 1])
    if token == "kl":
        return oracle.count_class_upto(oracle.KL, n_max)
    if token == "kkl":
        return oracle.count_class_upto(oracle.KKL, n_max)
    if token.startswith("kpow:"):
        return oracle.count_class_upto(oracle.kpow(int(token[5:])), n_max)
    if token == "w":
        bits = np.asarray(
            [0 if table.is_prime(3 + 2 * i) else 1 for i in range(n_max + 1)],
            dtype=np.int64,
        )
        return np.cumsum(bits)
    raise ValueError(f"unknown class {token!r}")


def _formula_sweep(token: str, variant: str, n_max: int) -> np.ndarray:
    if token == "w":
        return np.asarray(
            [counting.assemble_w(n, counting.Strategy.FORMULA) for n in range(n_max + 1)],
            dtype=np.int64,
        )
    return np.asarray(
        [_eval_class(token, variant, n) for n in range(n_max + 1)],
        dtype=np.int64,
    )


def _cmd_verify(args) -> int:
    tokens = [tok.strip() for tok in args.classes.split(",") if tok.strip()]
    n_max = args.max_n
    table = _get_table(3 + 2 * n_max)
    summaries = []
    rows: list[ReportRow] = []
    exact_failures = 0

    for token in tokens:
        if args.variant == "both" and token in CLASSIC_CLASSES:
            variants = ["exact", "classic"]
        elif args.variant == "classic":
            if token not in CLASSIC_CLASSES:
                continue
            variants = ["classic"]
        else:
            variants = ["exact"]
        for variant in variants:
            if token == "w" and variant == "classic":
                continue
            label = f"{token}[{'formula' if token == 'w' else variant}]"
            got = _formula_sweep(token, variant, n_max)
            want = _oracle_sweep(token, n_max, table)
            diff = np.flatnonzero(got != want)
            informational = variant == "classic" or token == "w"
            if diff.size and not informational:
                exact_failures += diff.size
            for n in diff[: args.max_rows]:
                rows.append(ReportRow(
                    label, int(got[n]), int(want[n]), int(got[n] - want[n]), int(n)
                ))
            summaries.append({
                "class": label,
                "checked": n_max + 1,
                "mismatches": int(diff.size),
                "first_mismatch": int(diff[0]) if diff.size else None,
                "informational": informational,
            })

    ok = exact_failures == 0
    if args.format == "json":
        _emit(json.dumps({
            "max_n": n_max,
            "ok": ok,
            "summaries": summaries,
            "rows": [r.to_dict() for r in rows],
        }, indent=2))
    elif args.format == "csv":
        _emit(_render_csv(
            ["quantity", "formula", "oracle", "delta", "n"],
            [[r.quantity, r.formula, r.oracle, r.delta, r.n] for r in rows],
        ))
    else:
        lines = []
        for s in summaries:
            status = "ok" if s["mismatches"] == 0 else (
                "WARN" if s["informational"] else "FAIL"
            )
            line = (
                f"{status:4s} {s['class']:16s} checked n <= {n_max}"
                f"  mismatches {s['mismatches']}"
            )
            if s["first_mismatch"] is not None:
                line += f"  first at n = {s['first_mismatch']}"
            lines.append(line)
        for r in rows[: args.max_rows]:
            lines.append(
                f"  {r.quantity} n={r.n}: formula {r.formula} "
                f"oracle {r.oracle} delta {r.delta}"
            )
        lines.append("result: " + ("OK" if ok else "MISMATCH"))
        _emit("\n".join(lines))
    return 0 if ok else 1


# -- bench ----------------------------------------------------------------


def _median_ns(fn, repeats: int) -> int:
    samples = []
    for _ in range(repeats):
        start = time.perf_counter_ns()
        fn()
        samples.append(time.perf_counter_ns() - start)
    return int(statistics.median(samples))


def _cmd_bench(args) -> int:
    x_max = int(args.x_max)
    repeats = args.repeats
    table = _get_table(x_max)
    n_primes = table.prime_count(x_max)
    gen_count = min(n_primes, 20_000)

    rows = [
        {
            "name": "pi(oracle)",
            "x": x_max,
            "median_ns": _median_ns(
                lambda: counting.pi_of(x_max, counting.Strategy.ORACLE, table),
                repeats,
            ),
        },
        {
            "name": "pi(formula)",
            "x": x_max,
            "median_ns": _median_ns(
                lambda: counting.pi_of(x_max, counting.Strategy.FORMULA),
                repeats,
            ),
        },
        {
            "name": f"gen({gen_count})",
            "x": x_max,
            "median_ns": _median_ns(
                lambda: primegen.first_n_primes(gen_count), repeats
            ),
        },
    ]
    if args.format == "json":
        _emit(json.dumps({"repeats": repeats, "rows": rows}, indent=2))
    elif args.format == "csv":
        _emit(_render_csv(
            ["name", "x", "median_ns"],
            [[r["name"], r["x"], r["median_ns"]] for r in rows],
        ))
    else:
        lines = [f"{'name':14s} {'x':>10s} {'median_ns':>14s}"]
        for r in rows:
            lines.append(f"{r['name']:14s} {r['x']:>10d} {r['median_ns']:>14d}")
        _emit("\n".join(lines))
    return 0


# -- parser ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oddseq",
        description="Prime counting and generation over the odd sequence.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=FORMATS, default="text")

    p_pi = sub.add_parser("pi", help="prime count with full breakdown")
    p_pi.add_argument("x", type=_positive_number)
    p_pi.add_argument(
        "--strategy", choices=[s.value for s in counting.Strategy],
        default="oracle",
    )
    add_format(p_pi)
    p_pi.set_defaults(fn=_cmd_pi)

    p_count = sub.add_parser("count", help="composite-class count at a position")
    p_count.add_argument(
        "cls", metavar="class",
        help="one of: 3, p:<prime>, kl, kkl, kpow:<j>",
    )
    pos = p_count.add_mutually_exclusive_group(required=True)
    pos.add_argument("--at-n", type=int, help="sequence index")
    pos.add_argument("--at-x", type=_positive_number, help="value bound")
    p_count.add_argument(
        "--variant", choices=["exact", "classic", "both"], default="exact"
    )
    add_format(p_count)
    p_count.set_defaults(fn=_cmd_count)

    p_gen = sub.add_parser("gen", help="generate the first N primes")
    p_gen.add_argument("n", type=int)
    p_gen.add_argument(
        "--include-two", action=argparse.BooleanOptionalAction, default=True
    )
    p_gen.add_argument("--guard", choices=primegen.GUARDS, default="strict")
    add_format(p_gen)
    p_gen.set_defaults(fn=_cmd_gen)

    p_ts = sub.add_parser("tseries", help="wheel stream for a divisor set")
    p_ts.add_argument("divisors", help="comma-separated odd primes, e.g. 3,5")
    p_ts.add_argument("--limit", type=int, required=True)
    add_format(p_ts)
    p_ts.set_defaults(fn=_cmd_tseries)

    p_verify = sub.add_parser(
        "verify", help="differential check of closed forms against the oracle"
    )
    p_verify.add_argument("--max-n", type=int, default=1000)
    p_verify.add_argument("--classes", default=DEFAULT_VERIFY_CLASSES)
    p_verify.add_argument(
        "--variant", choices=["exact", "classic", "both"], default="exact"
    )
    p_verify.add_argument("--max-rows", type=int, default=10)
    add_format(p_verify)
    p_verify.set_defaults(fn=_cmd_verify)

    p_bench = sub.add_parser("bench", help="timing table (informational)")
    p_bench.add_argument("--x-max", type=_positive_number, default=100_000)
    p_bench.add_argument("--repeats", type=int, default=5)
    add_format(p_bench)
    p_bench.set_defaults(fn=_cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
