"""Command-line front end: one subcommand per verification job.

  permcheck verify <check> [options]     run a single named check
  permcheck scan conjecture45 [options]  Fedder-coefficient scan over primes
  permcheck bench <id>                   timing harness (CSV rows)

Exit codes: 0 all checks passed, 2 some check failed, 3 inconclusive only,
1 usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import __version__
from .fppoly import PrimeModulus
from .shapes import MatrixShape, parse_shape
from . import witnesses

VERIFY_CHECKS = (
    "lemma31",
    "lemma32",
    "lemma34",
    "thm35",
    "thm36",
    "witness-generic",
    "witness-symmetric",
    "monomials28",
    "monomials29",
    "fpure",
)

BENCHES = ("permanent-eval", "truncated-pow", "pointcount")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> _Parser:
    parser = _Parser(prog="permcheck", description=__doc__)
    parser.add_argument("--version", action="version", version=f"permcheck {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--shape", help='shape spec: "generic:MxN" | "symmetric:N" | "hankel:N"')
        p.add_argument("--m", type=int, help="row count")
        p.add_argument("--n", type=int, help="column count / size")
        p.add_argument("--t", type=int, help="submatrix size")
        p.add_argument("--p", help="odd prime, or comma-separated list")
        p.add_argument("--e", type=int, default=1, help="Frobenius exponent (default 1)")
        p.add_argument(
            "--method",
            choices=("truncated", "pointcount", "fiber"),
            default="truncated",
        )
        p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--out", help="write the report to a file instead of stdout")
        p.add_argument("--checkpoint", help="checkpoint file for the fiber scan")

    verify = sub.add_parser("verify", help="run one verification")
    verify.add_argument("check", choices=VERIFY_CHECKS)
    add_common(verify)

    scan = sub.add_parser("scan", help="scan a check across primes")
    scan.add_argument("check", choices=("conjecture45",))
    add_common(scan)

    bench = sub.add_parser("bench", help="timing harness")
    bench.add_argument("bench_id", choices=BENCHES)
    bench.add_argument("--out", help="write CSV to a file instead of stdout")

    dump = sub.add_parser("generators", help="dump permanental ideal generators, one per line")
    dump.add_argument("--shape", required=True)
    dump.add_argument("--t", type=int)
    dump.add_argument("--p", default="3")
    dump.add_argument("--out")

    return parser


def _parse_primes(text, required=True):
    if text is None:
        if required:
            raise UsageError("--p is required for this check")
        return []
    primes = []
    for part in str(text).split(","):
        part = part.strip()
        if not part:
            continue
        try:
            p = int(part)
            PrimeModulus(p)  # validates odd prime in range
        except ValueError as exc:
            raise UsageError(f"invalid prime {part!r}: {exc}") from exc
        primes.append(p)
    if required and not primes:
        raise UsageError("--p is required for this check")
    return primes


def _need(args, name):
    value = getattr(args, name)
    if value is None:
        raise UsageError(f"--{name} is required for this check")
    return value


def _run_verify(args) -> list:
    check = args.check
    if args.e != 1:
        raise UsageError("only e = 1 is supported by the named checks")
    if check == "lemma31":
        return [witnesses.verify_hankel_monomial_absence(_need(args, "n"))]
    if check == "lemma32":
        return [witnesses.verify_hankel_eisenstein(_need(args, "n"))]
    if check == "lemma34":
        n = _need(args, "n")
        return [witnesses.verify_hankel_product_identity(n, p) for p in _parse_primes(args.p)]
    if check == "thm35":
        n = _need(args, "n")
        return [witnesses.verify_hankel_hypersurface(n, p) for p in _parse_primes(args.p)]
    if check == "thm36":
        return [witnesses.verify_hankel_specialization_check(_need(args, "n"))]
    if check == "witness-generic":
        m, n = _need(args, "m"), _need(args, "n")
        shape = MatrixShape.generic(m, n)
        return [witnesses.verify_witness_membership(shape, p) for p in _parse_primes(args.p)]
    if check == "witness-symmetric":
        shape = MatrixShape.symmetric(_need(args, "n"))
        return [witnesses.verify_witness_membership(shape, p) for p in _parse_primes(args.p)]
    if check == "monomials28":
        m, n = _need(args, "m"), _need(args, "n")
        return [witnesses.verify_entry_triples(m, n, p) for p in _parse_primes(args.p)]
    if check == "monomials29":
        m, n = _need(args, "m"), _need(args, "n")
        return [witnesses.verify_squared_entry_triples(m, n, p) for p in _parse_primes(args.p)]
    if check == "fpure":
        if args.shape is None:
            raise UsageError("--shape is required for fpure")
        try:
            shape = parse_shape(args.shape)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        t = args.t if args.t is not None else min(shape.nrows, shape.ncols)
        reports = []
        for p in _parse_primes(args.p):
            try:
                reports.append(
                    witnesses.verify_fpure(shape, t, p, method=args.method, threads=args.threads)
                )
            except ValueError as exc:
                raise UsageError(str(exc)) from exc
        return reports
    raise UsageError(f"unknown check {check!r}")


def _run_scan(args) -> list:
    primes = _parse_primes(args.p)
    return [
        witnesses.scan_three_by_four_fpurity(
            primes, method=args.method, threads=args.threads, checkpoint=args.checkpoint
        )
    ]


def _aggregate(reports) -> str:
    verdicts = {r.verdict for r in reports}
    if "fail" in verdicts:
        return "fail"
    if "inconclusive" in verdicts:
        return "inconclusive"
    return "pass"


def _config_echo(args) -> dict:
    keys = ("command", "check", "shape", "m", "n", "t", "p", "e", "method",
            "threads", "format", "out", "checkpoint")
    return {k: getattr(args, k, None) for k in keys}


def _render_text(reports, aggregate, total_ms) -> str:
    lines = []
    for r in reports:
        shown = {k: v for k, v in r.params.items() if v is not None}
        params = " ".join(f"{k}={v}" for k, v in shown.items())
        lines.append(f"[{r.verdict.upper():>12}] {r.check} {params} ({r.ms:.1f} ms)")
        for key, value in r.evidence.items():
            if isinstance(value, list) and len(value) > 6:
                value = f"[{len(value)} entries]"
            lines.append(f"    {key}: {value}")
    lines.append(f"aggregate: {aggregate} ({len(reports)} check(s), {total_ms:.1f} ms)")
    return "\n".join(lines) + "\n"


def _render_json(reports, aggregate, total_ms, args) -> str:
    doc = {
        "schema": 1,
        "tool": "permcheck",
        "version": __version__,
        "config": _config_echo(args),
        "reports": [r.to_json_dict() for r in reports],
        "aggregate": aggregate,
        "total_ms": round(total_ms, 3),
    }
    return json.dumps(doc, indent=2) + "\n"


def _emit(text, out_path):
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _run_bench(args) -> int:
    import random

    from .fppoly import TruncationContext, truncated_pow
    from .frobcheck import _count_range_nonvanishing
    from .shapes import (build_matrix, permanent, permanental_generators,
                         permanent_eval, permanent_eval_dp, permanent_eval_naive)

    rows = ["bench,method,size,p,ns_per_op,ops"]
    rng = random.Random(20240901)
    if args.bench_id == "permanent-eval":
        p = 7
        for size in range(3, 9):
            mat = [[rng.randrange(p) for _ in range(size)] for _ in range(size)]
            for name, fn in (("ryser", permanent_eval), ("dp", permanent_eval_dp),
                             ("naive", permanent_eval_naive)):
                reps = max(1, 20000 // (2**size)) if name != "naive" else max(1, 2000 // (2**size))
                t0 = time.perf_counter()
                for _ in range(reps):
                    fn(mat, p)
                dt = time.perf_counter() - t0
                rows.append(f"permanent-eval,{name},{size},{p},{dt / reps * 1e9:.0f},{reps}")
    elif args.bench_id == "truncated-pow":
        for p in (3, 5, 7):
            mat = build_matrix(MatrixShape.hankel(3))
            f3 = permanent(mat, char=p)
            ctx = TruncationContext(PrimeModulus(p), mat.space)
            for strategy in ("binary", "repeated"):
                reps = 3
                t0 = time.perf_counter()
                for _ in range(reps):
                    truncated_pow(f3, p - 1, ctx, strategy=strategy)
                dt = time.perf_counter() - t0
                rows.append(f"truncated-pow,{strategy},3,{p},{dt / reps * 1e9:.0f},{reps}")
    elif args.bench_id == "pointcount":
        p = 5
        mat = build_matrix(MatrixShape.generic(3, 4))
        gens = permanental_generators(mat, 3, char=p)
        gen_terms = [list(g.items()) for g in gens.generators]
        points = 10**6
        t0 = time.perf_counter()
        _count_range_nonvanishing(gen_terms, mat.space.count, p, 0, points)
        dt = time.perf_counter() - t0
        rows.append(f"pointcount,numpy,12,{p},{dt / points * 1e9:.0f},{points}")
    text = "\n".join(rows) + "\n"
    _emit(text, args.out)
    return 0


def _run_generators(args) -> int:
    from .shapes import build_matrix, generator_lines, permanental_generators

    primes = _parse_primes(args.p)
    if len(primes) != 1:
        raise UsageError("the generators dump takes a single prime")
    try:
        shape = parse_shape(args.shape)
        t = args.t if args.t is not None else min(shape.nrows, shape.ncols)
        pres = permanental_generators(build_matrix(shape), t, char=primes[0])
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _emit("\n".join(generator_lines(pres)) + "\n", args.out)
    return 0


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "bench":
            return _run_bench(args)
        if args.command == "generators":
            return _run_generators(args)
        try:
            if args.command == "scan":
                if args.e != 1:
                    raise UsageError("the scan uses e = 1")
                t0 = time.perf_counter()
                reports = _run_scan(args)
            else:
                t0 = time.perf_counter()
                reports = _run_verify(args)
        except ValueError as exc:
            # refused methods, out-of-range sizes, p = 2 style rejections
            raise UsageError(str(exc)) from exc
        total_ms = (time.perf_counter() - t0) * 1000.0
        aggregate = _aggregate(reports)
        if args.format == "json":
            text = _render_json(reports, aggregate, total_ms, args)
        else:
            text = _render_text(reports, aggregate, total_ms)
        _emit(text, args.out)
        return {"pass": 0, "fail": 2, "inconclusive": 3}[aggregate]
    except UsageError as exc:
        sys.stderr.write(f"permcheck: error: {exc}\n")
        return 1


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
