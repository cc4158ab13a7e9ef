"""``hwl`` command line.

Exit codes: 0 all checks passed, 1 a verification failed, 2 usage or domain
error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from fractions import Fraction
from pathlib import Path

from hwl import bound, cube, embed, oracle, takagi
from hwl.errors import BudgetExceeded, UsageError, ValidationError, VerificationFailure

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def default_threads() -> int:
    env = os.environ.get("HWL_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError(f"HWL_THREADS={env!r} is not an integer")
    return os.cpu_count() or 1


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _rows_to_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _load_embedding(args) -> embed.Embedding:
    if args.embedding:
        eta = embed.sample_embedding() if args.embedding == "sample" else embed.Embedding.load(args.embedding)
        if args.n is not None and args.n != eta.n:
            raise UsageError(f"--n {args.n} does not match embedding dimension {eta.n}")
        return eta
    if args.n is None:
        raise UsageError("give --n (Gray embedding) or --embedding FILE")
    return embed.gray_embedding(args.n)


def _sibling(out: str, suffix: str) -> Path:
    return Path(out).with_suffix(suffix)


def cmd_gray(args) -> int:
    if args.n is None:
        raise UsageError("gray needs --n")
    eta = embed.gray_embedding(args.n)
    text = eta.to_json(base=args.base) + "\n"
    if args.out:
        Path(args.out).write_text(text)
        info = {"n": eta.n, "out": args.out}
        if eta.n >= 2:
            info["wirelength"] = embed.wirelength(eta, "cycle")
        sys.stdout.write(_dump_json(info))
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_wirelength(args) -> int:
    eta = _load_embedding(args)
    d = embed.wirelength(eta, args.host, method="distance")
    c = embed.wirelength(eta, args.host, method="cut")
    info = {"n": eta.n, "host": args.host, "wirelength": d, "distance_sum": d, "cut_sum": c}
    if args.host == "cycle":
        info["gray_formula"] = embed.gray_wirelength_formula(eta.n)
    _emit(_dump_json(info), args.out)
    return EXIT_OK if d == c else EXIT_FAIL


def cmd_theta(args, threads: int) -> int:
    if args.set:
        S = cube.VertexSet.from_json(args.set)
        info = {"n": S.n, "size": len(S), "theta": cube.boundary_size(S, "both"), "type": cube.type_of(S)}
        _emit(_dump_json(info), args.out)
        return EXIT_OK
    if args.n is None or args.k is None:
        raise UsageError("theta needs --n and --k (or --set)")
    n, k, t = args.n, args.k, args.t
    cfg = oracle.ScanConfig(workers=threads)
    if args.mode == "formula":
        if t is None:
            value = cube.theta_opt(n, k)
        else:
            if k != 1 << (n - 1):
                raise UsageError("formula mode knows theta(n,k,t) only for k = 2^(n-1)")
            value = cube.theta_half_type(n, t)
    else:
        value = oracle.brute_theta(n, k, cfg) if t is None else oracle.brute_theta_kt(n, k, t, cfg)
    _emit(("infeasible" if value is None else str(value)) + "\n", args.out)
    return EXIT_OK


def cmd_theta_table(args, threads: int) -> int:
    n = 5 if args.n is None else args.n
    cfg = oracle.ScanConfig(workers=threads)
    header = ("k", "t", "theta", "bound_num", "bound_den")
    rows = []
    status = EXIT_OK
    if n == 5:
        try:
            cells = oracle.theta5_table(cfg)
        except VerificationFailure as exc:
            print(f"FAIL {exc}", file=sys.stderr)
            return EXIT_FAIL
        for c in cells:
            rows.append((c["k"], c["t"], c["theta"], c["bound"].numerator, c["bound"].denominator))
    elif 1 <= n < 5:
        N = 1 << n
        for k in range(N + 1):
            prof = oracle.theta_kt_profile(n, k, cfg)
            b = N * takagi.f(Fraction(k, N))
            for t in sorted(prof):
                rows.append((k, t, prof[t], b.numerator, b.denominator))
    else:
        raise BudgetExceeded(f"theta-table is exhaustive; n <= 5 only (got {n})")
    if args.format == "json":
        text = _dump_json([dict(zip(header, r)) for r in rows])
    else:
        text = _rows_to_csv(header, rows)
    _emit(text, args.out)
    return status


def cmd_type_seq(args) -> int:
    if args.series == "s":
        if args.n is None or args.embedding:
            raise UsageError("--series s takes --n only")
        if args.n < 3:
            raise UsageError("type sequences are tabulated for n >= 3")
        n, values, col = args.n, bound.s_sequence(args.n).values, "s_i"
    else:
        eta = _load_embedding(args)
        if eta.n < 3:
            raise UsageError("type sequences are tabulated for n >= 3")
        n, values, col = eta.n, embed.embedding_type_sequence(eta).values, "t_i"
    rows = [(i, x) for i, x in enumerate(values, start=1)]
    text = _dump_json({"n": n, col: list(values)}) if args.format == "json" else _rows_to_csv(("i", col), rows)
    _emit(text, args.out)
    if args.plot:
        if not args.out:
            raise UsageError("--plot needs --out to place the figure")
        from hwl.figures import plot_series

        plot_series({col: values}, n, _sibling(args.out, ".png"), f"{col}, n={n}")
    status = EXIT_OK
    if embed.prop26_violations(values, n):
        status = EXIT_FAIL
    if args.series == "types" and not args.embedding and values != embed.gray_type_formula(n):
        status = EXIT_FAIL
    return status


def cmd_verify_grid(args) -> int:
    r1, r2 = takagi.verify_appendix_grids(args.depth)
    payload = {"depth": args.depth, "reports": [r1.to_dict(), r2.to_dict()]}
    if args.out:
        Path(args.out).write_text(_dump_json(payload))
    for r in (r1, r2):
        print(f"{r.region}: min gap {r.min_gap} = {float(r.min_gap):.6f} at {r.argmin} "
              f"({'>' if r.strict else '>='} 0) {'PASS' if r.passed else 'FAIL'}")
    return EXIT_OK if r1.passed and r2.passed else EXIT_FAIL


def cmd_verify_lemmas(args) -> int:
    n_max = args.n_max
    out = {
        "takagi": takagi.lemma_suite_takagi(n_max, args.n_max_alpha, seed=args.seed),
        "counts": bound.count_identities(n_max),
        "gray": [embed.gray_identities_check(n)["n"] for n in range(3, min(n_max, 12) + 1)],
    }
    _emit(_dump_json(out), args.out)
    return EXIT_OK


def cmd_bound_pipeline(args) -> int:
    eta = _load_embedding(args)
    rep = bound.lower_bound_report(eta)
    summary = _dump_json(rep.summary())
    if args.out:
        Path(args.out).write_text(rep.to_csv())
        _sibling(args.out, ".json").write_text(summary)
        if args.plot:
            from hwl.figures import plot_pipeline

            plot_pipeline(rep.stages, rep.n, _sibling(args.out, ".png"), f"pipeline stages, n={rep.n}")
    elif args.plot:
        raise UsageError("--plot needs --out to place the figure")
    sys.stdout.write(summary if args.out or args.format == "json" else rep.to_csv())
    return EXIT_OK if rep.verdict else EXIT_FAIL


def cmd_random_sweep(args, threads: int) -> int:
    if args.n is None:
        raise UsageError("random-sweep needs --n")
    res = bound.random_sweep(args.n, args.count, args.seed, workers=threads)
    _emit(_dump_json(res), args.out)
    return EXIT_OK if res["passed"] else EXIT_FAIL


def cmd_search(args) -> int:
    if args.n is None:
        raise UsageError("search needs --n")
    best, witness = oracle.brute_min_cycle_wl(args.n)
    formula = embed.gray_wirelength_formula(args.n)
    info = {"n": args.n, "minimum": best, "formula": formula, "witness": witness.to_dict()}
    _emit(_dump_json(info), args.out)
    return EXIT_OK if best == formula else EXIT_FAIL


VERIFY_ITEMS = (
    "gray", "counts", "lemmas", "grids", "type-range", "table1", "equivalence", "exhaustive", "sweep",
)


def verify_all(skip=(), threads: int = 1, count: int = 10_000, seed: int = 7, out=None) -> int:
    """Run every certification item; print one line per item."""
    skip = set(skip)
    unknown = skip - set(VERIFY_ITEMS) - {"oracle"}
    if unknown:
        raise UsageError(f"unknown --skip items: {sorted(unknown)}")
    scans = "oracle" not in skip
    cfg = oracle.ScanConfig(workers=threads)

    def gray():
        for n in range(2, 13):
            if embed.wirelength(embed.gray_embedding(n)) != embed.gray_wirelength_formula(n):
                raise VerificationFailure("Gray wirelength formula", n)
        for n in range(3, 13):
            embed.gray_identities_check(n)
        for n in range(5, 11):
            bound.gray_fixed_point(n)
        return "n=2..12"

    def counts():
        return f"{bound.count_identities(12)['pairs']} pairs"

    def lemmas():
        return f"{sum(takagi.lemma_suite_takagi(12, 40).values())} checks"

    def grids():
        r1, r2 = takagi.verify_appendix_grids()
        for r in (r1, r2):
            if not r.passed:
                raise VerificationFailure(f"grid {r.region}", r.argmin, str(r.min_gap))
        return f"v1 min {r1.min_gap}, v2 min {r2.min_gap} ~ {float(r2.min_gap):.4f}"

    def type_range():
        for n in range(3, 13):
            theta_kt = None
            if n <= 4 or (n == 5 and scans):
                theta_kt = lambda k, t, n=n: oracle.theta_kt_profile(n, k, cfg).get(t)
            r = takagi.verify_claim15_grid(n, theta_kt)
            if not r.passed:
                raise VerificationFailure(f"type-range grid n={n}", r.argmin, r.note or str(r.min_gap))
        return "n=3..12"

    def table1():
        return f"{len(oracle.theta5_table(cfg))} cells"

    def equivalence():
        ks = range(10, 17) if scans else ()
        return f"{oracle.check_oracle_equivalence(cfg, 4, ks)} (n,k) pairs"

    def exhaustive():
        return ", ".join(f"n={n}: {oracle.check_min_cycle_wl(n)}" for n in (2, 3))

    def sweep():
        parts = []
        for n in (5, 6):
            res = bound.random_sweep(n, count, seed, workers=threads)
            if not res["passed"]:
                raise VerificationFailure("random sweep", (n, res["failures"][:5]))
            parts.append(f"n={n}: {count} ok, min WL {res['min_wirelength']}")
        return "; ".join(parts)

    items = {
        "gray": gray, "counts": counts, "lemmas": lemmas, "grids": grids, "type-range": type_range,
        "table1": table1, "equivalence": equivalence, "exhaustive": exhaustive, "sweep": sweep,
    }
    if not scans:
        skip.add("table1")
    results = []
    for name in VERIFY_ITEMS:
        if name in skip:
            results.append({"item": name, "status": "SKIP", "detail": ""})
            print(f"{name:12s} SKIP")
            continue
        start = time.perf_counter()
        try:
            detail = items[name]()
            status = "PASS"
        except VerificationFailure as exc:
            detail, status = str(exc), "FAIL"
        took = time.perf_counter() - start
        results.append({"item": name, "status": status, "detail": detail})
        print(f"{name:12s} {status}  {took:7.2f}s  {detail}", flush=True)
    failed = [r["item"] for r in results if r["status"] == "FAIL"]
    if out:
        Path(out).write_text(_dump_json({"results": results, "failed": failed}))
    print(f"{'FAILED: ' + ', '.join(failed) if failed else 'all checks passed'}")
    return EXIT_FAIL if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int)
    common.add_argument("--out")
    common.add_argument("--threads", type=int)
    common.add_argument("--format", choices=("json", "csv"), default="csv")

    p = argparse.ArgumentParser(prog="hwl", description="Circular wirelength of hypercubes")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gray", parents=[common], help="write the reflected Gray embedding")
    s.add_argument("--base", type=int, choices=(0, 1), default=1)

    s = sub.add_parser("wirelength", parents=[common], help="wirelength of an embedding")
    s.add_argument("--embedding")
    s.add_argument("--host", choices=("cycle", "path"), default="cycle")

    s = sub.add_parser("theta", parents=[common], help="theta(n,k), theta(n,k,t) or theta(n,S)")
    s.add_argument("--k", type=int)
    s.add_argument("--t", type=int)
    s.add_argument("--mode", choices=("formula", "brute"), default="formula")
    s.add_argument("--set", help='vertex set as JSON, e.g. {"n":3,"bits":"0x07"}')

    sub.add_parser("theta-table", parents=[common], help="exhaustive theta(n,k,t) table (reference cells at n=5)")

    s = sub.add_parser("type-seq", parents=[common], help="type sequence of an embedding (CSV i,t_i)")
    s.add_argument("--embedding")
    s.add_argument("--series", choices=("types", "s"), default="types",
                   help="'s' exports the four-ramp target sequence instead")
    s.add_argument("--plot", action="store_true", help="also render <out>.png")

    s = sub.add_parser("verify-grid", parents=[common], help="exact depth-12 grid scans")
    s.add_argument("--depth", type=int, default=takagi.GRID_DEPTH)

    s = sub.add_parser("verify-lemmas", parents=[common], help="lemma and count identity suite")
    s.add_argument("--n-max", type=int, default=12)
    s.add_argument("--n-max-alpha", type=int, default=40)
    s.add_argument("--seed", type=int, default=0)

    s = sub.add_parser("bound-pipeline", parents=[common], help="lower-bound stages t..s (CSV + JSON summary)")
    s.add_argument("--embedding", help="embedding JSON file, or 'sample' for the bundled n=6 sample")
    s.add_argument("--plot", action="store_true", help="also render <out>.png")

    s = sub.add_parser("random-sweep", parents=[common], help="pipeline verdicts over random embeddings")
    s.add_argument("--count", type=int, default=10_000)
    s.add_argument("--seed", type=int, default=7)

    sub.add_parser("search", parents=[common], help="exhaustive minimum circular wirelength (n <= 3)")

    s = sub.add_parser("verify-all", parents=[common], help="run every certification item")
    s.add_argument("--skip", default="", help=f"comma list from {', '.join(VERIFY_ITEMS)}, or 'oracle'")
    s.add_argument("--count", type=int, default=10_000)
    s.add_argument("--seed", type=int, default=7)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        threads = args.threads if args.threads is not None else default_threads()
        if threads < 1:
            raise UsageError("--threads must be >= 1")
        cmd = args.command
        if cmd == "gray":
            return cmd_gray(args)
        if cmd == "wirelength":
            return cmd_wirelength(args)
        if cmd == "theta":
            return cmd_theta(args, threads)
        if cmd == "theta-table":
            return cmd_theta_table(args, threads)
        if cmd == "type-seq":
            return cmd_type_seq(args)
        if cmd == "verify-grid":
            return cmd_verify_grid(args)
        if cmd == "verify-lemmas":
            return cmd_verify_lemmas(args)
        if cmd == "bound-pipeline":
            return cmd_bound_pipeline(args)
        if cmd == "random-sweep":
            return cmd_random_sweep(args, threads)
        if cmd == "search":
            return cmd_search(args)
        if cmd == "verify-all":
            skip = [x.strip() for x in args.skip.split(",") if x.strip()]
            return verify_all(skip, threads, args.count, args.seed, args.out)
    except VerificationFailure as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (UsageError, ValidationError, BudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    parser.error(f"unknown command {args.command}")
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
