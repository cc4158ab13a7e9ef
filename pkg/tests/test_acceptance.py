"""Acceptance criteria 1-8, each timed against its budget.

Every criterion prints one ``[ACCEPT n] PASS|FAIL`` line; the lines are
repeated in the pytest terminal summary.  Runnable directly as a script.
"""

import random
import time
from collections import Counter
from fractions import Fraction

import pytest

from hwl import bound, cube, embed, oracle, takagi
from hwl.cube import VertexSet

RESULTS: list[str] = []


def record(num, title, ok, seconds, budget, detail=""):
    ok = ok and seconds < budget
    line = f"[ACCEPT {num}] {'PASS' if ok else 'FAIL'} {title} ({seconds:.1f}s / {budget:.0f}s) {detail}".rstrip()
    RESULTS.append(line)
    print(line)
    assert ok, line


def test_criterion_1_gray_formula():
    t0 = time.perf_counter()
    got = {n: embed.wirelength(embed.gray_embedding(n), "cycle") for n in range(2, 13)}
    want = {n: 3 * 2 ** (2 * n - 3) - 2 ** (n - 1) for n in range(2, 13)}
    record(1, "Gray wirelength formula n=2..12", got == want, time.perf_counter() - t0, 10)


def test_criterion_2_exhaustive_minimality():
    t0 = time.perf_counter()
    b2, _ = oracle.brute_min_cycle_wl(2)
    b3, w3 = oracle.brute_min_cycle_wl(3)
    ok = (b2, b3) == (4, 20) and embed.wirelength(w3) == 20
    record(2, "exhaustive minimum n=2,3", ok, time.perf_counter() - t0, 5, f"min {b2}, {b3}")


def test_criterion_3_table1():
    t0 = time.perf_counter()
    cfg = oracle.ScanConfig(workers=1)
    cells = oracle.theta5_table(cfg)
    ok = len(cells) == 16
    ok = ok and {(c["k"], c["t"]): c["theta"] for c in cells} == oracle.TABLE1
    ok = ok and all(c["theta"] >= 32 * takagi.f(Fraction(c["k"], 32)) for c in cells)
    ok = ok and {c["theta"] for c in cells} == {26, 29, 30, 31, 32, 33, 34}
    record(3, "theta(5,k,t) cells and bound row", ok, time.perf_counter() - t0, 600, f"{len(cells)} cells")


def test_criterion_4_exact_grids():
    t0 = time.perf_counter()
    v1, v2 = takagi.verify_appendix_grids()
    ok = v1.passed and v1.min_gap == 0
    ok = ok and v2.passed and v2.min_gap > 0 and abs(float(v2.min_gap) - 0.003) <= 0.0005
    i, j = v2.argmin
    ok = ok and takagi.a(12, Fraction(i, 4096), Fraction(j, 4096)) - takagi.f(Fraction(i + 1, 4096)) == v2.min_gap
    record(4, "exact grids", ok, time.perf_counter() - t0, 60,
           f"v1 min {v1.min_gap} at {v1.argmin}; v2 min {v2.min_gap} ~ {float(v2.min_gap):.4f} at {v2.argmin}")


def test_criterion_5_lemma_suite():
    t0 = time.perf_counter()
    counts = takagi.lemma_suite_takagi(n_max=12, n_max_alpha=40, samples=1000)
    counts.update(bound.count_identities(12))
    takagi.check_grid_constants()
    ok = counts["parabola_identity"] == 1000 and counts["alpha_identities"] == 38
    record(5, "lemma suite", ok, time.perf_counter() - t0, 60, f"{sum(v for v in counts.values())} checks")


def test_criterion_6_oracle_equivalence():
    t0 = time.perf_counter()
    pairs = oracle.check_oracle_equivalence(oracle.ScanConfig(workers=1), n_max=4, n5_ks=range(10, 17))
    r = random.Random(6)
    subsets = 0
    ok = True
    for _ in range(10_000):
        n = r.randint(2, 6)
        S = VertexSet(n, r.getrandbits(1 << n))
        theta = cube.boundary_size(S, "direct")
        multicut = 0
        for axis in range(1, n + 1):
            s0, s1 = cube.split_by_axis(S, axis)
            d = len(s0 ^ s1)
            multicut += d
            ok = ok and theta == cube.boundary_size(s0) + cube.boundary_size(s1) + d
        ok = ok and theta == multicut
        subsets += 1
    record(6, "oracle = formula; multicut/onecut identities", ok, time.perf_counter() - t0, 300,
           f"{pairs} (n,k) pairs, {subsets} subsets")


def test_criterion_7_property_sweep():
    t0 = time.perf_counter()
    ok = True
    detail = []
    for n in (5, 6):
        res = bound.random_sweep(n, 10_000, seed=7, workers=1)
        ok = ok and res["passed"] and res["min_wirelength"] >= embed.gray_wirelength_formula(n)
        detail.append(f"n={n}: {len(res['failures'])} failures, min WL {res['min_wirelength']}")
    for n in range(5, 11):
        bound.gray_fixed_point(n)
    ok = ok and not embed.prop26_violations(embed.embedding_type_sequence(embed.sample_embedding()).values, 6)
    record(7, "random sweep and Gray fixed point", ok, time.perf_counter() - t0, 300, "; ".join(detail))


def test_criterion_8_figure_data():
    t0 = time.perf_counter()
    rep = bound.lower_bound_report(embed.sample_embedding())
    s = rep.sums
    ok = set(rep.stages) == set(bound.STAGES) and all(len(v) == 32 for v in rep.stages.values())
    ok = ok and rep.wirelength >= s["t"] >= s["t1"] == s["t2"] == s["t3"] >= s["t4"] >= s["s"] == 1504
    ok = ok and Counter(rep.stages["s"]) == Counter(embed.gray_type_formula(6))
    gray = embed.embedding_type_sequence(embed.gray_embedding(6)).values
    tent = tuple(min(j % 16, 16 - j % 16) for j in range(32))
    ok = ok and gray == tent
    record(8, "figure series", ok, time.perf_counter() - t0, 60, f"sums {[s[k] for k in bound.STAGES]}")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))
