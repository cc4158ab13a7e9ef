"""Exact tent-map partial sums, the comparison parabola and the bound surface.

Scalar entry points take and return ``Fraction``.  The grid scans work at
dyadic points k/2^D, where every quantity has a power-of-two denominator; they
are evaluated as integer numerators over one common denominator, which is
exact, and the extremal cells are re-evaluated through the ``Fraction`` path.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import floor

import numpy as np

from hwl.cube import theta_opt
from hwl.errors import UsageError, VerificationFailure

HALF = Fraction(1, 2)

# Curvature of f(x) = 3/4 - CURVATURE (x - 1/2)^2.
CURVATURE = Fraction(64, 7)

GRID_DEPTH = 12
GRID_I_LO = 819           # c_819 < 1/5 < c_820
GRID_I_HI = 1 << 11       # c_2048 = 1/2
GRID_I_STRICT_HI = 1963   # last column of the strict row
GRID_J_LO = 171           # d_170 < 1/24 < d_171 = y_12
GRID_J_HI = 619           # d_618 < 1/24 + 7/64 < d_619
GRID_J_STRICT = 170
TYPE_LO = Fraction(1, 24)
TYPE_HI = Fraction(1, 24) + Fraction(7, 64)


def _c(i: int) -> Fraction:
    return Fraction(i, 1 << GRID_DEPTH)


def check_grid_constants() -> None:
    """The grid index bounds must sit exactly where their defining inequalities put them."""
    checks = {
        "c_819 < 1/5 < c_820": _c(GRID_I_LO) < Fraction(1, 5) < _c(GRID_I_LO + 1),
        "c_2048 = 1/2": _c(GRID_I_HI) == HALF,
        "d_170 < 1/24 < d_171": _c(GRID_J_STRICT) < TYPE_LO < _c(GRID_J_LO),
        "d_171 = y_12": _c(GRID_J_LO) == LemmaConstants.of(12).y,
        "d_618 < 1/24 + 7/64 < d_619": _c(GRID_J_HI - 1) < TYPE_HI < _c(GRID_J_HI),
        "c_1963 = y_12 + p_4": _c(GRID_I_STRICT_HI) == LemmaConstants.of(12).y + LemmaConstants.of(4).p,
    }
    for name, ok in checks.items():
        if not ok:
            raise VerificationFailure("grid constant", name)


def _frac_part(x: Fraction) -> Fraction:
    return x - floor(x)


def _check_unit(x: Fraction) -> None:
    if not 0 <= x <= 1:
        raise UsageError(f"x={x} outside [0, 1]")


def delta(i: int, x) -> Fraction:
    """Tent map Δ_i: Δ_1(x) = 1/2 - |x - 1/2|, Δ_i(x) = Δ_{i-1}(frac(2x)) / 2."""
    x = Fraction(x)
    _check_unit(x)
    if i < 1:
        raise UsageError(f"tent index i={i} must be >= 1")
    scale = Fraction(1)
    for _ in range(i - 1):
        x = _frac_part(2 * x)
        scale /= 2
    return scale * (HALF - abs(x - HALF))


def m(n: int, x) -> Fraction:
    """Partial Takagi sum Δ_1(x) + ... + Δ_n(x)."""
    x = Fraction(x)
    _check_unit(x)
    if n < 1:
        raise UsageError(f"depth n={n} must be >= 1")
    total = Fraction(0)
    scale = Fraction(1)
    for _ in range(n):
        total += scale * (HALF - abs(x - HALF))
        x = _frac_part(2 * x)
        scale /= 2
    return total


def f(x) -> Fraction:
    x = Fraction(x)
    return Fraction(3, 4) - CURVATURE * (x - HALF) ** 2


def a(n: int, x, y) -> Fraction:
    """Bound surface m_n(y) + m_n(x - y) - 2y on 0 <= y <= x <= 1."""
    x, y = Fraction(x), Fraction(y)
    if not 0 <= y <= x <= 1:
        raise UsageError(f"a_n needs 0 <= y <= x <= 1, got x={x}, y={y}")
    return m(n, y) + m(n, x - y) - 2 * y


def m_numerators(n: int, depth: int) -> np.ndarray:
    """Integer array M with m_n(k / 2^depth) = M[k] / 2^(depth + n - 1), k = 0..2^depth."""
    if n < 1 or depth < 0 or depth + n > 60:
        raise UsageError(f"unsupported (n, depth) = ({n}, {depth})")
    size = 1 << depth
    k = np.arange(size + 1, dtype=np.int64)
    out = np.zeros(size + 1, dtype=np.int64)
    for i in range(1, n + 1):
        r = (k << (i - 1)) % size if depth else np.zeros_like(k)
        if depth == 0:
            tent = np.zeros_like(k)
        else:
            tent = np.minimum(r, size - r)
        out += tent << (n - i)
    return out


@dataclass(frozen=True)
class LemmaConstants:
    n: int
    alpha: int
    y: Fraction
    p: Fraction

    @classmethod
    def of(cls, n: int) -> "LemmaConstants":
        if n < 3:
            raise UsageError("constants defined for n >= 3")
        alpha = -(-(1 << n) // 24)
        y = Fraction(alpha, 1 << n)
        return cls(n, alpha, y, HALF - y)


@dataclass
class GridReport:
    region: str
    min_gap: Fraction
    argmin: tuple[int, int]
    passed: bool
    cells: int
    strict: bool = False
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "region": self.region,
            "min_gap": {"num": self.min_gap.numerator, "den": self.min_gap.denominator},
            "min_gap_decimal": f"{float(self.min_gap):.10f}",
            "argmin": list(self.argmin),
            "passed": self.passed,
            "cells": self.cells,
            "strict": self.strict,
            "note": self.note,
        }


def _curvature_pq() -> tuple[int, int]:
    return CURVATURE.numerator, CURVATURE.denominator


def _scaled_f(depth: int, idx: np.ndarray) -> np.ndarray:
    """q * 2^(2 depth) * f(idx / 2^depth)."""
    p, q = _curvature_pq()
    half = 1 << (depth - 1)
    return 3 * q * (1 << (2 * depth - 2)) - p * (idx - half) ** 2


def _scaled_a(depth: int, M: np.ndarray, i: np.ndarray, j: np.ndarray) -> np.ndarray:
    """q * 2^(2 depth) * a_depth(i / 2^depth, j / 2^depth), with M = m_numerators(depth, depth)."""
    _, q = _curvature_pq()
    return 2 * q * (M[j] + M[i - j]) - 2 * q * j * (1 << depth)


def _report(region, gaps, ii, jj, depth, strict, check_fn) -> GridReport:
    _, q = _curvature_pq()
    pos = int(np.argmin(gaps))
    min_gap = Fraction(int(gaps[pos]), q << (2 * depth))
    cell = (int(ii[pos]), int(jj[pos]))
    if check_fn(*cell) != min_gap:
        raise VerificationFailure("exact re-evaluation of argmin", cell, region)
    passed = min_gap > 0 if strict else min_gap >= 0
    return GridReport(region, min_gap, cell, passed, int(gaps.size), strict)


def verify_appendix_grids(depth: int = GRID_DEPTH) -> tuple[GridReport, GridReport]:
    """Both depth-12 grid scans, exactly.

    Region 1: a_12(c_i, d_j) - max(f(c_i), f(c_{i+1})) >= 0 for 819 <= i <= 2^11,
    171 <= j <= 619.  Region 2: a_12(c_i, d_170) - f(c_{i+1}) > 0 for
    819 <= i <= 1963.
    """
    if depth != GRID_DEPTH:
        raise UsageError(f"the grids are defined at depth {GRID_DEPTH}")
    check_grid_constants()
    M = m_numerators(depth, depth)
    cols = np.arange(GRID_I_LO, GRID_I_HI + 1, dtype=np.int64)
    rows = np.arange(GRID_J_LO, GRID_J_HI + 1, dtype=np.int64)
    ii, jj = np.meshgrid(cols, rows, indexing="ij")
    ii, jj = ii.ravel(), jj.ravel()
    fmax = np.maximum(_scaled_f(depth, ii), _scaled_f(depth, ii + 1))
    gaps1 = _scaled_a(depth, M, ii, jj) - fmax
    r1 = _report(
        "v1", gaps1, ii, jj, depth, False,
        lambda i, j: a(depth, _c(i), _c(j)) - max(f(_c(i)), f(_c(i + 1))),
    )

    ii2 = np.arange(GRID_I_LO, GRID_I_STRICT_HI + 1, dtype=np.int64)
    jj2 = np.full_like(ii2, GRID_J_STRICT)
    gaps2 = _scaled_a(depth, M, ii2, jj2) - _scaled_f(depth, ii2 + 1)
    r2 = _report(
        "v2", gaps2, ii2, jj2, depth, True,
        lambda i, j: a(depth, _c(i), _c(j)) - f(_c(i + 1)),
    )
    return r1, r2


def claim15_pairs(n: int) -> list[tuple[int, int]]:
    """Integer (k, t) with 0 < 2t <= k <= 2^(n-1) and 1/24 <= t/2^n <= 1/24 + 7/64."""
    N = 1 << n
    out = []
    for t in range(1, N // 4 + 1):
        if not TYPE_LO <= Fraction(t, N) <= TYPE_HI:
            continue
        for k in range(2 * t, N // 2 + 1):
            out.append((k, t))
    return out


def verify_claim15_grid(n: int, theta_kt=None) -> GridReport:
    """a_n(k/2^n, t/2^n) >= f(k/2^n) over the whole (k, t) range at depth n.

    ``theta_kt`` is an optional callable ``(k, t) -> theta(n, k, t) or None``
    (the exhaustive oracle); when given, the bound is also checked on the
    exact theta values.
    """
    if not 3 <= n <= 12:
        raise UsageError(f"verify_claim15_grid needs 3 <= n <= 12, got {n}")
    pairs = claim15_pairs(n)
    if not pairs:
        raise VerificationFailure("type-range grid", n, "empty range")
    M = m_numerators(n, n)
    kk = np.array([p[0] for p in pairs], dtype=np.int64)
    tt = np.array([p[1] for p in pairs], dtype=np.int64)
    gaps = _scaled_a(n, M, kk, tt) - _scaled_f(n, kk)
    N = 1 << n
    rep = _report(
        f"type-range-n{n}", gaps, kk, tt, n, False,
        lambda k, t: a(n, Fraction(k, N), Fraction(t, N)) - f(Fraction(k, N)),
    )
    if theta_kt is not None:
        worst = None
        for k, t in pairs:
            th = theta_kt(k, t)
            if th is None:
                continue
            gap = th - N * f(Fraction(k, N))
            if worst is None or gap < worst[0]:
                worst = (gap, (k, t))
        theta_ok = worst is None or worst[0] >= 0
        if rep.passed and not theta_ok:
            rep.passed = False
            rep.note = f"theta-level failure at {worst[1]}"
        elif not rep.passed and theta_ok:
            rep.note = "a_n bound fails but theta-level inequality holds"
        else:
            rep.note = "theta-level checked"
    return rep


def _fail(lemma: str, witness, detail: str = "") -> None:
    raise VerificationFailure(lemma, witness, detail)


def lemma_suite_takagi(n_max: int = 12, n_max_alpha: int = 40, samples: int = 1000, seed: int = 0) -> dict:
    """Exact checks of the partial-sum lemmas; returns counts per check."""
    if n_max < 6:
        raise UsageError("lemma suite needs n_max >= 6")
    counts: dict[str, int] = {}

    # theta(n, k) >= theta(n, 2^(n-2)) on 2^(n-2) <= k <= 2^(n-1)
    c = 0
    for n in range(2, n_max + 1):
        floor_val = theta_opt(n, 1 << (n - 2))
        if floor_val != 1 << (n - 1) or theta_opt(n, 1 << (n - 1)) != 1 << (n - 1):
            _fail("quarter/half boundary values", n)
        for k in range(1 << (n - 2), (1 << (n - 1)) + 1):
            if theta_opt(n, k) < floor_val:
                _fail("theta(n,k) >= theta(n,2^(n-2))", (n, k))
            c += 1
    counts["quarter_floor"] = c

    # alpha_n identities, big integers
    for n in range(3, n_max_alpha + 1):
        const = LemmaConstants.of(n)
        al = const.alpha
        if theta_opt(n, al) - 2 * al != 1 << (n - 3):
            _fail("theta(n,alpha_n) - 2 alpha_n = 2^(n-3)", n)
        if theta_opt(n, (1 << (n - 1)) - al) != 5 << (n - 3):
            _fail("theta(n, 2^(n-1) - alpha_n) = 5 * 2^(n-3)", n)
        if n > 3:
            want = (1 << (n - 3)) + (1 if n % 2 == 0 else 2)
            if 3 * al != want:
                _fail("alpha_n closed form", n)
    counts["alpha_identities"] = n_max_alpha - 2

    # m_n(y_n) - 2 y_n = 1/8 and m_n(p_n) = 5/8
    for n in range(3, n_max + 1):
        const = LemmaConstants.of(n)
        if m(n, const.y) - 2 * const.y != Fraction(1, 8):
            _fail("m_n(y_n) - 2 y_n = 1/8", n)
        if m(n, const.p) != Fraction(5, 8):
            _fail("m_n(p_n) = 5/8", n)
    counts["y_p_values"] = n_max - 2

    # plateau of m_N on [p_{N-2}, p_N]
    c = 0
    for N in range(4, n_max + 1):
        pN = LemmaConstants.of(N).p
        for n in range(N, n_max + 1):
            if m(n, pN) != Fraction(5, 8):
                _fail("m_n(p_N) = 5/8", (n, N))
            c += 1
        if N % 2 == 1 and N >= 5:
            if pN != LemmaConstants.of(N - 1).p:
                _fail("p_N = p_(N-1) for odd N", N)
        if N % 2 == 0 and N >= 6:
            lo = LemmaConstants.of(N - 2).p
            if pN - lo != Fraction(1, 1 << N):
                _fail("p_N - p_(N-2) = 2^-N", N)
            D = 1 << n_max
            pts = {lo, pN}
            pts.update(Fraction(j, D) for j in range(-(-lo * D // 1), int(pN * D) + 1))
            for x in sorted(pts):
                if m(N, x) != Fraction(5, 8):
                    _fail("m_N constant 5/8 on [p_(N-2), p_N]", (N, x))
                for n in range(N + 1, n_max + 1):
                    if m(n, x) < Fraction(5, 8):
                        _fail("m_n >= m_N on [p_(N-2), p_N]", (n, N, x))
                c += 1
    counts["plateau"] = c

    # m_n(k/2^n) 2^n = theta(n, k); Δ_{n+1} vanishes on A_n
    c = 0
    for n in range(1, n_max + 1):
        M = m_numerators(n, n)
        shift = n - 1
        for k in range((1 << n) + 1):
            if int(M[k]) != theta_opt(n, k) << shift:
                _fail("m_n(k/2^n) = 2^-n theta(n,k)", (n, k))
            c += 1
        if n <= 6:
            for k in range((1 << n) + 1):
                x = Fraction(k, 1 << n)
                if m(n, x) * (1 << n) != theta_opt(n, k) or delta(n + 1, x) != 0:
                    _fail("Fraction path at dyadics", (n, k))
    counts["dyadic_theta"] = c

    # symmetry and doubling at dyadics of depth n
    c = 0
    for n in range(2, n_max + 1):
        Mn = m_numerators(n, n)
        Mp = m_numerators(n - 1, n - 1)
        size = 1 << n
        for k in range(size // 2 + 1):
            if Mn[k] != Mn[size - k]:
                _fail("m_n(1-x) = m_n(x)", (n, k))
            if 2 * int(Mp[k]) != int(Mn[k]) - (k << (n - 1)):
                _fail("m_(n-1)(2x) = 2(m_n(x) - x)", (n, k))
            c += 1
    counts["symmetry_doubling"] = c

    # f(x-t) + f(x+t) + 2t - 2f(x) = 2t(1 - 64t/7)
    rng = random.Random(seed)
    for _ in range(samples):
        x = Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**6))
        t = Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**6))
        lhs = f(x - t) + f(x + t) + 2 * t - 2 * f(x)
        if lhs != 2 * t * (1 - Fraction(64, 7) * t):
            _fail("parabola second-difference identity", (x, t))
        if t >= 0 and (lhs >= 0) != (t <= Fraction(7, 64)):
            _fail("second-difference sign", (x, t))
    counts["parabola_identity"] = samples
    return counts
