"""Exhaustive ground truth at tiny n.

The k-subset scans walk masks in colex order with Gosper's successor and
record, per type t, the smallest boundary seen.  The rank range is cut into
contiguous chunks; each chunk starts from an unranked mask, so chunks are
independent and the merged minima do not depend on worker count or order.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

import numba
import numpy as np
from numba import njit, prange

# Prefer OpenMP; avoids the TBB version warning on import.
numba.config.THREADING_LAYER_PRIORITY = ["omp", "tbb", "workqueue"]

from hwl.cube import low_mask, theta_opt
from hwl.embed import Embedding, gray_wirelength_formula, wirelength
from hwl.errors import BudgetExceeded, UsageError, VerificationFailure
from hwl import takagi

MAX_SCAN_DIM = 5
SYMMETRIES = ("none", "fix-vertex-zero", "complement")
_INF = 1 << 30

# Reference values theta(5, k, t) for k = 10..16, t = 5..8 (t <= k/2).
TABLE1 = {
    (10, 5): 30, (11, 5): 31, (12, 5): 32, (13, 5): 31, (14, 5): 30, (15, 5): 29, (16, 5): 26,
    (12, 6): 32, (13, 6): 33, (14, 6): 32, (15, 6): 33, (16, 6): 30,
    (14, 7): 34, (15, 7): 33, (16, 7): 34,
    (16, 8): 32,
}
# Bound row: 2^5 f(2^-5 k) rounded to one decimal.
TABLE1_BOUND_ROW = {10: 13.7, 11: 16.9, 12: 19.4, 13: 21.4, 14: 22.9, 15: 23.7, 16: 24.0}


@dataclass(frozen=True)
class ScanConfig:
    workers: int = 1
    symmetry: str = "fix-vertex-zero"
    progress: Optional[Callable[[int, int], None]] = None

    def __post_init__(self) -> None:
        if self.workers < 1:
            raise UsageError("workers must be >= 1")
        if self.symmetry not in SYMMETRIES:
            raise UsageError(f"symmetry must be one of {SYMMETRIES}")


@njit(inline="always")
def _popcount(x):
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + ((x >> np.uint64(2)) & np.uint64(0x3333333333333333))
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return (x * np.uint64(0x0101010101010101)) >> np.uint64(56)


@njit(inline="always")
def _ctz(x):
    return _popcount((x & (~x + np.uint64(1))) - np.uint64(1))


@njit(parallel=True, cache=True)
def _scan_chunks(starts, counts, shift, base, k, lows, shifts, tmax, out):
    """out[c, t] = min boundary over the chunk's subsets of type t."""
    nchunks = starts.shape[0]
    nb = lows.shape[0]
    for c in prange(nchunks):
        comb = starts[c]
        for _ in range(counts[c]):
            s = (comb << shift) | base
            theta = np.uint64(0)
            typ = np.uint64(k)
            for b in range(nb):
                lo = lows[b]
                theta += _popcount((s ^ (s >> shifts[b])) & lo)
                z = _popcount(s & lo)
                if z < typ:
                    typ = z
                o = np.uint64(k) - z
                if o < typ:
                    typ = o
            t = np.int64(typ)
            if t <= tmax and np.int64(theta) < out[c, t]:
                out[c, t] = np.int64(theta)
            # Gosper successor in colex order
            u = comb & (~comb + np.uint64(1))
            v = comb + u
            if v == np.uint64(0):
                break
            comb = v | (((v ^ comb) >> np.uint64(2)) >> _ctz(u))


def _unrank_colex(rank: int, r: int) -> int:
    """Mask of the r-combination with colex rank ``rank``."""
    mask = 0
    for i in range(r, 0, -1):
        c = i - 1
        while math.comb(c + 1, i) <= rank:
            c += 1
        rank -= math.comb(c, i)
        mask |= 1 << c
    return mask


_profile_cache: dict[tuple[int, int, str], dict[int, int]] = {}


def _scan(n: int, k: int, cfg: ScanConfig, fix_zero: bool) -> dict[int, int]:
    size = 1 << n
    universe = size - 1 if fix_zero else size
    r = k - 1 if fix_zero else k
    total = math.comb(universe, r)
    tmax = k // 2
    lows = np.array([low_mask(n, b) for b in range(n)], dtype=np.uint64)
    shifts = np.array([1 << b for b in range(n)], dtype=np.uint64)
    nchunks = max(1, min(total, 64 * cfg.workers))
    bounds = [total * j // nchunks for j in range(nchunks + 1)]
    starts = [_unrank_colex(bounds[j], r) for j in range(nchunks)]
    counts = [bounds[j + 1] - bounds[j] for j in range(nchunks)]
    best = np.full(tmax + 1, _INF, dtype=np.int64)
    threads = min(cfg.workers, numba.config.NUMBA_NUM_THREADS)
    prev = numba.get_num_threads()
    numba.set_num_threads(threads)
    try:
        batch = max(1, 4 * threads)
        done = 0
        for lo in range(0, nchunks, batch):
            hi = min(nchunks, lo + batch)
            out = np.full((hi - lo, tmax + 1), _INF, dtype=np.int64)
            _scan_chunks(
                np.array(starts[lo:hi], dtype=np.uint64),
                np.array(counts[lo:hi], dtype=np.int64),
                np.uint64(1 if fix_zero else 0),
                np.uint64(1 if fix_zero else 0),
                k, lows, shifts, tmax, out,
            )
            best = np.minimum(best, out.min(axis=0))
            done += sum(counts[lo:hi])
            if cfg.progress is not None:
                cfg.progress(done, total)
    finally:
        numba.set_num_threads(prev)
    return {t: int(v) for t, v in enumerate(best) if v < _INF}


def theta_kt_profile(n: int, k: int, cfg: ScanConfig | None = None) -> dict[int, int]:
    """``{t: theta(n, k, t)}`` over every type t attained by some k-subset."""
    cfg = cfg or ScanConfig()
    if not 1 <= n <= MAX_SCAN_DIM:
        raise BudgetExceeded(f"exhaustive scans are limited to n <= {MAX_SCAN_DIM}, got n={n}")
    size = 1 << n
    if not 0 <= k <= size:
        raise UsageError(f"k={k} outside [0, {size}]")
    key = (n, k, cfg.symmetry)
    if key in _profile_cache:
        return dict(_profile_cache[key])
    if k == 0:
        prof = {0: 0}
    elif cfg.symmetry == "complement" and k > size // 2:
        inner = _scan(n, size - k, cfg, fix_zero=False)
        prof = {t + k - size // 2: th for t, th in inner.items()}
    else:
        prof = _scan(n, k, cfg, fix_zero=cfg.symmetry == "fix-vertex-zero")
    _profile_cache[key] = prof
    return dict(prof)


def brute_theta(n: int, k: int, cfg: ScanConfig | None = None) -> int:
    return min(theta_kt_profile(n, k, cfg).values())


def brute_theta_kt(n: int, k: int, t: int, cfg: ScanConfig | None = None) -> Optional[int]:
    """theta(n, k, t), or ``None`` when no k-subset has type exactly t."""
    if t < 0 or 2 * t > k:
        raise UsageError(f"type t={t} outside [0, k/2] for k={k}")
    return theta_kt_profile(n, k, cfg).get(t)


def f_exact(x: Fraction) -> Fraction:
    return takagi.f(x)


def theta5_table(cfg: ScanConfig | None = None) -> list[dict]:
    """Recompute every cell of the n=5 reference table and compare."""
    rows = []
    for k in range(10, 17):
        prof = theta_kt_profile(5, k, cfg)
        bound = 32 * f_exact(Fraction(k, 32))
        if round(float(bound), 1) != TABLE1_BOUND_ROW[k]:
            raise VerificationFailure("n=5 bound row", k, f"32 f({k}/32) = {float(bound):.4f}")
        for t in range(5, 9):
            if 2 * t > k:
                continue
            got = prof.get(t)
            want = TABLE1[(k, t)]
            if got != want:
                raise VerificationFailure("n=5 table cell", (k, t), f"oracle {got}, reference {want}")
            if got < bound:
                raise VerificationFailure("n=5 cell bound", (k, t), f"{got} < {bound}")
            rows.append({"k": k, "t": t, "theta": got, "bound": bound})
    return rows


def random_embedding(n: int, seed) -> Embedding:
    """Uniform random embedding from a seeded PCG64 stream; ``seed`` may be an int or a tuple of ints."""
    if n < 2:
        raise UsageError("random embeddings need n >= 2")
    rng = np.random.default_rng(list(seed) if isinstance(seed, tuple) else seed)
    return Embedding(n, tuple(int(x) + 1 for x in rng.permutation(1 << n)))


def brute_min_cycle_wl(n: int) -> tuple[int, Embedding]:
    """Exhaustive minimum circular wirelength, rotations and reflection quotiented out."""
    if n < 2:
        raise UsageError("circular wirelength is defined here for n >= 2")
    if n > 3:
        raise BudgetExceeded(f"exhaustive embedding search limited to n <= 3, got n={n}")
    N = 1 << n
    edges = [(v, v | (1 << b)) for v in range(N) for b in range(n) if not v >> b & 1]
    best, best_order = None, None
    for rest in itertools.permutations(range(1, N)):
        if rest[0] > rest[-1]:
            continue
        order = (0,) + rest
        pos = [0] * N
        for lab, v in enumerate(order):
            pos[v] = lab
        total = 0
        for a, b in edges:
            d = abs(pos[a] - pos[b])
            total += min(d, N - d)
        if best is None or total < best:
            best, best_order = total, order
    witness = Embedding.from_order(n, best_order)
    if wirelength(witness, "cycle") != best:
        raise VerificationFailure("exhaustive witness", n)
    return best, witness


def check_min_cycle_wl(n: int) -> int:
    best, _ = brute_min_cycle_wl(n)
    if best != gray_wirelength_formula(n):
        raise VerificationFailure("exhaustive minimum", n, f"{best} != {gray_wirelength_formula(n)}")
    return best


def check_oracle_equivalence(cfg: ScanConfig | None = None, n_max: int = 4, n5_ks=range(10, 17)) -> int:
    """brute_theta == theta_opt for all k at n <= n_max and for the given k at n = 5."""
    checked = 0
    for n in range(1, n_max + 1):
        for k in range((1 << n) + 1):
            if brute_theta(n, k, cfg) != theta_opt(n, k):
                raise VerificationFailure("oracle/formula equivalence", (n, k))
            checked += 1
    for k in n5_ks:
        if brute_theta(5, k, cfg) != theta_opt(5, k):
            raise VerificationFailure("oracle/formula equivalence", (5, k))
        checked += 1
    return checked
