"""Lower-bound pipeline: from an embedding's type sequence down to the Gray sum.

Stages, each a length-2^(n-1) sequence of window types:

* ``t``  the type sequence of the embedding's half-size windows;
* ``t1`` types clamped at 2^(n-3);
* ``t2`` a continuity-preserving rearrangement with peaks at positions 1 and
  2^(n-2)+1 (or, failing that, at 1 and some other position: "arc mode");
* ``t3`` each half rearranged so its outer ramps follow the target tent;
* ``t4`` the middle window of each half flattened to its cheapest value;
* ``s``  the target sequence, a rearrangement of the Gray type sequence.

Sums of ``theta_hat`` along the chain must not increase; every link is
evaluated, not assumed.
"""

from __future__ import annotations

import csv
import io
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from hwl.cube import theta_half_type, theta_opt
from hwl.embed import (
    Embedding,
    TypeSequence,
    gray_embedding,
    gray_type_formula,
    gray_wirelength_formula,
    prop26_violations,
    window_profile,
    wirelength,
)
from hwl.errors import UsageError, ValidationError, VerificationFailure

STAGES = ("t", "t1", "t2", "t3", "t4", "s")


def theta_hat(n: int, t: int) -> int:
    """theta(n, 2^(n-1), min(t, 2^(n-3))), a lower bound for theta(n, 2^(n-1), t)."""
    if n < 3:
        raise UsageError(f"theta_hat needs n >= 3, got {n}")
    if not 0 <= t <= 1 << (n - 2):
        raise UsageError(f"type t={t} outside [0, 2^(n-2)]")
    return theta_half_type(n, min(t, 1 << (n - 3)))


def hat_sum(n: int, seq: Sequence[int]) -> int:
    return sum(theta_hat(n, t) for t in seq)


def s_sequence(n: int) -> TypeSequence:
    """Four-ramp target: down from 2^(n-3) to 0, up, down, up (1-based piecewise rule)."""
    if n < 3:
        raise UsageError(f"s_sequence needs n >= 3, got {n}")
    P = 1 << (n - 3)
    out = []
    for i in range(1, (1 << (n - 1)) + 1):
        if i <= P + 1:
            out.append(P - i + 1)
        elif i <= 2 * P + 1:
            out.append(i - P - 1)
        elif i <= 3 * P + 1:
            out.append(3 * P - i + 1)
        else:
            out.append(i - 3 * P - 1)
    return TypeSequence(n, tuple(out))


def clamp_stage(t: TypeSequence) -> TypeSequence:
    P = 1 << (t.n - 3)
    return TypeSequence(t.n, tuple(min(x, P) for x in t.values))


@dataclass
class Alignment:
    seq: TypeSequence
    split: int            # 0-based position of the second peak
    mode: str             # "antipodal" or "arc"
    diagnostics: list[str] = field(default_factory=list)


def _subset_to(lengths: list[int], target: int) -> list[int] | None:
    """Indices of a subset of ``lengths`` summing to ``target`` (lexicographically earliest)."""
    # suffix reachability, then greedy from the front
    reach = [set() for _ in range(len(lengths) + 1)]
    reach[-1] = {0}
    for i in range(len(lengths) - 1, -1, -1):
        reach[i] = reach[i + 1] | {s + lengths[i] for s in reach[i + 1] if s + lengths[i] <= target}
    if target not in reach[0]:
        return None
    chosen, need = [], target
    for i, ln in enumerate(lengths):
        if need - ln >= 0 and need - ln in reach[i + 1]:
            chosen.append(i)
            need -= ln
    return chosen


def align_stage(t1: TypeSequence, force_arc: bool = False) -> Alignment:
    """Rearrange so two peaks (value 2^(n-3)) sit at positions 1 and 2^(n-2)+1.

    Tries a rotation first, then reorders the peak-to-peak arcs (any order of
    arcs that each start at a peak is again cyclically continuous) by subset
    sum on their lengths.  If no arrangement puts a peak at distance 2^(n-2),
    falls back to arc mode with the second peak as close to it as possible.
    """
    n = t1.n
    P = 1 << (n - 3)
    vals = list(t1.values)
    L = len(vals)
    H = L // 2
    peaks = [i for i, x in enumerate(vals) if x == P]
    if len(peaks) < 2:
        raise ValidationError(f"type sequence has {len(peaks)} entries equal to 2^(n-3); need 2")
    diags: list[str] = []
    if not force_arc:
        peak_set = set(peaks)
        for p in peaks:
            if (p + H) % L in peak_set:
                rot = vals[p:] + vals[:p]
                return Alignment(TypeSequence(n, tuple(rot)), H, "antipodal", diags)
        start = peaks[0]
        rot = vals[start:] + vals[:start]
        cuts = [p - start for p in peaks] + [L]
        arcs = [rot[cuts[j]:cuts[j + 1]] for j in range(len(peaks))]
        chosen = _subset_to([len(a) for a in arcs], H)
        if chosen is not None:
            first = [x for j in chosen for x in arcs[j]]
            rest = [x for j in range(len(arcs)) if j not in set(chosen) for x in arcs[j]]
            diags.append(f"arc exchange over {len(arcs)} arcs")
            return Alignment(TypeSequence(n, tuple(first + rest)), H, "antipodal", diags)
        diags.append("no antipodal peak arrangement found; arc mode")
    start = peaks[0]
    rot = vals[start:] + vals[:start]
    others = [p - start for p in peaks[1:]]
    q = min(others, key=lambda p: (abs(p - H), p))
    if force_arc:
        diags.append("arc mode forced")
    return Alignment(TypeSequence(n, tuple(rot)), q, "arc", diags)


@dataclass
class HalfResult:
    t3: list[int]
    t4: list[int]
    m1: int
    window: tuple[int, int]   # [lo, hi) in segment coordinates


def rearrange_stage(seg: Sequence[int], n: int) -> HalfResult:
    """Ramps: the closed segment (peak ... peak) gets P, P-1, ..., m1+1 at its start
    and m1+1, ..., P at its end; everything else stays in order in the middle."""
    P = 1 << (n - 3)
    seg = list(seg)
    interior = seg[1:-1]
    if not interior:
        return HalfResult(seg[:], seg[:], P, (0, len(seg)))
    m1 = min(interior, key=lambda x: (theta_hat(n, x), x))
    ramp = P - m1
    if len(seg) < 2 * ramp + 1:
        raise VerificationFailure("rearrange", seg, f"segment too short for ramps down to {m1}")
    counts = Counter(seg)
    missing = [v for v in range(m1 + 1, P + 1) if counts[v] < 2]
    if missing:
        raise VerificationFailure("rearrange", tuple(missing), "value in (m1, P] occurs fewer than twice")
    drop = set()
    for v in range(m1 + 1, P + 1):
        idx = [i for i, x in enumerate(seg) if x == v]
        drop.update((idx[0], idx[-1]))
    middle = [x for i, x in enumerate(seg) if i not in drop]
    left = list(range(P, m1, -1))
    right = list(range(m1 + 1, P + 1))
    t3 = left + middle + right
    t4 = left + [m1] * len(middle) + right
    return HalfResult(t3, t4, m1, (len(left), len(left) + len(middle)))


def plateau_stage(t3_half: Sequence[int], window: tuple[int, int], m1: int) -> list[int]:
    lo, hi = window
    return list(t3_half[:lo]) + [m1] * (hi - lo) + list(t3_half[hi:])


def window_inequality(n: int, m1: int) -> tuple[int, int]:
    """(sum of theta_hat(s_i) over the 2 m1 + 1 window, (2 m1 + 1) theta_hat(m1))."""
    lhs = 2 * sum(theta_hat(n, t) for t in range(1, m1 + 1)) + theta_hat(n, 0)
    return lhs, (2 * m1 + 1) * theta_hat(n, m1)


@dataclass
class PipelineReport:
    n: int
    stages: dict[str, tuple[int, ...]]
    sums: dict[str, int]
    wirelength: int
    gray_total: int
    verdict: bool
    label: str
    mode: str
    links: dict[str, bool]
    m1: tuple[int, ...]
    diagnostics: list[str] = field(default_factory=list)

    def summary(self) -> dict:
        return {
            "n": self.n,
            "wirelength": self.wirelength,
            "gray_total": self.gray_total,
            "sums": dict(self.sums),
            "verdict": self.verdict,
            "label": self.label,
            "mode": self.mode,
            "m1": list(self.m1),
            "links": dict(self.links),
            "diagnostics": list(self.diagnostics),
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(("i",) + STAGES)
        for i in range(len(self.stages["t"])):
            w.writerow([i + 1] + [self.stages[name][i] for name in STAGES])
        return buf.getvalue()


def _run_halves(t2: list[int], split: int, n: int):
    L = len(t2)
    segA = t2[: split + 1]
    segB = t2[split:] + [t2[0]]
    ha = rearrange_stage(segA, n)
    hb = rearrange_stage(segB, n)
    t3 = ha.t3 + hb.t3[1:-1]
    t4 = ha.t4 + hb.t4[1:-1]
    if len(t3) != L or t3[0] != t2[0] or hb.t3[0] != ha.t3[-1]:
        raise VerificationFailure("half reassembly", split)
    return t3, t4, (ha, hb)


def lower_bound_report(eta: Embedding) -> PipelineReport:
    """Evaluate every link of WL(eta) >= sum theta_hat(t) >= ... >= sum theta_hat(s)."""
    n = eta.n
    if n < 3:
        raise UsageError("the pipeline needs n >= 3")
    P = 1 << (n - 3)
    diags: list[str] = []
    links: dict[str, bool] = {}

    wl = wirelength(eta, "cycle", method="distance")
    thetas, types = window_profile(eta)
    t = TypeSequence(n, tuple(types))
    links["cut_decomposition"] = sum(thetas) == wl
    links["window_bound"] = all(th >= theta_hat(n, x) for th, x in zip(thetas, types))
    bad = prop26_violations(types, n)
    links["prop26"] = not bad
    diags.extend(bad)

    t1 = clamp_stage(t)
    try:
        al = align_stage(t1)
        t3, t4, halves = _run_halves(list(al.seq.values), al.split, n)
    except VerificationFailure as exc:
        diags.append(f"antipodal processing failed ({exc}); retrying in arc mode")
        al = align_stage(t1, force_arc=True)
        t3, t4, halves = _run_halves(list(al.seq.values), al.split, n)
    diags.extend(al.diagnostics)
    t2 = list(al.seq.values)
    s = list(s_sequence(n).values)

    stages = {"t": t.values, "t1": t1.values, "t2": tuple(t2), "t3": tuple(t3), "t4": tuple(t4), "s": tuple(s)}
    sums = {name: hat_sum(n, seq) for name, seq in stages.items()}
    sums["theta_windows"] = sum(thetas)
    gray_total = gray_wirelength_formula(n)

    links["wl_ge_t"] = wl >= sums["t"]
    links["t_eq_t1"] = sums["t"] == sums["t1"]
    links["t2_perm_t1"] = sorted(t2) == sorted(t1.values) and sums["t2"] == sums["t1"]
    links["t2_continuous"] = all(abs(t2[i] - t2[(i + 1) % len(t2)]) <= 1 for i in range(len(t2)))
    links["t2_peaks"] = t2[0] == P and t2[al.split] == P
    links["t3_eq_t2"] = sums["t3"] == sums["t2"]
    links["t4_le_t3"] = sums["t4"] <= sums["t3"]
    links["s_le_t4"] = sums["s"] <= sums["t4"]
    links["s_is_gray"] = sums["s"] == gray_total and sorted(s) == sorted(gray_type_formula(n))
    if al.mode == "antipodal":
        ok = True
        for h in halves:
            lhs, rhs = window_inequality(n, h.m1)
            ok = ok and lhs <= rhs
        links["window_inequality"] = ok
    verdict = all(links.values())
    label = "certified" if n >= 5 else "formula-trusted"
    return PipelineReport(
        n, stages, sums, wl, gray_total, verdict, label, al.mode, links,
        tuple(h.m1 for h in halves), diags,
    )


def count_identities(n_max: int) -> dict:
    """Sum of theta(n, i) over i <= 2^(n-1) equals 4^(n-1), and
    (2k+1) theta(n, k) >= 2 sum_{i<=k} theta(n, i) on 0 <= k <= 2^(n-1)."""
    if n_max < 3:
        raise UsageError("count_identities needs n_max >= 3")
    checked = 0
    for n in range(1, n_max + 1):
        half = 1 << (n - 1)
        vals = [theta_opt(n, i) for i in range(half + 1)]
        if sum(vals) != 1 << (2 * n - 2):
            raise VerificationFailure("half-range theta sum", n, f"{sum(vals)} != {1 << (2 * n - 2)}")
        prefix = 0
        for k, v in enumerate(vals):
            prefix += v
            if (2 * k + 1) * v < 2 * prefix:
                raise VerificationFailure("prefix-average inequality", (n, k))
            checked += 1
    return {"n_max": n_max, "pairs": checked}


def _sweep_chunk(args):
    from hwl.oracle import random_embedding

    n, seed, lo, hi = args
    fails, min_wl, arc = [], None, 0
    for j in range(lo, hi):
        rep = lower_bound_report(random_embedding(n, (seed, j)))
        if not rep.verdict or rep.wirelength < rep.gray_total:
            fails.append(j)
        if rep.mode == "arc":
            arc += 1
        min_wl = rep.wirelength if min_wl is None else min(min_wl, rep.wirelength)
    return fails, min_wl, arc


def random_sweep(n: int, count: int, seed: int = 7, workers: int = 1) -> dict:
    """Pipeline verdicts over ``count`` seeded random embeddings; embedding j uses seed (seed, j)."""
    if count < 1:
        raise UsageError("count must be >= 1")
    nchunks = max(1, min(count, 8 * workers))
    bounds = [count * c // nchunks for c in range(nchunks + 1)]
    jobs = [(n, seed, bounds[c], bounds[c + 1]) for c in range(nchunks)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_sweep_chunk, jobs))
    else:
        parts = [_sweep_chunk(j) for j in jobs]
    fails = sorted(j for p in parts for j in p[0])
    min_wl = min(p[1] for p in parts)
    return {
        "n": n,
        "count": count,
        "seed": seed,
        "failures": fails,
        "min_wirelength": min_wl,
        "gray_total": gray_wirelength_formula(n),
        "arc_mode": sum(p[2] for p in parts),
        "passed": not fails and min_wl >= gray_wirelength_formula(n),
    }


def gray_fixed_point(n: int) -> PipelineReport:
    rep = lower_bound_report(gray_embedding(n))
    vals = {rep.sums[k] for k in STAGES} | {rep.wirelength}
    if len(vals) != 1 or not rep.verdict:
        raise VerificationFailure("Gray pipeline fixed point", n, str(rep.sums))
    return rep
