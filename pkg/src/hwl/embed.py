"""Embeddings of Q_n into the cycle/path on 2^n labels.

Host labels are 1-based.  The cycle wirelength is computed two ways, as a
sum of shortest cyclic distances over the cube edges and as the sum of
boundaries of the 2^(n-1) half-size label windows; both must agree.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from hwl.cube import (
    MAX_DIM,
    VertexSet,
    _boundary_multicut,
    full_mask,
    half_plane,
    low_mask,
    theta_half_type,
    theta_opt,
    type_of,
)
from hwl.errors import UsageError, ValidationError, VerificationFailure


@dataclass(frozen=True)
class Embedding:
    """Bijection vertex -> host label; ``map[v]`` is in 1..2^n."""

    n: int
    map: tuple[int, ...]
    inverse: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_DIM:
            raise ValidationError(f"dimension n={self.n} outside [1, {MAX_DIM}]")
        size = 1 << self.n
        labels = tuple(int(x) for x in self.map)
        if len(labels) != size:
            raise ValidationError(f"map has {len(labels)} entries, expected {size}")
        inv = [-1] * size
        for v, lab in enumerate(labels):
            if not 1 <= lab <= size or inv[lab - 1] != -1:
                raise ValidationError(f"map is not a bijection onto 1..{size} (vertex {v} -> {lab})")
            inv[lab - 1] = v
        object.__setattr__(self, "map", labels)
        object.__setattr__(self, "inverse", tuple(inv))

    @classmethod
    def from_labels(cls, n: int, labels: Sequence[int], base: int = 1) -> "Embedding":
        return cls(n, tuple(int(x) - base + 1 for x in labels))

    @classmethod
    def from_order(cls, n: int, order: Sequence[int]) -> "Embedding":
        """Embedding that gives label i+1 to ``order[i]``."""
        labels = [0] * (1 << n)
        for i, v in enumerate(order):
            labels[v] = i + 1
        return cls(n, tuple(labels))

    def to_dict(self, base: int = 1) -> dict:
        return {"n": self.n, "base": base, "map": [x - 1 + base for x in self.map]}

    def to_json(self, base: int = 1) -> str:
        return json.dumps(self.to_dict(base), separators=(", ", ": "))

    @classmethod
    def from_dict(cls, obj: dict) -> "Embedding":
        try:
            n = int(obj["n"])
            base = int(obj.get("base", 1))
            labels = obj["map"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"bad embedding record: {exc}") from exc
        return cls.from_labels(n, labels, base)

    @classmethod
    def load(cls, path: str | Path) -> "Embedding":
        with open(path) as fh:
            try:
                obj = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ValidationError(f"{path}: {exc}") from exc
        return cls.from_dict(obj)

    def save(self, path: str | Path, base: int = 1) -> None:
        Path(path).write_text(self.to_json(base) + "\n")


def gray_embedding(n: int) -> Embedding:
    """Reflected Gray code: label = (prefix parities of x) as binary, plus one."""
    if not 1 <= n <= MAX_DIM:
        raise UsageError(f"dimension n={n} outside [1, {MAX_DIM}]")
    labels = []
    for x in range(1 << n):
        y = 0
        parity = 0
        for shift in range(n - 1, -1, -1):
            parity ^= x >> shift & 1
            y = (y << 1) | parity
        labels.append(y + 1)
    return Embedding(n, tuple(labels))


def _edge_lengths(eta: Embedding) -> np.ndarray:
    lab = np.asarray(eta.map, dtype=np.int64)
    v = np.arange(1 << eta.n, dtype=np.int64)
    parts = []
    for b in range(eta.n):
        lo = v[(v >> b) & 1 == 0]
        parts.append(np.abs(lab[lo] - lab[lo | (1 << b)]))
    return np.concatenate(parts)


def window_masks(eta: Embedding, width: int | None = None, start: int = 1, count: int | None = None):
    """Yield masks of eta^{-1}({i, ..., i+width-1}) for i = start, start+1, ...

    Labels wrap cyclically.  Defaults give the 2^(n-1) half-size windows.
    """
    size = 1 << eta.n
    width = size // 2 if width is None else width
    count = size // 2 if count is None else count
    inv = eta.inverse
    bits = 0
    for lab in range(start, start + width):
        bits |= 1 << inv[(lab - 1) % size]
    for i in range(start, start + count):
        yield bits
        bits ^= (1 << inv[(i - 1) % size]) | (1 << inv[(i + width - 1) % size])


def _wl_distance(eta: Embedding, host: str) -> int:
    d = _edge_lengths(eta)
    if host == "cycle":
        d = np.minimum(d, (1 << eta.n) - d)
    return int(d.sum())


def _wl_cut(eta: Embedding, host: str) -> int:
    n = eta.n
    if host == "cycle":
        return sum(_boundary_multicut(n, m) for m in window_masks(eta))
    # path: prefixes {1..i}, i = 1..2^n - 1
    total = 0
    bits = 0
    for lab in range(1, 1 << n):
        bits |= 1 << eta.inverse[lab - 1]
        total += _boundary_multicut(n, bits)
    return total


def wirelength(eta: Embedding, host: str = "cycle", method: str = "both") -> int:
    """Wirelength of ``eta`` into C_{2^n} (``host="cycle"``) or P_{2^n}.

    ``method="both"`` evaluates the edge-distance sum and the cut sum and
    raises ``VerificationFailure`` if they differ.
    """
    if host not in ("cycle", "path"):
        raise UsageError(f"host must be 'cycle' or 'path', got {host!r}")
    if host == "cycle" and eta.n < 2:
        raise UsageError("cycle host needs n >= 2")
    if method == "distance":
        return _wl_distance(eta, host)
    if method == "cut":
        return _wl_cut(eta, host)
    if method == "both":
        a = _wl_distance(eta, host)
        b = _wl_cut(eta, host)
        if a != b:
            raise VerificationFailure("wirelength cut decomposition", eta.n, f"distance sum {a} != cut sum {b}")
        return a
    raise UsageError(f"unknown wirelength method {method!r}")


def gray_wirelength_formula(n: int) -> int:
    """3 * 2^(2n-3) - 2^(n-1), the circular wirelength of the Gray embedding (n >= 2)."""
    if n < 2:
        raise UsageError("formula is non-integral at n=1; defined for n >= 2")
    return 3 * (1 << (2 * n - 3)) - (1 << (n - 1))


@dataclass(frozen=True)
class PartitionPath:
    """Half-size sets F_1..F_{2^(n-1)} stepping by single swaps to F_1^c."""

    n: int
    sets: tuple[VertexSet, ...]

    def validate(self) -> None:
        n = self.n
        half = 1 << (n - 1)
        if len(self.sets) != half:
            raise ValidationError(f"path has {len(self.sets)} sets, expected {half}")
        seen = set()
        for i, F in enumerate(self.sets, start=1):
            if F.n != n or len(F) != half:
                raise ValidationError(f"F_{i} is not a half-size subset of Q_{n}")
            if F.bits in seen:
                raise ValidationError(f"F_{i} repeats an earlier set")
            seen.add(F.bits)
        steps = list(self.sets[1:]) + [self.sets[0].complement()]
        for i, (a, b) in enumerate(zip(self.sets, steps), start=1):
            if (a.bits ^ b.bits).bit_count() != 2:
                raise ValidationError(f"step {i} -> {i + 1} is not a single swap")

    def __len__(self) -> int:
        return len(self.sets)


def partition_path(eta: Embedding) -> PartitionPath:
    if eta.n < 2:
        raise UsageError("partition paths need n >= 2")
    return PartitionPath(eta.n, tuple(VertexSet(eta.n, m) for m in window_masks(eta)))


def embedding_of(path: PartitionPath) -> Embedding:
    """Inverse of ``partition_path``: F_i \\ F_{i+1} -> i, F_{i+1} \\ F_i -> i + 2^(n-1)."""
    path.validate()
    n = path.n
    half = 1 << (n - 1)
    labels = [0] * (1 << n)
    nxt = [F.bits for F in path.sets[1:]] + [path.sets[0].bits ^ full_mask(n)]
    for i, (F, G) in enumerate(zip(path.sets, nxt), start=1):
        out = F.bits & ~G
        inn = G & ~F.bits
        labels[out.bit_length() - 1] = i
        labels[inn.bit_length() - 1] = i + half
    return Embedding(n, tuple(labels))


def set_distance(U: VertexSet, W: VertexSet) -> int:
    """|U Δ W|, the metric on the derived network."""
    return (U.bits ^ W.bits).bit_count()


@dataclass(frozen=True)
class TypeSequence:
    n: int
    values: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]


def type_sequence(path: PartitionPath) -> TypeSequence:
    return TypeSequence(path.n, tuple(type_of(F) for F in path.sets))


def _mask_type(n: int, bits: int) -> int:
    size = bits.bit_count()
    best = size
    for b in range(n):
        zero = (bits & low_mask(n, b)).bit_count()
        best = min(best, zero, size - zero)
    return best


def window_profile(eta: Embedding) -> tuple[list[int], list[int]]:
    """``(theta(n, P_i), Type(P_i))`` for the 2^(n-1) half windows of eta."""
    thetas, types = [], []
    for m in window_masks(eta):
        thetas.append(_boundary_multicut(eta.n, m))
        types.append(_mask_type(eta.n, m))
    return thetas, types


def embedding_type_sequence(eta: Embedding) -> TypeSequence:
    return TypeSequence(eta.n, tuple(window_profile(eta)[1]))


def gray_type_formula(n: int) -> tuple[int, ...]:
    """(0, 1, ..., 2^(n-3), ..., 1, 0, 1, ..., 1): tent wave of period 2^(n-2)."""
    period = 1 << (n - 2)
    return tuple(min(j % period, period - j % period) for j in range(1 << (n - 1)))


def prop26_violations(seq: Sequence[int], n: int) -> list[str]:
    """Problems with cyclic continuity or the two-peaks property; empty if none."""
    out = []
    L = len(seq)
    for i in range(L):
        if abs(seq[i] - seq[(i + 1) % L]) > 1:
            out.append(f"jump at {i + 1}->{(i + 1) % L + 1}: {seq[i]} -> {seq[(i + 1) % L]}")
    peaks = sum(1 for x in seq if x >= 1 << (n - 3)) if n >= 3 else L
    if peaks < 2:
        out.append(f"only {peaks} entries >= 2^(n-3)")
    return out


def gray_identities_check(n: int) -> dict:
    """Check the Gray type sequence, theta(G_i) = theta(n, 2^(n-1), Type(G_i)),
    and the images of the four half planes H_{n,1,*}, H_{n,2,*}."""
    if not 3 <= n <= 12:
        raise UsageError(f"gray_identities_check needs 3 <= n <= 12, got {n}")
    xi = gray_embedding(n)
    thetas, types = window_profile(xi)
    expected = gray_type_formula(n)
    for i, (got, want) in enumerate(zip(types, expected), start=1):
        if got != want:
            raise VerificationFailure("gray type sequence", i, f"Type(G_{i})={got}, expected {want}")
    for i, (th, t) in enumerate(zip(thetas, types), start=1):
        if th != theta_half_type(n, t):
            raise VerificationFailure("gray window boundary", i, f"theta(G_{i})={th} != {theta_half_type(n, t)}")
    N = 1 << n
    q = N // 4
    images = {
        (1, 0): set(range(1, N // 2 + 1)),
        (1, 1): set(range(N // 2 + 1, N + 1)),
        (2, 0): set(range(1, q + 1)) | set(range(N - q + 1, N + 1)),
        (2, 1): set(range(q + 1, N - q + 1)),
    }
    for (axis, bit), want in images.items():
        got = {xi.map[v] for v in half_plane(n, axis, bit)}
        if got != want:
            raise VerificationFailure("gray half-plane image", (axis, bit))
    return {
        "n": n,
        "types": list(types),
        "thetas": list(thetas),
        "wirelength": sum(thetas),
        "max_type": max(types),
        "theta_peak": theta_half_type(n, 1 << (n - 3)),
        "theta_opt_half": theta_opt(n, 1 << (n - 1)),
    }


def sample_embedding() -> Embedding:
    """The bundled non-Gray n=6 embedding (stored 0-based, lexicographic vertex order)."""
    from importlib.resources import files

    return Embedding.from_dict(json.loads(files("hwl").joinpath("data/sample6.json").read_text()))
