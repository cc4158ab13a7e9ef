"""Hypercube combinatorics: vertex sets, half planes, edge boundaries, types.

A vertex x_1...x_n of Q_n is stored as the integer with x_1 as its most
significant bit, so coordinate ``axis`` (1-based) lives at bit ``n - axis``.
A vertex set is a Python ``int`` used as a 2^n-bit mask.  All per-axis work
is done with whole-mask shifts, so the cost of ``boundary_size`` is n big-int
XOR/AND/popcount operations regardless of |S|.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from hwl.errors import UsageError, ValidationError

MAX_DIM = 24


def _check_dim(n: int) -> None:
    if not 1 <= n <= MAX_DIM:
        raise UsageError(f"dimension n={n} outside [1, {MAX_DIM}]")


def _check_axis(n: int, axis: int) -> None:
    if not 1 <= axis <= n:
        raise UsageError(f"axis {axis} outside [1, {n}]")


@lru_cache(maxsize=None)
def full_mask(n: int) -> int:
    return (1 << (1 << n)) - 1


@lru_cache(maxsize=None)
def low_mask(n: int, bit: int) -> int:
    """Mask of the vertices whose index has ``bit`` cleared."""
    span = 1 << bit
    pattern = (1 << span) - 1
    width = 2 * span
    total = 1 << n
    while width < total:
        pattern |= pattern << width
        width *= 2
    return pattern


@dataclass(frozen=True)
class VertexSet:
    """Subset of V(Q_n) as a 2^n-bit mask."""

    n: int
    bits: int

    def __post_init__(self) -> None:
        _check_dim(self.n)
        if self.bits < 0 or self.bits >> (1 << self.n):
            raise ValidationError(f"mask has bits outside the {1 << self.n} vertices of Q_{self.n}")

    @classmethod
    def from_vertices(cls, n: int, vertices: Iterable[int]) -> "VertexSet":
        bits = 0
        size = 1 << n
        for v in vertices:
            if not 0 <= v < size:
                raise ValidationError(f"vertex {v} not in Q_{n}")
            bits |= 1 << v
        return cls(n, bits)

    @classmethod
    def from_words(cls, words: Iterable[str]) -> "VertexSet":
        """Build from binary words such as ``["000", "001"]``."""
        words = list(words)
        if not words:
            raise ValidationError("cannot infer n from an empty word list")
        n = len(words[0])
        if any(len(w) != n for w in words):
            raise ValidationError("words of unequal length")
        return cls.from_vertices(n, (int(w, 2) for w in words))

    @classmethod
    def empty(cls, n: int) -> "VertexSet":
        return cls(n, 0)

    @classmethod
    def full(cls, n: int) -> "VertexSet":
        return cls(n, full_mask(n))

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, v: int) -> bool:
        return bool(self.bits >> v & 1)

    def __iter__(self) -> Iterator[int]:
        bits = self.bits
        while bits:
            low = bits & -bits
            yield low.bit_length() - 1
            bits ^= low

    def _same(self, other: "VertexSet") -> None:
        if other.n != self.n:
            raise UsageError(f"dimension mismatch: {self.n} vs {other.n}")

    def __and__(self, other: "VertexSet") -> "VertexSet":
        self._same(other)
        return VertexSet(self.n, self.bits & other.bits)

    def __or__(self, other: "VertexSet") -> "VertexSet":
        self._same(other)
        return VertexSet(self.n, self.bits | other.bits)

    def __xor__(self, other: "VertexSet") -> "VertexSet":
        self._same(other)
        return VertexSet(self.n, self.bits ^ other.bits)

    def __sub__(self, other: "VertexSet") -> "VertexSet":
        self._same(other)
        return VertexSet(self.n, self.bits & ~other.bits)

    def complement(self) -> "VertexSet":
        return VertexSet(self.n, self.bits ^ full_mask(self.n))

    def words(self) -> list[str]:
        return [format(v, f"0{self.n}b") for v in self]

    def to_json(self) -> str:
        digits = max(1, (1 << self.n) // 4)
        return json.dumps({"n": self.n, "bits": f"0x{self.bits:0{digits}x}"}, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str | dict) -> "VertexSet":
        obj = json.loads(text) if isinstance(text, str) else text
        try:
            n = int(obj["n"])
            bits = int(str(obj["bits"]), 16)
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"bad vertex-set record: {exc}") from exc
        return cls(n, bits)


def half_plane(n: int, axis: int, bit: int) -> VertexSet:
    """Vertices whose ``axis``-th coordinate equals ``bit``."""
    _check_dim(n)
    _check_axis(n, axis)
    if bit not in (0, 1):
        raise UsageError(f"half-plane bit must be 0 or 1, got {bit}")
    low = low_mask(n, n - axis)
    return VertexSet(n, low if bit == 0 else low ^ full_mask(n))


def _boundary_multicut(n: int, bits: int) -> int:
    total = 0
    for b in range(n):
        total += ((bits ^ (bits >> (1 << b))) & low_mask(n, b)).bit_count()
    return total


def _boundary_direct(n: int, bits: int) -> int:
    count = 0
    mask = bits
    while mask:
        low = mask & -mask
        v = low.bit_length() - 1
        mask ^= low
        for b in range(n):
            if not bits >> (v ^ (1 << b)) & 1:
                count += 1
    return count


def boundary_size(S: VertexSet, method: str = "multicut") -> int:
    """Number of edges of Q_n with exactly one endpoint in ``S``.

    ``method`` is ``"multicut"`` (sum over axes of |S_0 xor S_1|, bitset
    form), ``"direct"`` (walk every vertex of S and its n neighbours) or
    ``"both"``, which computes the two and raises if they disagree.
    """
    if method == "multicut":
        return _boundary_multicut(S.n, S.bits)
    if method == "direct":
        return _boundary_direct(S.n, S.bits)
    if method == "both":
        a = _boundary_multicut(S.n, S.bits)
        b = _boundary_direct(S.n, S.bits)
        if a != b:
            raise AssertionError(f"boundary mismatch: multicut {a} vs direct {b}")
        return a
    raise UsageError(f"unknown boundary method {method!r}")


def half_plane_counts(S: VertexSet) -> list[tuple[int, int]]:
    """``[(|S ∩ H_{axis,0}|, |S ∩ H_{axis,1}|) for axis in 1..n]``."""
    size = len(S)
    out = []
    for axis in range(1, S.n + 1):
        zero = (S.bits & low_mask(S.n, S.n - axis)).bit_count()
        out.append((zero, size - zero))
    return out


def type_of(S: VertexSet) -> int:
    """Smallest intersection of S with any of the 2n half planes."""
    size = len(S)
    best = size
    for b in range(S.n):
        zero = (S.bits & low_mask(S.n, b)).bit_count()
        best = min(best, zero, size - zero)
    return best


def _compact(n: int, bits: int, bit: int) -> int:
    # Drop index bit ``bit``: blocks of length 2^bit at stride 2^(bit+1) close up.
    span = 1 << bit
    block = (1 << span) - 1
    out = 0
    for j in range((1 << n) >> (bit + 1)):
        out |= ((bits >> (2 * span * j)) & block) << (span * j)
    return out


def split_by_axis(S: VertexSet, axis: int) -> tuple[VertexSet, VertexSet]:
    """Project S onto Q_{n-1} along ``axis``: the preimages under g_{n,axis,0/1}."""
    n = S.n
    if n < 2:
        raise UsageError("split_by_axis needs n >= 2")
    _check_axis(n, axis)
    b = n - axis
    low = low_mask(n, b)
    s0 = _compact(n, S.bits & low, b)
    s1 = _compact(n, (S.bits >> (1 << b)) & low, b)
    return VertexSet(n - 1, s0), VertexSet(n - 1, s1)


def binary_exponents(k: int) -> list[int]:
    """Exponents c_1 < c_2 < ... of the binary expansion of k."""
    out = []
    c = 0
    while k:
        if k & 1:
            out.append(c)
        k >>= 1
        c += 1
    return out


def theta_opt(n: int, k: int) -> int:
    """Minimum edge boundary over all k-subsets of Q_n (Harper's formula).

    Accepts any n >= 0 so that large-n identities can be checked with big
    integers; only the vertex-set operations are capped at ``MAX_DIM``.
    """
    if n < 0:
        raise UsageError(f"dimension n={n} must be >= 0")
    if not 0 <= k <= 1 << n:
        raise UsageError(f"k={k} outside [0, 2^{n}]")
    cs = binary_exponents(k)
    N = len(cs)
    inner = 0
    for i, c in enumerate(cs, start=1):
        inner += (N - i) * (1 << c) + ((c << c) >> 1)
    return n * k - 2 * inner


@dataclass(frozen=True)
class ThetaTable:
    n: int
    values: tuple[int, ...]

    def __getitem__(self, k: int) -> int:
        return self.values[k]


def theta_table(n: int) -> ThetaTable:
    return ThetaTable(n, tuple(theta_opt(n, k) for k in range((1 << n) + 1)))


def gray_vertex(label0: int) -> int:
    """Vertex carrying 0-based host label ``label0`` under the reflected Gray embedding."""
    return label0 ^ (label0 >> 1)


def canonical_cubal(n: int, k: int) -> VertexSet:
    """The first k vertices of the reflected Gray order, a k-cubal."""
    _check_dim(n)
    if not 0 <= k <= 1 << n:
        raise UsageError(f"k={k} outside [0, 2^{n}]")
    bits = 0
    for label in range(k):
        bits |= 1 << gray_vertex(label)
    return VertexSet(n, bits)


def theta_half_type(n: int, t: int) -> int:
    """Exact theta(n, 2^(n-1), t) for small types 0 <= t <= 2^(n-3)."""
    if n < 3:
        raise UsageError(f"theta_half_type needs n >= 3, got {n}")
    if t < 0:
        raise UsageError(f"type t={t} must be >= 0")
    if t > 1 << (n - 3):
        raise UsageError(f"type t={t} exceeds 2^(n-3)={1 << (n - 3)}; exact value unknown")
    return 2 * theta_opt(n - 2, t) + (1 << (n - 1))
