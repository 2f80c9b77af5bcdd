"""Bit-level combinatorics on the Boolean cube {0,1}^n.

A point of {0,1}^n is stored as a bitmask with an explicit dimension:
coordinate i (1-based, i <= n) lives at bit i-1, so the string form
``"11100"`` (n=5) has coordinates 1..3 set and equals bitmask 0b00111.
All enumerations (spheres, balls, subcubes) are emitted in ascending
bitmask order so downstream output is byte-for-byte reproducible.

Dimensions are capped at 63: one machine word covers every desk-scale
experiment and keeps the bit tricks cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

MAX_DIM = 63


def _check_dim(n: int) -> None:
    if not 1 <= n <= MAX_DIM:
        raise ValueError(f"dimension must be in [1, {MAX_DIM}], got {n}")


@dataclass(frozen=True, slots=True)
class Vertex:
    """An n-bit point of the Boolean cube."""

    bits: int
    n: int

    def __post_init__(self) -> None:
        _check_dim(self.n)
        if not 0 <= self.bits < (1 << self.n):
            raise ValueError(f"bits {self.bits:#x} out of range for n={self.n}")

    @classmethod
    def from_bits(cls, s: str) -> "Vertex":
        """Parse a coordinate string, leftmost character = coordinate 1."""
        if not s or any(ch not in "01" for ch in s):
            raise ValueError(f"not a 0/1 coordinate string: {s!r}")
        bits = 0
        for i, ch in enumerate(s):
            if ch == "1":
                bits |= 1 << i
        return cls(bits, len(s))

    def to_bits(self) -> str:
        return "".join("1" if (self.bits >> i) & 1 else "0" for i in range(self.n))

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def __xor__(self, other: "Vertex") -> "Vertex":
        _same_dim(self, other)
        return Vertex(self.bits ^ other.bits, self.n)

    def __lt__(self, other: "Vertex") -> bool:
        _same_dim(self, other)
        return self.bits < other.bits

    def __repr__(self) -> str:
        return f"Vertex('{self.to_bits()}')"


def _same_dim(*vs: Vertex) -> int:
    n = vs[0].n
    for v in vs[1:]:
        if v.n != n:
            raise ValueError(f"dimension mismatch: {v.n} != {n}")
    return n


def zero(n: int) -> Vertex:
    return Vertex(0, n)


def unit(i: int, n: int) -> Vertex:
    """The standard unit vector e_i (coordinate i set)."""
    if not 1 <= i <= n:
        raise ValueError(f"coordinate {i} out of range for n={n}")
    return Vertex(1 << (i - 1), n)


def all_vertices(n: int):
    """All 2^n points in ascending bitmask order."""
    _check_dim(n)
    return (Vertex(b, n) for b in range(1 << n))


def hamming(x: Vertex, y: Vertex) -> int:
    """Number of coordinates where x and y differ."""
    _same_dim(x, y)
    return (x.bits ^ y.bits).bit_count()


def xor(x: Vertex, y: Vertex) -> Vertex:
    return x ^ y


def support(x: Vertex) -> tuple[int, ...]:
    """Sorted coordinates where x is 1."""
    return tuple(i + 1 for i in range(x.n) if (x.bits >> i) & 1)


def subset_masks(free: int):
    """All submasks of `free`, in ascending numeric order."""
    s = 0
    while True:
        yield s
        if s == free:
            return
        s = (s - free) & free


def cube_points(x: Vertex, y: Vertex) -> list[Vertex]:
    """The smallest subcube containing x and y (2^hamming(x,y) points)."""
    n = _same_dim(x, y)
    base = x.bits & y.bits
    free = x.bits ^ y.bits
    return [Vertex(base | s, n) for s in subset_masks(free)]


@lru_cache(maxsize=None)
def weight_masks(n: int, d: int) -> tuple[int, ...]:
    """All n-bit masks of popcount d, ascending (Gosper's hack)."""
    _check_dim(n)
    if not 0 <= d <= n:
        raise ValueError(f"weight {d} out of range for n={n}")
    if d == 0:
        return (0,)
    out = []
    m = (1 << d) - 1
    top = 1 << n
    while m < top:
        out.append(m)
        c = m & -m
        r = m + c
        m = (((r ^ m) >> 2) // c) | r
    return tuple(out)


def sphere(x: Vertex, r: int) -> list[Vertex]:
    """All points at Hamming distance exactly r from x, ascending bitmask."""
    if r < 0 or r > x.n:
        raise ValueError(f"radius {r} out of range for n={x.n}")
    return sorted(Vertex(x.bits ^ m, x.n) for m in weight_masks(x.n, r))


def ball(x: Vertex, r: int) -> list[Vertex]:
    """All points at Hamming distance at most r from x, ascending bitmask."""
    if r < 0 or r > x.n:
        raise ValueError(f"radius {r} out of range for n={x.n}")
    out = []
    for j in range(r + 1):
        out.extend(Vertex(x.bits ^ m, x.n) for m in weight_masks(x.n, j))
    return sorted(out)


def project(x: Vertex, d: int) -> Vertex:
    """Drop the last d coordinates, keeping coordinates 1..n-d."""
    if d < 0 or d >= x.n:
        raise ValueError(f"cannot drop {d} of {x.n} coordinates")
    m = x.n - d
    return Vertex(x.bits & ((1 << m) - 1), m)


def avoids(x: Vertex, y: Vertex, x2: Vertex, y2: Vertex) -> bool:
    """True iff supp(x xor y) and supp(x2 xor y2) are disjoint."""
    _same_dim(x, y, x2, y2)
    return (x.bits ^ y.bits) & (x2.bits ^ y2.bits) == 0


def grid_partition(m: int, n: int) -> list[list[tuple[int, int]]]:
    """Split [m] x [n] into n classes of m cells, no repeated row or column.

    Class i collects the cells (a, ((a + i - 2) mod n) + 1): each class is a
    cyclic diagonal, so rows and columns inside a class are all distinct,
    and the n classes tile the grid.
    """
    if m < 1 or n < 1:
        raise ValueError("grid sides must be positive")
    if m > n:
        raise ValueError(f"need m <= n, got m={m} > n={n}")
    return [
        [(a, ((a + i - 2) % n) + 1) for a in range(1, m + 1)]
        for i in range(1, n + 1)
    ]
