"""Exact arithmetic in Z^n under the right-lexicographic order.

The order is determined by the rightmost differing coordinate (index n is the
most significant), which makes Z^(n-1), embedded in the first n-1 coordinates,
a convex subgroup.  Heights and the "infinitely larger" relation are read off
the rightmost nonzero coordinate.  All arithmetic is arbitrary-precision.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import HalfError, RankMismatch

LESS = -1
EQUAL = 0
GREATER = 1


@dataclass(frozen=True)
class LexVec:
    """An element of Z^n; ``coords`` is indexed 1..n left to right."""

    coords: tuple[int, ...]

    def __init__(self, coords):
        object.__setattr__(self, "coords", tuple(int(c) for c in coords))

    @property
    def n(self) -> int:
        return len(self.coords)

    @classmethod
    def zero(cls, n: int) -> "LexVec":
        return cls((0,) * n)

    @classmethod
    def unit(cls, n: int, index: int) -> "LexVec":
        """Unit vector at 1-based ``index``."""
        if not 1 <= index <= n:
            raise RankMismatch(f"unit index {index} outside 1..{n}")
        return cls(tuple(1 if i == index - 1 else 0 for i in range(n)))

    def _key(self) -> tuple[int, ...]:
        # Right-lex order is plain tuple order on the reversed coordinates.
        return tuple(reversed(self.coords))

    def _check_rank(self, other: "LexVec") -> None:
        if self.n != other.n:
            raise RankMismatch(f"rank {self.n} vs rank {other.n}")

    def __lt__(self, other: "LexVec") -> bool:
        self._check_rank(other)
        return self._key() < other._key()

    def __le__(self, other: "LexVec") -> bool:
        self._check_rank(other)
        return self._key() <= other._key()

    def __gt__(self, other: "LexVec") -> bool:
        self._check_rank(other)
        return self._key() > other._key()

    def __ge__(self, other: "LexVec") -> bool:
        self._check_rank(other)
        return self._key() >= other._key()

    def __add__(self, other: "LexVec") -> "LexVec":
        self._check_rank(other)
        return LexVec(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "LexVec") -> "LexVec":
        self._check_rank(other)
        return LexVec(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "LexVec":
        return LexVec(tuple(-a for a in self.coords))

    def __mul__(self, k: int) -> "LexVec":
        return LexVec(tuple(k * a for a in self.coords))

    __rmul__ = __mul__

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    def halve(self) -> "LexVec":
        if any(c % 2 for c in self.coords):
            raise HalfError(f"odd coordinate in {self.coords}")
        return LexVec(tuple(c // 2 for c in self.coords))

    def pad_to(self, n: int) -> "LexVec":
        """Embed into Z^n by appending zeros at the most significant end."""
        if n < self.n:
            raise RankMismatch(f"cannot shrink rank {self.n} to {n}")
        return LexVec(self.coords + (0,) * (n - self.n))

    def to_json(self) -> list[int]:
        return list(self.coords)

    def __repr__(self) -> str:
        return f"LexVec({self.coords})"


def compare(a: LexVec, b: LexVec) -> int:
    """Total right-lex order: LESS (-1), EQUAL (0) or GREATER (1)."""
    a._check_rank(b)
    ka, kb = a._key(), b._key()
    if ka < kb:
        return LESS
    if ka > kb:
        return GREATER
    return EQUAL


def height(a: LexVec) -> int:
    """1-based index of the rightmost nonzero coordinate; 0 for the zero vector."""
    for i in range(a.n, 0, -1):
        if a.coords[i - 1]:
            return i
    return 0


def infinitely_larger(a: LexVec, b: LexVec) -> bool:
    """a >> b, i.e. height(a) > height(b)."""
    a._check_rank(b)
    return height(a) > height(b)


def add(a: LexVec, b: LexVec) -> LexVec:
    return a + b


def negate(a: LexVec) -> LexVec:
    return -a


def halve(a: LexVec) -> LexVec:
    return a.halve()
