"""Strict partitions and the root-of-unity exponent tuples behind every sum.

Schubert classes of the rank-n Lagrangian Grassmannian are indexed by strict
partitions with parts at most n; there are 2^n of them, in bijection with
subsets of {1, ..., n}.  The closed intersection-number formulas sum over
tuples of (half-)integer exponents of a fixed root of unity.  Exponents are
stored doubled, so every membership test is integer residue arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

__all__ = [
    "Partition",
    "StrictPartition",
    "IndexTuple",
    "strict_partitions",
    "dual_partition",
    "staircase",
    "as_strict",
    "root_tuples",
    "filter_no_opposites",
    "filter_unit_product",
    "summation_tuples",
]


@dataclass(frozen=True)
class Partition:
    """A weakly decreasing sequence of nonnegative integers; trailing zeros dropped."""

    parts: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        parts = tuple(int(p) for p in self.parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if any(p < 0 for p in parts):
            raise ValueError(f"negative part in {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts not weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)


@dataclass(frozen=True)
class StrictPartition:
    """A strictly decreasing sequence of positive parts, each at most the rank n."""

    n: int
    parts: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"rank must be positive, got {self.n}")
        parts = tuple(int(p) for p in self.parts)
        if any(p < 1 or p > self.n for p in parts):
            raise ValueError(f"parts of {parts} must lie in 1..{self.n}")
        if any(parts[i] <= parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts not strictly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def sort_key(self) -> tuple:
        # canonical basis order: weight ascending, ties by parts descending
        return (self.weight, tuple(-p for p in self.parts))


def as_strict(n: int, value) -> StrictPartition:
    """Coerce a StrictPartition, Partition, or iterable of parts into rank n."""
    if isinstance(value, StrictPartition):
        if value.n == n:
            return value
        return StrictPartition(n, value.parts)
    if isinstance(value, Partition):
        return StrictPartition(n, value.parts)
    return StrictPartition(n, tuple(value))


def strict_partitions(n: int) -> list[StrictPartition]:
    """All 2^n strict partitions of rank n, weight ascending, ties by parts descending."""
    if n < 1:
        raise ValueError(f"rank must be positive, got {n}")
    out = []
    for r in range(n + 1):
        for subset in combinations(range(n, 0, -1), r):
            out.append(StrictPartition(n, subset))
    out.sort(key=lambda sp: sp.sort_key)
    return out


def dual_partition(lam: StrictPartition) -> StrictPartition:
    """The strict partition whose part set is the complement of lam's in {1..n}."""
    present = set(lam.parts)
    return StrictPartition(lam.n, tuple(p for p in range(lam.n, 0, -1) if p not in present))


def staircase(n: int) -> StrictPartition:
    """The full staircase (n, n-1, ..., 1), the top class of rank n."""
    return StrictPartition(n, tuple(range(n, 0, -1)))


@dataclass(frozen=True)
class IndexTuple:
    """A strictly increasing exponent tuple, stored doubled so half-integers stay exact.

    For N odd the exponents are integers (doubled entries even); for N even
    they are half-integers (doubled entries odd).  The window is
    -m <= j_1 < ... < j_N <= 3m+1 for N = 2m+1 and
    -m+1/2 <= j_1 < ... < j_N <= 3m-1/2 for N = 2m.
    """

    N: int
    doubled: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.N < 1:
            raise ValueError(f"tuple size must be positive, got {self.N}")
        doubled = tuple(int(d) for d in self.doubled)
        if len(doubled) != self.N:
            raise ValueError(f"expected {self.N} entries, got {len(doubled)}")
        lo, hi, parity = _window(self.N)
        if any(d % 2 != parity for d in doubled):
            kind = "even" if parity == 0 else "odd"
            raise ValueError(f"doubled entries must all be {kind}: {doubled}")
        if any(d < lo or d > hi for d in doubled):
            raise ValueError(f"doubled entries out of window [{lo}, {hi}]: {doubled}")
        if any(doubled[i] >= doubled[i + 1] for i in range(len(doubled) - 1)):
            raise ValueError(f"doubled entries not strictly increasing: {doubled}")
        object.__setattr__(self, "doubled", doubled)


def _window(N: int) -> tuple[int, int, int]:
    """Inclusive doubled-exponent window (lo, hi) and required parity for size N."""
    if N % 2 == 1:
        m = (N - 1) // 2
        return -2 * m, 6 * m + 2, 0
    m = N // 2
    return -2 * m + 1, 6 * m - 1, 1


def root_tuples(N: int) -> list[IndexTuple]:
    """Every strictly increasing exponent tuple in the size-N window."""
    lo, hi, _parity = _window(N)
    return [IndexTuple(N, c) for c in combinations(range(lo, hi + 1, 2), N)]


def filter_no_opposites(tuples) -> list[IndexTuple]:
    """Keep tuples whose root-of-unity coordinates are pairwise non-opposite.

    With zeta of order 2N, two coordinates are opposite exactly when their
    doubled exponents differ by 2N modulo 4N.
    """
    out = []
    for t in tuples:
        four_n = 4 * t.N
        d = t.doubled
        if all(
            (d[b] - d[a] - 2 * t.N) % four_n != 0
            for a in range(len(d))
            for b in range(a + 1, len(d))
        ):
            out.append(t)
    return out


def filter_unit_product(tuples) -> list[IndexTuple]:
    """Keep tuples whose root-of-unity coordinates multiply to 1.

    The product of the coordinates is the primitive 4N-th root raised to the
    sum of doubled exponents, so the condition is that sum vanishing mod 4N.
    """
    return [t for t in tuples if sum(t.doubled) % (4 * t.N) == 0]


@lru_cache(maxsize=None)
def summation_tuples(N: int) -> tuple[IndexTuple, ...]:
    """The index set of all evaluation points: no opposite pairs, unit product.

    For N = n + 1 this set has exactly 2^n elements, matching the rank of the
    cohomology of the rank-n Lagrangian Grassmannian.
    """
    return tuple(filter_unit_product(filter_no_opposites(root_tuples(N))))
