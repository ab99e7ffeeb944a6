"""Closed formulas for the intersection theory of Lagrangian Quot schemes.

The three computations exposed here are all finite sums over the root-of-unity
evaluation points of rank n:

* genus-g Gromov-Witten invariants of the rank-n Lagrangian Grassmannian,
* intersection numbers of weighted-homogeneous classes against the
  fundamental class of a Lagrangian Quot scheme, and
* the number of maximal Lagrangian subbundles of a general stable symplectic
  bundle.

Each sum runs over the 2^n admissible exponent tuples; the summand is a power
of the staircase Schur value times qtilde values of the inserted classes.  In
the exact backend everything stays inside one cyclotomic field and the final
integer is extracted with a zero-residual check.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .cyclotomic import make_backend
from .partitions import IndexTuple, StrictPartition, as_strict, staircase, summation_tuples
from .symfunc import PointTable

__all__ = [
    "ParityError",
    "NonHomogeneousError",
    "SchubertExpression",
    "expected_dimension",
    "maximal_subbundle_degree",
    "required_degree",
    "point_from_tuple",
    "gw_invariant",
    "intersection_number",
    "maximal_count",
    "verify_twist_identity",
    "verify_hecke_recursion",
    "verify_staircase_insertion",
]


class ParityError(ValueError):
    """The evenness hypothesis of the counting formula fails for these parameters."""


class NonHomogeneousError(ValueError):
    """An expression that must be weighted-homogeneous mixes degrees."""


def _factor_key(parts) -> tuple[int, ...]:
    parts = tuple(int(p) for p in (getattr(parts, "parts", parts)))
    while parts and parts[-1] == 0:
        parts = parts[:-1]
    if any(p < 1 for p in parts):
        raise ValueError(f"factor parts must be positive: {parts}")
    if any(parts[i] <= parts[i + 1] for i in range(len(parts) - 1)):
        raise ValueError(f"factor parts must be strictly decreasing: {parts}")
    return parts


@dataclass(frozen=True)
class SchubertExpression:
    """A sum of rational multiples of products of qtilde factors.

    Each term is a coefficient together with a multiset of strict-partition
    factors; the single-row factor (k) doubles as the weight-k variable, since
    its qtilde value is the k-th elementary value.  The weighted degree of a
    term is the total weight of its factors.
    """

    terms: tuple[tuple[Fraction, tuple[tuple[int, ...], ...]], ...] = ()

    def __post_init__(self) -> None:
        merged: dict[tuple, Fraction] = {}
        for coeff, factors in self.terms:
            coeff = Fraction(coeff)
            # empty factors are the unit class and contribute nothing
            key = tuple(sorted(k for k in (_factor_key(f) for f in factors) if k))
            merged[key] = merged.get(key, Fraction(0)) + coeff
        cleaned = tuple(
            (coeff, key)
            for key, coeff in sorted(merged.items(), key=lambda kv: (sum(map(sum, kv[0])), kv[0]))
            if coeff != 0
        )
        object.__setattr__(self, "terms", cleaned)

    # -- constructors ----------------------------------------------------------

    @classmethod
    def constant(cls, value) -> SchubertExpression:
        return cls(((Fraction(value), ()),))

    @classmethod
    def one(cls) -> SchubertExpression:
        return cls.constant(1)

    @classmethod
    def special(cls, k: int) -> SchubertExpression:
        """The weight-k variable, i.e. the single-row factor (k)."""
        if k < 1:
            raise ValueError(f"variable weight must be positive, got {k}")
        return cls(((Fraction(1), ((k,),)),))

    @classmethod
    def qtilde_factor(cls, parts) -> SchubertExpression:
        return cls(((Fraction(1), (_factor_key(parts),)),))

    @classmethod
    def monomial(cls, factors, coeff=1) -> SchubertExpression:
        return cls(((Fraction(coeff), tuple(_factor_key(f) for f in factors)),))

    # -- algebra -----------------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return SchubertExpression(self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self):
        return SchubertExpression(tuple((-c, f) for c, f in self.terms))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = tuple(
            (ca * cb, fa + fb) for ca, fa in self.terms for cb, fb in other.terms
        )
        return SchubertExpression(terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = SchubertExpression.one()
        for _ in range(exponent):
            result = result * self
        return result

    def _coerce(self, other):
        if isinstance(other, SchubertExpression):
            return other
        if isinstance(other, (int, Fraction)):
            return SchubertExpression.constant(other)
        return None

    # -- degrees and evaluation ----------------------------------------------------

    def term_degrees(self) -> set[int]:
        return {sum(map(sum, factors)) for _, factors in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.term_degrees()) <= 1

    def degree(self) -> int:
        """Common weighted degree of all terms; zero expression has degree 0."""
        degrees = self.term_degrees()
        if not degrees:
            return 0
        if len(degrees) > 1:
            raise NonHomogeneousError(f"expression mixes degrees {sorted(degrees)}")
        return degrees.pop()

    def max_part(self) -> int:
        return max((f[0] for _, factors in self.terms for f in factors), default=0)

    def evaluate(self, table: PointTable):
        """Value at one evaluation point, through the point's qtilde cache."""
        backend = table.backend
        total = backend.zero
        for coeff, factors in self.terms:
            term = backend.from_fraction(coeff)
            for parts, multiplicity in Counter(factors).items():
                term = term * backend.power(table.qtilde(parts), multiplicity)
            total = total + term
        return total

    def __repr__(self):
        if not self.terms:
            return "SchubertExpression(0)"
        bits = []
        for coeff, factors in self.terms:
            mono = "*".join("Q" + str(list(f)) for f in factors) or "1"
            bits.append(f"{coeff}*{mono}")
        return "SchubertExpression(" + " + ".join(bits) + ")"


# -- dimension bookkeeping -----------------------------------------------------


def expected_dimension(n: int, e: int, ell: int, g: int) -> int:
    """Expected dimension of the space of degree-e Lagrangian subsheaves.

    Equals -(n+1)e - n(n+1)/2 * (g - 1 - ell); may be negative.
    """
    return -(n + 1) * e - (n * (n + 1) // 2) * (g - 1 - ell)


def maximal_subbundle_degree(n: int, g: int, ell: int) -> int:
    """Degree of a maximal Lagrangian subbundle of a general symplectic bundle."""
    return -((n * (g - 1 - ell)) // 2)


def required_degree(n: int, g: int, insertions) -> int | None:
    """The unique map degree d >= 0 compatible with the inserted weights, if any.

    Solves total weight = n(n+1)/2 * (1 - g) + d(n+1); returns None when the
    solution is negative or fractional.
    """
    total = sum(as_strict(n, lam).weight for lam in insertions)
    numerator = total - (n * (n + 1) // 2) * (1 - g)
    if numerator % (n + 1):
        return None
    d = numerator // (n + 1)
    return d if d >= 0 else None


# -- evaluation points -----------------------------------------------------------


@lru_cache(maxsize=None)
def _point_tables(n: int, kind: str):
    """Backend plus one cached PointTable per admissible exponent tuple."""
    backend = make_backend(kind, n)
    order = 4 * (n + 1)
    tables = tuple(
        PointTable(backend, [backend.root_of_unity(order, d) for d in J.doubled])
        for J in summation_tuples(n + 1)
    )
    return backend, tables


def point_from_tuple(backend, J: IndexTuple):
    """Realize an exponent tuple as a concrete evaluation point."""
    order = 4 * J.N
    return tuple(backend.root_of_unity(order, d) for d in J.doubled)


def _validated_insertions(n: int, insertions) -> list[StrictPartition]:
    return [as_strict(n, lam) for lam in insertions]


def _two_power(backend, exponent: int):
    return backend.from_fraction(Fraction(2) ** exponent)


# -- the formulas ------------------------------------------------------------------


def gw_invariant(n: int, g: int, d: int, insertions, backend: str = "exact") -> int:
    """Genus-g Gromov-Witten invariant of the rank-n Lagrangian Grassmannian.

    Nonzero only when d is exactly the degree forced by the inserted weights;
    in particular any d < 0 gives 0.  The value is
    2^(n(g-1)-d) * sum over points of S^(g-1) * product of qtilde insertions,
    where S is the staircase Schur value at the point.  For g = 0 a vanishing
    S would make the summand undefined and raises
    NonvanishingAssumptionError instead of being silently skipped.
    """
    if n < 1:
        raise ValueError(f"rank must be positive, got {n}")
    if g < 0:
        raise ValueError(f"genus must be nonnegative, got {g}")
    if not isinstance(d, int):
        raise TypeError(f"degree must be an integer, got {d!r}")
    lams = _validated_insertions(n, insertions)
    if required_degree(n, g, lams) != d:
        return 0
    eng, tables = _point_tables(n, backend)
    top = staircase(n).parts
    total = eng.zero
    for table in tables:
        term = eng.power(table.schur(top), g - 1)
        for lam in lams:
            term = term * table.qtilde(lam.parts)
        total = total + term
    total = total * _two_power(eng, n * (g - 1) - d)
    return eng.extract_integer(total)


def intersection_number(n: int, g: int, ell: int, e: int, P: SchubertExpression,
                        backend: str = "exact") -> int:
    """Intersection number of a weighted-homogeneous class on a Lagrangian Quot scheme.

    The bundle has rank 2n and degree n*ell over a genus-g curve; e is the
    subsheaf degree.  Returns 0 unless deg P equals the expected dimension.
    Writing ell = 2m or ell = 2m - 1, the value is
    A * sum over points of S^(g-1) * P, with an extra staircase qtilde factor
    inside the sum for odd ell, and A = 2^(n(g-1) + e - m*n).
    """
    if n < 1:
        raise ValueError(f"rank must be positive, got {n}")
    if g < 0:
        raise ValueError(f"genus must be nonnegative, got {g}")
    if not isinstance(P, SchubertExpression):
        raise TypeError(f"P must be a SchubertExpression, got {type(P).__name__}")
    if not P.is_homogeneous():
        raise NonHomogeneousError(f"expression mixes degrees {sorted(P.term_degrees())}")
    if P.max_part() > n:
        raise ValueError(f"expression uses parts above the rank {n}")
    if P.degree() != expected_dimension(n, e, ell, g):
        return 0
    half_ell = ell // 2 if ell % 2 == 0 else (ell + 1) // 2
    odd = ell % 2 != 0
    eng, tables = _point_tables(n, backend)
    top = staircase(n).parts
    total = eng.zero
    for table in tables:
        term = eng.power(table.schur(top), g - 1)
        if odd:
            term = term * table.qtilde(top)
        term = term * P.evaluate(table)
        total = total + term
    total = total * _two_power(eng, n * (g - 1) + e - half_ell * n)
    return eng.extract_integer(total)


def maximal_count(n: int, g: int, ell: int, backend: str = "exact") -> int:
    """Number of maximal Lagrangian subbundles of a general stable symplectic bundle.

    Requires n(ell - g + 1) even, which fixes the maximal subsheaf degree
    e = n(ell - g + 1)/2.  The prefactor is sqrt(2)^(n(g-1)) for even ell and
    sqrt(2)^(n(g-2)) for odd ell (with an extra staircase qtilde factor in the
    sum); sqrt(2) lives exactly in the working cyclotomic field.  The count is
    enumerative for genus at least 2; for smaller genus it is the bare formula
    value.
    """
    if n < 1:
        raise ValueError(f"rank must be positive, got {n}")
    if g < 0:
        raise ValueError(f"genus must be nonnegative, got {g}")
    if (n * (ell - g + 1)) % 2:
        raise ParityError(
            f"n(ell - g + 1) = {n * (ell - g + 1)} is odd; no finite count for "
            f"(n={n}, g={g}, ell={ell})"
        )
    eng, tables = _point_tables(n, backend)
    top = staircase(n).parts
    odd = ell % 2 != 0
    total = eng.zero
    for table in tables:
        term = eng.power(table.schur(top), g - 1)
        if odd:
            term = term * table.qtilde(top)
        total = total + term
    prefactor = eng.power(eng.sqrt2(), n * (g - 2) if odd else n * (g - 1))
    return eng.extract_integer(total * prefactor)


# -- structural identities -----------------------------------------------------------


def verify_twist_identity(n: int, g: int, ell: int, e: int, P: SchubertExpression,
                          ell_hat: int, backend: str = "exact") -> bool:
    """Tensoring by a degree-ell_hat line bundle shifts (ell, e) but not the number."""
    lhs = intersection_number(n, g, ell, e, P, backend)
    rhs = intersection_number(n, g, ell + 2 * ell_hat, e + n * ell_hat, P, backend)
    return lhs == rhs


def verify_hecke_recursion(n: int, g: int, ell: int, e: int, P: SchubertExpression,
                           k: int, backend: str = "exact") -> bool:
    """Dropping the subsheaf degree by n*k matches inserting 2k staircase factors."""
    if k < 0:
        raise ValueError(f"recursion depth must be nonnegative, got {k}")
    lhs = intersection_number(n, g, ell, e, P, backend)
    extra = SchubertExpression.qtilde_factor(staircase(n).parts) ** (2 * k)
    rhs = intersection_number(n, g, ell, e - n * k, P * extra, backend)
    return lhs == rhs


def verify_staircase_insertion(n: int, g: int, d: int, insertions, k: int,
                               backend: str = "exact") -> bool:
    """Raising the degree by n*k matches inserting 2k staircase classes."""
    if k < 0:
        raise ValueError(f"insertion count must be nonnegative, got {k}")
    lams = _validated_insertions(n, insertions)
    lhs = gw_invariant(n, g, d, lams, backend)
    rhs = gw_invariant(n, g, d + k * n, lams + [staircase(n)] * (2 * k), backend)
    return lhs == rhs
