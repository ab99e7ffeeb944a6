"""Frobenius-algebra oracle: genus-g invariants as traces of multiplication operators.

The specialized quantum cohomology ring of the rank-n Lagrangian Grassmannian
(deformation parameter set to 1) is a commutative 2^n-dimensional algebra over
the rationals whose structure constants are genus-zero three-point invariants.
Once built, every genus-g invariant is a trace:

    invariant = tr( [E]^(g-1) * [class_1] * ... * [class_m] )

where [x] is the multiplication operator of x and E is the quantum Euler
class, the sum over the basis of each class times its complementary-partition
partner.  This path uses only exact rational linear algebra, so it is an
independent cross-check of the root-of-unity summation.

Structure constants are cached on disk as versioned JSON; see CACHE_FORMAT.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .invariants import _point_tables, gw_invariant
from .partitions import StrictPartition, as_strict, dual_partition, strict_partitions

__all__ = [
    "SingularEulerError",
    "InconsistentAlgebraError",
    "QHAlgebra",
    "build_qh_algebra",
    "mult_operator",
    "quantum_euler",
    "trace_invariant",
    "eigenvalue_check",
    "default_cache_dir",
    "CACHE_FORMAT_VERSION",
]

CACHE_FORMAT_VERSION = 1

# CACHE_FORMAT: one JSON object per rank n, file qh_algebra_n{n}_v{version}.json:
#   {"format_version": 1, "n": 2,
#    "basis": [[], [1], [2], [2, 1]],
#    "constants": [[[lam], [mu], [nu], d, "c"], ...]}
# Rows are sorted; the structure constant c is a decimal string.


class SingularEulerError(ArithmeticError):
    """The quantum Euler operator is not invertible (semisimplicity failed)."""


class InconsistentAlgebraError(RuntimeError):
    """A built or loaded algebra violates a ring axiom."""


# -- exact rational matrices (independent of the cyclotomic kernels) ---------------


def mat_identity(size: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(size)] for i in range(size)]


def mat_mul(a, b) -> list[list[Fraction]]:
    size = len(a)
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_pow(a, exponent: int) -> list[list[Fraction]]:
    if exponent < 0:
        return mat_pow(mat_inverse(a), -exponent)
    result = mat_identity(len(a))
    base = [list(r) for r in a]
    e = exponent
    while e:
        if e & 1:
            result = mat_mul(result, base)
        e >>= 1
        if e:
            base = mat_mul(base, base)
    return result


def mat_trace(a) -> Fraction:
    return sum((Fraction(a[i][i]) for i in range(len(a))), Fraction(0))


def mat_inverse(a) -> list[list[Fraction]]:
    """Gauss-Jordan inverse over the rationals; singular input raises SingularEulerError."""
    size = len(a)
    work = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(size)]
            for i, row in enumerate(a)]
    for col in range(size):
        pivot_row = next((r for r in range(col, size) if work[r][col] != 0), None)
        if pivot_row is None:
            raise SingularEulerError("matrix is singular")
        work[col], work[pivot_row] = work[pivot_row], work[col]
        pivot = work[col][col]
        work[col] = [x / pivot for x in work[col]]
        for r in range(size):
            if r != col and work[r][col] != 0:
                factor = work[r][col]
                work[r] = [x - factor * y for x, y in zip(work[r], work[col])]
    return [row[size:] for row in work]


def charpoly(a) -> list[Fraction]:
    """Characteristic polynomial det(xI - A), descending coefficients, monic.

    Faddeev-LeVerrier recursion: exact over the rationals.
    """
    size = len(a)
    coeffs = [Fraction(1)]
    m = mat_identity(size)
    for k in range(1, size + 1):
        m = mat_mul(a, m)
        ck = -mat_trace(m) / k
        coeffs.append(ck)
        for i in range(size):
            m[i][i] += ck
    return coeffs


# -- the algebra --------------------------------------------------------------------


@dataclass(frozen=True)
class QHAlgebra:
    """Specialized quantum cohomology of rank n: basis plus structure constants.

    constants maps an index pair (i, j) with i <= j to a tuple of
    (k, d, c) entries: the product of basis elements i and j contains basis
    element k with coefficient c, contributed by maps of degree d.
    """

    n: int
    basis: tuple[StrictPartition, ...]
    constants: dict

    @property
    def dim(self) -> int:
        return len(self.basis)

    def index(self, lam) -> int:
        lam = as_strict(self.n, lam)
        try:
            return self._index_map()[lam.parts]
        except KeyError:
            raise ValueError(f"{lam.parts} is not a basis label of rank {self.n}") from None

    def _index_map(self):
        cache = getattr(self, "_cached_index", None)
        if cache is None:
            cache = {sp.parts: i for i, sp in enumerate(self.basis)}
            object.__setattr__(self, "_cached_index", cache)
        return cache

    def basis_vector(self, lam) -> list[Fraction]:
        vec = [Fraction(0)] * self.dim
        vec[self.index(lam)] = Fraction(1)
        return vec

    def pair_constants(self, i: int, j: int):
        return self.constants.get((min(i, j), max(i, j)), ())

    def product(self, left, right) -> list[Fraction]:
        """Product of two coefficient vectors in the basis."""
        out = [Fraction(0)] * self.dim
        for i, ci in enumerate(left):
            if not ci:
                continue
            for j, cj in enumerate(right):
                if not cj:
                    continue
                scale = ci * cj
                for k, _d, c in self.pair_constants(i, j):
                    out[k] += scale * c
        return out


def _structure_constants(n: int) -> dict:
    """Structure constants from genus-zero three-point invariants."""
    basis = strict_partitions(n)
    duals = [dual_partition(sp) for sp in basis]
    constants: dict = {}
    for i, lam in enumerate(basis):
        for j in range(i, len(basis)):
            mu = basis[j]
            entries = []
            for k, nu in enumerate(basis):
                excess = lam.weight + mu.weight - nu.weight
                if excess < 0 or excess % (n + 1):
                    continue
                d = excess // (n + 1)
                c = gw_invariant(n, 0, d, [lam, mu, duals[k]])
                if c:
                    entries.append((k, d, c))
            constants[(i, j)] = tuple(entries)
    return constants


def _validate(algebra: QHAlgebra) -> None:
    """Ring axioms checked on every build or load: unit, positivity, associativity."""
    dim = algebra.dim
    if algebra.basis[0].parts != ():
        raise InconsistentAlgebraError("basis does not start with the unit class")
    for entries in algebra.constants.values():
        for _k, d, c in entries:
            if d < 0 or c < 0 or c != int(c):
                raise InconsistentAlgebraError(f"bad structure constant ({d}, {c})")
    unit = algebra.basis_vector(algebra.basis[0])
    vectors = [algebra.basis_vector(sp) for sp in algebra.basis]
    for k, vec in enumerate(vectors):
        if algebra.product(unit, vec) != vec:
            raise InconsistentAlgebraError(f"unit fails on basis element {k}")
    for i in range(dim):
        for j in range(dim):
            ij = algebra.product(vectors[i], vectors[j])
            for k in range(dim):
                left = algebra.product(ij, vectors[k])
                right = algebra.product(vectors[i], algebra.product(vectors[j], vectors[k]))
                if left != right:
                    raise InconsistentAlgebraError(
                        f"associativity fails on basis triple ({i}, {j}, {k})"
                    )


def default_cache_dir() -> Path:
    env = os.environ.get("LGQ_CACHE_DIR")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "lgquot"


def _cache_path(n: int, cache_dir) -> Path:
    base = Path(cache_dir) if cache_dir is not None else default_cache_dir()
    return base / f"qh_algebra_n{n}_v{CACHE_FORMAT_VERSION}.json"


def _save_cache(algebra: QHAlgebra, path: Path) -> None:
    rows = []
    for (i, j), entries in sorted(algebra.constants.items()):
        for k, d, c in entries:
            rows.append([
                list(algebra.basis[i].parts),
                list(algebra.basis[j].parts),
                list(algebra.basis[k].parts),
                d,
                str(c),
            ])
    payload = {
        "format_version": CACHE_FORMAT_VERSION,
        "n": algebra.n,
        "basis": [list(sp.parts) for sp in algebra.basis],
        "constants": rows,
    }
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_text(json.dumps(payload, indent=1))
    os.replace(tmp, path)


def _load_cache(n: int, path: Path) -> QHAlgebra | None:
    try:
        payload = json.loads(path.read_text())
    except (OSError, ValueError):
        return None
    if payload.get("format_version") != CACHE_FORMAT_VERSION or payload.get("n") != n:
        return None
    basis = strict_partitions(n)
    if [list(sp.parts) for sp in basis] != payload.get("basis"):
        return None
    index = {tuple(sp.parts): i for i, sp in enumerate(basis)}
    constants: dict = {}
    try:
        for lam, mu, nu, d, c in payload["constants"]:
            i, j, k = index[tuple(lam)], index[tuple(mu)], index[tuple(nu)]
            constants.setdefault((i, j), []).append((k, int(d), int(c)))
    except (KeyError, TypeError, ValueError):
        return None
    for i in range(len(basis)):
        for j in range(i, len(basis)):
            constants.setdefault((i, j), [])
    return QHAlgebra(n, tuple(basis), {k: tuple(v) for k, v in constants.items()})


def build_qh_algebra(n: int, use_cache: bool = True, cache_dir=None) -> QHAlgebra:
    """Build (or reload) the rank-n algebra; ring axioms are asserted either way."""
    if n < 1:
        raise ValueError(f"rank must be positive, got {n}")
    path = _cache_path(n, cache_dir)
    algebra = _load_cache(n, path) if use_cache else None
    if algebra is None:
        algebra = QHAlgebra(n, tuple(strict_partitions(n)), _structure_constants(n))
        if use_cache:
            _save_cache(algebra, path)
    _validate(algebra)
    return algebra


# -- operators and traces -------------------------------------------------------------


def _as_vector(algebra: QHAlgebra, x) -> list[Fraction]:
    if isinstance(x, (list, tuple)):
        if len(x) == algebra.dim and all(isinstance(v, (int, Fraction)) for v in x):
            return [Fraction(v) for v in x]
        return algebra.basis_vector(as_strict(algebra.n, x))
    return algebra.basis_vector(as_strict(algebra.n, x))


def mult_operator(algebra: QHAlgebra, x) -> list[list[Fraction]]:
    """Matrix of multiplication by x; column k is the expansion of x times basis k."""
    vec = _as_vector(algebra, x)
    dim = algebra.dim
    matrix = [[Fraction(0)] * dim for _ in range(dim)]
    for k, basis_vec in enumerate(mat_identity(dim)):
        col = algebra.product(vec, basis_vec)
        for r in range(dim):
            matrix[r][k] = col[r]
    return matrix


def quantum_euler(algebra: QHAlgebra) -> list[Fraction]:
    """The quantum Euler class: sum of each basis class times its complementary dual."""
    total = [Fraction(0)] * algebra.dim
    for sp in algebra.basis:
        term = algebra.product(
            algebra.basis_vector(sp), algebra.basis_vector(dual_partition(sp))
        )
        total = [a + b for a, b in zip(total, term)]
    return total


def trace_invariant(algebra: QHAlgebra, g: int, insertions) -> Fraction:
    """Genus-g invariant as tr([Euler]^(g-1) * product of insertion operators).

    For g = 0 the inverse Euler operator is used; a singular Euler operator
    raises SingularEulerError.  When no admissible map degree exists for the
    insertions the trace vanishes.
    """
    if g < 0:
        raise ValueError(f"genus must be nonnegative, got {g}")
    euler_op = mult_operator(algebra, quantum_euler(algebra))
    if g == 0:
        try:
            acc = mat_inverse(euler_op)
        except SingularEulerError:
            raise SingularEulerError(
                "quantum Euler operator is singular; the genus-0 trace is undefined"
            ) from None
    else:
        acc = mat_pow(euler_op, g - 1)
    for lam in insertions:
        acc = mat_mul(acc, mult_operator(algebra, as_strict(algebra.n, lam)))
    return mat_trace(acc)


def eigenvalue_check(algebra: QHAlgebra) -> bool:
    """Spectral match between multiplication operators and qtilde point values.

    Calibration: the eigenvalues of the operator of a weight-w basis class are
    the qtilde values of the class at the 2^n evaluation points, each scaled
    by 2^(-w/(n+1)).  The fractional power of two is avoided by comparing the
    (n+1)-th power of the operator against the products of
    qtilde^(n+1) / 2^w, entirely inside one cyclotomic field:

        charpoly(op^(n+1))  ==  prod over points (x - qtilde(lam)^(n+1) / 2^w)
    """
    n = algebra.n
    backend, tables = _point_tables(n, "exact")
    half = Fraction(1, 2)
    for lam in algebra.basis:
        op = mat_pow(mult_operator(algebra, lam), n + 1)
        target = charpoly(op)
        poly = [backend.one]
        for table in tables:
            mu = table.qtilde(lam.parts) ** (n + 1) * backend.from_fraction(half ** lam.weight)
            # multiply poly by (x - mu)
            poly = [backend.zero] + poly
            shifted = [c * mu for c in poly[1:]] + [backend.zero]
            poly = [a - b for a, b in zip(poly, shifted)]
        # poly is ascending in x; target is descending and monic
        ascending_target = list(reversed(target))
        for got, expected in zip(poly, ascending_target):
            if got != backend.from_fraction(expected):
                return False
    return True
