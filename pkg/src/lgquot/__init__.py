"""Exact Gromov-Witten invariants, Quot-scheme intersection numbers, and
maximal-subbundle counts for Lagrangian Grassmannians over curves."""

from .cyclotomic import (
    CyclotomicNumber,
    ExactBackend,
    FloatBackend,
    NonIntegerValueError,
    NonvanishingAssumptionError,
    cyclotomic_polynomial,
    euler_phi,
    make_backend,
    root_of_unity,
    sqrt_two,
    working_order,
)
from .invariants import (
    NonHomogeneousError,
    ParityError,
    SchubertExpression,
    expected_dimension,
    gw_invariant,
    intersection_number,
    maximal_count,
    maximal_subbundle_degree,
    point_from_tuple,
    required_degree,
    verify_hecke_recursion,
    verify_staircase_insertion,
    verify_twist_identity,
)
from .oracle import (
    QHAlgebra,
    SingularEulerError,
    build_qh_algebra,
    eigenvalue_check,
    mult_operator,
    quantum_euler,
    trace_invariant,
)
from .partitions import (
    IndexTuple,
    Partition,
    StrictPartition,
    dual_partition,
    filter_no_opposites,
    filter_unit_product,
    root_tuples,
    staircase,
    strict_partitions,
    summation_tuples,
)
from .symfunc import (
    PointTable,
    SkewMatrix,
    complete_all,
    determinant,
    elementary_all,
    pfaffian,
    qtilde,
    qtilde_pair,
    schur,
)

__version__ = "0.1.0"
