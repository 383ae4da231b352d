"""Exact commutative algebra for delta invariants, indices of ideals and Ulrich ideals."""

from __future__ import annotations

from .approximation import (
    ApproximationCertificate,
    DeltaIndexReport,
    canonical_module,
    delta,
    delta_n,
    free_rank,
    index_of_ideal,
    is_parameter_ideal,
    mcm_approximation,
    trace_ideal,
)
from .graded import (
    GradedAlgebraPresentation,
    HilbertSeries,
    a_invariant,
    assoc_graded,
    is_cohen_macaulay,
    linear_hsop,
    ord_and_initial_form,
    reg_via_membership,
    regularity,
)
from .poly import PolyRing, Polynomial, PrimeField, RationalField, TermOrder, parse_polynomial
from .rings import (
    Ideal,
    ModuleMap,
    PresentedModule,
    PresentedRing,
    depth,
    minimal_resolution,
    projective_dimension,
    syzygy_module,
)
from .session import Session, load_session, suite_session
from .ulrich import is_ulrich, minimal_reduction, powers_free_audit

__version__ = "0.1.0"
