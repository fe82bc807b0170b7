"""Skew-symmetric logarithms of rotations and the Frobenius geometry of O(n)."""

from .canon import CanonicalForm, canonical_form, has_minus_one
from .errors import (
    DimensionError,
    DomainError,
    EmptyDecompositionError,
    NotSupportedError,
    OrthologError,
    PreconditionError,
    SingularityError,
)
from .geo import (
    GeodesicArc,
    PairClass,
    Periodicity,
    arc_length,
    classify_pair,
    classify_periodicity,
    diameter,
    distance,
    einstein_constants,
    eval_arc,
    geodesic,
    minimal_geodesics,
    sectional_curvature,
)
from .loglattice import LatticeLog, enumerate_logs, is_generic, verify_general_form
from .matcore import (
    E0,
    P0,
    Tolerances,
    det,
    exp_oracle,
    frobenius_inner,
    is_orthogonal,
    is_skew,
    is_symmetric,
    pfaffian,
    rot,
    sym_eig,
    trace_metric,
)
from .plog import (
    AplogStructure,
    PlogDescriptor,
    all_principal_logs_generic,
    classify_component,
    principal_log,
    sample_aplog,
)
from .skewsvd import SvdSystem, decompose, eig_summary, rodrigues_exp, sym_skew_parts

__version__ = "0.1.0"
