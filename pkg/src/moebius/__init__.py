"""Antipodal boundary data, their polyhedral member spaces, and the class
geometry that connects them.

The usual entry points:

    validate_antipodal / validate_metric   check and wrap input matrices
    build_complex                          member space as a cell complex
    tight_span                             injective hull of a finite metric
    ball_hull_check                        ball == hull verification
    normalize / phi / d_moeb / classify4   class-space layer
    run_criteria                           the acceptance suite
"""

from .core import (
    AntipodalSpace,
    BadDiagonal,
    CounterexampleFound,
    InputError,
    InvariantViolation,
    LimitExceeded,
    MoebiusError,
    NotAdmissible,
    NotAntipodal,
    NotMember,
    NotMoebiusEquivalent,
    ParseError,
    PreconditionError,
    RadiusTooSmall,
    cross_ratio,
    distance,
    is_member,
    to_log_weights,
    validate_antipodal,
    visual_rescale,
)
from .relations import PairRelation, classify_type, relation, relation_of_point
from .feasibility import (
    CellSystem,
    FeasibilityResult,
    cell_system,
    fourier_motzkin_feasible,
    solve,
)
from .complexes import (
    Cell,
    Complex,
    build_complex,
    delta_estimate,
    r_tilde,
    ray_point,
    sample_ball_members,
    sample_members,
    sphere_points,
    tangent_dimension,
    visual_recovery_check,
)
from .hull import (
    FiniteMetric,
    HullCell,
    TightSpan,
    ball_hull_check,
    hyperconvexity_witness,
    is_extremal,
    kuratowski,
    sphere_metric,
    tight_span,
    validate_metric,
)
from .teich import (
    NormalizedAntipodal,
    Region4,
    SimplexPoint,
    classify4,
    d_moeb,
    geodesic_point,
    is_equivalent,
    lattice_fingerprint,
    moebius_ratio,
    moebius_symmetries,
    normalize,
    phi,
    phi_inverse,
)
from .acceptance import CriterionResult, run_criteria

__version__ = "0.1.0"
