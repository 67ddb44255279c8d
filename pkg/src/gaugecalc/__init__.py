"""Exact rational toolkit for gauges, support functions, conic measures and
their majorization, labelings of convex figures, and hulls of ball families."""
from .convex import (
    DimensionError,
    DomainError,
    Empty,
    HPolytope,
    VPolytope,
    canonicalize,
    contains,
    contains_point,
    facet_normals,
    gauge,
    inf_convolution,
    join,
    join_all,
    meet,
    meet_all,
    minkowski_sum,
    operator_norm,
    polar,
    same_figure,
    scale,
    support,
    support_deviation,
)
from .labeling import (
    Labeling,
    LabelingReport,
    label_of,
    simplest_label,
    simplest_labeling,
    solve_labeling_system,
    verify_labeling,
    verify_labeling_planar,
)
from .lp import CertificateError, Infeasible, LinearProgram, Optimal, Unbounded, check_feasible, solve_lp
from .majorization import (
    No,
    Yes,
    check_join_inequality,
    decomposition_witness,
    dominates_affine,
    dominates_linear,
    in_dual_cone,
)
from .measures import ConicMeasure, PointMeasure, SeparatingSublinear, SignedConicMeasure, canonicalize_measure, pair
from .semilattice import (
    BallFamily,
    Consistent,
    Member,
    Rejected,
    check_sy_absorbing,
    decompose_meet,
    eval_541_bound,
    hull_membership,
    infconv_identity_check,
    is_nondegenerate,
    n1_reduction_check,
    outer_rep_422,
    rep_421,
    upper_hull_membership,
)

__version__ = "0.1.0"
