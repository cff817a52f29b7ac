"""Grunsky coefficients and coefficient-bound verification for univalent functions."""

from .bounds import (
    BoundProblem,
    BoundReport,
    CompositeBound,
    builtin_catalog,
    fekete_szego_constant,
    maximize_scalar,
    verify_all,
)
from .errors import DomainError, EvaluationError, GrunskyLabError, PreconditionError, UsageError
from .grunsky import (
    CoefficientVector,
    GrunskyMatrix,
    IdentityResidual,
    InequalityWeights,
    bilinear_inequality_gap,
    grunsky_matrix,
    grunsky_matrix_of,
    odd_transform,
    verify_identities,
    weighted_inequality_gap,
)
from .hankel import (
    HankelReport,
    hankel2,
    hankel2_reduced_a3zero,
    hankel3,
    hankel3_reduced_a2zero,
    hankel3_reduced_a3zero,
    hankel_report,
)
from .search import (
    FamilyMember,
    FeasiblePoint,
    evaluate_member,
    family_catalog,
    search_feasible,
)
from .series import (
    Series1,
    Series2,
    difference_quotient,
    s1_exp,
    s1_log,
    s1_mul,
    s1_sqrt,
    s2_log,
    s2_mul,
)

__version__ = "0.1.0"
