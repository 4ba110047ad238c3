"""Multiplicative distance functions on polynomials: Mahler's measure and its
reciprocal and t-reciprocal relatives, their moment functions, star-body
volumes, and counts of reciprocal integer polynomials."""

from .counting import (
    CountReport,
    MCEstimate,
    enumerate_reciprocal,
    mc_distribution,
    mc_star_volume,
    predicted_count,
    table_coefficients,
)
from .distfun import (
    MAHLER,
    RECIPROCAL,
    RootFunctionKind,
    asymptotic_check,
    custom,
    distance,
    monic_restriction,
    parse_kind,
    root_bound,
    root_value,
    treciprocal,
)
from .errors import (
    BudgetExceeded,
    MdistError,
    NumericFailure,
    ToleranceNotReached,
    UsageError,
)
from .exactalg import Poly, RationalFunction, determinant, pfaffian
from .forms import (
    MonicFamily,
    QuadratureSpec,
    gram_matrix,
    mahler_A_matrix_exact,
    orthogonalize_hermitian,
    rho_A_matrix_exact,
    skew_matrix,
    skew_orthogonalize,
)
from .moments import (
    F_numeric,
    F_numeric_det_route,
    H_numeric,
    closed_form,
    distribution_from_moment,
    rootspace_oracle_F,
    rootspace_oracle_H,
    star_volume_complex,
    star_volume_real,
    trajectory_F,
    trajectory_H,
)
from .polyroots import Polynomial, from_roots, recover_g, roots, substitute_laurent

__version__ = "0.1.0"
