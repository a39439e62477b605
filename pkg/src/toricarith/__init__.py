"""Exact toric intersection theory with Mahler measures and canonical heights."""

from .lattice import (
    DimensionMismatch,
    DualVector,
    LatticeVector,
    det,
    hermite_normal_form,
    in_sublattice,
    pairing,
    primitive,
    solve_exact,
)
from .cones import (
    Cone,
    DuplicateRayError,
    Fan,
    FanValidationError,
    IntersectionNotFaceError,
    NonSimplicialConeError,
    NonStrictConeError,
)
from .polytopes import (
    LatticePolytope,
    LaurentPolynomial,
    mixed_volume_oracle,
    normal_fan,
)
from .divisors import (
    NotBasepointFreeError,
    TDivisor,
    canonical_metric_norm,
    cartier_data,
    divisor_of_polytope,
    is_ample,
    is_basepoint_free,
    is_principal,
    picard_rank,
    polytope_of_divisor,
    principal_divisor,
    section_basis,
    support_function_eval,
)
from .intersection import (
    MinkowskiWeight,
    UnbalancedWeightError,
    check_balanced,
    degree,
    elementary_divisor,
    fundamental_weight,
    intersect_divisor,
    jd_presentation,
    mixed_volume,
    nonface_product_vanishes,
)
from .mahler import (
    BLOCH_WIGNER_MAX,
    MahlerEstimate,
    Place,
    bloch_wigner,
    canonical_height_point,
    dilog,
    height_hypersurface,
    height_place_data,
    mahler_best,
    mahler_linear_form,
    mahler_numeric,
    mahler_univariate_exact,
)
from .bernstein import (
    BKReport,
    NoApplicableBoundError,
    bk_bound,
    bk_verify,
    bkk_count,
    bound_L,
    estimate_L_lower,
    lelong_constants,
)

__version__ = "0.1.0"
