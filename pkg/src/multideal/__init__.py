"""Exact multiplier ideals of monomial ideals and SNC divisors on affine space."""

from .asymptotic import GradedFamily, asymptotic_mi, family_member, verify_asymptotic_subadditivity
from .errors import (
    ApproximationNotReached,
    InfiniteVolume,
    InputError,
    InvalidResolution,
    RestrictionVanishes,
    StabilizationNotCertified,
    UnsupportedDimension,
)
from .ideals import (
    MonomialIdeal,
    colength,
    diagonal_restrict,
    external_product,
    minimize,
    power,
    product,
    restrict,
)
from .multiplier import (
    Fan2D,
    SncDivisor,
    lct,
    mi_from_resolution_2d,
    mi_ideal,
    mi_linear_series,
    mi_mixed,
    mi_snc,
    refine_fan_2d,
)
from .polyhedra import INF, NewtonRegion, covolume, newton_region, strict_contains, support_value
from .verify import (
    CampaignConfig,
    run_campaign,
    verify_diagonal_pipeline,
    verify_product_formula,
    verify_restriction,
    verify_subadditivity,
)
from .volume import fujita_approximation, moving_sequence, multiplicity, volume

__version__ = "0.1.0"
