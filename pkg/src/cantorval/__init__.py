"""cantorval: a certified Cantor-type construction whose two-variable sum
surface attains every value in [0, 2] at a critical point.

The package evaluates the construction in two interchangeable scalar
regimes (exact cubic-field arithmetic at alpha = 1/2, outward-rounded MPFR
intervals otherwise) and ships a verifier that checks the construction's
defining identities and regularity bounds with certified comparisons.
"""

from .numerics import (
    CubicNumber,
    Enclosure,
    FloatInterval,
    ModeMixError,
    Scalar,
    compare,
    fraction_to_decimal,
    gap_length,
    pow3,
    scalar_decimal,
    t_power,
)
from .ternary import (
    AddressError,
    GapAddress,
    InC,
    InGap,
    NotInCantorError,
    TernaryExpansion,
    cantor_gap_interval,
    cantor_locate,
    cantor_partial_gap_sum,
    steinhaus_decompose,
    ternary_expand,
)
from .construction import (
    BoundaryAmbiguityError,
    ComponentAddress,
    ConstraintError,
    CriticalPoint,
    FatGap,
    InFatGap,
    LocateResult,
    ModeError,
    Params,
    RangeError,
    UndecidedAtDepth,
    F_eval,
    component_interval,
    critical_preimage,
    descend_by_digits,
    f_eval,
    g_eval,
    gap_interval,
    grad_F,
    locate,
    params_new,
    point_from_cantor_digits,
)

__version__ = "0.1.0"
