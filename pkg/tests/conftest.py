"""Shared fixtures and the frozen-oracle assertion helper.

Oracle decimals in the test modules were computed with mpmath at 45
significant digits (mp.dps = 45) from the defining formulas alone, before
being frozen here; the library under test never produces them.
"""

from fractions import Fraction

import pytest

from cantorval.construction import Params, params_new
from cantorval.numerics import scalar_to_fraction_bounds


@pytest.fixture(scope="session")
def params_exact() -> Params:
    return params_new(Fraction(1, 2))


@pytest.fixture(scope="session")
def params_quarter() -> Params:
    return params_new(Fraction(1, 4), "float", 256)


@pytest.fixture(scope="session")
def params_eleven() -> Params:
    return params_new(Fraction(11, 20), "float", 256)


def assert_matches(scalar, oracle: str, places: int = 40) -> None:
    """Certify that a scalar's enclosure pins the frozen oracle decimal.

    Requires the enclosure width below 10**-places and the oracle value
    inside the (slightly padded) enclosure, all in exact rational arithmetic.
    """
    lo, hi = scalar_to_fraction_bounds(scalar, 340)
    target = Fraction(oracle)
    eps = Fraction(1, 10**places)
    assert hi - lo < eps, f"enclosure too wide: {float(hi - lo)}"
    assert lo - eps < target < hi + eps, (
        f"oracle {oracle} outside [{float(lo)}, {float(hi)}]"
    )
