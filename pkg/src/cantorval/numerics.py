"""Scalar regimes for the construction.

Two kinds of scalar share one interface contract:

* ``CubicNumber`` — exact elements a + b*t + c*t^2 of the cubic field Q(t),
  t = 3^(1/3).  Every comparison is decided by integer arithmetic, so
  exact-mode checks carry zero tolerance.
* ``FloatInterval`` — closed intervals of MPFR floats at a configurable
  precision, every operation rounded outward, so the interval always
  contains the exact real result.

``Enclosure`` brackets a real value between two scalars of one regime and is
what evaluation APIs return.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

import gmpy2
from gmpy2 import mpfr

__all__ = [
    "CubicNumber",
    "FloatInterval",
    "Enclosure",
    "Scalar",
    "ModeMixError",
    "T",
    "t_power",
    "pow3",
    "compare",
    "gap_length",
    "fraction_to_decimal",
    "scalar_to_fraction_bounds",
    "scalar_decimal",
]


class ModeMixError(TypeError):
    """An exact-mode scalar met a float-mode scalar in one operation."""


# ---------------------------------------------------------------------------
# Exact regime: Q(3^(1/3))
# ---------------------------------------------------------------------------


class _TEnclosure:
    """Bisection enclosure lo/den < t < (lo+1)/den of t = 3^(1/3).

    Shared, monotonically refined, and consulted by every exact sign query;
    refinement doubles den, keeping the width exactly 1/den.
    """

    __slots__ = ("lo", "den")

    def __init__(self) -> None:
        # 1.442^3 = 2.999... < 3 < 3.005... = 1.443^3
        self.lo = 1442
        self.den = 1000
        self.refine(256)

    def refine(self, steps: int) -> None:
        lo, den = self.lo, self.den
        for _ in range(steps):
            lo, den = 2 * lo, 2 * den
            mid = lo + 1
            if mid**3 < 3 * den**3:
                lo = mid
        self.lo, self.den = lo, den


_T = _TEnclosure()


def _cubic_sign(an: int, bn: int, cn: int) -> int:
    """Sign of an + bn*t + cn*t^2 with t = 3^(1/3), decided exactly."""
    if an == 0 and bn == 0 and cn == 0:
        return 0
    while True:
        lo, den = _T.lo, _T.den
        hi = lo + 1
        if bn >= 0:
            blo, bhi = bn * lo, bn * hi
        else:
            blo, bhi = bn * hi, bn * lo
        lo2, hi2 = lo * lo, hi * hi
        if cn >= 0:
            clo, chi = cn * lo2, cn * hi2
        else:
            clo, chi = cn * hi2, cn * lo2
        base = an * den * den
        vlo = base + blo * den + clo
        vhi = base + bhi * den + chi
        if vlo > 0:
            return 1
        if vhi < 0:
            return -1
        # straddles zero only because the enclosure is still too wide:
        # a nonzero field element is bounded away from zero
        _T.refine(64)


class CubicNumber:
    """Exact field element a + b*t + c*t^2, t = 3^(1/3).

    Coefficients are integers over a common positive denominator in lowest
    terms, so the representation is unique and equality is coefficientwise.
    """

    __slots__ = ("an", "bn", "cn", "den")

    def __init__(self, an: int, bn: int = 0, cn: int = 0, den: int = 1):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            an, bn, cn, den = -an, -bn, -cn, -den
        g = math.gcd(an, bn, cn, den)
        if g > 1:
            an //= g
            bn //= g
            cn //= g
            den //= g
        self.an = an
        self.bn = bn
        self.cn = cn
        self.den = den

    @classmethod
    def from_fraction(cls, value: Union[Fraction, int]) -> "CubicNumber":
        value = Fraction(value)
        return cls(value.numerator, 0, 0, value.denominator)

    @property
    def a(self) -> Fraction:
        return Fraction(self.an, self.den)

    @property
    def b(self) -> Fraction:
        return Fraction(self.bn, self.den)

    @property
    def c(self) -> Fraction:
        return Fraction(self.cn, self.den)

    @property
    def is_rational(self) -> bool:
        return self.bn == 0 and self.cn == 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self!r} is irrational")
        return Fraction(self.an, self.den)

    def sign(self) -> int:
        return _cubic_sign(self.an, self.bn, self.cn)

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "CubicNumber":
        if isinstance(other, CubicNumber):
            return other
        if isinstance(other, (int, Fraction)):
            return CubicNumber.from_fraction(other)
        if isinstance(other, FloatInterval):
            raise ModeMixError("cannot mix CubicNumber with FloatInterval")
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d1, d2 = self.den, other.den
        return CubicNumber(
            self.an * d2 + other.an * d1,
            self.bn * d2 + other.bn * d1,
            self.cn * d2 + other.cn * d1,
            d1 * d2,
        )

    __radd__ = __add__

    def __neg__(self):
        return CubicNumber(-self.an, -self.bn, -self.cn, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a1, b1, c1 = self.an, self.bn, self.cn
        a2, b2, c2 = other.an, other.bn, other.cn
        # (a1 + b1 t + c1 t^2)(a2 + b2 t + c2 t^2) with t^3 = 3, t^4 = 3t
        return CubicNumber(
            a1 * a2 + 3 * (b1 * c2 + c1 * b2),
            a1 * b2 + b1 * a2 + 3 * c1 * c2,
            a1 * c2 + b1 * b2 + c1 * a2,
            self.den * other.den,
        )

    __rmul__ = __mul__

    def inverse(self) -> "CubicNumber":
        a, b, c, q = self.an, self.bn, self.cn, self.den
        # adjugate of the multiplication matrix of a + b t + c t^2; the norm
        # N vanishes only at zero since t is irrational of degree 3
        norm = a**3 + 3 * b**3 + 9 * c**3 - 9 * a * b * c
        if norm == 0:
            raise ZeroDivisionError("inverse of zero")
        return CubicNumber(
            q * (a * a - 3 * b * c),
            q * (3 * c * c - a * b),
            q * (b * b - a * c),
            norm,
        )

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = CubicNumber(1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- comparisons --------------------------------------------------------

    def _cmp(self, other) -> int:
        other = self._coerce(other)
        if other is NotImplemented:
            raise TypeError(f"cannot compare CubicNumber with {type(other)}")
        d1, d2 = self.den, other.den
        return _cubic_sign(
            self.an * d2 - other.an * d1,
            self.bn * d2 - other.bn * d1,
            self.cn * d2 - other.cn * d1,
        )

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self.an, self.bn, self.cn, self.den) == (
            other.an,
            other.bn,
            other.cn,
            other.den,
        )

    def __hash__(self):
        return hash((self.an, self.bn, self.cn, self.den))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    # -- rational bounds ----------------------------------------------------

    def fraction_bounds(self, bits: int = 64) -> tuple[Fraction, Fraction]:
        """Exact rational lo <= self <= hi with hi - lo <= 2**-bits."""
        weight = abs(self.bn) + 3 * abs(self.cn) + 1
        while weight << bits > self.den * _T.den:
            _T.refine(64)
        lo, den = _T.lo, _T.den
        hi = lo + 1
        bn, cn = self.bn, self.cn
        if bn >= 0:
            blo, bhi = bn * lo, bn * hi
        else:
            blo, bhi = bn * hi, bn * lo
        lo2, hi2 = lo * lo, hi * hi
        if cn >= 0:
            clo, chi = cn * lo2, cn * hi2
        else:
            clo, chi = cn * hi2, cn * lo2
        base = self.an * den * den
        scale = self.den * den * den
        return Fraction(base + blo * den + clo, scale), Fraction(
            base + bhi * den + chi, scale
        )

    def __float__(self) -> float:
        lo, hi = self.fraction_bounds(64)
        return float((lo + hi) / 2)

    def __repr__(self) -> str:
        if self.is_rational:
            return f"CubicNumber({Fraction(self.an, self.den)})"
        return f"CubicNumber({self.a} + {self.b}*t + {self.c}*t^2)"


T = CubicNumber(0, 1, 0)


def t_power(k: int) -> CubicNumber:
    """t^k as an exact CubicNumber, any integer k (t^3 = 3)."""
    m, r = divmod(k, 3)
    coeffs = [0, 0, 0]
    if m >= 0:
        coeffs[r] = 3**m
        return CubicNumber(coeffs[0], coeffs[1], coeffs[2], 1)
    coeffs[r] = 1
    return CubicNumber(coeffs[0], coeffs[1], coeffs[2], 3**-m)


# ---------------------------------------------------------------------------
# Float regime: outward-rounded MPFR intervals
# ---------------------------------------------------------------------------

_CTX: dict[int, tuple] = {}


def _contexts(prec: int):
    pair = _CTX.get(prec)
    if pair is None:
        pair = (
            gmpy2.context(precision=prec, round=gmpy2.RoundDown),
            gmpy2.context(precision=prec, round=gmpy2.RoundUp),
        )
        _CTX[prec] = pair
    return pair


class FloatInterval:
    """Closed interval [lo, hi] of precision-``prec`` MPFR floats.

    All operations round lo down and hi up, so the interval produced always
    contains the exact real result of the operation on the exact operands.
    """

    __slots__ = ("lo", "hi", "prec")

    def __init__(self, lo: mpfr, hi: mpfr, prec: int):
        self.lo = lo
        self.hi = hi
        self.prec = prec

    @classmethod
    def from_fraction(cls, value: Union[Fraction, int], prec: int) -> "FloatInterval":
        value = Fraction(value)
        down, up = _contexts(prec)
        n, d = value.numerator, value.denominator
        return cls(down.div(n, d), up.div(n, d), prec)

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def fraction_bounds(self) -> tuple[Fraction, Fraction]:
        return (
            Fraction(*self.lo.as_integer_ratio()),
            Fraction(*self.hi.as_integer_ratio()),
        )

    def width_fraction(self) -> Fraction:
        lo, hi = self.fraction_bounds()
        return hi - lo

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "FloatInterval":
        if isinstance(other, FloatInterval):
            if other.prec != self.prec:
                raise ModeMixError("mixed precisions")
            return other
        if isinstance(other, (int, Fraction)):
            return FloatInterval.from_fraction(other, self.prec)
        if isinstance(other, CubicNumber):
            raise ModeMixError("cannot mix FloatInterval with CubicNumber")
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        down, up = _contexts(self.prec)
        return FloatInterval(
            down.add(self.lo, other.lo), up.add(self.hi, other.hi), self.prec
        )

    __radd__ = __add__

    def __neg__(self):
        return FloatInterval(-self.hi, -self.lo, self.prec)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        down, up = _contexts(self.prec)
        return FloatInterval(
            down.sub(self.lo, other.hi), up.sub(self.hi, other.lo), self.prec
        )

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        down, up = _contexts(self.prec)
        a, b, c, d = self.lo, self.hi, other.lo, other.hi
        lo = min(down.mul(a, c), down.mul(a, d), down.mul(b, c), down.mul(b, d))
        hi = max(up.mul(a, c), up.mul(a, d), up.mul(b, c), up.mul(b, d))
        return FloatInterval(lo, hi, self.prec)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not (other.lo > 0 or other.hi < 0):
            raise ZeroDivisionError("divisor interval touches zero")
        down, up = _contexts(self.prec)
        a, b, c, d = self.lo, self.hi, other.lo, other.hi
        lo = min(down.div(a, c), down.div(a, d), down.div(b, c), down.div(b, d))
        hi = max(up.div(a, c), up.div(a, d), up.div(b, c), up.div(b, d))
        return FloatInterval(lo, hi, self.prec)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __abs__(self):
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return FloatInterval(mpfr(0), max(-self.lo, self.hi), self.prec)

    def sqrt(self) -> "FloatInterval":
        if self.lo < 0:
            raise ValueError("sqrt of interval reaching below zero")
        down, up = _contexts(self.prec)
        return FloatInterval(down.sqrt(self.lo), up.sqrt(self.hi), self.prec)

    def pow_fraction(self, e: Fraction) -> "FloatInterval":
        """self**e for a strictly positive interval, outward rounded.

        Routed as exp((p/q) * log x); each step rounds toward the bound being
        computed, with the log's direction flipped under a negative exponent.
        """
        e = Fraction(e)
        if self.lo <= 0:
            raise ValueError("power of interval reaching below zero")
        if e == 0:
            return FloatInterval.from_fraction(1, self.prec)
        down, up = _contexts(self.prec)
        en, ed = e.numerator, e.denominator

        def upper(x: mpfr) -> mpfr:
            lg = up.log(x) if en > 0 else down.log(x)
            return up.exp(up.div(up.mul(en, lg), ed))

        def lower(x: mpfr) -> mpfr:
            lg = down.log(x) if en > 0 else up.log(x)
            return down.exp(down.div(down.mul(en, lg), ed))

        if en > 0:
            return FloatInterval(lower(self.lo), upper(self.hi), self.prec)
        return FloatInterval(lower(self.hi), upper(self.lo), self.prec)

    def min_hull(self, other: "FloatInterval") -> "FloatInterval":
        """Encloses min(x, y) for x in self, y in other."""
        other = self._coerce(other)
        return FloatInterval(min(self.lo, other.lo), min(self.hi, other.hi), self.prec)

    def hull(self, other: "FloatInterval") -> "FloatInterval":
        other = self._coerce(other)
        return FloatInterval(min(self.lo, other.lo), max(self.hi, other.hi), self.prec)

    def __float__(self) -> float:
        return float(self.lo + (self.hi - self.lo) / 2)

    def __repr__(self) -> str:
        return f"FloatInterval([{self.lo}, {self.hi}], prec={self.prec})"


def pow3(exponent: Fraction, prec: int) -> FloatInterval:
    """3**exponent as an outward-rounded interval.

    Routed through integer powers and a certified integer q-th root, so the
    only roundings are the final root and (for negative exponents) one
    division; no exp/log chain is involved.
    """
    exponent = Fraction(exponent)
    p, q = exponent.numerator, exponent.denominator
    down, up = _contexts(prec)
    if p >= 0:
        n = 3**p
        return FloatInterval(down.rootn(n, q), up.rootn(n, q), prec)
    n = 3**-p
    rlo, rhi = down.rootn(n, q), up.rootn(n, q)
    return FloatInterval(down.div(1, rhi), up.div(1, rlo), prec)


def pow2(exponent: Fraction, prec: int) -> FloatInterval:
    """2**exponent as an outward-rounded interval (same route as pow3)."""
    exponent = Fraction(exponent)
    p, q = exponent.numerator, exponent.denominator
    down, up = _contexts(prec)
    if p >= 0:
        n = 2**p
        return FloatInterval(down.rootn(n, q), up.rootn(n, q), prec)
    n = 2**-p
    rlo, rhi = down.rootn(n, q), up.rootn(n, q)
    return FloatInterval(down.div(1, rhi), up.div(1, rlo), prec)


Scalar = Union[CubicNumber, FloatInterval]


def compare(x: Scalar, y) -> Union[int, None]:
    """Certified trichotomy: -1, 0, +1, or None when undecidable.

    Exact scalars always decide.  Float intervals return None when they
    overlap without both being the same point.
    """
    if isinstance(x, CubicNumber):
        return x._cmp(y)
    if isinstance(y, (int, Fraction)):
        y = FloatInterval.from_fraction(y, x.prec)
    elif isinstance(y, CubicNumber):
        raise ModeMixError("cannot compare FloatInterval with CubicNumber")
    if x.hi < y.lo:
        return -1
    if x.lo > y.hi:
        return 1
    if x.lo == x.hi == y.lo == y.hi:
        return 0
    return None


# ---------------------------------------------------------------------------
# Enclosures
# ---------------------------------------------------------------------------


class Enclosure:
    """Certified bracket lo <= value <= hi around one real number.

    Both endpoints live in the same scalar regime.  In float mode each
    endpoint is itself an interval; outer bounds are lo.lo and hi.hi, and
    certified containment uses the inner bounds lo.hi and hi.lo.
    """

    __slots__ = ("lo", "hi")

    def __init__(self, lo: Scalar, hi: Scalar):
        if compare(lo, hi) == 1:
            raise ValueError("enclosure with lo > hi")
        self.lo = lo
        self.hi = hi

    @classmethod
    def point(cls, value: Scalar) -> "Enclosure":
        return cls(value, value)

    @property
    def is_point(self) -> bool:
        if self.lo is self.hi:
            if isinstance(self.lo, FloatInterval):
                return self.lo.is_point
            return True
        return compare(self.lo, self.hi) == 0

    def add(self, other: "Enclosure") -> "Enclosure":
        return Enclosure(self.lo + other.lo, self.hi + other.hi)

    def sub(self, other: "Enclosure") -> "Enclosure":
        return Enclosure(self.lo - other.hi, self.hi - other.lo)

    def neg(self) -> "Enclosure":
        return Enclosure(-self.hi, -self.lo)

    def scale(self, factor: Fraction) -> "Enclosure":
        factor = Fraction(factor)
        if factor >= 0:
            return Enclosure(self.lo * factor, self.hi * factor)
        return Enclosure(self.hi * factor, self.lo * factor)

    def outer_fraction_bounds(self, bits: int = 64) -> tuple[Fraction, Fraction]:
        """Exact rational bounds certainly containing the value."""
        lo_b = scalar_to_fraction_bounds(self.lo, bits)
        hi_b = scalar_to_fraction_bounds(self.hi, bits)
        return lo_b[0], hi_b[1]

    def contains_fraction(self, value: Union[Fraction, int]) -> bool:
        """Certified: True only if lo <= value <= hi surely holds."""
        value = Fraction(value)
        if isinstance(self.lo, CubicNumber):
            return self.lo._cmp(value) <= 0 and self.hi._cmp(value) >= 0
        inner_lo = Fraction(*self.lo.hi.as_integer_ratio())
        inner_hi = Fraction(*self.hi.lo.as_integer_ratio())
        return inner_lo <= value <= inner_hi

    def width_at_most(self, bound: Union[Fraction, int]) -> bool:
        """Certified: True only if hi - lo <= bound surely holds."""
        bound = Fraction(bound)
        if isinstance(self.lo, CubicNumber):
            return (self.hi - self.lo)._cmp(bound) <= 0
        lo_f, hi_f = self.outer_fraction_bounds()
        return hi_f - lo_f <= bound

    def __repr__(self) -> str:
        return f"Enclosure({self.lo!r}, {self.hi!r})"


# ---------------------------------------------------------------------------
# Construction-facing helpers
# ---------------------------------------------------------------------------


def gap_length(params, n: int) -> Scalar:
    """Length s**-n of every level-n gap, s = 3^(1/(1+alpha)).

    Exact mode (alpha = 1/2, s = t^2): the closed form t^(-2n).  Float mode:
    directed 3^(-n/(1+alpha)).
    """
    if n < 1:
        raise ValueError("gap levels start at 1")
    if params.is_exact:
        return t_power(-2 * n)
    return pow3(Fraction(-n, 1) / (1 + params.alpha), params.precision)


def fraction_to_decimal(value: Fraction, places: int, rounding: str = "nearest") -> str:
    """Fixed-point decimal string of a rational, rounding mode explicit."""
    value = Fraction(value)
    scaled = value * 10**places
    n, d = scaled.numerator, scaled.denominator
    if rounding == "floor":
        q = n // d
    elif rounding == "ceil":
        q = -((-n) // d)
    elif rounding == "nearest":
        q = (2 * n + d) // (2 * d)
    else:
        raise ValueError(f"unknown rounding {rounding!r}")
    sign = "-" if q < 0 else ""
    digits = str(abs(q)).rjust(places + 1, "0")
    if places == 0:
        return sign + digits
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


def scalar_to_fraction_bounds(x: Scalar, bits: int = 64) -> tuple[Fraction, Fraction]:
    if isinstance(x, CubicNumber):
        return x.fraction_bounds(bits)
    return x.fraction_bounds()


def scalar_decimal(x: Union[Scalar, Fraction, int], places: int,
                   rounding: str = "nearest") -> str:
    """Decimal rendering of a scalar; irrational scalars round their bounds."""
    if isinstance(x, (Fraction, int)):
        return fraction_to_decimal(Fraction(x), places, rounding)
    lo, hi = scalar_to_fraction_bounds(x, int(places * 3.33) + 16)
    if rounding == "floor":
        return fraction_to_decimal(lo, places, "floor")
    if rounding == "ceil":
        return fraction_to_decimal(hi, places, "ceil")
    return fraction_to_decimal((lo + hi) / 2, places, "nearest")
