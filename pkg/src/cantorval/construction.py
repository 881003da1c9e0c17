"""The Cantor-type construction on [0, M] and its certified evaluators.

For a Hölder exponent alpha with 2 < s = 3^(1/(1+alpha)), remove from
[0, M], M = 1/(s - 2), one open middle gap of length s^-n from each of the
2^(n-1) depth-(n-1) components.  The gaps then carry the full measure M
(each component satisfies L_d = M * s^-d exactly), so the survivor A is a
null set; yet f below maps A onto [0, (c/4)].  On each gap sits a tent of
height (c/2) * ell^alpha (c the tent coefficient, default 4) whose integral
is (c/4) * 3^-n; g is the sum of all tents, f its antiderivative, and
F(x, y) = f(x) + f(y) sends pairs of survivor points onto [0, 2] with zero
gradient, one pair for every value, via the ternary digit decomposition.

Evaluation is by certified descent: at each level the point is compared
against the gap cut from the current component, exactly in exact mode and
by interval trichotomy in float mode, where an undecidable comparison
raises BoundaryAmbiguityError rather than guessing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .numerics import (
    CubicNumber,
    Enclosure,
    FloatInterval,
    Scalar,
    compare,
    gap_length as _gap_length_impl,
    pow3,
    t_power,
)
from .ternary import GapAddress, NotInCantorError, TernaryExpansion

__all__ = [
    "Params",
    "params_new",
    "ComponentAddress",
    "FatGap",
    "InFatGap",
    "UndecidedAtDepth",
    "LocateResult",
    "CriticalPoint",
    "DigitDescent",
    "ConstraintError",
    "ModeError",
    "RangeError",
    "BoundaryAmbiguityError",
    "component_interval",
    "gap_interval",
    "locate",
    "g_eval",
    "f_eval",
    "F_eval",
    "grad_F",
    "g_sup_bound",
    "descend_by_digits",
    "point_from_cantor_digits",
    "critical_preimage",
]


class ConstraintError(ValueError):
    """The exponent alpha violates the admissibility constraint."""


class ModeError(ValueError):
    """Requested scalar regime cannot represent the requested exponent."""


class RangeError(ValueError):
    """Point certifiably outside the construction's domain."""


class BoundaryAmbiguityError(ValueError):
    """A float-mode comparison against a gap boundary was undecidable.

    Raising beats guessing: a wrong branch would silently corrupt every
    quantity downstream.  Retry with a tighter input or higher precision.
    """

    def __init__(self, level: int, message: str):
        super().__init__(message)
        self.level = level


def _alpha_allowed(alpha: Fraction) -> bool:
    # alpha < log(3/2)/log(2)  <=>  2**(p+q) < 3**q, checked in integers
    p, q = alpha.numerator, alpha.denominator
    return 2 ** (p + q) < 3**q


_ALPHA_SUP_DECIMAL = "0.5849625007"  # log(3/2)/log 2, for error messages


class Params:
    """Shared context for one member of the construction family.

    Attributes
    ----------
    alpha : Fraction            Hölder exponent, 0 < alpha < log(3/2)/log 2.
    mode : str                  "exact" (alpha = 1/2 only) or "float".
    precision : int             MPFR bits for float mode.
    tent_coefficient : Fraction Slope coefficient c of the tents; the
                                construction's identities hold at c = 4 and
                                other values exist to let tests watch the
                                verifier catch a broken construction.
    s : Scalar                  3^(1/(1+alpha)); gaps at level n have length
                                s**-n.
    M : Scalar                  1/(s - 2), right endpoint of the domain.
    """

    def __init__(
        self,
        alpha: Union[Fraction, int, str],
        mode: Optional[str] = None,
        precision: int = 256,
        tent_coefficient: Union[Fraction, int] = 4,
    ):
        alpha = Fraction(alpha)
        if alpha <= 0:
            raise ConstraintError(f"alpha must be positive, got {alpha}")
        if not _alpha_allowed(alpha):
            raise ConstraintError(
                f"alpha = {alpha} violates the constraint "
                f"alpha < log(3/2)/log 2 = {_ALPHA_SUP_DECIMAL}... "
                f"(equivalently 2**(1+alpha) < 3), so s = 3^(1/(1+alpha)) "
                f"would not exceed 2 and the gap lengths would not fit"
            )
        if mode is None:
            mode = "exact" if alpha == Fraction(1, 2) else "float"
        if mode not in ("exact", "float"):
            raise ValueError(f"mode must be 'exact' or 'float', got {mode!r}")
        if mode == "exact" and alpha != Fraction(1, 2):
            raise ModeError(
                f"exact mode covers alpha = 1/2 only (s = 3^(2/3) lives in "
                f"the cubic field); alpha = {alpha} needs float mode"
            )
        if precision < 64:
            raise ValueError("precision below 64 bits is not supported")
        tent_coefficient = Fraction(tent_coefficient)
        if tent_coefficient <= 0:
            raise ValueError("tent coefficient must be positive")

        self.alpha = alpha
        self.mode = mode
        self.precision = precision
        self.tent_coefficient = tent_coefficient

        if self.is_exact:
            self.s: Scalar = t_power(2)
            self.M: Scalar = (self.s - 2).inverse()
        else:
            self.s = pow3(1 / (1 + alpha), precision)
            shifted = self.s - 2
            if not shifted.lo > 0:
                raise ConstraintError(
                    f"precision {precision} cannot separate s from 2 at "
                    f"alpha = {alpha}; raise it"
                )
            self.M = 1 / shifted

        self._pow_cache: dict[tuple[int, Fraction], Scalar] = {}
        self._len_cache: dict[int, Scalar] = {0: self.M}
        self._comp_cache: dict[tuple[int, ...], Scalar] = {}

    @property
    def is_exact(self) -> bool:
        return self.mode == "exact"

    def from_fraction(self, value: Union[Fraction, int]) -> Scalar:
        if self.is_exact:
            return CubicNumber.from_fraction(value)
        return FloatInterval.from_fraction(value, self.precision)

    def coerce_point(self, x) -> Scalar:
        if isinstance(x, (int, Fraction)):
            return self.from_fraction(x)
        if self.is_exact:
            if not isinstance(x, CubicNumber):
                raise ModeError(f"exact mode takes CubicNumber points, got {type(x)}")
        elif not isinstance(x, FloatInterval):
            raise ModeError(f"float mode takes FloatInterval points, got {type(x)}")
        return x

    def gap_pow(self, n: int, beta: Fraction) -> Scalar:
        """ell_n**beta where ell_n = s**-n is the level-n gap length."""
        key = (n, beta)
        cached = self._pow_cache.get(key)
        if cached is None:
            if self.is_exact:
                # ell_n = t^(-2n), so the exponent -2*n*beta must be integral
                e = -2 * n * beta
                if e.denominator != 1:
                    raise ModeError(f"ell_{n}**{beta} leaves the cubic field")
                cached = t_power(e.numerator)
            else:
                cached = pow3(-n * beta / (1 + self.alpha), self.precision)
            self._pow_cache[key] = cached
        return cached

    def gap_length(self, n: int) -> Scalar:
        return self.gap_pow(n, Fraction(1))

    def component_length(self, depth: int) -> Scalar:
        """Length L_d of each of the 2^d surviving depth-d components."""
        if depth < 0:
            raise ValueError("depth must be >= 0")
        cached = self._len_cache.get(depth)
        if cached is None:
            prev = self.component_length(depth - 1)
            cached = (prev - self.gap_length(depth)) * Fraction(1, 2)
            self._len_cache[depth] = cached
        return cached

    def f_unit(self, level: int) -> Fraction:
        """Exact tent mass (c/4) * 3**-level of one level-``level`` gap."""
        return self.tent_coefficient / (4 * 3**level)

    @property
    def f_total(self) -> Fraction:
        """Exact value of f at M: the total mass of all tents."""
        return self.tent_coefficient / 4

    def __repr__(self) -> str:
        return (
            f"Params(alpha={self.alpha}, mode={self.mode!r}, "
            f"precision={self.precision})"
        )


def params_new(
    alpha: Union[Fraction, int, str],
    mode: Optional[str] = None,
    precision: int = 256,
    tent_coefficient: Union[Fraction, int] = 4,
) -> Params:
    """Validate and freeze a construction context (see ``Params``)."""
    return Params(alpha, mode, precision, tent_coefficient)


# ---------------------------------------------------------------------------
# Addresses and intervals
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ComponentAddress:
    """Left/right path (0/1 per level) to one surviving component."""

    path: tuple[int, ...] = ()

    def __post_init__(self):
        if any(b not in (0, 1) for b in self.path):
            raise ValueError("component path bits must be 0 or 1")

    @property
    def depth(self) -> int:
        return len(self.path)

    def child(self, bit: int) -> "ComponentAddress":
        return ComponentAddress(self.path + (bit,))

    @property
    def gap(self) -> GapAddress:
        """Address of the gap this component loses to its children."""
        return GapAddress.from_path(self.path)


@dataclass(frozen=True)
class FatGap:
    """One removed open gap: its address, endpoints, and exact length."""

    address: GapAddress
    lo: Scalar
    hi: Scalar
    length: Scalar


def component_interval(params: Params, address: ComponentAddress) -> tuple[Scalar, Scalar]:
    """Exact endpoints of the surviving component at ``address``."""
    lo = params._comp_cache.get(address.path)
    if lo is None:
        if address.path:
            parent_lo, _ = component_interval(params, ComponentAddress(address.path[:-1]))
            depth = address.depth
            if address.path[-1]:
                lo = parent_lo + params.component_length(depth) + params.gap_length(depth)
            else:
                lo = parent_lo
        else:
            lo = params.from_fraction(0)
        if address.depth <= 24:
            params._comp_cache[address.path] = lo
    return lo, lo + params.component_length(address.depth)


def gap_interval(params: Params, address: GapAddress) -> FatGap:
    """The level-n gap cut from the component addressed by its path bits."""
    comp_lo, _ = component_interval(params, ComponentAddress(address.path_bits))
    gap_lo = comp_lo + params.component_length(address.level)
    ell = params.gap_length(address.level)
    return FatGap(address, gap_lo, gap_lo + ell, ell)


# ---------------------------------------------------------------------------
# Certified descent
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Boundary:
    kind: str  # "zero" | "m" | "gap_lo" | "gap_hi"
    path: tuple[int, ...]
    level: int
    f_value: Fraction


@dataclass(frozen=True)
class _HitGap:
    path: tuple[int, ...]
    gap_lo: Scalar
    length: Scalar
    offset: Scalar
    f_gap_lo: Fraction

    @property
    def level(self) -> int:
        return len(self.path) + 1


@dataclass(frozen=True)
class _Survivor:
    path: tuple[int, ...]
    lo: Scalar
    f_lo: Fraction


def _descend(params: Params, x: Scalar, max_depth: int):
    """Walk x down the component tree for up to ``max_depth`` levels.

    Returns _Boundary (x is an exact endpoint, f known exactly), _HitGap
    (x strictly inside a gap), or _Survivor (x still inside a depth-D
    component).  Float-mode comparisons that cannot be decided raise
    BoundaryAmbiguityError; domain violations must be certain to raise
    RangeError.
    """
    if max_depth < 1:
        raise ValueError("max_depth must be >= 1")
    zero = params.from_fraction(0)
    c_zero = compare(x, zero)
    if c_zero == -1:
        raise RangeError("point certifiably below 0")
    if compare(x, params.M) == 1:
        raise RangeError("point certifiably above M")
    if c_zero == 0:
        return _Boundary("zero", (), 0, Fraction(0))
    if compare(x, params.M) == 0:
        return _Boundary("m", (), 0, params.f_total)

    lo = zero
    acc = Fraction(0)
    path: list[int] = []
    for depth in range(max_depth):
        level = depth + 1
        ell = params.gap_length(level)
        gap_lo = lo + params.component_length(level)
        c1 = compare(x, gap_lo)
        if c1 == -1:
            path.append(0)
            continue
        if c1 == 0:
            return _Boundary("gap_lo", tuple(path), level, acc + params.f_unit(level))
        if c1 is None:
            raise BoundaryAmbiguityError(
                level,
                f"cannot separate the point from a level-{level} gap "
                f"endpoint at precision {params.precision}",
            )
        gap_hi = gap_lo + ell
        c2 = compare(x, gap_hi)
        if c2 == 0:
            return _Boundary(
                "gap_hi", tuple(path), level, acc + 2 * params.f_unit(level)
            )
        if c2 == -1:
            return _HitGap(
                tuple(path), gap_lo, ell, x - gap_lo, acc + params.f_unit(level)
            )
        if c2 is None:
            raise BoundaryAmbiguityError(
                level,
                f"cannot separate the point from a level-{level} gap "
                f"endpoint at precision {params.precision}",
            )
        path.append(1)
        lo = gap_hi
        acc += 2 * params.f_unit(level)
    return _Survivor(tuple(path), lo, acc)


@dataclass(frozen=True)
class InFatGap:
    """x sits strictly inside ``gap``, ``position`` above its lower end."""

    gap: FatGap
    position: Scalar


@dataclass(frozen=True)
class UndecidedAtDepth:
    """x certifiably lies in the surviving depth-D component ``component``."""

    component: ComponentAddress
    interval: tuple[Scalar, Scalar]


LocateResult = Union[InFatGap, UndecidedAtDepth]


def _boundary_component(params: Params, res: _Boundary, depth: int) -> ComponentAddress:
    """Depth-``depth`` component containing an exact-endpoint hit."""
    if res.kind == "zero":
        bits: tuple[int, ...] = (0,) * depth
    elif res.kind == "m":
        bits = (1,) * depth
    elif res.kind == "gap_lo":
        # the gap's lower endpoint is the rightmost point of the left child
        bits = res.path + (0,) + (1,) * (depth - res.level)
    else:
        bits = res.path + (1,) + (0,) * (depth - res.level)
    return ComponentAddress(bits)


def locate(params: Params, x, max_depth: int = 30) -> LocateResult:
    """Certified location of x: inside a gap, or in a surviving component."""
    x = params.coerce_point(x)
    res = _descend(params, x, max_depth)
    if isinstance(res, _HitGap):
        addr = GapAddress.from_path(res.path)
        return InFatGap(
            FatGap(addr, res.gap_lo, res.gap_lo + res.length, res.length),
            res.offset,
        )
    if isinstance(res, _Boundary):
        comp = _boundary_component(params, res, max_depth)
        return UndecidedAtDepth(comp, component_interval(params, comp))
    comp = ComponentAddress(res.path)
    return UndecidedAtDepth(comp, (res.lo, res.lo + params.component_length(max_depth)))


# ---------------------------------------------------------------------------
# g, f, F
# ---------------------------------------------------------------------------


def g_sup_bound(params: Params, depth: int) -> Enclosure:
    """Enclosure of g's range over any surviving depth-D component.

    g vanishes on A and every tent inside the component sits at level
    >= depth+1, so 0 <= g <= (c/2) * ell_{depth+1}**alpha there.
    """
    peak = params.gap_pow(depth + 1, params.alpha) * (params.tent_coefficient / 2)
    return Enclosure(params.from_fraction(0), peak)


def g_eval(params: Params, x, max_depth: int = 30) -> Enclosure:
    """Certified enclosure of g(x); exact in exact mode off the survivors."""
    x = params.coerce_point(x)
    res = _descend(params, x, max_depth)
    if isinstance(res, _Boundary):
        return Enclosure.point(params.from_fraction(0))
    if isinstance(res, _HitGap):
        level = res.level
        far = res.length - res.offset
        if params.is_exact:
            near = res.offset if compare(res.offset, far) <= 0 else far
        else:
            near = res.offset.min_hull(far)
        slope = params.gap_pow(level, params.alpha - 1) * params.tent_coefficient
        return Enclosure.point(near * slope)
    return g_sup_bound(params, len(res.path))


def _tent_partial(params: Params, res: _HitGap) -> Scalar:
    """Integral of the tent over [gap lo, x] for x inside the gap."""
    level = res.level
    o = res.offset
    full = params.f_unit(level)
    half_slope = params.gap_pow(level, params.alpha - 1) * (
        params.tent_coefficient / 2
    )
    rising = half_slope * o * o
    mirrored = res.length - o
    falling = params.from_fraction(full) - half_slope * mirrored * mirrored
    half = res.length * Fraction(1, 2)
    c = compare(o, half)
    if c is not None:
        return rising if c <= 0 else falling
    # undecidable which side of the peak: both formulas agree at the peak,
    # so their hull still encloses the true integral
    return rising.hull(falling)


def f_eval(params: Params, x, max_depth: int = 30) -> Enclosure:
    """Certified enclosure of f(x) = integral of g over [0, x]."""
    x = params.coerce_point(x)
    res = _descend(params, x, max_depth)
    if isinstance(res, _Boundary):
        return Enclosure.point(params.from_fraction(res.f_value))
    if isinstance(res, _HitGap):
        value = params.from_fraction(res.f_gap_lo) + _tent_partial(params, res)
        return Enclosure.point(value)
    lo = params.from_fraction(res.f_lo)
    hi = params.from_fraction(res.f_lo + params.f_unit(len(res.path)))
    return Enclosure(lo, hi)


def F_eval(params: Params, x, y, max_depth: int = 30) -> Enclosure:
    """Certified enclosure of F(x, y) = f(x) + f(y)."""
    return f_eval(params, x, max_depth).add(f_eval(params, y, max_depth))


def grad_F(params: Params, x, y, max_depth: int = 30) -> tuple[Enclosure, Enclosure]:
    """Certified enclosures of (g(x), g(y)), the gradient of F."""
    return g_eval(params, x, max_depth), g_eval(params, y, max_depth)


# ---------------------------------------------------------------------------
# From Cantor digits to points of A
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DigitDescent:
    """Certified image in A of a digit-1-free ternary string.

    ``point`` encloses the unique a in A with f(a) = (c/4) * value(digits);
    ``exact`` marks eventually-constant digit strings, whose point is an
    exact component endpoint.  f_lo/f_hi bracket f(a) exactly as rationals.
    """

    address: ComponentAddress
    point: Enclosure
    f_lo: Fraction
    f_hi: Fraction
    exact: bool


def descend_by_digits(
    params: Params, digits: TernaryExpansion, depth: int = 30
) -> DigitDescent:
    """Map Cantor digits to the point of A they address.

    Digit 0 descends left, digit 2 right; after D steps the point is pinned
    inside a depth-D component.  Eventually-constant strings (terminating,
    or ending in all 2s) resolve to an exact endpoint instead.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if digits.has_digit(1):
        raise NotInCantorError(f"{digits} has digit 1, so it addresses no point of A")
    scale = params.tent_coefficient / 4

    if digits.is_terminating or digits.period == (2,):
        steps = digits.preperiod
        lo = params.from_fraction(0)
        acc = Fraction(0)
        for level, d in enumerate(steps, start=1):
            if d:
                lo = lo + params.component_length(level) + params.gap_length(level)
                acc += 2 * params.f_unit(level)
        address = ComponentAddress(tuple(d // 2 for d in steps))
        if digits.is_terminating:
            point, f_value = lo, acc
        else:
            point = lo + params.component_length(len(steps))
            f_value = acc + params.f_unit(len(steps))
        assert f_value == scale * digits.value()
        return DigitDescent(address, Enclosure.point(point), f_value, f_value, True)

    walk = digits.digits(depth)
    lo = params.from_fraction(0)
    acc = Fraction(0)
    for level, d in enumerate(walk, start=1):
        if d:
            lo = lo + params.component_length(level) + params.gap_length(level)
            acc += 2 * params.f_unit(level)
    address = ComponentAddress(tuple(d // 2 for d in walk))
    hi = lo + params.component_length(depth)
    return DigitDescent(
        address, Enclosure(lo, hi), acc, acc + params.f_unit(depth), False
    )


def point_from_cantor_digits(
    params: Params, digits: TernaryExpansion, depth: int = 30
) -> Enclosure:
    """Enclosure of the unique a in A with f(a) = (c/4) * value(digits)."""
    return descend_by_digits(params, digits, depth).point


@dataclass(frozen=True)
class CriticalPoint:
    """A constructive critical point of F over the value ``value``.

    Both coordinates lie in A (where g vanishes), so grad F = (0, 0) there
    and F(x, y) = value exactly; the digit strings are the witnesses.
    """

    x: Enclosure
    y: Enclosure
    value: Fraction
    x_digits: TernaryExpansion
    y_digits: TernaryExpansion
    x_descent: DigitDescent
    y_descent: DigitDescent


def critical_preimage(params: Params, u, depth: int = 30) -> CriticalPoint:
    """Constructive (x, y) with F(x, y) = u and grad F(x, y) = (0, 0).

    Valid for every u in [0, 2]: u/2's ternary digits split into two
    digit-1-free strings, each addressing a point of A.
    """
    from .ternary import steinhaus_decompose

    u = Fraction(u)
    if not 0 <= u <= 2:
        raise RangeError("critical values fill exactly [0, 2]")
    x_digits, y_digits = steinhaus_decompose(u)
    dx = descend_by_digits(params, x_digits, depth)
    dy = descend_by_digits(params, y_digits, depth)
    # the two f-brackets must pin u between them
    assert dx.f_lo + dy.f_lo <= params.tent_coefficient / 4 * u <= dx.f_hi + dy.f_hi
    return CriticalPoint(dx.point, dy.point, u, x_digits, y_digits, dx, dy)
