"""The middle-thirds Cantor set C on [0, 1] through exact rational digits.

Provides eventually-periodic base-3 expansions, addressing for the removed
open middle thirds, partial sums of gap lengths below a point of C, and the
constructive two-point decomposition C + C = [0, 2]: every u in [0, 2] is
split into x, y in C whose base-3 digits avoid the digit 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Union

__all__ = [
    "TernaryExpansion",
    "GapAddress",
    "InC",
    "InGap",
    "CantorLocate",
    "NotInCantorError",
    "AddressError",
    "ternary_expand",
    "steinhaus_decompose",
    "cantor_gap_interval",
    "cantor_partial_gap_sum",
    "cantor_locate",
    "gap_addresses_up_to",
]


class NotInCantorError(ValueError):
    """A digit string or point was required to lie in C but does not."""


class AddressError(ValueError):
    """Malformed gap address."""


@dataclass(frozen=True)
class TernaryExpansion:
    """Eventually periodic base-3 expansion 0.(preperiod)(period repeating).

    Normalized on construction: the period is primitive, an all-zero period
    folds to the empty (terminating) period, trailing zeros of a terminating
    preperiod are stripped, and the preperiod is minimal (its tail is rotated
    into the period when possible).  Normalization never changes any digit's
    value, so digit-restricted witness strings stay witness strings.
    """

    preperiod: tuple[int, ...] = ()
    period: tuple[int, ...] = ()

    def __post_init__(self):
        pre, per = tuple(self.preperiod), tuple(self.period)
        for d in pre + per:
            if d not in (0, 1, 2):
                raise ValueError(f"base-3 digit out of range: {d}")
        # primitive period
        n = len(per)
        for length in range(1, n):
            if n % length == 0 and per == per[:length] * (n // length):
                per = per[:length]
                break
        if per == (0,):
            per = ()
        # rotate shared tail digits out of the preperiod
        while per and pre and pre[-1] == per[-1]:
            pre = pre[:-1]
            per = (per[-1],) + per[:-1]
        if not per:
            while pre and pre[-1] == 0:
                pre = pre[:-1]
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)

    @property
    def is_terminating(self) -> bool:
        return not self.period

    def has_digit(self, digit: int) -> bool:
        return digit in self.preperiod or digit in self.period

    def value(self) -> Fraction:
        pre, per = self.preperiod, self.period
        k, m = len(pre), len(per)
        head = 0
        for d in pre:
            head = head * 3 + d
        total = Fraction(head, 3**k)
        if per:
            rep = 0
            for d in per:
                rep = rep * 3 + d
            total += Fraction(rep, (3**m - 1) * 3**k)
        return total

    def digits(self, count: int) -> tuple[int, ...]:
        """First ``count`` digits after the point."""
        pre, per = self.preperiod, self.period
        if count <= len(pre):
            return pre[:count]
        if not per:
            return pre + (0,) * (count - len(pre))
        need = count - len(pre)
        reps = -(-need // len(per))
        return pre + (per * reps)[:need]

    def digit_iter(self) -> Iterator[int]:
        yield from self.preperiod
        if self.period:
            while True:
                yield from self.period
        else:
            while True:
                yield 0

    def __str__(self) -> str:
        pre = "".join(map(str, self.preperiod))
        if self.period:
            per = "".join(map(str, self.period))
            return f"0.{pre}({per})_3"
        if not pre:
            return "0._3"
        return f"0.{pre}_3"


def ternary_expand(value: Union[Fraction, int]) -> TernaryExpansion:
    """Canonical base-3 expansion of a rational in [0, 1].

    Long division with state memoization; the first repeated remainder marks
    the period, so the result is minimal.  Terminating values terminate (no
    trailing-2 form), and 1 itself is the all-2 string.
    """
    value = Fraction(value)
    if not 0 <= value <= 1:
        raise ValueError("expansion domain is [0, 1]")
    if value == 1:
        return TernaryExpansion((), (2,))
    digits: list[int] = []
    seen: dict[int, int] = {}
    num, den = value.numerator, value.denominator
    state = num  # running remainder; the value left to expand is state/den
    while True:
        if state == 0:
            return TernaryExpansion(tuple(digits), ())
        if state in seen:
            start = seen[state]
            return TernaryExpansion(tuple(digits[:start]), tuple(digits[start:]))
        seen[state] = len(digits)
        d, state = divmod(3 * state, den)
        digits.append(d)


_SPLIT = {0: (0, 0), 1: (2, 0), 2: (2, 2)}


def steinhaus_decompose(
    u: Union[Fraction, int],
) -> tuple[TernaryExpansion, TernaryExpansion]:
    """Split u in [0, 2] as x + y with x, y in C, constructively.

    Writes u/2 in base 3 and maps each digit e to a digit pair (via
    0 -> (0,0), 1 -> (2,0), 2 -> (2,2)) whose sum is 2e; both output strings
    then avoid the digit 1, and their values add back to u exactly.
    """
    u = Fraction(u)
    if not 0 <= u <= 2:
        raise ValueError("decomposition domain is [0, 2]")
    eps = ternary_expand(u / 2)
    x = TernaryExpansion(
        tuple(_SPLIT[d][0] for d in eps.preperiod),
        tuple(_SPLIT[d][0] for d in eps.period),
    )
    y = TernaryExpansion(
        tuple(_SPLIT[d][1] for d in eps.preperiod),
        tuple(_SPLIT[d][1] for d in eps.period),
    )
    assert x.value() + y.value() == u
    return x, y


@dataclass(frozen=True, order=True)
class GapAddress:
    """The k-th (1-based, left to right) removed middle third at level n."""

    level: int
    index: int

    def __post_init__(self):
        if self.level < 1:
            raise AddressError(f"gap level must be >= 1, got {self.level}")
        if not 1 <= self.index <= 2 ** (self.level - 1):
            raise AddressError(
                f"gap index {self.index} out of range at level {self.level}"
            )

    @property
    def path_bits(self) -> tuple[int, ...]:
        """Left/right choices (0/1) of the component this gap is cut from."""
        bits = []
        k = self.index - 1
        for shift in range(self.level - 2, -1, -1):
            bits.append((k >> shift) & 1)
        return tuple(bits)

    @classmethod
    def from_path(cls, bits: tuple[int, ...]) -> "GapAddress":
        index = 0
        for b in bits:
            index = index * 2 + b
        return cls(len(bits) + 1, index + 1)


def cantor_gap_interval(address: GapAddress) -> tuple[Fraction, Fraction]:
    """Exact endpoints of the open gap at ``address`` inside [0, 1]."""
    lo = Fraction(0)
    for depth, bit in enumerate(address.path_bits, start=1):
        if bit:
            lo += Fraction(2, 3**depth)
    unit = Fraction(1, 3**address.level)
    return lo + unit, lo + 2 * unit


def gap_addresses_up_to(max_level: int) -> Iterator[GapAddress]:
    for level in range(1, max_level + 1):
        for index in range(1, 2 ** (level - 1) + 1):
            yield GapAddress(level, index)


def cantor_partial_gap_sum(x: TernaryExpansion, depth: int) -> Fraction:
    """Total length of level <= depth gaps lying entirely below x in C.

    For x with digits d_i in {0, 2} and bits b_i = d_i / 2, the number of
    level-n gaps below x is (b_1 .. b_{n-1} read as binary) + b_n, each of
    length 3^-n.  The tail above ``depth`` is bounded by (2/3)^depth.
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    if x.has_digit(1):
        raise NotInCantorError(f"{x} has digit 1")
    total = Fraction(0)
    prefix = 0
    for n, d in enumerate(x.digits(depth), start=1):
        b = d // 2
        total += Fraction(prefix + b, 3**n)
        prefix = prefix * 2 + b
    return total


@dataclass(frozen=True)
class InC:
    expansion: TernaryExpansion


@dataclass(frozen=True)
class InGap:
    address: GapAddress
    offset: Fraction  # distance above the gap's lower endpoint


CantorLocate = Union[InC, InGap]


def _witness(expansion: TernaryExpansion) -> Optional[TernaryExpansion]:
    """A digit-1-free expansion of the same value, if one exists."""
    if not expansion.has_digit(1):
        return expansion
    pre = expansion.preperiod
    if (
        expansion.is_terminating
        and pre
        and pre[-1] == 1
        and 1 not in pre[:-1]
    ):
        # 0.d...d1 = 0.d...d0(2): the only digit-1 escape hatch
        return TernaryExpansion(pre[:-1] + (0,), (2,))
    return None


def cantor_locate(value: Union[Fraction, int]) -> CantorLocate:
    """Membership certificate: witness digits in C, or the enclosing gap."""
    value = Fraction(value)
    if not 0 <= value <= 1:
        raise ValueError("C lives in [0, 1]")
    witness = _witness(ternary_expand(value))
    if witness is not None:
        return InC(witness)
    lo = Fraction(0)
    path: list[int] = []
    while True:
        unit = Fraction(1, 3 ** (len(path) + 1))
        gap_lo = lo + unit
        gap_hi = lo + 2 * unit
        if value < gap_lo:
            path.append(0)
        elif value > gap_hi:
            path.append(1)
            lo = gap_hi
        else:
            # gap endpoints have witnesses, so this hit is strictly inside
            return InGap(GapAddress.from_path(tuple(path)), value - gap_lo)
