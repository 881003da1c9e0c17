"""Ternary digit machinery, middle-thirds gaps, two-point digit splitting.

The partial gap-sum oracle below enumerates gap intervals directly, so the
closed-form implementation is checked against independent bookkeeping.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cantorval.ternary import (
    GapAddress,
    InC,
    InGap,
    NotInCantorError,
    TernaryExpansion,
    cantor_gap_interval,
    cantor_locate,
    cantor_partial_gap_sum,
    gap_addresses_up_to,
    steinhaus_decompose,
    ternary_expand,
)

unit_fractions = st.fractions(
    min_value=Fraction(0), max_value=Fraction(1), max_denominator=3**7
)


class TestExpansion:
    @pytest.mark.parametrize("value,pre,per", [
        (Fraction(0), (), ()),
        (Fraction(1, 3), (1,), ()),
        (Fraction(2, 3), (2,), ()),
        (Fraction(1, 2), (), (1,)),
        (Fraction(1, 4), (), (0, 2)),
        (Fraction(3, 4), (), (2, 0)),
        (Fraction(1), (), (2,)),
        (Fraction(2, 9), (0, 2), ()),
        (Fraction(1, 13), (), (0, 0, 2)),
    ])
    def test_known_expansions(self, value, pre, per):
        e = ternary_expand(value)
        assert (e.preperiod, e.period) == (pre, per)
        assert e.value() == value

    @given(x=unit_fractions)
    @settings(max_examples=120, deadline=None)
    def test_round_trip(self, x: Fraction):
        assert ternary_expand(x).value() == x

    @given(x=st.fractions(min_value=Fraction(0), max_value=Fraction(1),
                          max_denominator=997))
    @settings(max_examples=60, deadline=None)
    def test_round_trip_coprime_denominators(self, x: Fraction):
        e = ternary_expand(x)
        assert e.value() == x
        # terminating exactly when the reduced denominator is a power of 3,
        # except 1 itself which only has the repeating-2 form
        den = x.denominator
        while den % 3 == 0:
            den //= 3
        assert (den == 1 and x != 1) == e.is_terminating

    def test_period_is_primitive(self):
        e = TernaryExpansion((), (0, 2, 0, 2))
        assert e.period == (0, 2)
        assert TernaryExpansion((), (1, 1, 1)).period == (1,)

    def test_tail_folds_into_period(self):
        # 0.2(02)_3 rotates to 0.(20)_3
        e = TernaryExpansion((2,), (0, 2))
        assert (e.preperiod, e.period) == ((), (2, 0))
        assert e.value() == Fraction(3, 4)

    def test_trailing_zeros_stripped(self):
        e = TernaryExpansion((1, 0, 0), ())
        assert e.preperiod == (1,)
        assert e.value() == Fraction(1, 3)

    def test_zero_period_collapses(self):
        assert TernaryExpansion((2,), (0,)) == TernaryExpansion((2,), ())

    def test_digits_prefix_and_str(self):
        e = ternary_expand(Fraction(1, 4))
        assert e.digits(5) == (0, 2, 0, 2, 0)
        assert str(e) == "0.(02)_3"
        assert str(ternary_expand(Fraction(1, 3))) == "0.1_3"

    def test_invalid_digits_rejected(self):
        with pytest.raises(ValueError):
            TernaryExpansion((3,), ())
        with pytest.raises(ValueError):
            TernaryExpansion((), (-1,))

    def test_has_digit(self):
        assert ternary_expand(Fraction(1, 2)).has_digit(1)
        assert not ternary_expand(Fraction(1, 4)).has_digit(1)


class TestGapGeometry:
    @pytest.mark.parametrize("level,index,lo,hi", [
        (1, 1, Fraction(1, 3), Fraction(2, 3)),
        (2, 1, Fraction(1, 9), Fraction(2, 9)),
        (2, 2, Fraction(7, 9), Fraction(8, 9)),
        (3, 1, Fraction(1, 27), Fraction(2, 27)),
        (3, 4, Fraction(25, 27), Fraction(26, 27)),
    ])
    def test_middle_third_intervals(self, level, index, lo, hi):
        assert cantor_gap_interval(GapAddress(level, index)) == (lo, hi)

    def test_address_count_per_level(self):
        addresses = list(gap_addresses_up_to(6))
        assert len(addresses) == 2**6 - 1
        for n in range(1, 7):
            assert sum(1 for a in addresses if a.level == n) == 2 ** (n - 1)

    def test_path_bits_round_trip(self):
        for a in gap_addresses_up_to(6):
            assert GapAddress.from_path(a.path_bits) == a

    def test_gaps_are_disjoint_and_ordered(self):
        spans = sorted(cantor_gap_interval(a) for a in gap_addresses_up_to(5))
        for (alo, ahi), (blo, bhi) in zip(spans, spans[1:]):
            assert ahi < blo

    def test_invalid_addresses_rejected(self):
        with pytest.raises(ValueError):
            GapAddress(0, 1)
        with pytest.raises(ValueError):
            GapAddress(2, 3)


def brute_gap_sum(x: Fraction, max_level: int) -> Fraction:
    total = Fraction(0)
    for a in gap_addresses_up_to(max_level):
        lo, hi = cantor_gap_interval(a)
        if hi <= x:
            total += hi - lo
    return total


class TestPartialGapSum:
    def test_frozen_oracle(self):
        # enumeration: levels 1..3 below 2/3 are (1/3,2/3), (1/9,2/9),
        # (1/27,2/27), (7/27,8/27); lengths sum to 14/27
        x = ternary_expand(Fraction(2, 3))
        assert cantor_partial_gap_sum(x, 3) == Fraction(14, 27)

    def test_full_mass_identity(self):
        one = ternary_expand(Fraction(1))
        for d in range(1, 10):
            assert cantor_partial_gap_sum(one, d) == 1 - Fraction(2, 3) ** d

    def test_rejects_gap_points(self):
        with pytest.raises(NotInCantorError):
            cantor_partial_gap_sum(ternary_expand(Fraction(1, 2)), 3)

    @given(bits=st.lists(st.integers(0, 1), min_size=0, max_size=10),
           d=st.integers(1, 6))
    @settings(max_examples=100, deadline=None)
    def test_matches_enumeration(self, bits: list, d: int):
        e = TernaryExpansion(tuple(2 * b for b in bits), ())
        assert cantor_partial_gap_sum(e, d) == brute_gap_sum(e.value(), d)


class TestLocate:
    def test_members(self):
        for x in (Fraction(0), Fraction(1), Fraction(1, 4), Fraction(3, 4),
                  Fraction(1, 3), Fraction(2, 3), Fraction(1, 9)):
            res = cantor_locate(x)
            assert isinstance(res, InC)
            assert not res.expansion.has_digit(1)
            assert res.expansion.value() == x

    def test_gap_points(self):
        res = cantor_locate(Fraction(2, 5))
        assert isinstance(res, InGap)
        assert res.address == GapAddress(1, 1)
        assert res.offset == Fraction(2, 5) - Fraction(1, 3)
        res = cantor_locate(Fraction(1, 8))
        assert isinstance(res, InGap)
        assert res.address == GapAddress(2, 1)

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            cantor_locate(Fraction(-1, 10))
        with pytest.raises(ValueError):
            cantor_locate(Fraction(11, 10))

    @given(x=unit_fractions)
    @settings(max_examples=80, deadline=None)
    def test_partition(self, x: Fraction):
        res = cantor_locate(x)
        if isinstance(res, InGap):
            lo, hi = cantor_gap_interval(res.address)
            assert lo < x < hi
        else:
            assert not res.expansion.has_digit(1)


class TestSteinhaus:
    @pytest.mark.parametrize("u,vx,vy", [
        (Fraction(0), Fraction(0), Fraction(0)),
        (Fraction(2), Fraction(1), Fraction(1)),
        (Fraction(1), Fraction(1), Fraction(0)),
        (Fraction(1, 2), Fraction(1, 4), Fraction(1, 4)),
        (Fraction(2, 27), Fraction(2, 27), Fraction(0)),
    ])
    def test_known_splits(self, u, vx, vy):
        x, y = steinhaus_decompose(u)
        assert x.value() == vx
        assert y.value() == vy

    @given(u=st.fractions(min_value=Fraction(0), max_value=Fraction(2),
                          max_denominator=3**6))
    @settings(max_examples=120, deadline=None)
    def test_split_property(self, u: Fraction):
        x, y = steinhaus_decompose(u)
        assert x.value() + y.value() == u
        assert not x.has_digit(1)
        assert not y.has_digit(1)
        # digitwise: each pair of digits sums to twice the halved digit
        h = ternary_expand(u / 2)
        for dh, dx, dy in zip(h.digits(24), x.digits(24), y.digits(24)):
            assert dx + dy == 2 * dh

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            steinhaus_decompose(Fraction(-1, 2))
        with pytest.raises(ValueError):
            steinhaus_decompose(Fraction(5, 2))

    def test_long_period_denominator(self):
        u = Fraction(3, 65537)
        x, y = steinhaus_decompose(u)
        assert x.value() + y.value() == u


class TestNotInCantorError:
    def test_raised_where_promised(self):
        with pytest.raises(NotInCantorError):
            raise NotInCantorError("probe")
