import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stairspec.extnum import (
    EXT_INF,
    BandDomainError,
    ExtReal,
    Membership,
    band_member,
    envelope_pair_member,
    pow_ext,
    reciprocal,
)

ZERO = ExtReal(0)


class TestExtReal:
    def test_reciprocal_conventions(self):
        assert reciprocal(ZERO) == EXT_INF
        assert reciprocal(EXT_INF) == ZERO
        assert reciprocal(ExtReal(Fraction(2, 3))) == ExtReal(Fraction(3, 2))

    def test_total_order(self):
        values = [ZERO, ExtReal(Fraction(1, 3)), ExtReal(1), ExtReal(Fraction(7, 2)), EXT_INF]
        assert values == sorted(values)
        assert all(v < EXT_INF for v in values[:-1])
        assert not EXT_INF < EXT_INF

    def test_parse_and_str(self):
        assert str(ExtReal(Fraction(1, 2))) == "1/2"
        assert str(ExtReal(3)) == "3/1"
        assert str(EXT_INF) == "inf"
        assert ExtReal.parse("inf") == EXT_INF
        assert ExtReal.parse("5/10") == ExtReal(Fraction(1, 2))
        assert ExtReal.parse("2") == ExtReal(2)
        with pytest.raises(BandDomainError):
            ExtReal.parse("-1/2")
        with pytest.raises(BandDomainError):
            ExtReal.parse("bogus")

    def test_rejects_negative(self):
        with pytest.raises(BandDomainError):
            ExtReal(Fraction(-1, 2))

    def test_float_and_pow(self):
        assert float(EXT_INF) == math.inf
        assert float(ExtReal(Fraction(1, 2))) == 0.5
        assert pow_ext(0.5, EXT_INF) == 0.0
        assert pow_ext(1.0, EXT_INF) == 1.0
        assert pow_ext(0.25, ExtReal(Fraction(1, 2))) == 0.5

    @given(
        st.fractions(min_value=0, max_value=1000) | st.none(),
    )
    @settings(max_examples=100, deadline=None)
    def test_reciprocal_involution(self, frac):
        x = ExtReal(frac)
        assert reciprocal(reciprocal(x)) == x


FR = Fraction


class TestBandMember:
    def test_spec_examples(self):
        assert band_member(0.3, 1.0, ZERO, ZERO).state is Membership.INSIDE
        assert band_member(0.5, 0.5, EXT_INF, EXT_INF).state is Membership.OUTSIDE
        half = ExtReal(FR(1, 2))
        assert band_member(0.25, 0.5, half, half).state is Membership.BOUNDARY
        assert band_member(0.9, 0.1, ZERO, EXT_INF).state is Membership.INSIDE

    def test_degenerate_cells(self):
        # {a = 0} union {b = 1}
        assert band_member(0.0, 0.4, ZERO, ZERO).state is Membership.INSIDE
        assert band_member(0.4, 0.3, ZERO, ZERO).state is Membership.OUTSIDE
        # {a = 1} union {b = 0}
        assert band_member(1.0, 0.4, EXT_INF, EXT_INF).state is Membership.INSIDE
        assert band_member(0.4, 0.0, EXT_INF, EXT_INF).state is Membership.INSIDE

    def test_corner_conventions(self):
        p, q = ExtReal(FR(1, 2)), ExtReal(1)
        assert band_member(0.0, 0.0, p, q).state is Membership.INSIDE
        assert band_member(1.0, 1.0, p, q).state is Membership.BOUNDARY
        assert band_member(0.0, 1.0, p, q).state is Membership.OUTSIDE
        assert band_member(1.0, 0.0, p, q).state is Membership.OUTSIDE
        # (0,1) needs p = 0, (1,0) needs q = inf
        assert band_member(0.0, 1.0, ZERO, q).state is Membership.INSIDE
        assert band_member(1.0, 0.0, p, EXT_INF).state is Membership.INSIDE

    def test_degenerate_band_has_no_interior(self):
        one = ExtReal(1)
        assert band_member(0.0, 0.0, one, one).state is Membership.BOUNDARY
        assert band_member(0.5, 0.5, one, one).state is Membership.BOUNDARY
        assert band_member(0.3, 0.8, one, one).state is Membership.OUTSIDE

    def test_rejects_bad_arguments(self):
        with pytest.raises(BandDomainError):
            band_member(1.2, 0.5, ZERO, EXT_INF)
        with pytest.raises(BandDomainError):
            band_member(0.5, -0.1, ZERO, EXT_INF)
        with pytest.raises(BandDomainError):
            band_member(0.5, 0.5, ExtReal(2), ExtReal(1))
        with pytest.raises(BandDomainError):
            band_member(0.5, 0.5, ZERO, EXT_INF, tol=0.0)

    def test_full_square_case_on_random_points(self):
        rng = np.random.default_rng(7)
        pts = rng.random((10_000, 2))
        for a, b in pts:
            assert band_member(float(a), float(b), ZERO, EXT_INF).state is Membership.INSIDE

    def test_agrees_with_direct_evaluation(self):
        # On the open square the band test must reproduce a**q <= b <= a**p
        # evaluated directly, away from the tolerance collar.
        rng = np.random.default_rng(11)
        bands = [
            (FR(1, 2), FR(1, 2)),
            (FR(1, 2), FR(1)),
            (FR(1, 3), FR(5, 2)),
            (FR(2), FR(3)),
        ]
        pts = rng.random((10_000, 2))
        for p_f, q_f in bands:
            p, q = ExtReal(p_f), ExtReal(q_f)
            for a, b in pts:
                a, b = float(a), float(b)
                if a in (0.0, 1.0) or b in (0.0, 1.0):
                    continue
                direct = a ** float(q_f) <= b <= a ** float(p_f)
                got = band_member(a, b, p, q).state
                if got is Membership.BOUNDARY:
                    # only tolerated within rounding distance of the envelopes
                    assert (
                        abs(math.log(b) - float(q_f) * math.log(a)) < 1e-9
                        or abs(math.log(b) - float(p_f) * math.log(a)) < 1e-9
                    )
                else:
                    assert (got is Membership.INSIDE) == direct

    @given(
        st.floats(min_value=0.0, max_value=1.0, allow_nan=False),
        st.floats(min_value=0.0, max_value=1.0, allow_nan=False),
        st.fractions(min_value=0, max_value=4),
        st.fractions(min_value=0, max_value=4),
        st.fractions(min_value=0, max_value=4),
        st.fractions(min_value=0, max_value=4),
    )
    @settings(max_examples=300, deadline=None)
    def test_widening_is_monotone(self, a, b, p1, p2, q1, q2):
        p_narrow, p_wide = max(p1, p2), min(p1, p2)
        q_narrow, q_wide = min(q1, q2), max(q1, q2)
        if p_narrow > q_narrow:
            return
        narrow = band_member(a, b, ExtReal(p_narrow), ExtReal(q_narrow)).state
        wide = band_member(a, b, ExtReal(p_wide), ExtReal(q_wide)).state
        if narrow is Membership.INSIDE:
            assert wide is not Membership.OUTSIDE

    def test_widening_to_infinity_is_monotone(self):
        one = ExtReal(1)
        for a, b in [(0.3, 0.3), (0.5, 0.25), (0.0, 0.0), (1.0, 1.0), (0.7, 0.0)]:
            narrow = band_member(a, b, one, one).state
            for p, q in [(ZERO, one), (one, EXT_INF), (ZERO, EXT_INF)]:
                wide = band_member(a, b, p, q).state
                if narrow is Membership.INSIDE:
                    assert wide is not Membership.OUTSIDE


class TestEnvelopePair:
    def test_crossed_pair_is_empty_inside(self):
        # lower envelope above the upper one: no interior points qualify
        lower, upper = ExtReal(FR(1, 2)), ExtReal(2)
        for a in (0.2, 0.5, 0.9):
            for b in (0.1, 0.5, 0.9):
                state = envelope_pair_member(a, b, lower, upper).state
                assert state is not Membership.INSIDE

    def test_open_band_strict_interior(self):
        lower, upper = ExtReal(1), ExtReal(FR(1, 2))
        assert envelope_pair_member(0.5, 0.6, lower, upper).state is Membership.INSIDE
        assert envelope_pair_member(0.5, 0.5, lower, upper).state is Membership.BOUNDARY
        assert envelope_pair_member(0.5, 0.3, lower, upper).state is Membership.OUTSIDE
