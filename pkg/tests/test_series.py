"""Series-core: constructors, precision rules, field ops, rendering."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qtheta import series as se
from qtheta.errors import PrecisionError, SeriesZeroDivision


def S(text):
    return se.from_string(text)


# -- constructors ---------------------------------------------------------------


def test_monomial():
    m = se.monomial(Fraction(3, 2), -1, 10)
    assert m.min_exp == -1 and m.prec == 10
    assert m.coeff(-1) == Fraction(3, 2)
    assert m.coeff(5) == 0


def test_from_rational_zero_is_canonical_zero():
    z = se.from_rational(0, 5)
    assert z.is_zero and z.prec == 5
    assert z == se.zero(5)


def test_one():
    o = se.one(4)
    assert str(o) == "1 + O(q^4)"


def test_monomial_beyond_precision_rejected():
    with pytest.raises(PrecisionError):
        se.monomial(1, 10, 10)


# -- add ------------------------------------------------------------------------


def test_add_basic():
    assert str(se.add(S("1 + q + O(q^5)"), S("q^2 + O(q^5)"))) == "1 + q + q^2 + O(q^5)"


def test_add_negate_gives_zero():
    x = S("2 + 3*q - q^3 + O(q^7)")
    s = se.add(x, se.neg(x))
    assert s.is_zero and s.prec == 7


def test_add_drops_terms_beyond_joint_precision():
    s = se.add(S("1 + O(q^3)"), S("q^4 + O(q^10)"))
    assert str(s) == "1 + O(q^3)"


# -- mul ------------------------------------------------------------------------


def test_mul_basic():
    s = se.mul(S("1 + q + O(q^10)"), S("1 - q + O(q^10)"))
    assert str(s) == "1 - q^2 + O(q^10)"


def test_mul_inverse_monomials():
    s = se.mul(se.monomial(1, -1, 9), se.monomial(1, 1, 11))
    assert s.coeff(0) == 1 and s.order() == 0


def test_mul_zero_precision_rule():
    # zero(5) * (q^-2 + ..., prec 8) -> zero with prec 5 + (-2) = 3
    y = S("q^-2 + q + O(q^8)")
    s = se.mul(se.zero(5), y)
    assert s.is_zero and s.prec == 3


def test_mul_precision_rule_orders():
    x = S("q^2 + O(q^6)")
    y = S("q^-1 + 1 + O(q^4)")
    s = se.mul(x, y)
    assert s.prec == min(6 + -1, 4 + 2)


# -- invert / divide --------------------------------------------------------------


def test_invert_geometric():
    assert str(se.invert(S("1 - q + O(q^4)"))) == "1 + q + q^2 + q^3 + O(q^4)"


def test_invert_monomial_precision():
    s = se.invert(S("2*q^3 + O(q^10)"))
    assert str(s) == "1/2*q^-3 + O(q^4)"


def test_invert_derived_example():
    x = S("q + q^2 + O(q^6)")
    inv = se.invert(x)
    assert inv.prec == 6 - 2 * 1
    back = se.mul(x, inv)
    assert se.eq_to_prec(back, se.one(back.prec))[0]
    assert str(inv) == "q^-1 - 1 + q - q^2 + q^3 + O(q^4)"


def test_invert_zero_rejected():
    with pytest.raises(SeriesZeroDivision):
        se.invert(se.zero(5))
    with pytest.raises(SeriesZeroDivision):
        se.divide(se.one(5), se.zero(5))


def test_divide_matches_mul_invert():
    rng = random.Random(7)
    for _ in range(40):
        x = _rand_series(rng)
        y = _rand_series(rng)
        if y.is_zero:
            continue
        lhs = se.divide(x, y)
        rhs = se.mul(x, se.invert(y))
        assert se.eq_to_prec(lhs, rhs)[0]
        assert lhs.prec == min(x.prec - y.min_exp,
                               y.prec + x._ord() - 2 * y.min_exp)


# -- accessors ---------------------------------------------------------------------


def test_coeff_at():
    x = S("1 - q^2 + O(q^5)")
    assert x.coeff(2) == -1
    assert x.coeff(3) == 0
    with pytest.raises(PrecisionError):
        x.coeff(5)


def test_pow_int():
    assert str(se.pow_int(S("1 + q + O(q^10)"), 2)) == "1 + 2*q + q^2 + O(q^10)"
    x = S("1 - q + O(q^8)")
    assert se.eq_to_prec(se.pow_int(x, -2), se.invert(se.mul(x, x)))[0]


def test_shift():
    assert str(se.shift(se.one(4), -3)) == "q^-3 + O(q^1)"


def test_truncate():
    x = S("1 + q + q^2 + O(q^9)")
    t = se.truncate(x, 2)
    assert str(t) == "1 + q + O(q^2)"
    with pytest.raises(PrecisionError):
        se.truncate(x, 10)


def test_eq_to_prec_reports_joint_precision():
    ok, p = se.eq_to_prec(S("1 + O(q^3)"), S("1 + q^4 + O(q^8)"))
    assert ok and p == 3


# -- ring and precision laws over >= 1000 randomized cases -------------------------


def _rand_series(rng, max_span=5):
    prec = rng.randint(-2, 9)
    if rng.random() < 0.15:
        return se.zero(prec)
    lo = rng.randint(-4, 4)
    span = rng.randint(1, max_span)
    num = [rng.randint(-6, 6) for _ in range(span)]
    den = rng.randint(1, 6)
    return se._make(lo, num, den, max(prec, lo + span + rng.randint(0, 3)))


def test_ring_laws_randomized_1000():
    rng = random.Random(20240817)
    checked = 0
    for _ in range(1000):
        x, y, z = (_rand_series(rng) for _ in range(3))
        # commutativity is structural (canonical forms)
        assert se.add(x, y) == se.add(y, x)
        assert se.mul(x, y) == se.mul(y, x)
        # associativity and distributivity to joint precision
        a1 = se.add(se.add(x, y), z)
        a2 = se.add(x, se.add(y, z))
        assert a1 == a2
        m1 = se.mul(se.mul(x, y), z)
        m2 = se.mul(x, se.mul(y, z))
        assert se.eq_to_prec(m1, m2)[0]
        d1 = se.mul(x, se.add(y, z))
        d2 = se.add(se.mul(x, y), se.mul(x, z))
        assert se.eq_to_prec(d1, d2)[0]
        # stated precision rules
        assert se.add(x, y).prec == min(x.prec, y.prec)
        assert se.mul(x, y).prec == min(x.prec + y._ord(), y.prec + x._ord())
        checked += 1
    assert checked == 1000


def test_invert_two_sided_randomized():
    rng = random.Random(99)
    done = 0
    while done < 200:
        x = _rand_series(rng)
        if x.is_zero:
            continue
        inv = se.invert(x)
        prod = se.mul(x, inv)
        ok, p = se.eq_to_prec(prod, se.one(max(prod.prec, 1)))
        assert ok and p == prod.prec
        assert inv.prec == x.prec - 2 * x.min_exp
        done += 1


def test_precision_soundness_recompute_higher():
    # Wrap the same exact polynomial at two precisions; every operation must
    # agree on all coefficients below the lower-precision result's prec.
    rng = random.Random(5)
    for _ in range(300):
        lo1, num1 = rng.randint(-3, 3), [rng.randint(-5, 5) for _ in range(4)]
        lo2, num2 = rng.randint(-3, 3), [rng.randint(-5, 5) for _ in range(4)]
        p1 = rng.randint(5, 8)
        p2 = p1 + rng.randint(1, 5)
        xs = se._make(lo1, list(num1), 1, lo1 + 12)
        ys = se._make(lo2, list(num2), 1, lo2 + 12)
        for op in (se.add, se.mul):
            low = op(se.cap(xs, p1), se.cap(ys, p1))
            high = op(se.cap(xs, p2), se.cap(ys, p2))
            for e in range(min(low.min_exp, high.min_exp, 0) - 1, low.prec):
                assert low.coeff(e) == high.coeff(e)


def test_canonical_form_after_operations():
    rng = random.Random(11)
    for _ in range(300):
        x, y = _rand_series(rng), _rand_series(rng)
        for s in (se.add(x, y), se.mul(x, y), se.sub(x, y)):
            if s._num:
                assert s._num[0] != 0 and s._num[-1] != 0
                assert s.min_exp + len(s._num) <= s.prec
            assert s._den > 0


# -- hypothesis properties -----------------------------------------------------------

fractions_st = st.fractions(min_value=-9, max_value=9, max_denominator=9)


@st.composite
def series_st(draw):
    lo = draw(st.integers(-4, 4))
    coeffs = draw(st.lists(st.integers(-9, 9), min_size=0, max_size=6))
    den = draw(st.integers(1, 9))
    extra = draw(st.integers(0, 4))
    return se._make(lo, coeffs, den, lo + len(coeffs) + extra)


@given(series_st(), series_st())
@settings(max_examples=150, deadline=None)
def test_hyp_add_commutes(x, y):
    assert se.add(x, y) == se.add(y, x)


@given(series_st(), series_st())
@settings(max_examples=150, deadline=None)
def test_hyp_mul_commutes_and_tracks_precision(x, y):
    p = se.mul(x, y)
    assert p == se.mul(y, x)
    assert p.prec == min(x.prec + y._ord(), y.prec + x._ord())


@given(series_st())
@settings(max_examples=100, deadline=None)
def test_hyp_invert_round_trip(x):
    if x.is_zero:
        return
    prod = se.mul(x, se.invert(x))
    assert se.eq_to_prec(prod, se.one(max(prod.prec, prod._ord() + 1)))[0]


# -- rendering ------------------------------------------------------------------------


def test_render_round_trip():
    rng = random.Random(3)
    for _ in range(200):
        x = _rand_series(rng)
        assert se.from_string(str(x)) == x


def test_render_format():
    x = se._make(-1, [3, 0, -2], 2, 5)
    assert str(x) == "3/2*q^-1 - q + O(q^5)"
    assert str(se.zero(6)) == "O(q^6)"


def test_from_string_rejects_garbage():
    with pytest.raises(ValueError):
        se.from_string("1 + q")  # no precision marker
    with pytest.raises(ValueError):
        se.from_string("1 + banana + O(q^5)")
