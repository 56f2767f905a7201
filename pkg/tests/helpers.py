"""Shared brute-force oracles for the test suite.

Everything here recomputes values straight from defining formulas using
only series-core primitives (or plain integer lists), independently of
the kernel/sum implementations under test.
"""

from fractions import Fraction

from qtheta import series as se
from qtheta.kernels import QMonomial, as_value, to_series


def rand_fraction(rng, exclude=(0, 1, -1)):
    while True:
        v = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        if v not in [Fraction(e) for e in exclude]:
            return v


def factor_one_minus(x, k, prec):
    """1 - x*q^k built from series-core pieces only."""
    xs = to_series(as_value(x), prec)
    return se.sub(se.one(xs.prec + k), se.shift(xs, k))


def brute_poch(x, n, prec, step=1):
    """(x;q^step)_n as an explicit factor-by-factor product."""
    acc = se.one(prec)
    for i in range(n):
        acc = se.mul(acc, factor_one_minus(x, step * i, prec))
    return acc


def brute_poch_inf(x, prec, slack=8):
    """(x;q)_inf truncated, with generous extra factors."""
    xs = to_series(as_value(x), prec + slack)
    d = xs.order()
    if d is None:
        return se.one(prec)
    acc = se.one(prec + slack)
    for i in range(prec + slack - min(0, 3 * d)):
        acc = se.mul(acc, factor_one_minus(xs, i, prec + slack))
    return se.cap(acc, prec)


def brute_theta(x, prec):
    """Partial theta by direct summation of (-1)^n q^(n(n-1)/2) x^n."""
    xs = to_series(as_value(x), prec + 4)
    acc = se.zero(prec + 4)
    xpow = se.one(prec + 4 + 2 * max(0, -(xs.order() or 0)) * (prec + 4))
    n = 0
    while True:
        e = n * (n - 1) // 2 + n * (xs.order() if xs.order() is not None else prec + 4)
        if n > 0 and e >= prec + 4 and n >= 1 - min(0, xs.order() or 0):
            break
        term = se.shift(xpow, n * (n - 1) // 2)
        acc = se.add(acc, se.neg(term) if n % 2 else term)
        xpow = se.mul(xpow, xs)
        n += 1
    return se.cap(acc, prec)


def series_of(x, prec):
    return to_series(as_value(x), prec)


def qmon(c, e=0):
    return QMonomial(Fraction(c), e)


def assert_eq_series(x, y, min_prec=None):
    ok, joint = se.eq_to_prec(x, y)
    assert ok, "series differ: %s vs %s" % (x, y)
    if min_prec is not None:
        assert joint >= min_prec, "joint precision %d below %d" % (joint, min_prec)
