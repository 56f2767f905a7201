"""Primitive q-functions over exact series arguments.

Every kernel takes a target precision.  Arguments may be exact scalars
(int, Fraction, :class:`QMonomial`) or :class:`LaurentSeries` values.
Exact arguments are embedded at whatever internal precision the requested
target demands, so results built purely from exact data always reach the
requested precision; series arguments propagate their own precision
through the ring rules and the result honestly reports what survived.

Infinite sums and products never stop on "term looks small": they stop
only once a mechanically derived lower bound on the q-order of all
remaining terms is at or above the target precision, and the result is
truncated to that target.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import (
    DegenerateParameterError,
    DomainError,
    FormalDivergenceError,
    PrecisionError,
)
from . import series as se
from .series import LaurentSeries

__all__ = [
    "QMonomial",
    "as_value",
    "to_series",
    "qpoch_finite",
    "qpoch_infinite",
    "qpoch_multi",
    "theta_partial",
    "theta_full",
    "bhs",
]


@dataclass(frozen=True)
class QMonomial:
    """An exact monomial coef*q^exp; the zero argument is coef == 0."""

    coef: Fraction
    exp: int = 0

    def to_series(self, prec):
        return se.monomial(self.coef, self.exp, prec)


def as_value(x):
    """Normalize an argument to QMonomial (exact) or LaurentSeries."""
    if isinstance(x, LaurentSeries):
        return x
    if isinstance(x, QMonomial):
        return QMonomial(Fraction(x.coef), x.exp)
    return QMonomial(Fraction(x), 0)


def to_series(x, prec):
    """Materialize a value as a series; exact values embed at >= prec."""
    v = as_value(x)
    if isinstance(v, LaurentSeries):
        return v
    if v.coef == 0:
        return se.zero(prec)
    return se.monomial(v.coef, v.exp, max(prec, v.exp + 1))


def ord_of(v):
    """q-order of a value, or None when it is zero (to precision)."""
    if isinstance(v, QMonomial):
        return v.exp if v.coef else None
    return v.order()


def negord(d, k):
    """sum_{i<k} min(0, d+i): the stored negative-order mass of (x;q)_k."""
    if d is None or d >= 0 or k <= 0:
        return 0
    t = min(k, -d)
    return t * d + t * (t - 1) // 2


def one_minus(v, k, prec):
    """The factor 1 - v*q^k as a series of precision >= prec (exact v)."""
    if isinstance(v, LaurentSeries):
        return se.sub(se.one(v.prec + k), se.shift(v, k))
    if v.coef == 0:
        return se.one(prec)
    e = v.exp + k
    if e == 0:
        return se.from_rational(1 - v.coef, prec)
    p = max(prec, max(0, e) + 1)
    c = v.coef
    lo = min(0, e)
    num = [0] * (abs(e) + 1)
    num[0 - lo] = c.denominator
    num[e - lo] = -c.numerator
    return se._make(lo, num, c.denominator, p)


def _check_poch_invertible(v, n, what):
    """Eagerly reject (v;q)_n denominators with a vanishing factor."""
    d = ord_of(v)
    if d is None or d > 0:
        return
    i = -d
    if n is not None and i >= n:
        return
    if isinstance(v, QMonomial):
        if v.coef == 1:
            raise DegenerateParameterError(
                "%s: factor 1 - q^0 vanishes in (%s*q^%d;q)_%s"
                % (what, v.coef, v.exp, "inf" if n is None else n)
            )
    else:
        if one_minus(v, i, v.prec).is_zero:
            raise DegenerateParameterError(
                "%s: Pochhammer factor vanishes to working precision" % what
            )


# -- q-shifted factorials -----------------------------------------------------


def _binom_poly(c, f):
    """Integer-scaled coefficients of 1 - c*q^f (times c.denominator)."""
    if f == 0:
        return [c.denominator - c.numerator], 0
    fl = min(0, f)
    fn = [0] * (abs(f) + 1)
    fn[0 - fl] = c.denominator
    fn[f - fl] = -c.numerator
    return fn, fl


def _poly_mul(num, lo, den, fnum, flo, fden, keep_below=None):
    """Multiply dense integer polys (num, lo)/den * (fnum, flo)/fden."""
    out = [0] * (len(num) + len(fnum) - 1)
    for i, a in enumerate(num):
        if not a:
            continue
        for j, b in enumerate(fnum):
            if b:
                out[i + j] += a * b
    lo = lo + flo
    if keep_below is not None:
        top = keep_below - lo
        if top < len(out):
            del out[max(top, 0):]
    return out, lo, den * fden


def qpoch_finite(x, n, prec, step=1):
    """(x;q)_n = prod_{i<n} (1 - x*q^(step*i)); exact for exact x.

    The optional step widens the base to q^step, e.g. (q;q^2)_n.
    """
    if n < 0:
        raise DomainError("negative Pochhammer length %d" % n)
    if step < 1:
        raise DomainError("Pochhammer step must be >= 1")
    v = as_value(x)
    if n == 0:
        return se.one(max(prec, 1))
    if isinstance(v, QMonomial):
        c = v.coef
        if c == 0:
            return se.one(max(prec, 1))
        e = v.exp
        if c == 1 and e <= 0 and (-e) % step == 0 and (-e) // step < n:
            return se.zero(prec)
        num, lo, den = [1], 0, 1
        for i in range(n):
            fn, fl = _binom_poly(c, e + step * i)
            num, lo, den = _poly_mul(num, lo, den, fn, fl, c.denominator)
        return se._make(lo, num, den, max(prec, lo + len(num)))
    acc = se.one(v.prec)
    for i in range(n):
        acc = se.mul(acc, one_minus(v, step * i, v.prec + step * i))
    return acc


def qpoch_capped(x, n, prec, step=1):
    """(x;q^step)_n truncated to ``prec`` while it is built.

    Same value as qpoch_finite up to the stated precision, but the running
    product never stores exponents that cannot influence coefficients
    below prec; meant for long products inside summation loops.
    """
    v = as_value(x)
    if not isinstance(v, QMonomial) or n <= 0:
        out = qpoch_finite(v, n, prec, step)
        return se.cap(out, prec)
    c, e = v.coef, v.exp
    if c == 0:
        return se.one(max(prec, 1))
    if c == 1 and e <= 0 and (-e) % step == 0 and (-e) // step < n:
        return se.zero(prec)
    suffix = 0
    for i in range(n):
        suffix += min(0, e + step * i)
    num, lo, den = [1], 0, 1
    for i in range(n):
        suffix -= min(0, e + step * i)
        fn, fl = _binom_poly(c, e + step * i)
        num, lo, den = _poly_mul(num, lo, den, fn, fl, c.denominator,
                                 keep_below=prec - suffix)
    return se._make(lo, num, den, prec)


def qpoch_infinite(x, prec):
    """(x;q)_inf truncated soundly at the requested precision."""
    if prec < 1:
        raise PrecisionError("qpoch_infinite needs precision >= 1")
    v = as_value(x)
    if isinstance(v, QMonomial):
        c, e = v.coef, v.exp
        if c == 0:
            return se.one(prec)
        if c == 1 and e <= 0:
            return se.zero(prec)
        neg_total = negord(e, max(0, -e))
        stop = max(0, prec - e - neg_total)
        num, lo, den = [1], 0, 1
        future = neg_total
        for i in range(stop):
            future -= min(0, e + i)
            fn, fl = _binom_poly(c, e + i)
            num, lo, den = _poly_mul(num, lo, den, fn, fl, c.denominator,
                                     keep_below=prec - future)
        return se._make(lo, num, den, prec)
    if v.is_zero:
        return se.one(min(prec, v.prec))
    d = v.min_exp
    h = se.one(v.prec)
    i = 0
    while True:
        oh = h._ord()
        if i >= max(0, -d) and d + i + min(0, oh) >= prec:
            break
        if h.is_zero:
            break
        h = se.mul(h, one_minus(v, i, v.prec + i))
        i += 1
    return se.cap(h, prec)


def qpoch_multi(xs, prec, n=None):
    """Product of (x;q)_n over a list of arguments (n=None means infinite)."""
    deltas = []
    for x in xs:
        d = ord_of(as_value(x))
        deltas.append(negord(d, n if n is not None else (max(0, -d) if d is not None else 0)))
    total = sum(deltas)
    acc = None
    for x, dd in zip(xs, deltas):
        p = prec - (total - dd)
        f = qpoch_finite(x, n, p) if n is not None else qpoch_infinite(x, p)
        acc = f if acc is None else se.mul(acc, f)
    return acc if acc is not None else se.one(prec)


# -- theta functions ----------------------------------------------------------


def _entries_to_series(entries, prec):
    if not entries:
        return se.zero(prec)
    lo = min(entries)
    hi = max(entries)
    den = 1
    for c in entries.values():
        den = den // gcd(den, c.denominator) * c.denominator
    num = [0] * (hi - lo + 1)
    for e, c in entries.items():
        num[e - lo] = c.numerator * (den // c.denominator)
    return se._make(lo, num, den, prec)


def theta_partial(x, prec):
    """sum_{n>=0} (-1)^n q^(n(n-1)/2) x^n, formally convergent for every x."""
    if prec < 1:
        raise PrecisionError("theta_partial needs precision >= 1")
    v = as_value(x)
    if isinstance(v, QMonomial):
        c, e = v.coef, v.exp
        if c == 0:
            return se.one(prec)
        entries = {}
        n = 0
        cp = Fraction(1)
        vertex = max(0, 1 - e)
        while True:
            ex = n * (n - 1) // 2 + n * e
            if n >= vertex and ex >= prec:
                break
            if ex < prec:
                entries[ex] = entries.get(ex, Fraction(0)) + (cp if n % 2 == 0 else -cp)
            n += 1
            cp *= c
        return _entries_to_series(entries, prec)
    d = v._ord()
    w = prec + 2 * max(0, -d) + 2
    xpow = se.one(w)
    acc = None
    n = 0
    vertex = max(0, 1 - d)
    while True:
        bound = n * (n - 1) // 2 + n * d
        if n >= vertex and bound >= prec:
            break
        term = se.shift(xpow, n * (n - 1) // 2)
        if n % 2:
            term = se.neg(term)
        acc = term if acc is None else se.add(acc, term)
        xpow = se.mul(xpow, v)
        n += 1
    return se.cap(acc if acc is not None else se.zero(prec), prec)


def theta_full(x, prec):
    """The two-sided sum sum_{n in Z} (-1)^n q^(n(n-1)/2) x^n.

    Needs an invertible argument; equals (q, x, q/x; q)_inf by the triple
    product, which the test suite checks independently.
    """
    if prec < 1:
        raise PrecisionError("theta_full needs precision >= 1")
    v = as_value(x)
    d = ord_of(v)
    if d is None:
        raise DomainError("theta_full needs an invertible (nonzero) argument")
    if isinstance(v, QMonomial):
        c, e = v.coef, v.exp
        entries = {}
        n = 0
        cp = Fraction(1)
        while True:
            ex = n * (n - 1) // 2 + n * e
            if n >= max(0, 1 - e) and ex >= prec:
                break
            if ex < prec:
                entries[ex] = entries.get(ex, Fraction(0)) + (cp if n % 2 == 0 else -cp)
            n += 1
            cp *= c
        k = 1
        ci = 1 / c
        cp = ci
        while True:
            ex = k * (k + 1) // 2 - k * e
            if k >= max(1, e) and ex >= prec:
                break
            if ex < prec:
                entries[ex] = entries.get(ex, Fraction(0)) + (cp if k % 2 == 0 else -cp)
            k += 1
            cp *= ci
        return _entries_to_series(entries, prec)
    w = prec + 2 * max(0, -d, d) + 2
    acc = se.zero(w)
    xpow = se.one(w)
    n = 0
    while True:
        bound = n * (n - 1) // 2 + n * d
        if n >= max(0, 1 - d) and bound >= prec:
            break
        term = se.shift(xpow, n * (n - 1) // 2)
        acc = se.add(acc, se.neg(term) if n % 2 else term)
        xpow = se.mul(xpow, v)
        n += 1
    y = se.invert(v)
    ypow = y
    k = 1
    while True:
        bound = k * (k + 1) // 2 - k * d
        if k >= max(1, d) and bound >= prec:
            break
        term = se.shift(ypow, k * (k + 1) // 2)
        acc = se.add(acc, se.neg(term) if k % 2 else term)
        ypow = se.mul(ypow, y)
        k += 1
    return se.cap(acc, prec)


# -- basic hypergeometric series ----------------------------------------------


def _mul_value(t, v):
    """t times a value; exact monomials multiply without precision loss."""
    if isinstance(v, QMonomial):
        if v.coef == 0:
            return se.zero(t.prec + v.exp)
        return se.mul_monomial(t, v.coef, v.exp)
    return se.mul(t, v)


def bhs(upper, lower, z, prec):
    """Evaluate the basic hypergeometric series 1+r phi s.

    ``upper`` has 1+r entries and ``lower`` has s; each term is

        prod (u;q)_k / ((q;q)_k prod (l;q)_k) * ((-1)^k q^C(k,2))^(s-r) * z^k.

    Terminates when an upper argument is the exact monomial q^-n (n >= 0)
    and otherwise runs until the mechanical term-order bound clears the
    target precision; if that bound cannot tend to infinity the series is
    formally divergent and an error is raised.
    """
    if prec < 1:
        raise PrecisionError("bhs needs precision >= 1")
    ups = [as_value(u) for u in upper]
    los = [as_value(l) for l in lower]
    zv = as_value(z)
    sr = len(los) - len(ups) + 1
    dz = ord_of(zv)
    if dz is None:
        return se.one(min(prec, zv.prec) if isinstance(zv, LaurentSeries) else prec)

    n_term = None
    for u in ups:
        if isinstance(u, QMonomial) and u.coef == 1 and u.exp <= 0:
            n = -u.exp
            n_term = n if n_term is None else min(n_term, n)

    dus = [ord_of(u) for u in ups]
    dls = [ord_of(l) for l in los]
    if n_term is None and (sr < 0 or (sr == 0 and dz <= 0)):
        raise FormalDivergenceError(
            "non-terminating series with s-r=%d and ord(z)=%d" % (sr, dz)
        )

    def bound(k):
        b = sr * (k * (k - 1) // 2) + k * dz
        for d in dus:
            b += negord(d, k)
        for d in dls:
            b -= negord(d, k)
        return b

    stab = max([0] + [max(0, -d) for d in dus + dls if d is not None])

    # Working precision: absorb any early dip of the term-precision chain.
    cum = 0
    dip = 0
    k_sim = n_term if n_term is not None else 2 * (prec + stab * stab) + 16
    for k in range(k_sim):
        step = dz + sr * k
        for d in dus:
            if d is not None:
                step += min(0, d + k)
        for d in dls:
            if d is not None:
                step -= min(0, d + k)
        cum += step
        if cum < dip:
            dip = cum
        if n_term is None and k >= stab and bound(k + 1) >= prec and sr * (k + 1) + dz >= 0:
            break
    w0 = prec - dip + 2

    def _factor(vv, d, k):
        # Precision chosen so an exact factor never caps the running term.
        fo = min(0, (d if d is not None else 0) + k)
        return one_minus(vv, k, t.prec - min(0, t._ord()) + 2 * abs(fo) + 4)

    t = se.one(w0)
    acc = t
    k = 0
    while True:
        nxt = k + 1
        if n_term is not None:
            if nxt > n_term:
                break
        elif nxt >= stab and bound(nxt) >= prec and sr * nxt + dz >= 0:
            break
        for u, d in zip(ups, dus):
            t = se.mul(t, _factor(u, d, k))
        t = _mul_value(t, zv)
        if sr:
            t = se.mul_monomial(t, Fraction(-1) ** sr, sr * k)
        t = se.divide(t, _factor(QMonomial(Fraction(1), 0), 0, nxt))
        for l, d in zip(los, dls):
            g = _factor(l, d, k)
            if g.is_zero:
                raise DegenerateParameterError(
                    "singular lower parameter: factor 1 - l*q^%d vanishes" % k
                )
            t = se.divide(t, g)
        acc = se.add(acc, t)
        k = nxt
    if n_term is not None:
        return acc
    return se.cap(acc, prec)
