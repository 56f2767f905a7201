"""Exact truncated Laurent series: construction, precision, field operations.

Every series carries an absolute precision O(q^p): all coefficients below
q^p are exact rationals, and every operation states how p propagates.
Run: python3 demos/01_series_arithmetic.py
"""

from fractions import Fraction

from qtheta import (
    from_rational,
    from_string,
    invert,
    monomial,
    mul,
    one,
    pow_int,
    shift,
    zero,
)

# Constructors: a constant, a monomial with a negative exponent, zero.
print("one(4)              =", one(4))
print("monomial(3/2,-1,10) =", monomial(Fraction(3, 2), -1, 10))
print("zero(5)             =", zero(5))

# Arithmetic reads like ordinary algebra; precision follows the operands.
x = from_string("1 - q + O(q^8)")
y = from_string("1 + q + O(q^8)")
print("\nx            =", x)
print("x * y        =", mul(x, y))
print("x + q^9 term =", x + monomial(1, 9, 20), "   (beyond joint precision)")

# Inversion: 1/(1-q) is the geometric series.  Inverting a series of
# order d costs 2d digits of precision: these are Laurent series, so
# q^3-like leading terms are perfectly legal.
print("\n1/(1-q)      =", invert(x))
g = from_string("2*q^3 + O(q^10)")
print("1/(2q^3)     =", invert(g), "  (precision 10 - 2*3 = 4)")

# Multiplying back always returns 1 up to the certified precision.
h = from_string("q + q^2 + O(q^6)")
print("\nh            =", h)
print("1/h          =", invert(h))
print("h * (1/h)    =", mul(h, invert(h)))

# Powers use binary exponentiation, including negative powers.
print("\n(1+q)^2      =", pow_int(from_string("1 + q + O(q^10)"), 2))
print("(1-q)^-3     =", pow_int(x, -3))

# Shifting multiplies by an exact power of q (precision moves along).
print("\nshift by -3  =", shift(from_rational(1, 4), -3))
