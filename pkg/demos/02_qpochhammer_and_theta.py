"""q-Pochhammer symbols, theta functions, and the triple product.

Run: python3 demos/02_qpochhammer_and_theta.py
"""

from fractions import Fraction

from qtheta import (
    QMonomial,
    eq_to_prec,
    qpoch_finite,
    qpoch_infinite,
    qpoch_multi,
    theta_full,
    theta_partial,
)

q = QMonomial(Fraction(1), 1)  # the formal variable as an exact monomial

# Finite q-shifted factorials (x;q)_n = prod (1 - x q^i).
print("(q;q)_2      =", qpoch_finite(q, 2, 10))
print("(2;q)_3      =", qpoch_finite(Fraction(2), 3, 8))
print("(q;q^2)_3    =", qpoch_finite(q, 3, 12, step=2), "  (odd exponents only)")

# The infinite product (q;q)_inf: its coefficients follow the pentagonal
# pattern, every nonzero one is +1 or -1.
euler = qpoch_infinite(q, 27)
print("\n(q;q)_inf    =", euler)

# Partial theta: one-sided alternating sum sum (-1)^n q^(n(n-1)/2) x^n.
print("\ntheta(q, q)   =", theta_partial(q, 12))
print("theta(q, 2/q) =", theta_partial(QMonomial(Fraction(2), -1), 6))

# The two-sided sum collapses to the triple product (q, x, q/x; q)_inf.
x = Fraction(2)
two_sided = theta_full(x, 16)
product = qpoch_multi([q, QMonomial(x), QMonomial(Fraction(1, 2), 1)], 16)
print("\ntwo-sided theta at x=2 :", two_sided)
print("triple product         :", product)
print("equal to joint precision:", eq_to_prec(two_sided, product))

# Splitting the two-sided sum over n >= 0 and n < 0 relates it to two
# partial thetas: theta_full(x) = theta(x) + theta(q/x) - 1.
lhs = theta_full(Fraction(3), 14)
rhs = theta_partial(Fraction(3), 14) + theta_partial(QMonomial(Fraction(1, 3), 1), 14) - 1
print("\nsplit identity holds    :", eq_to_prec(lhs, rhs))
