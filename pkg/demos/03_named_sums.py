"""The named composite sums: U, V, Q, lambda, P_m, S, Omega, Theta_k, T.

Each is an exact series-valued function of rational (or series)
parameters; infinite sums stop on certified order bounds, never on
"the term looks small".
Run: python3 demos/03_named_sums.py
"""

from fractions import Fraction

from qtheta import (
    QMonomial,
    eq_to_prec,
    lam,
    omega,
    pmsum,
    qcap,
    ssum,
    theta_partial,
    thetak,
    tsum,
    usum,
    vsum,
)

a, b = Fraction(2), Fraction(3)

# U_m(b) terminates for m >= 1; U_0 is a split partial theta.
print("U_1(5)       =", usum(1, Fraction(5), 10), " (telescopes to 1)")
print("U_0(2/3) equals theta(2/3):",
      eq_to_prec(usum(0, Fraction(2, 3), 20), theta_partial(Fraction(2, 3), 20)))

# V_{m,n} is a terminating 2phi1 with min(m,n)+1 terms.
print("\nV(3,0,a,b)   =", vsum(3, 0, a, b, 8))
print("V(1,1,a,b)   =", vsum(1, 1, a, b, 8))

# Q_m and the elimination coefficients lambda_k(m,b).
print("\nQ_2(7)       =", qcap(2, Fraction(7), 8))
print("Q_3(2)       =", qcap(3, Fraction(2), 8))
print("lam(3,k,2)   =", [str(lam(3, k, Fraction(2), 6)) for k in range(3)])

# P_m ties a partial theta to a quadratic-Pochhammer sum:
# theta(q,a) = P_2(a,b) + b P_2(aq, bq) for every a, b.
lhs = theta_partial(a, 25)
rhs = pmsum(2, a, b, 25) + b * pmsum(2, QMonomial(a, 1), QMonomial(b, 1), 25)
print("\ntheta(a) = P_2(a,b) + b P_2(aq,bq):", eq_to_prec(lhs, rhs))

# S is the q^(2n) variant; it is symmetric and bridges P_3 and P_2.
print("S(a,b) = S(b,a):", eq_to_prec(ssum(a, b, 18), ssum(b, a, 18)))
bridge = (pmsum(3, a, b, 22) - pmsum(2, QMonomial(a), QMonomial(b, -1), 22)).shift(1) / b
print("S(a,b) = (q/b)(P_3(a,b) - P_2(a,b/q)):", eq_to_prec(ssum(a, b, 18), bridge))

# Omega stacks partial thetas along a geometric progression of arguments;
# Theta_k is a four-term combination of order >= -(k+1); T pairs theta(a)
# with theta(a/q).
print("\nOmega(a,0) = theta(a):",
      eq_to_prec(omega(a, Fraction(0), 15), theta_partial(a, 15)))
print("Theta_1(q,2,3) =", thetak(1, a, b, 6))
print("T(1)           =", tsum(Fraction(1), 8))
