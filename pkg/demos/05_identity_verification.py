"""The identity DSL and the randomized verifier.

Identities live as text records; both sides are parsed into sorted
expression trees and evaluated at exact rational specializations.  A pass
means the residual series is identically zero coefficientwise up to the
requested order - no tolerances anywhere.
Run: python3 demos/05_identity_verification.py
"""

from fractions import Fraction

from qtheta import evaluate, load_registry, parse, render, verify_all, verify_identity
from qtheta.verifier import reports_to_json

# The DSL: series-sort values, integer-sort exponents and bounds.
ast = parse("sum(n, 0, inf, (-1)^n * q^binom2(n) * a^n, binom2(n))")
print("a partial theta, transcribed:", render(ast))
print("value at a=2, order 12      :", evaluate(ast, {"a": Fraction(2)}, 12))

# Evaluation is exact; identities become zero residuals.
resid = evaluate(parse("theta(a) - (Pm(2,a,b) + b*Pm(2, a*q, b*q))"),
                 {"a": Fraction(2), "b": Fraction(3)}, 25)
print("\ntheta(a) - [P_2(a,b) + b P_2(aq,bq)] =", resid)

# The built-in corpus: 48 identities, each with parameters, admissibility
# constraints, and optionally derived bindings.
registry = load_registry()
print("\ncorpus size:", len(registry))
cor34 = next(i for i in registry if i.name == "cor3.4")
print("cor3.4 lhs:", render(cor34.lhs))
print("cor3.4 derived:", ", ".join("%s := %s" % (n, render(e)) for n, e in cor34.derives))

# Verify one identity at a few random rational points.
report = verify_identity(cor34, order=20, trials=3, seed=12)
print("\ncor3.4 verification:", "PASS" if report.passed else "FAIL")
for t in report.trials:
    print("  binding", {k: str(v) for k, v in t.binding.items()},
          "-> residual zero to O(q^%d)" % t.effective_precision)

# Or sweep a whole family and emit the JSON report.
reports, summary = verify_all(order=15, trials=2, seed=0, name_filter="thm2.1-*")
print("\nthm2.1-* summary:", summary)
print(reports_to_json(reports, with_timing=False)[:400], "...")
