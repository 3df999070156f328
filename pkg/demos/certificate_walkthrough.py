"""Walk through the sawtooth dual certificate for the variance bound.

The triangle wave h and the odd function psi(t) = h(t)/(q-p) - t satisfy
q psi(t) + p psi(1+t) = h(t) - t - p <= t^2 - p, with tangency at t = 0 and
t = -1. This pointwise inequality forces phi(y^2) >= p for any symmetrizer.
"""

from fractions import Fraction as F

import symvar as sv

p = F(3, 10)
print("sawtooth samples:", [(t, sv.sawtooth(F(t, 4))) for t in range(-3, 7)])
print("psi(1/4) =", sv.psi(F(1, 4), p), "  psi(1) =", sv.psi(F(1), p))

report = sv.verify_inequality_exact(p)
print("\nexact verification report:")
print(report.to_json())
print("tangency points:", [w[0] for w in report.witnesses])

# the duality slack D(y) is nonnegative for every measure and zero exactly
# when the atoms sit at the tangency points
for mu, label in [
    (sv.negate(sv.bernoulli(p)), "y = -e (equality case)"),
    (sv.DiscreteMeasure.from_atoms([(F(-1, 2), F(1))]), "point mass at -1/2"),
    (sv.DiscreteMeasure.from_atoms([(F(0), F(1))]), "point mass at 0"),
]:
    print(f"D({label}) = {sv.certificate_lower_bound(mu, p)}")

try:
    sv.verify_inequality_exact(F(1, 2))
except sv.CriticalCaseError as exc:
    print("\np = 1/2 is rejected:", exc)
