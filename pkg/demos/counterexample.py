"""A non-cooperative system where positive forcing does not give positive solutions.

A = [[4, 1], [-1, 1]] on (0, pi), mu = -3 below the first principal value,
f = phi_1 - phi_2 / 2 and g = k f.  The second coefficient of v is
(1 - 3k)/38, so for k > 20/3 v changes sign.
"""

import math


from antimax import counterexample_part1, counterexample_part2, spectrum
from antimax.system import COUNTEREXAMPLE_MATRIX

sp = spectrum(COUNTEREXAMPLE_MATRIX, 1.0)
print(f"mu1- = {sp.mu1_minus:.6f}, mu1+ = {sp.mu1_plus:.6f}")

for k in (1.0, 5.0, 20 / 3, 7.0, 10.0):
    r = counterexample_part1(k)
    print(f"k = {k:6.3f}: v1 = {r.values['v1']:+.6f}, v2 = {r.values['v2']:+.6f},"
          f" v is {r.v_report.verdict.value}")

# Near mu1-, choosing k = mu1- + eps^2 keeps g <= 0 but u stays positive.
# Taking k = mu + eps^2 instead sends u_1 to zero first and u changes sign.
print()
for rule in ("anchored", "shifted"):
    for eps in (0.1, 0.01, 0.001):
        r = counterexample_part2(eps, k_rule=rule)
        print(f"k rule {rule:8s} eps={eps:<6} u2/u1 = {r.values['ratio']:+12.5f}"
              f"  displayed form {r.values['ratio_displayed_form']:10.3f}  u {r.u_report.verdict.value}")
print(f"\nlimit of the ratio with the first rule: {-3 * math.sqrt(5) / (2 * (9 + 3 * math.sqrt(5))):.6f}")
