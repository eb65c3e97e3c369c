"""Empirical constant in delta(h) ~ K alpha / ||h_perp|| for a one-parameter family.

For phi_1 + s phi_2 on (0, 1) the ratio delta * s equals 3 pi^2 s / (2 s + 1),
which grows with s, so the smallest member sets K_hat.
"""

import math

from antimax import Domain, SpectralFn, estimate_K

unit = Domain.interval(1.0)
Lambda = math.pi ** 2 + 2 * math.pi ** 2
family = [SpectralFn(unit, [1.0, s]) for s in (0.5, 1, 2, 4, 8)]
est = estimate_K(family, Lambda, n=1024)
print(est.to_csv(), end="")
print(f"K_hat = {est.K_hat:.8f}   (3 pi^2 s / (2 s + 1) at s = 1/2: {0.75 * math.pi ** 2:.8f})")
