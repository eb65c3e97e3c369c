"""How far above lambda_1 does the sign reversal survive for phi_1 + s phi_2?

On (0, 1) the two-mode forcing has a closed-form answer
h1 (lambda_2 - lambda_1) / (2 h2 + h1); the bisection below finds it
from sign checks alone.
"""

import math

from antimax import Domain, SpectralFn, empirical_amp_interval

unit = Domain.interval(1.0)
gap = 3 * math.pi ** 2

print(f"{'h1':>4} {'h2':>4} {'measured':>14} {'closed form':>14} {'h1*gap/(2 h2)':>14}")
for h1, h2 in [(1, 0.25), (1, 1), (1, 2), (2, 1), (1, 8)]:
    amp = empirical_amp_interval(SpectralFn(unit, [h1, h2]), n=2048)
    exact = h1 * gap / (2 * h2 + h1)
    print(f"{h1:>4} {h2:>4} {amp.delta_star:>14.9f} {exact:>14.9f} {h1 * gap / (2 * h2):>14.6f}"
          + ("  (capped)" if amp.capped else ""))
