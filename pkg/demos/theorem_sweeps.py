"""Random sweeps of the sign patterns predicted for the coupled system.

Above mu1- with a > d and f, g >= 0: u < 0 < v.
Below mu1- with a < d and t* g - f >= 0: u, v > 0.
Below mu1- with only f, g >= 0 positivity can be lost.
"""

import math

import numpy as np

from antimax import Domain, Verdict, classify_sign, solve_system, spectrum
from antimax.instances import random_coupling, random_nonnegative
from antimax.system import coupling_constants

dom = Domain.interval(math.pi)
rng = np.random.default_rng(1)
trials = 200


def tally(draw):
    hits = 0
    for _ in range(trials):
        A, mu, f, g, want = draw()
        u, v = solve_system(A, mu, f, g)
        hits += (classify_sign(u).verdict, classify_sign(v).verdict) == want
    return hits


def above():
    A = random_coupling(rng, "a>d")
    sp = spectrum(A, 1.0)
    mu = sp.mu1_minus + 1e-3 * (sp.mu1_plus - sp.mu1_minus)
    f, g = (random_nonnegative(rng, dom, 32, alpha=rng.uniform(0.1, 2)) for _ in range(2))
    return A, mu, f, g, (Verdict.STRICTLY_NEGATIVE, Verdict.STRICTLY_POSITIVE)


def below(enforce):
    def draw():
        A = random_coupling(rng, "a<d")
        mu = spectrum(A, 1.0).mu1_minus - rng.uniform(0.1, 2)
        f = random_nonnegative(rng, dom, 32, alpha=rng.uniform(0.1, 2))
        r = random_nonnegative(rng, dom, 32, alpha=rng.uniform(0.1, 2))
        g = (f + r) / coupling_constants(A).t_star if enforce else r
        return A, mu, f, g, (Verdict.STRICTLY_POSITIVE, Verdict.STRICTLY_POSITIVE)
    return draw


print(f"above mu1-, a > d:                 {tally(above)}/{trials} with u < 0 < v")
print(f"below mu1-, t* g - f >= 0:         {tally(below(True))}/{trials} with u, v > 0")
print(f"below mu1-, only f, g >= 0:        {tally(below(False))}/{trials} with u, v > 0")
