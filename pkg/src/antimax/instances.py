"""Seeded random instances for property sweeps."""

from __future__ import annotations

import numpy as np

from .spectral import Domain, SpectralFn, interior_grid, project_grid
from .system import CouplingMatrix


def random_coupling(rng: np.random.Generator, order: str | None = None,
                    min_D: float = 0.01) -> CouplingMatrix:
    """Draw ``a, d ~ U(-5, 5)``, ``b ~ U(0.1, 5)``, ``c ~ U(-5, -0.1)``, rejecting ``D <= min_D``.

    ``order`` of ``"a>d"`` or ``"a<d"`` orders the diagonal.
    """
    while True:
        a, d = rng.uniform(-5, 5, size=2)
        b = rng.uniform(0.1, 5)
        c = rng.uniform(-5, -0.1)
        if order == "a>d" and a < d or order == "a<d" and a > d:
            a, d = d, a
        A = CouplingMatrix(float(a), float(b), float(c), float(d))
        if A.D > min_D:
            return A


def random_nonnegative(rng: np.random.Generator, domain: Domain, M: int,
                       alpha: float | None = None, terms: int | None = None) -> SpectralFn:
    """A band-limited function that is nonnegative on an interval.

    Built as ``sin(pi x / L) * (1 + sum_j c_j cos(j pi x / L))`` with
    ``sum |c_j| <= 0.9``; the product is a finite sine series with at most
    ``terms + 1`` modes, so projection from a grid is exact.  When ``alpha``
    is given the result is rescaled to that ``phi_1`` coefficient.
    """
    if domain.dim != 1:
        raise ValueError("random_nonnegative supports intervals only")
    terms = M - 1 if terms is None else min(terms, M - 1)
    (L,) = domain.lengths
    c = rng.uniform(-1, 1, size=terms) / np.arange(1, terms + 1)
    if terms:
        c *= rng.uniform(0, 0.9) / np.sum(np.abs(c))
    n = 4 * M
    x = interior_grid(domain, n)[0]
    j = np.arange(1, terms + 1)
    vals = np.sin(np.pi * x / L) * (1 + np.cos(np.outer(x, j) * np.pi / L) @ c)
    f = project_grid(vals, domain, M)
    if alpha is not None:
        f = f * (alpha / f.coeffs[0])
    return f
