"""Finite differences against the spectral solution: error falls like h^2."""

import math

import numpy as np

from antimax import Domain, SpectralFn, solve_resolvent, solve_system
from antimax.fd import FdGrid, fd_solve_scalar, fd_solve_system
from antimax.spectral import grid_values
from antimax.system import COUNTEREXAMPLE_MATRIX, counterexample_forcing

unit, square = Domain.interval(1.0), Domain.rectangle(1.0, 1.0)
h1 = SpectralFn(unit, [1.0, 0.5, -0.25])
h2 = SpectralFn(square, [1.0, 0.5, 0.5, -0.25])
f = counterexample_forcing()

prev = {}
for n in (63, 127, 255, 511, 1023):
    row = {}
    for name, h, mu in (("interval", h1, 12.0), ("square", h2, 5.0)):
        if name == "square" and n > 255:
            continue
        grid = FdGrid(h.domain, n)
        z = fd_solve_scalar(grid_values(h, grid.axes), mu, grid)
        row[name] = np.max(np.abs(z - grid_values(solve_resolvent(h, mu), grid.axes)))
    grid = FdGrid(f.domain, n)
    u, v = solve_system(COUNTEREXAMPLE_MATRIX, -3.0, f, 7 * f)
    uf, vf = fd_solve_system(COUNTEREXAMPLE_MATRIX, -3.0, grid_values(f, grid.axes),
                             grid_values(7 * f, grid.axes), grid)
    row["system"] = max(np.max(np.abs(uf - grid_values(u, grid.axes))),
                        np.max(np.abs(vf - grid_values(v, grid.axes))))
    text = "  ".join(f"{k} {e:.3e}" + (f" (x{prev[k] / e:.2f})" if k in prev else "")
                     for k, e in row.items())
    print(f"n={n:5d}  {text}")
    prev = row
print(f"mesh width at n=1023 on (0, pi): {math.pi / 1024:.2e}")
