"""Second-order finite differences for the Dirichlet problems, used as an oracle.

The only thing shared with the spectral solvers is ``Domain``.  The scalar 1D
solve is a banded (tridiagonal) direct solve; 2D and system solves diagonalize
the 5-point / 3-point Laplacian with the type-I discrete sine transform.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import fft as spfft
from scipy.linalg import solve_banded

from .spectral import Domain

DISCRETE_RESONANCE = 1e-8


class DiscreteResonanceError(ValueError):
    pass


@dataclass(frozen=True)
class FdGrid:
    domain: Domain
    n: int

    def __post_init__(self):
        if self.n < 8:
            raise ValueError("FD grid needs n >= 8")

    @property
    def h(self) -> tuple[float, ...]:
        return tuple(L / (self.n + 1) for L in self.domain.lengths)

    @property
    def axes(self) -> tuple[np.ndarray, ...]:
        return tuple(hx * np.arange(1, self.n + 1) for hx in self.h)

    def mesh(self) -> tuple[np.ndarray, ...]:
        return np.meshgrid(*self.axes, indexing="ij")

    def discrete_eigenvalues(self) -> np.ndarray:
        """Eigenvalues of the FD Laplacian, shaped like the grid (mode k-1 at index k-1)."""
        k = np.arange(1, self.n + 1)
        per_axis = [4 / hx ** 2 * np.sin(k * np.pi * hx / (2 * L)) ** 2
                    for hx, L in zip(self.h, self.domain.lengths)]
        if len(per_axis) == 1:
            return per_axis[0]
        return per_axis[0][:, None] + per_axis[1][None, :]


def laplacian_1d(n: int, h: float) -> np.ndarray:
    """Dense 3-point ``-d^2/dx^2`` with Dirichlet data; for small checks only."""
    main = np.full(n, 2 / h ** 2)
    off = np.full(n - 1, -1 / h ** 2)
    return np.diag(main) + np.diag(off, 1) + np.diag(off, -1)


def apply_laplacian(values: np.ndarray, grid: FdGrid) -> np.ndarray:
    """``L_h`` applied to interior values (zero boundary extension)."""
    out = np.zeros_like(values, dtype=float)
    for axis, hx in enumerate(grid.h):
        pad = [(0, 0)] * values.ndim
        pad[axis] = (1, 1)
        p = np.pad(values, pad)
        lo = np.take(p, range(0, grid.n), axis=axis)
        hi = np.take(p, range(2, grid.n + 2), axis=axis)
        out += (2 * values - lo - hi) / hx ** 2
    return out


def _check_resonance(lam_h: np.ndarray, shift: np.ndarray | float) -> None:
    gap = np.abs(lam_h - shift)
    if np.any(gap < DISCRETE_RESONANCE):
        idx = np.unravel_index(int(np.argmin(gap)), np.shape(gap))
        raise DiscreteResonanceError(f"shift resonates with discrete mode {tuple(i + 1 for i in idx)}")


def _dst(values):
    return spfft.dstn(values, type=1, norm="ortho")


def fd_solve_scalar(h_values, mu: float, grid: FdGrid) -> np.ndarray:
    """Solve ``(L_h - mu) z = h`` on the interior grid."""
    rhs = np.asarray(h_values, dtype=float)
    lam_h = grid.discrete_eigenvalues()
    _check_resonance(lam_h, mu)
    if grid.domain.dim == 1:
        (hx,) = grid.h
        ab = np.empty((3, grid.n))
        ab[0, :] = -1 / hx ** 2
        ab[1, :] = 2 / hx ** 2 - mu
        ab[2, :] = -1 / hx ** 2
        return solve_banded((1, 1), ab, rhs)
    # orthonormal DST-I is its own inverse
    return _dst(_dst(rhs) / (lam_h - mu))


def fd_solve_system(A, mu: float, f_values, g_values, grid: FdGrid) -> tuple[np.ndarray, np.ndarray]:
    """Solve ``(L_h - mu) U = A U + F`` mode by mode in the discrete sine basis."""
    a, b, c, d = (float(x) for x in (A.tolist() if hasattr(A, "tolist") else A))
    F, G = _dst(np.asarray(f_values, dtype=float)), _dst(np.asarray(g_values, dtype=float))
    s = grid.discrete_eigenvalues() - mu
    det = (s - a) * (s - d) - b * c
    if np.any(np.abs(det) < DISCRETE_RESONANCE * (1 + s ** 2)):
        raise DiscreteResonanceError("mu is a discrete system eigenvalue")
    U = ((s - d) * F + b * G) / det
    V = (c * F + (s - a) * G) / det
    return _dst(U), _dst(V)
