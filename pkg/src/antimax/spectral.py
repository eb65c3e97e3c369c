"""Dirichlet eigenbasis of -Laplacian on intervals and rectangles.

Functions are stored as finite expansions against the L2-orthonormal sine
eigenbasis.  Everything here is analytic: eigenvalues and eigenfunctions are
closed form, derivatives are taken term by term, and the only numerical
approximations are grid quadrature for Lq norms (q != 2) and grid maxima.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np
from scipy import fft as spfft
from scipy.integrate import simpson

DEFAULT_MODES = 64
DEFAULT_GRID_1D = 1024
DEFAULT_GRID_2D = 256


@dataclass(frozen=True)
class Domain:
    """Interval ``(0, L)`` or rectangle ``(0, Lx) x (0, Ly)``."""

    kind: str
    lengths: tuple[float, ...]

    def __post_init__(self):
        lengths = tuple(float(v) for v in np.atleast_1d(self.lengths))
        object.__setattr__(self, "lengths", lengths)
        if self.kind == "interval":
            if len(lengths) != 1:
                raise ValueError("interval takes exactly one length")
        elif self.kind == "rectangle":
            if len(lengths) != 2:
                raise ValueError("rectangle takes exactly two lengths")
        else:
            raise ValueError(f"unknown domain kind {self.kind!r}")
        if not all(np.isfinite(v) and v > 0 for v in lengths):
            raise ValueError(f"domain lengths must be positive, got {lengths}")

    @classmethod
    def interval(cls, L: float = 1.0) -> "Domain":
        return cls("interval", (L,))

    @classmethod
    def rectangle(cls, Lx: float = 1.0, Ly: float = 1.0) -> "Domain":
        return cls("rectangle", (Lx, Ly))

    @property
    def dim(self) -> int:
        return len(self.lengths)

    @property
    def inradius(self) -> float:
        return min(self.lengths) / 2

    def default_grid(self) -> int:
        return DEFAULT_GRID_1D if self.dim == 1 else DEFAULT_GRID_2D

    def to_dict(self) -> dict:
        return {"kind": self.kind, "lengths": list(self.lengths)}

    @classmethod
    def from_dict(cls, data: dict) -> "Domain":
        return cls(data["kind"], tuple(data["lengths"]))


# ---------------------------------------------------------------------------
# modes and eigenpairs
# ---------------------------------------------------------------------------

@lru_cache(maxsize=64)
def _mode_table(domain: Domain, M: int) -> tuple[np.ndarray, np.ndarray]:
    if domain.dim == 1:
        k = np.arange(1, M + 1)
        lam = (k * np.pi / domain.lengths[0]) ** 2
        k = k[:, None]
    else:
        Lx, Ly = domain.lengths
        # the first M modes in eigenvalue order all have k, l <= M
        kk, ll = np.meshgrid(np.arange(1, M + 1), np.arange(1, M + 1), indexing="ij")
        kk, ll = kk.ravel(), ll.ravel()
        lam_all = (kk * np.pi / Lx) ** 2 + (ll * np.pi / Ly) ** 2
        order = np.lexsort((ll, kk, lam_all))[:M]
        k = np.stack([kk[order], ll[order]], axis=1)
        lam = lam_all[order]
    k.flags.writeable = False
    lam.flags.writeable = False
    return k, lam


def mode_indices(domain: Domain, M: int) -> np.ndarray:
    """Mode indices of the first ``M`` modes, shape ``(M, dim)``.

    Ordered by ascending eigenvalue; ties are broken lexicographically on
    ``(k, l)``.  Position 0 is always the principal mode.
    """
    if M < 1:
        raise ValueError("need at least one mode")
    return _mode_table(domain, int(M))[0]


def eigenvalues(domain: Domain, M: int) -> np.ndarray:
    """Dirichlet eigenvalues ``lambda_1 <= ... <= lambda_M``."""
    if M < 1:
        raise ValueError("need at least one mode")
    return _mode_table(domain, int(M))[1]


def principal_eigenvalue(domain: Domain) -> float:
    return float(eigenvalues(domain, 1)[0])


def second_eigenvalue(domain: Domain) -> float:
    return float(eigenvalues(domain, 2)[1])


def eigenpair(domain: Domain, m) -> tuple[float, Callable[[np.ndarray], np.ndarray]]:
    """Eigenvalue and L2-normalized eigenfunction for mode index ``m``.

    ``m`` is ``k`` on an interval and ``(k, l)`` on a rectangle.
    """
    idx = np.atleast_1d(np.asarray(m, dtype=int))
    if idx.shape != (domain.dim,):
        raise ValueError(f"mode index {m!r} does not match a {domain.kind}")
    if np.any(idx < 1):
        raise ValueError(f"mode index must be >= 1, got {m!r}")
    lengths = np.asarray(domain.lengths)
    lam = float(np.sum((idx * np.pi / lengths) ** 2))
    scale = float(np.prod(np.sqrt(2 / lengths)))

    def phi(x):
        x = np.asarray(x, dtype=float)
        if domain.dim == 1:
            return scale * np.sin(idx[0] * np.pi * x / lengths[0])
        x = np.atleast_2d(x)
        return scale * np.prod(np.sin(idx * np.pi * x / lengths), axis=-1)

    return lam, phi


# ---------------------------------------------------------------------------
# spectral functions
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SpectralFn:
    """``sum_m coeffs[m] * phi_m`` on ``domain`` (``phi`` orthonormal, ``phi_1 > 0``)."""

    domain: Domain
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=float).ravel()
        if c.size < 1:
            raise ValueError("a spectral function needs at least one coefficient")
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    @property
    def M(self) -> int:
        return self.coeffs.size

    @classmethod
    def zeros(cls, domain: Domain, M: int) -> "SpectralFn":
        return cls(domain, np.zeros(M))

    @classmethod
    def mode(cls, domain: Domain, position: int, M: int | None = None) -> "SpectralFn":
        """The eigenfunction at 1-based ``position`` in the canonical ordering."""
        M = max(position, M or 0)
        c = np.zeros(M)
        c[position - 1] = 1.0
        return cls(domain, c)

    def padded(self, M: int) -> "SpectralFn":
        if M <= self.M:
            return self
        return SpectralFn(self.domain, np.concatenate([self.coeffs, np.zeros(M - self.M)]))

    def with_coeffs(self, coeffs) -> "SpectralFn":
        return SpectralFn(self.domain, coeffs)

    def _align(self, other: "SpectralFn") -> tuple[np.ndarray, np.ndarray]:
        if other.domain != self.domain:
            raise ValueError("spectral functions live on different domains")
        M = max(self.M, other.M)
        return self.padded(M).coeffs, other.padded(M).coeffs

    def __add__(self, other):
        if not isinstance(other, SpectralFn):
            return NotImplemented
        a, b = self._align(other)
        return SpectralFn(self.domain, a + b)

    def __sub__(self, other):
        if not isinstance(other, SpectralFn):
            return NotImplemented
        a, b = self._align(other)
        return SpectralFn(self.domain, a - b)

    def __mul__(self, scalar):
        if isinstance(scalar, SpectralFn):
            return NotImplemented
        return SpectralFn(self.domain, self.coeffs * float(scalar))

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return SpectralFn(self.domain, self.coeffs / float(scalar))

    def __neg__(self):
        return SpectralFn(self.domain, -self.coeffs)

    def allclose(self, other: "SpectralFn", atol: float = 1e-12) -> bool:
        a, b = self._align(other)
        return bool(np.max(np.abs(a - b)) <= atol)

    def to_dict(self) -> dict:
        return {"domain": self.domain.to_dict(), "coeffs": [float(c) for c in self.coeffs]}

    @classmethod
    def from_dict(cls, data: dict) -> "SpectralFn":
        return cls(Domain.from_dict(data["domain"]), data["coeffs"])

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "SpectralFn":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class Decomposition:
    """``h = alpha * phi_1 + h_perp`` with ``h_perp`` orthogonal to ``phi_1``."""

    alpha: float
    h_perp: SpectralFn


def decompose(h: SpectralFn) -> Decomposition:
    c = h.coeffs.copy()
    alpha = float(c[0])
    c[0] = 0.0
    return Decomposition(alpha, SpectralFn(h.domain, c))


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

def _axis_factors(domain: Domain, M: int, axis: int, x: np.ndarray, deriv: bool = False):
    """``(len(x), M)`` table of the 1D factor of each mode along ``axis``."""
    L = domain.lengths[axis]
    k = mode_indices(domain, M)[:, axis]
    w = k * np.pi / L
    arg = np.outer(x, w)
    s = np.sqrt(2 / L)
    if deriv:
        return s * w * np.cos(arg)
    return s * np.sin(arg)


def _check_interior(domain: Domain, pts: np.ndarray) -> None:
    L = np.asarray(domain.lengths)
    if np.any(pts <= 0) or np.any(pts >= L):
        raise ValueError("evaluation points must lie strictly inside the domain")


def evaluate(f: SpectralFn, points) -> np.ndarray:
    """Values of the truncated expansion at interior points.

    ``points`` is a 1D array on an interval and an ``(P, 2)`` array on a
    rectangle.
    """
    dom = f.domain
    if dom.dim == 1:
        x = np.atleast_1d(np.asarray(points, dtype=float))
        _check_interior(dom, x[:, None])
        return _axis_factors(dom, f.M, 0, x) @ f.coeffs
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    _check_interior(dom, pts)
    X = _axis_factors(dom, f.M, 0, pts[:, 0])
    Y = _axis_factors(dom, f.M, 1, pts[:, 1])
    return np.einsum("pm,pm,m->p", X, Y, f.coeffs)


def interior_grid(domain: Domain, n: int) -> tuple[np.ndarray, ...]:
    """The uniform ``n``-point interior grid along each axis."""
    return tuple(L * np.arange(1, n + 1) / (n + 1) for L in domain.lengths)


def closed_grid(domain: Domain, n: int) -> tuple[np.ndarray, ...]:
    """Interior grid plus the two boundary nodes along each axis."""
    return tuple(np.linspace(0.0, L, n + 2) for L in domain.lengths)


def grid_values(f: SpectralFn, axes: Sequence[np.ndarray], deriv: int | None = None) -> np.ndarray:
    """Tensor-grid values of ``f`` or of its partial derivative along ``deriv``.

    No interior check: the expansion extends smoothly to the closure.
    """
    dom = f.domain
    if dom.dim == 1:
        return _axis_factors(dom, f.M, 0, axes[0], deriv == 0) @ f.coeffs
    X = _axis_factors(dom, f.M, 0, axes[0], deriv == 0)
    Y = _axis_factors(dom, f.M, 1, axes[1], deriv == 1)
    return (X * f.coeffs) @ Y.T


# ---------------------------------------------------------------------------
# norms
# ---------------------------------------------------------------------------

def _parse_norm(kind, dim: int) -> tuple[str, float | None]:
    if isinstance(kind, str):
        key = kind.strip().upper()
        if key == "L2":
            return "L2", 2.0
        if key in ("LINF", "INF"):
            return "Linf", None
        if key == "C1":
            return "C1", None
        if key.startswith("L"):
            kind = float(key[1:])
        else:
            raise ValueError(f"unknown norm kind {kind!r}")
    q = float(kind)
    if q == 2:
        return "L2", 2.0
    if dim >= 2 and q <= dim:
        raise ValueError(f"Lq norm needs q > N = {dim} on a {dim}D domain, got q={q}")
    if q < 1:
        raise ValueError(f"q must be >= 1, got {q}")
    return "Lq", q


def norm(f: SpectralFn, kind="L2", n: int | None = None) -> float:
    """Norm of ``f``.

    ``kind`` is ``"L2"``, ``"Linf"``, ``"C1"``, or a number ``q`` (also
    accepted as ``"L3"`` etc).  L2 is exact (Parseval).  Lq uses composite
    Simpson over the closed uniform grid; Linf and C1 take grid maxima, with
    derivatives computed term by term up to the boundary.
    """
    key, q = _parse_norm(kind, f.domain.dim)
    if key == "L2":
        return float(np.linalg.norm(f.coeffs))
    n = n or f.domain.default_grid()
    if n < 16:
        raise ValueError("grid size must be at least 16")
    axes = closed_grid(f.domain, n)
    vals = grid_values(f, axes)
    if key == "Lq":
        integrand = np.abs(vals) ** q
        for ax in reversed(axes):
            integrand = simpson(integrand, x=ax, axis=-1)
        return float(integrand) ** (1 / q)
    sup = float(np.max(np.abs(vals)))
    if key == "Linf":
        return sup
    return sup + sum(
        float(np.max(np.abs(grid_values(f, axes, deriv=i)))) for i in range(f.domain.dim)
    )


def inner(f: SpectralFn, g: SpectralFn) -> float:
    a, b = f._align(g)
    return float(a @ b)


# ---------------------------------------------------------------------------
# boundary
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class BoundaryProfile:
    """Outward normal derivative sampled on the boundary.

    ``points`` has shape ``(P, dim)``; ``edges`` labels each sample.
    """

    points: np.ndarray
    values: np.ndarray
    edges: tuple[str, ...]

    @property
    def min(self) -> float:
        return float(np.min(self.values))

    @property
    def max(self) -> float:
        return float(np.max(self.values))


def normal_derivative(f: SpectralFn, n: int | None = None) -> BoundaryProfile:
    """Outward normal derivative of ``f`` on the boundary.

    On an interval this is ``(-f'(0), f'(L))``.  On a rectangle each edge is
    sampled at its ``n`` interior grid points (corners excluded, where the
    normal is undefined).
    """
    dom = f.domain
    if dom.dim == 1:
        L = dom.lengths[0]
        d = _axis_factors(dom, f.M, 0, np.array([0.0, L]), deriv=True) @ f.coeffs
        return BoundaryProfile(np.array([[0.0], [L]]), np.array([-d[0], d[1]]), ("left", "right"))

    n = n or dom.default_grid()
    Lx, Ly = dom.lengths
    xs, ys = interior_grid(dom, n)
    ends_x, ends_y = np.array([0.0, Lx]), np.array([0.0, Ly])
    dfx = grid_values(f, (ends_x, ys), deriv=0)  # (2, n)
    dfy = grid_values(f, (xs, ends_y), deriv=1)  # (n, 2)
    values = np.concatenate([-dfx[0], dfx[1], -dfy[:, 0], dfy[:, 1]])
    points = np.concatenate([
        np.column_stack([np.zeros(n), ys]),
        np.column_stack([np.full(n, Lx), ys]),
        np.column_stack([xs, np.zeros(n)]),
        np.column_stack([xs, np.full(n, Ly)]),
    ])
    edges = ("x=0",) * n + ("x=Lx",) * n + ("y=0",) * n + ("y=Ly",) * n
    return BoundaryProfile(points, values, edges)


# ---------------------------------------------------------------------------
# grid <-> coefficients
# ---------------------------------------------------------------------------

def project_grid(values, domain: Domain, M: int) -> SpectralFn:
    """Coefficients of the first ``M`` modes from samples on the interior grid.

    Uses discrete sine orthogonality (DST-I), which is exact for inputs that
    are band-limited to the first ``n`` modes per axis.
    """
    vals = np.asarray(values, dtype=float)
    if vals.ndim != domain.dim:
        raise ValueError(f"expected {domain.dim}D grid values, got shape {vals.shape}")
    n = vals.shape[0]
    if domain.dim == 2 and vals.shape[1] != n:
        raise ValueError("rectangle grids must be n x n")
    if M > n:
        raise ValueError(f"cannot project onto M={M} modes from an n={n} grid")
    # DST-I returns 2 * sum_j v_j sin(pi j k / (n + 1)) per axis
    spec = spfft.dstn(vals, type=1)
    for L in domain.lengths:
        spec = spec * (np.sqrt(2 / L) * L / (n + 1) / 2)
    idx = mode_indices(domain, M) - 1
    if domain.dim == 1:
        coeffs = spec[idx[:, 0]]
    else:
        coeffs = spec[idx[:, 0], idx[:, 1]]
    return SpectralFn(domain, coeffs)


def sample_grid(f: SpectralFn, n: int) -> np.ndarray:
    """Values of ``f`` on the uniform interior grid."""
    return grid_values(f, interior_grid(f.domain, n))


def write_grid_csv(values, domain: Domain, fp=None) -> str:
    """Grid data as CSV with header ``x[,y],value``."""
    vals = np.asarray(values, dtype=float)
    axes = interior_grid(domain, vals.shape[0])
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    if domain.dim == 1:
        w.writerow(["x", "value"])
        for x, v in zip(axes[0], vals):
            w.writerow([repr(float(x)), repr(float(v))])
    else:
        w.writerow(["x", "y", "value"])
        for i, x in enumerate(axes[0]):
            for j, y in enumerate(axes[1]):
                w.writerow([repr(float(x)), repr(float(y)), repr(float(vals[i, j]))])
    text = out.getvalue()
    if fp is not None:
        fp.write(text)
    return text


def read_grid_csv(fp, domain: Domain) -> np.ndarray:
    rows = list(csv.DictReader(fp))
    vals = np.array([float(r["value"]) for r in rows])
    if domain.dim == 1:
        return vals
    n = int(round(np.sqrt(vals.size)))
    if n * n != vals.size:
        raise ValueError("rectangle grid CSV is not square")
    return vals.reshape(n, n)
