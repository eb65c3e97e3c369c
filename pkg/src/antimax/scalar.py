"""Scalar resolvent ``-Lap z = mu z + h`` and the antimaximum principle.

Solutions are exact for band-limited forcing: ``z_m = h_m / (lambda_m - mu)``.
Above the principal eigenvalue a forcing with positive ``phi_1`` component
produces a negative solution until ``mu - lambda_1`` exceeds a validity
interval that shrinks with the size of the orthogonal part of ``h``.  This
module measures that interval by scan-and-bisect.
"""

from __future__ import annotations

import csv
import enum
import io
import json
from dataclasses import asdict, dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .spectral import (
    Domain,
    SpectralFn,
    closed_grid,
    decompose,
    eigenvalues,
    grid_values,
    interior_grid,
    norm,
    normal_derivative,
    principal_eigenvalue,
    second_eigenvalue,
)

RESONANCE_GUARD = 1e-10
SIGN_TOL = 1e-9


class ResonanceError(ValueError):
    """``mu`` sits on an eigenvalue carried by the forcing."""

    def __init__(self, message: str, mode: int | None = None, branch: int | None = None):
        super().__init__(message)
        self.mode = mode
        self.branch = branch


class KUndefinedError(ValueError):
    """No sample in a K-estimation family constrains K."""


class Verdict(str, enum.Enum):
    STRICTLY_NEGATIVE = "StrictlyNegative"
    STRICTLY_POSITIVE = "StrictlyPositive"
    MIXED = "Mixed"
    INDETERMINATE = "Indeterminate"

    def __str__(self):
        return self.value


def solve_resolvent(h: SpectralFn, mu: float, guard: float = RESONANCE_GUARD) -> SpectralFn:
    """Exact solution of ``-Lap z = mu z + h`` with Dirichlet data.

    Raises ResonanceError if ``mu`` is within ``guard * (1 + |lambda_m|)`` of
    an eigenvalue whose mode is present in ``h``.
    """
    lam = eigenvalues(h.domain, h.M)
    gap = lam - mu
    present = h.coeffs != 0
    bad = present & (np.abs(gap) <= guard * (1 + np.abs(lam)))
    if np.any(bad):
        m = int(np.flatnonzero(bad)[0]) + 1
        raise ResonanceError(f"mu={mu!r} resonates with mode {m} (lambda={lam[m - 1]!r})", mode=m)
    z = np.zeros_like(h.coeffs)
    z[present] = h.coeffs[present] / gap[present]
    return SpectralFn(h.domain, z)


# ---------------------------------------------------------------------------
# sign classification
# ---------------------------------------------------------------------------

@dataclass
class SignReport:
    verdict: Verdict
    min_interior: float
    max_interior: float
    boundary_min_normal_derivative: float
    boundary_max_normal_derivative: float
    witness_points: dict = field(default_factory=dict)
    tolerance: float = 0.0

    def to_dict(self) -> dict:
        d = asdict(self)
        d["verdict"] = self.verdict.value
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _point(axes, flat_index, shape) -> list[float]:
    idx = np.unravel_index(flat_index, shape)
    return [float(ax[i]) for ax, i in zip(axes, idx)]


def classify_sign(z: SpectralFn, n: int | None = None, tau: float | None = None) -> SignReport:
    """Strict-sign verdict for ``z`` inside the domain and on its boundary.

    StrictlyNegative means ``z < -tau`` on the interior grid and outward
    normal derivative ``> tau`` on the boundary (the antimaximum conclusion);
    StrictlyPositive is the mirror image.  ``tau`` defaults to
    ``1e-9 * max|z|``.
    """
    dom = z.domain
    n = n or dom.default_grid()
    if n < 64:
        raise ValueError("classify_sign needs n >= 64")
    axes = interior_grid(dom, n)
    vals = np.atleast_1d(grid_values(z, axes))
    nd = normal_derivative(z, n)
    if tau is None:
        sup = float(np.max(np.abs(grid_values(z, closed_grid(dom, n)))))
        tau = SIGN_TOL * sup
    lo, hi = float(vals.min()), float(vals.max())
    nd_lo, nd_hi = nd.min, nd.max
    witnesses = {
        "min_interior": _point(axes, int(np.argmin(vals)), vals.shape),
        "max_interior": _point(axes, int(np.argmax(vals)), vals.shape),
        "boundary_min_normal_derivative": [float(v) for v in nd.points[int(np.argmin(nd.values))]],
        "boundary_max_normal_derivative": [float(v) for v in nd.points[int(np.argmax(nd.values))]],
    }
    if hi < -tau and nd_lo > tau:
        verdict = Verdict.STRICTLY_NEGATIVE
    elif lo > tau and nd_hi < -tau:
        verdict = Verdict.STRICTLY_POSITIVE
    elif (lo < -tau and hi > tau) or (nd_lo < -tau and nd_hi > tau):
        verdict = Verdict.MIXED
    else:
        verdict = Verdict.INDETERMINATE
    return SignReport(verdict, lo, hi, nd_lo, nd_hi, witnesses, float(tau))


# ---------------------------------------------------------------------------
# validity interval
# ---------------------------------------------------------------------------

@dataclass
class AmpInterval:
    delta_star: float
    cap: float
    scan_step: float
    bisection_tol: float
    alpha: float
    h_perp_norm_q: float
    q: float
    capped: bool
    scan_log: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def amp_holds(h: SpectralFn, mu: float, n: int | None = None, tau: float | None = None) -> bool:
    return classify_sign(solve_resolvent(h, mu), n, tau).verdict is Verdict.STRICTLY_NEGATIVE


def _default_Lambda(domain: Domain) -> float:
    lam1, lam2 = principal_eigenvalue(domain), second_eigenvalue(domain)
    return lam1 + 0.95 * (lam2 - lam1)


def empirical_amp_interval(
    h: SpectralFn,
    Lambda: float | None = None,
    scan_step: float | None = None,
    bisection_tol: float = 1e-9,
    q: float = 2.0,
    n: int | None = None,
    tau: float | None = None,
) -> AmpInterval:
    """Largest ``delta`` such that the antimaximum conclusion holds on ``(lambda_1, lambda_1 + delta)``.

    A coarse scan from ``lambda_1`` in steps of ``scan_step`` (default
    ``cap / 64``) locates the first failure; bisection then refines the
    crossing to ``bisection_tol``.  If no failure occurs up to ``Lambda`` the
    result is capped at ``Lambda - lambda_1``.
    """
    dom = h.domain
    lam1, lam2 = principal_eigenvalue(dom), second_eigenvalue(dom)
    if Lambda is None:
        Lambda = _default_Lambda(dom)
    if not lam1 < Lambda < lam2:
        raise ValueError(f"Lambda must lie in (lambda_1, lambda_2) = ({lam1}, {lam2}), got {Lambda}")
    dec = decompose(h)
    if dec.alpha <= 0:
        raise ValueError(f"antimaximum interval needs a positive phi_1 component, got alpha={dec.alpha}")
    cap = Lambda - lam1
    scan_step = scan_step or cap / 64
    h_perp_norm = norm(dec.h_perp, q, n=None if q == 2 else n)

    log = []
    good, bad = 0.0, None
    eps = 0.0
    while eps < cap:
        eps = min(eps + scan_step, cap)
        ok = amp_holds(h, lam1 + eps, n, tau)
        log.append((eps, ok))
        if not ok:
            bad = eps
            break
        good = eps

    if bad is None:
        return AmpInterval(cap, cap, scan_step, bisection_tol, dec.alpha, h_perp_norm, q, True, log)

    while bad - good > bisection_tol:
        mid = 0.5 * (good + bad)
        if mid <= good or mid >= bad:
            break
        if amp_holds(h, lam1 + mid, n, tau):
            good = mid
        else:
            bad = mid
    return AmpInterval(0.5 * (good + bad), cap, scan_step, bisection_tol, dec.alpha,
                       h_perp_norm, q, False, log)


# ---------------------------------------------------------------------------
# proof constants and K
# ---------------------------------------------------------------------------

@dataclass
class BoundaryConstants:
    A: float
    B: float
    eps_prime: float
    C2_empirical: float


def theory_constants(
    domain: Domain,
    eps_prime: float,
    probes: Sequence[SpectralFn],
    q: float = 2.0,
    Lambda: float | None = None,
    n: int | None = None,
) -> BoundaryConstants:
    """Boundary slope ``A`` and inner floor ``B`` of ``phi_1``, plus a measured C1/Lq ratio.

    ``A`` is the minimum of ``|d phi_1 / d nu|`` over the boundary samples.
    ``B`` is the infimum of ``phi_1`` over points at distance greater than
    ``eps_prime`` from the boundary; ``phi_1`` is a product of sines, so it is
    attained at the inner corner and evaluated in closed form.
    """
    if not 0 < eps_prime <= domain.inradius / 2:
        raise ValueError(f"eps_prime must be in (0, {domain.inradius / 2}], got {eps_prime}")
    probes = list(probes)
    if not probes:
        raise ValueError("probe family is empty")
    for p in probes:
        if abs(p.coeffs[0]) > 1e-14 * max(1.0, float(np.max(np.abs(p.coeffs)))):
            raise ValueError("probes must be orthogonal to phi_1")

    phi1 = SpectralFn.mode(domain, 1)
    A = float(np.min(np.abs(normal_derivative(phi1, n).values)))
    B = float(np.prod([np.sqrt(2 / L) * np.sin(np.pi * eps_prime / L) for L in domain.lengths]))

    lam1 = principal_eigenvalue(domain)
    if Lambda is None:
        Lambda = _default_Lambda(domain)
    ratios = [
        norm(solve_resolvent(p, lam1 + (Lambda - lam1) * j / 10), "C1", n) / norm(p, q, n)
        for p in probes
        for j in range(1, 11)
    ]
    return BoundaryConstants(A, B, float(eps_prime), float(max(ratios)))


def lemma21_ratio(h_perp: SpectralFn, mu: float, q: float = 2.0, n: int | None = None) -> float:
    """``||z||_C1 / ||h_perp||_Lq`` for the resolvent of a forcing orthogonal to ``phi_1``."""
    return norm(solve_resolvent(h_perp, mu), "C1", n) / norm(h_perp, q, n)


@dataclass
class KEstimate:
    K_hat: float
    table: list[dict]

    def to_csv(self) -> str:
        out = io.StringIO()
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["alpha", "h_perp_norm", "delta_star", "capped", "ratio"])
        for row in self.table:
            w.writerow([repr(row["alpha"]), repr(row["h_perp_norm"]), repr(row["delta_star"]),
                        int(row["capped"]), repr(row["ratio"])])
        return out.getvalue()


def k_row(amp: AmpInterval) -> dict:
    """One row of the K table for a measured interval."""
    ratio = amp.delta_star * amp.h_perp_norm_q / amp.alpha
    return {
        "alpha": amp.alpha,
        "h_perp_norm": amp.h_perp_norm_q,
        "delta_star": amp.delta_star,
        "capped": amp.capped,
        "ratio": ratio,
    }


def k_hat(table: Sequence[dict]) -> float:
    free = [row["ratio"] for row in table if not row["capped"]]
    if not free:
        raise KUndefinedError("every sample is cap-bound; K is undefined")
    return float(min(free))


def estimate_K(
    family: Iterable[SpectralFn],
    Lambda: float | None = None,
    q: float = 2.0,
    scan_step: float | None = None,
    bisection_tol: float = 1e-9,
    n: int | None = None,
) -> KEstimate:
    """Smallest ``delta_star * ||h_perp||_q / alpha`` over the samples not bound by the cap.

    Capped samples are kept in the table but do not constrain K: for them
    the limit ``mu <= Lambda`` binds first.
    """
    table = []
    for h in family:
        if not np.any(decompose(h).h_perp.coeffs != 0):
            raise KUndefinedError("h_perp vanishes: the interval is cap-bound and K is undefined")
        table.append(k_row(empirical_amp_interval(h, Lambda, scan_step, bisection_tol, q, n)))
    return KEstimate(k_hat(table), table)
