"""The 2x2 non-cooperative system ``-Lap U = A U + mu U + F`` with Dirichlet data.

``A = [[a, b], [c, d]]`` with ``b > 0 > c``.  The system has two principal
eigenvalues ``mu1_minus < mu1_plus`` (``lambda_1`` minus the eigenvalues of
``A``).  Near ``mu1_minus`` the sign pattern of ``(u, v)`` is governed by a
mix of the maximum and antimaximum principles, reached through the
substitutions ``w = u + t v`` and ``w = -u + t_star v``.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .scalar import (
    RESONANCE_GUARD,
    ResonanceError,
    SignReport,
    Verdict,
    classify_sign,
    solve_resolvent,
)
from .spectral import (
    Domain,
    SpectralFn,
    decompose,
    eigenvalues,
    grid_values,
    norm,
    principal_eigenvalue,
    second_eigenvalue,
)

HYPOTHESIS_TOL = 1e-9


class HypothesisError(ValueError):
    """A structural hypothesis on the coupling matrix or on ``mu`` fails."""


@dataclass(frozen=True)
class CouplingMatrix:
    a: float
    b: float
    c: float
    d: float

    @classmethod
    def of(cls, values) -> "CouplingMatrix":
        if isinstance(values, CouplingMatrix):
            return values
        a, b, c, d = (float(v) for v in values)
        return cls(a, b, c, d)

    @property
    def D(self) -> float:
        return (self.a - self.d) ** 2 + 4 * self.b * self.c

    def as_array(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]])

    def mirrored(self) -> "CouplingMatrix":
        """Matrix of the system in ``(v, -u)``: swaps the roles of ``a`` and ``d``."""
        return CouplingMatrix(self.d, -self.c, -self.b, self.a)

    def satisfies_H1(self) -> bool:
        return self.b > 0 and self.c < 0 and self.D > 0

    def tolist(self) -> list[float]:
        return [self.a, self.b, self.c, self.d]


@dataclass(frozen=True)
class SystemSpectrum:
    lambda1: float
    D: float
    xi1: float
    xi2: float
    mu1_minus: float
    mu1_plus: float


def spectrum(A, lambda1: float) -> SystemSpectrum:
    A = CouplingMatrix.of(A)
    D = A.D
    if D <= 0:
        raise HypothesisError(f"D = {D} <= 0: no pair of distinct real principal eigenvalues")
    r = math.sqrt(D)
    xi1 = (A.a + A.d + r) / 2
    xi2 = (A.a + A.d - r) / 2
    return SystemSpectrum(lambda1, D, xi1, xi2, lambda1 - xi1, lambda1 - xi2)


@dataclass(frozen=True)
class GammaPair:
    gamma1: float
    gamma2: float


def gammas(A, lambda1: float, mu: float) -> GammaPair:
    """Coefficients of the decoupled scalar equations.

    ``gamma1 = lambda1 + mu - mu1_plus`` and ``gamma2 = lambda1 + mu - mu1_minus``;
    ``lambda1`` is accepted for symmetry with ``spectrum`` but the closed
    form does not depend on it.
    """
    A = CouplingMatrix.of(A)
    D = A.D
    if D <= 0:
        raise HypothesisError(f"D = {D} <= 0")
    r = math.sqrt(D)
    return GammaPair((A.a + A.d + 2 * mu - r) / 2, (A.a + A.d + 2 * mu + r) / 2)


@dataclass(frozen=True)
class CouplingConstants:
    t: float
    t_star: float


def coupling_constants(A) -> CouplingConstants:
    A = CouplingMatrix.of(A)
    if A.c == 0:
        raise HypothesisError("c = 0: the system is not coupled from u into v")
    D = A.D
    if D < 0:
        raise HypothesisError(f"D = {D} < 0")
    r = math.sqrt(D)
    return CouplingConstants((A.a - A.d + r) / (-2 * A.c), (A.d - A.a + r) / (-2 * A.c))


@dataclass
class LemmaCheck:
    """Both sides of each equivalence ``L1``-``L6``, plus the smallest comparison margin."""

    pairs: dict
    margin: float

    def all_agree(self) -> bool:
        return all(lhs == rhs for lhs, rhs in self.pairs.values())


def lemma_L_check(A, lambda1: float, mu: float, delta: float) -> LemmaCheck:
    A = CouplingMatrix.of(A)
    sp = spectrum(A, lambda1)
    g = gammas(A, lambda1, mu)
    r = math.sqrt(sp.D)
    g1, g2 = g.gamma1, g.gamma2
    a_mu, d_mu = A.a + mu, A.d + mu
    comparisons = [
        (mu, sp.mu1_plus), (g1, lambda1),
        (sp.mu1_minus, mu), (lambda1, g2),
        (r, A.a - A.d), (d_mu, g1), (g1, g2), (g2, a_mu),
        (r, A.d - A.a), (a_mu, g1), (g2, d_mu),
        (mu, sp.mu1_plus + delta), (g1, lambda1 + delta),
        (mu, sp.mu1_minus + delta), (g2, lambda1 + delta),
    ]
    pairs = {
        "L1": (mu < sp.mu1_plus, g1 < lambda1),
        "L2": (sp.mu1_minus < mu, lambda1 < g2),
        "L3": (r < A.a - A.d, d_mu < g1 < g2 < a_mu),
        "L4": (r < A.d - A.a, a_mu < g1 < g2 < d_mu),
        "L5": (mu < sp.mu1_plus + delta, g1 < lambda1 + delta),
        "L6": (mu < sp.mu1_minus + delta, g2 < lambda1 + delta),
    }
    margin = min(abs(x - y) for x, y in comparisons)
    return LemmaCheck(pairs, margin)


# ---------------------------------------------------------------------------
# solves
# ---------------------------------------------------------------------------

def _align(f: SpectralFn, g: SpectralFn) -> tuple[SpectralFn, SpectralFn]:
    if f.domain != g.domain:
        raise ValueError("f and g live on different domains")
    M = max(f.M, g.M)
    return f.padded(M), g.padded(M)


def solve_system(A, mu: float, f: SpectralFn, g: SpectralFn,
                 guard: float = RESONANCE_GUARD) -> tuple[SpectralFn, SpectralFn]:
    """Per-mode solve of ``((lambda_m - mu) I - A) (u_m, v_m) = (f_m, g_m)``."""
    A = CouplingMatrix.of(A)
    f, g = _align(f, g)
    lam = eigenvalues(f.domain, f.M)
    s = lam - mu
    p, r = s - A.a, s - A.d
    det = p * r - A.b * A.c
    scale = 1 + np.abs(s) ** 2 + abs(A.b * A.c) + (abs(A.a) + abs(A.d)) * np.abs(s)
    present = (f.coeffs != 0) | (g.coeffs != 0)
    bad = present & (np.abs(det) <= guard * scale)
    if np.any(bad):
        m = int(np.flatnonzero(bad)[0])
        branch = None
        if A.D >= 0:
            xi = ((A.a + A.d + math.sqrt(A.D)) / 2, (A.a + A.d - math.sqrt(A.D)) / 2)
            branch = 1 + int(abs(s[m] - xi[1]) < abs(s[m] - xi[0]))
        raise ResonanceError(
            f"mu={mu!r} is a system eigenvalue for mode {m + 1} "
            f"(lambda={lam[m]!r}, branch xi{branch})", mode=m + 1, branch=branch)
    u = np.zeros_like(f.coeffs)
    v = np.zeros_like(f.coeffs)
    u[present] = (r[present] * f.coeffs[present] + A.b * g.coeffs[present]) / det[present]
    v[present] = (A.c * f.coeffs[present] + p[present] * g.coeffs[present]) / det[present]
    return SpectralFn(f.domain, u), SpectralFn(f.domain, v)


def system_residual(A, mu: float, f: SpectralFn, g: SpectralFn, u: SpectralFn, v: SpectralFn) -> float:
    """Largest per-mode residual of the truncated system."""
    A = CouplingMatrix.of(A)
    M = max(f.M, g.M, u.M, v.M)
    s = eigenvalues(f.domain, M) - mu
    fc, gc, uc, vc = (x.padded(M).coeffs for x in (f, g, u, v))
    r1 = (s - A.a) * uc - A.b * vc - fc
    r2 = -A.c * uc + (s - A.d) * vc - gc
    return float(max(np.max(np.abs(r1)), np.max(np.abs(r2))))


@dataclass(frozen=True)
class DecoupledScalar:
    """A scalar problem ``-Lap w = gamma w + forcing`` and its coupling constant."""

    t: float
    gamma: float
    forcing: SpectralFn


def decouple_thm2(A, mu: float, f: SpectralFn, g: SpectralFn) -> tuple[SpectralFn, DecoupledScalar]:
    """``w = u + t v`` solves ``-Lap w = gamma1 w + f + t g`` when ``a > d``."""
    A = CouplingMatrix.of(A)
    if not A.a > A.d:
        raise HypothesisError(f"the u + t v substitution needs a > d, got a={A.a}, d={A.d}")
    if not A.satisfies_H1():
        raise HypothesisError("coupling matrix violates b > 0, c < 0, D > 0")
    f, g = _align(f, g)
    t = coupling_constants(A).t
    gamma1 = gammas(A, principal_eigenvalue(f.domain), mu).gamma1
    forcing = f + t * g
    return solve_resolvent(forcing, gamma1), DecoupledScalar(t, gamma1, forcing)


def decouple_thm6(A, mu: float, f: SpectralFn, g: SpectralFn) -> tuple[SpectralFn, SpectralFn, SpectralFn]:
    """Solve the system below ``mu1_minus`` through ``w = -u + t_star v``.

    ``w`` first (coefficient ``gamma2``, forcing ``t_star g - f``), then
    ``v`` from ``-Lap v = gamma1 v - c w + g`` and ``u`` from
    ``-Lap u = gamma1 u + (b / t_star) w + f``.  Returns ``(u, v, w)``.
    """
    A = CouplingMatrix.of(A)
    if not A.a < A.d:
        raise HypothesisError(f"the -u + t_star v substitution needs a < d, got a={A.a}, d={A.d}")
    if not A.satisfies_H1():
        raise HypothesisError("coupling matrix violates b > 0, c < 0, D > 0")
    f, g = _align(f, g)
    lam1 = principal_eigenvalue(f.domain)
    sp = spectrum(A, lam1)
    if not mu < sp.mu1_minus:
        raise HypothesisError(f"need mu < mu1_minus = {sp.mu1_minus}, got {mu}")
    ts = coupling_constants(A).t_star
    gm = gammas(A, lam1, mu)
    w = solve_resolvent(ts * g - f, gm.gamma2)
    v = solve_resolvent(g - A.c * w, gm.gamma1)
    u = solve_resolvent(f + (A.b / ts) * w, gm.gamma1)
    return u, v, w


# ---------------------------------------------------------------------------
# hypotheses and the delta_2 budget
# ---------------------------------------------------------------------------

def grid_sign(f: SpectralFn, n: int | None = None, tau: float | None = None) -> tuple[str, bool]:
    """Sign class of ``f`` on the interior grid and whether it is nonzero.

    Returns ``(">=0" | "<=0" | "mixed" | "zero", nonzero)``; values within
    ``tau`` (default ``1e-9 * max|f|``) of zero count as zero.
    """
    from .spectral import interior_grid

    n = n or f.domain.default_grid()
    vals = grid_values(f, interior_grid(f.domain, n))
    sup = float(np.max(np.abs(vals))) if vals.size else 0.0
    if tau is None:
        tau = HYPOTHESIS_TOL * sup
    lo, hi = float(np.min(vals)), float(np.max(vals))
    nonzero = sup > tau and sup > 0
    if not nonzero:
        return "zero", False
    if lo >= -tau:
        return ">=0", True
    if hi <= tau:
        return "<=0", True
    return "mixed", True


@dataclass
class Theorem2Budget:
    sigma: float | None
    script_A: float
    script_B: float
    delta2: float
    K_used: float
    alpha: float
    beta: float
    capped: bool


def theorem2_budget(A, lambda1: float, lambda2: float, f: SpectralFn, g: SpectralFn, K: float,
                    mu: float | None = None, q: float = 2.0, n: int | None = None) -> Theorem2Budget:
    """Window ``delta2 = K * script_A / script_B`` above ``mu1_minus`` for the ``u < 0, v > 0`` pattern.

    ``script_B`` is the bracket of the orthogonal-part estimate with its
    proof-internal constant absorbed into ``K``.  With no orthogonal part
    ``script_B = 0`` and the window is unbounded (``capped``).
    """
    A = CouplingMatrix.of(A)
    if not A.satisfies_H1():
        raise HypothesisError("coupling matrix violates b > 0, c < 0, D > 0")
    if not A.a > A.d:
        raise HypothesisError(f"budget needs a > d, got a={A.a}, d={A.d}")
    f, g = _align(f, g)
    fd, gd = decompose(f), decompose(g)
    alpha, beta = fd.alpha, gd.alpha
    if alpha < 0 or beta < 0 or (alpha == 0 and beta == 0):
        raise HypothesisError(f"need nonnegative phi_1 components, not both zero (alpha={alpha}, beta={beta})")
    sp = spectrum(A, lambda1)
    gap = sp.mu1_plus - sp.mu1_minus
    script_A = alpha * (lambda1 - A.d - sp.mu1_plus) / gap + beta * A.b / gap
    if not script_A > 0:
        raise HypothesisError(f"script_A = {script_A} is not positive")
    script_B = ((lambda2 - A.d - sp.mu1_minus) / (lambda2 - lambda1) * norm(fd.h_perp, q, n)
                + A.b / (lambda2 - lambda1) * norm(gd.h_perp, q, n))
    sigma = None
    if mu is not None:
        g1 = gammas(A, lambda1, mu).gamma1
        sigma = alpha * (lambda1 - A.d - mu) / (lambda1 - g1) + beta * A.b / (lambda1 - g1)
    if script_B == 0:
        return Theorem2Budget(sigma, script_A, 0.0, math.inf, K, alpha, beta, True)
    return Theorem2Budget(sigma, script_A, script_B, K * script_A / script_B, K, alpha, beta, False)


@dataclass
class HypothesisReport:
    H1: bool
    H2: bool
    H2_prime: bool
    H3: bool
    H3_prime: bool
    f_sign: str
    g_sign: str
    H4_variant: str
    H4_thm6: bool
    H5: bool | None = None
    delta2: float | None = None


THEOREMS = {
    # id: (mu regime, coefficient regime, f sign, g sign, predicted u, predicted v)
    "T2": ("H2", "H3", ">=0", ">=0", Verdict.STRICTLY_NEGATIVE, Verdict.STRICTLY_POSITIVE),
    "R3": ("H2", "H3", "<=0", "<=0", Verdict.STRICTLY_POSITIVE, Verdict.STRICTLY_NEGATIVE),
    "T4": ("H2", "H3_prime", "<=0", ">=0", Verdict.STRICTLY_NEGATIVE, Verdict.STRICTLY_NEGATIVE),
    "R5": ("H2", "H3_prime", ">=0", "<=0", Verdict.STRICTLY_POSITIVE, Verdict.STRICTLY_POSITIVE),
    "T6": ("H2_prime", "H3_prime", ">=0", ">=0", Verdict.STRICTLY_POSITIVE, Verdict.STRICTLY_POSITIVE),
    "R7": ("H2_prime", "H3_prime", "<=0", "<=0", Verdict.STRICTLY_NEGATIVE, Verdict.STRICTLY_NEGATIVE),
}


def _sign_ok(actual: str, wanted: str) -> bool:
    return actual == wanted or actual == "zero"


def check_hypotheses(A, mu: float, f: SpectralFn, g: SpectralFn, n: int | None = None,
                     tau: float | None = None) -> HypothesisReport:
    A = CouplingMatrix.of(A)
    f, g = _align(f, g)
    lam1 = principal_eigenvalue(f.domain)
    H1 = A.satisfies_H1()
    if A.D > 0:
        sp = spectrum(A, lam1)
        H2 = sp.mu1_minus < mu < sp.mu1_plus
        H2p = mu < sp.mu1_minus
    else:
        H2 = H2p = False
    f_sign, _ = grid_sign(f, n, tau)
    g_sign, _ = grid_sign(g, n, tau)
    H4_thm6 = False
    if A.c != 0 and A.D >= 0:
        ts = coupling_constants(A).t_star
        H4_thm6 = grid_sign(ts * g - f, n, tau)[0] == ">=0"
    return HypothesisReport(H1, H2, H2p, A.d < A.a, A.a < A.d, f_sign, g_sign,
                            f"f{f_sign},g{g_sign}", H4_thm6)


@dataclass
class TheoremReport:
    theorem: str
    hypotheses: HypothesisReport
    predicted: tuple[str, str]
    u_report: SignReport
    v_report: SignReport
    hypotheses_hold: bool | None
    pattern_holds: bool
    verdict: str

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "hypotheses": asdict(self.hypotheses),
            "predicted": list(self.predicted),
            "u": self.u_report.to_dict(),
            "v": self.v_report.to_dict(),
            "hypotheses_hold": self.hypotheses_hold,
            "pattern_holds": self.pattern_holds,
            "verdict": self.verdict,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), default=_json_default)


def _json_default(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return repr(obj)
    raise TypeError(f"cannot serialize {type(obj)}")


def _budget_data(theorem: str, A: CouplingMatrix, f: SpectralFn, g: SpectralFn):
    # T4/R5 reduce to T2/R3 on (v, -u): a <-> d, forcing (g, -f)
    if theorem == "T2":
        return A, f, g
    if theorem == "R3":
        return A, -f, -g
    if theorem == "T4":
        return A.mirrored(), g, -f
    if theorem == "R5":
        return A.mirrored(), -g, f
    raise ValueError(theorem)


def verify_theorem(A, mu: float, f: SpectralFn, g: SpectralFn, theorem: str,
                   K: float | None = None, n: int | None = None, tau: float | None = None,
                   q: float = 2.0) -> TheoremReport:
    """Check a sign-pattern theorem's hypotheses, solve the system, and compare signs.

    ``theorem`` is one of T2, R3, T4, R5, T6, R7.  For the windows above
    ``mu1_minus`` (T2 to R5) the hypothesis ``mu < mu1_minus + delta2``
    needs a caller-supplied ``K``; without one it is left undecided.
    Hypothesis failures are reported, never raised.
    """
    if theorem not in THEOREMS:
        raise ValueError(f"unknown theorem id {theorem!r}; choose from {sorted(THEOREMS)}")
    A = CouplingMatrix.of(A)
    f, g = _align(f, g)
    mu_regime, coef_regime, f_want, g_want, pu, pv = THEOREMS[theorem]
    hyp = check_hypotheses(A, mu, f, g, n, tau)
    flags = [hyp.H1, getattr(hyp, mu_regime), getattr(hyp, coef_regime),
             _sign_ok(hyp.f_sign, f_want), _sign_ok(hyp.g_sign, g_want),
             not (hyp.f_sign == "zero" and hyp.g_sign == "zero")]
    if theorem == "T6":
        flags.append(hyp.H4_thm6)
    elif theorem == "R7":
        ts = coupling_constants(A).t_star if A.c != 0 and A.D >= 0 else math.nan
        flags.append(math.isfinite(ts) and grid_sign(ts * g - f, n, tau)[0] == "<=0")
    else:
        hyp.H5 = None
        if K is not None and all(flags):
            try:
                Ab, fb, gb = _budget_data(theorem, A, f, g)
                dom = f.domain
                budget = theorem2_budget(Ab, principal_eigenvalue(dom), second_eigenvalue(dom),
                                         fb, gb, K, mu=mu, q=q, n=n)
                hyp.delta2 = budget.delta2
                hyp.H5 = bool(mu < spectrum(A, principal_eigenvalue(dom)).mu1_minus + budget.delta2)
            except HypothesisError:
                hyp.H5 = False
        flags.append(hyp.H5)

    u, v = solve_system(A, mu, f, g)
    ur, vr = classify_sign(u, n, None), classify_sign(v, n, None)
    pattern = ur.verdict is pu and vr.verdict is pv
    if any(flag is False for flag in flags):
        holds, verdict = False, "hypotheses-unmet"
    elif any(flag is None for flag in flags):
        holds, verdict = None, "window-undecided" if pattern else "pattern-fails-window-undecided"
    else:
        holds, verdict = True, "confirmed" if pattern else "contradicted"
    return TheoremReport(theorem, hyp, (pu.value, pv.value), ur, vr, holds, pattern, verdict)


# ---------------------------------------------------------------------------
# counterexample on (0, pi)
# ---------------------------------------------------------------------------

COUNTEREXAMPLE_MATRIX = CouplingMatrix(4.0, 1.0, -1.0, 1.0)
COUNTEREXAMPLE_DOMAIN = Domain.interval(math.pi)
COUNTEREXAMPLE_MU1 = 0.5 * (-3 - math.sqrt(5))  # 1 - (5 + sqrt 5) / 2


def counterexample_forcing(M: int = 16) -> SpectralFn:
    """``phi_1 - phi_2 / 2`` on ``(0, pi)``; nonnegative since ``1 - cos x >= 0``."""
    c = np.zeros(max(M, 2))
    c[:2] = 1.0, -0.5
    return SpectralFn(COUNTEREXAMPLE_DOMAIN, c)


@dataclass
class CounterexampleReport:
    part: int
    k: float
    mu: float
    u: SpectralFn
    v: SpectralFn
    u_report: SignReport
    v_report: SignReport
    values: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "part": self.part,
            "k": self.k,
            "mu": self.mu,
            "u_coeffs": [float(x) for x in self.u.coeffs],
            "v_coeffs": [float(x) for x in self.v.coeffs],
            "u": self.u_report.to_dict(),
            "v": self.v_report.to_dict(),
            **self.values,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), default=_json_default)


def counterexample_part1(k: float, M: int = 16, n: int | None = None) -> CounterexampleReport:
    """``mu = -3`` below ``mu1_minus`` with ``g = k f``: v changes sign once ``k > 20/3``."""
    f = counterexample_forcing(M)
    mu = -3.0
    u, v = solve_system(COUNTEREXAMPLE_MATRIX, mu, f, k * f)
    vr = classify_sign(v, n)
    v1, v2 = float(v.coeffs[0]), float(v.coeffs[1])
    v2_closed = (1 - 3 * k) / 38
    values = {
        "v1": v1,
        "v2": v2,
        "v1_closed_form": -1.0,
        "v2_closed_form": v2_closed,
        "closed_form_error": max(abs(v1 + 1), abs(v2 - v2_closed)),
        "mp_fails": vr.verdict is Verdict.MIXED,
        "mp_fails_expected": (3 * k - 1) / 38 > 0.5,
    }
    return CounterexampleReport(1, float(k), mu, u, v, classify_sign(u, n), vr, values)


def part2_displayed_ratio(eps: float) -> float:
    """The closed form printed for ``u_2 / u_1`` in the second counterexample."""
    r5 = math.sqrt(5)
    return ((3 + eps) / eps) * ((r5 - eps) / ((9 + 3 * r5) - (6 + r5) * eps + eps ** 2))


def part2_general_ratio(mu: float, k: float) -> float:
    """``u_2 / u_1`` from the two-mode solve, before substituting ``mu`` and ``k``."""
    return ((mu - k - 3) / (k - mu)) * ((mu ** 2 + 3 * mu + 1) / (2 * (mu ** 2 - 3 * mu + 1)))


def counterexample_part2(eps: float, M: int = 16, n: int | None = None,
                         k_rule: str = "anchored") -> CounterexampleReport:
    """``mu = mu1_minus + eps`` just above the lower principal eigenvalue.

    ``k_rule="anchored"`` uses ``k = mu1_minus + eps**2``.  ``k_rule="shifted"``
    uses ``k = mu + eps**2``, which makes ``u_1`` vanish faster than ``u_2``
    so that ``u_2 / u_1`` blows up like ``1 / eps``.
    """
    if not 0 < eps < 0.5:
        raise ValueError(f"eps must lie in (0, 0.5), got {eps}")
    mu = COUNTEREXAMPLE_MU1 + eps
    if k_rule == "anchored":
        k = COUNTEREXAMPLE_MU1 + eps ** 2
    elif k_rule == "shifted":
        k = mu + eps ** 2
    else:
        raise ValueError(f"unknown k_rule {k_rule!r}")
    f = counterexample_forcing(M)
    g = k * f
    u, v = solve_system(COUNTEREXAMPLE_MATRIX, mu, f, g)
    ratio = float(u.coeffs[1] / u.coeffs[0])
    displayed = part2_displayed_ratio(eps)
    ur = classify_sign(u, n)
    values = {
        "eps": eps,
        "k_rule": k_rule,
        "ratio": ratio,
        "ratio_general_form": part2_general_ratio(mu, k),
        "ratio_displayed_form": displayed,
        "displayed_rel_error": abs(ratio - displayed) / abs(displayed),
        "f_sign": grid_sign(f, n)[0],
        "g_sign": grid_sign(g, n)[0],
        "u_changes_sign": ur.verdict is Verdict.MIXED,
    }
    return CounterexampleReport(2, k, mu, u, v, ur, classify_sign(v, n), values)
