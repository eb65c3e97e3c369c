import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from antimax.instances import random_coupling, random_nonnegative
from antimax.scalar import ResonanceError, Verdict, classify_sign, solve_resolvent
from antimax.spectral import Domain, SpectralFn, eigenvalues
from antimax.system import (
    COUNTEREXAMPLE_MU1,
    CouplingMatrix,
    HypothesisError,
    check_hypotheses,
    counterexample_part1,
    counterexample_part2,
    coupling_constants,
    decouple_thm2,
    decouple_thm6,
    gammas,
    lemma_L_check,
    part2_general_ratio,
    solve_system,
    spectrum,
    system_residual,
    theorem2_budget,
    verify_theorem,
)

R5 = math.sqrt(5)
CX = CouplingMatrix(4, 1, -1, 1)
MIRROR = CouplingMatrix(1, 1, -1, 4)


def brute_solve(A, mu, f, g):
    lam = eigenvalues(f.domain, f.M)
    out = np.array([np.linalg.solve((l - mu) * np.eye(2) - A.as_array(), [fm, gm])
                    for l, fm, gm in zip(lam, f.coeffs, g.coeffs)])
    return out[:, 0], out[:, 1]


def test_spectrum_examples():
    sp = spectrum(CX, 1.0)
    assert sp.D == 5
    assert sp.mu1_minus == pytest.approx(1 - (5 + R5) / 2, rel=1e-15)
    assert sp.mu1_plus == pytest.approx(1 - (5 - R5) / 2, rel=1e-15)
    assert sp.mu1_minus == pytest.approx(-2.6180, abs=1e-4)
    assert sp.mu1_plus == pytest.approx(-0.3820, abs=1e-4)
    with pytest.raises(HypothesisError):
        spectrum([1, 1, -1, 1], 1.0)


def test_spectrum_invariants(rng):
    for _ in range(200):
        A = random_coupling(rng)
        sp = spectrum(A, 2.5)
        assert sp.xi1 >= sp.xi2 and sp.mu1_minus <= sp.mu1_plus
        assert sp.D == pytest.approx((A.a - A.d) ** 2 + 4 * A.b * A.c)
        np.testing.assert_allclose(sorted(np.linalg.eigvals(A.as_array()).real), [sp.xi2, sp.xi1],
                                   rtol=1e-10, atol=1e-12)
        for xi in (sp.xi1, sp.xi2):
            assert abs((A.a - xi) * (A.d - xi) - A.b * A.c) < 1e-12 * (1 + xi * xi)


def test_gamma_examples_and_identities(rng):
    assert gammas(CX, 1.0, -3.0).gamma2 == pytest.approx((R5 - 1) / 2, rel=1e-14)
    sp = spectrum(CX, 1.0)
    assert gammas(CX, 1.0, sp.mu1_minus).gamma2 == pytest.approx(1.0, abs=1e-15)
    assert gammas(CX, 1.0, sp.mu1_plus).gamma1 == pytest.approx(1.0, abs=1e-15)
    for _ in range(200):
        A = random_coupling(rng)
        lam1, mu = rng.uniform(0.1, 20), rng.uniform(-20, 20)
        sp, g = spectrum(A, lam1), gammas(A, lam1, mu)
        assert g.gamma1 == pytest.approx(lam1 + mu - sp.mu1_plus, abs=1e-12 * (1 + abs(lam1) + abs(mu)))
        assert g.gamma2 == pytest.approx(lam1 + mu - sp.mu1_minus, abs=1e-12 * (1 + abs(lam1) + abs(mu)))


def test_coupling_constants_and_identities(rng):
    cc = coupling_constants(CX)
    assert cc.t == pytest.approx((3 + R5) / 2, rel=1e-15)
    assert 2 * CX.b / (CX.a - CX.d - R5) == pytest.approx(cc.t, rel=1e-14)
    assert coupling_constants(MIRROR).t_star == pytest.approx((3 + R5) / 2, rel=1e-15)
    for _ in range(500):
        A = random_coupling(rng, "a>d")
        lam1, mu = rng.uniform(0.1, 10), rng.uniform(-10, 10)
        t = coupling_constants(A).t
        g = gammas(A, lam1, mu)
        assert t > 0
        forms = [2 * A.b / (A.a - A.d - math.sqrt(A.D)), A.b / (g.gamma1 - A.d - mu),
                 A.b / (A.a + mu - g.gamma2), (g.gamma1 - A.a - mu) / A.c, (A.d + mu - g.gamma2) / A.c]
        for form in forms:
            assert form == pytest.approx(t, rel=1e-9)
        assert A.a + mu - A.b / t == pytest.approx(g.gamma2, abs=1e-12 * (1 + abs(g.gamma2) + abs(A.a)
                                                                         + abs(mu) + abs(A.b / t)) * 10)
        B = random_coupling(rng, "a<d")
        assert coupling_constants(B).t_star > 0


def test_lemma_examples():
    chk = lemma_L_check(CX, 1.0, -3.0, 0.1)
    assert chk.pairs["L2"] == (False, False)
    sp = spectrum(CX, 1.0)
    chk = lemma_L_check(CX, 1.0, 0.5 * (sp.mu1_minus + sp.mu1_plus), 0.1)
    assert chk.pairs["L1"] == (True, True) and chk.pairs["L2"] == (True, True)
    assert chk.pairs["L3"] == (True, True)
    assert chk.all_agree()


@settings(max_examples=300, deadline=None)
@given(st.floats(-5, 5), st.floats(0.1, 5), st.floats(-5, -0.1), st.floats(-5, 5),
       st.floats(0.1, 30), st.floats(-30, 30), st.floats(-3, 3))
def test_lemma_equivalences_property(a, b, c, d, lam1, mu, delta):
    A = CouplingMatrix(a, b, c, d)
    if A.D <= 0.01:
        return
    chk = lemma_L_check(A, lam1, mu, delta)
    if chk.margin < 1e-9:
        return
    assert chk.all_agree(), chk.pairs


def test_solve_system_examples(pi_interval):
    z = SpectralFn.zeros(pi_interval, 4)
    u, v = solve_system(CX, -3.0, z, z)
    assert not np.any(u.coeffs) and not np.any(v.coeffs)
    f = SpectralFn(pi_interval, [1.0, -0.5])
    u, v = solve_system(CX, -3.0, f, 7 * f)
    assert v.coeffs[0] == pytest.approx(-1.0, abs=1e-12)
    assert v.coeffs[1] == pytest.approx(-10 / 19, abs=1e-12)


def test_solve_system_against_brute_force(rng):
    dom = Domain.interval(1.7)
    for _ in range(100):
        A = random_coupling(rng)
        f, g = SpectralFn(dom, rng.normal(size=10)), SpectralFn(dom, rng.normal(size=10))
        mu = rng.uniform(-20, 40)
        u, v = solve_system(A, mu, f, g)
        bu, bv = brute_solve(A, mu, f, g)
        np.testing.assert_allclose(u.coeffs, bu, rtol=1e-9, atol=1e-12)
        np.testing.assert_allclose(v.coeffs, bv, rtol=1e-9, atol=1e-12)
        scale = 1 + np.max(np.abs(np.concatenate([f.coeffs, g.coeffs])))
        assert system_residual(A, mu, f, g, u, v) < 1e-12 * scale * (1 + abs(mu) + 40)


def test_det_factorization(rng):
    for _ in range(200):
        A = random_coupling(rng)
        sp = spectrum(A, 1.0)
        lam, mu = rng.uniform(0, 50), rng.uniform(-10, 10)
        det = np.linalg.det((lam - mu) * np.eye(2) - A.as_array())
        fact = (lam - mu - sp.xi1) * (lam - mu - sp.xi2)
        assert fact == pytest.approx(det, rel=1e-10, abs=1e-10)


def test_solve_system_resonance(pi_interval):
    sp = spectrum(CX, 1.0)
    f = SpectralFn(pi_interval, [1.0, 0.0])
    with pytest.raises(ResonanceError) as exc:
        solve_system(CX, sp.mu1_minus, f, f)
    assert exc.value.mode == 1 and exc.value.branch == 1
    with pytest.raises(ResonanceError) as exc:
        solve_system(CX, 4.0 - sp.xi2, SpectralFn(pi_interval, [0.0, 1.0]), f)
    assert exc.value.mode == 2 and exc.value.branch == 2


def test_sign_reversal_is_exact(rng, pi_interval):
    for _ in range(50):
        A = random_coupling(rng)
        f, g = SpectralFn(pi_interval, rng.normal(size=8)), SpectralFn(pi_interval, rng.normal(size=8))
        mu = rng.uniform(-10, 10)
        u, v = solve_system(A, mu, f, g)
        nu, nv = solve_system(A, mu, -f, -g)
        assert np.array_equal(nu.coeffs, -u.coeffs) and np.array_equal(nv.coeffs, -v.coeffs)


def test_decouple_thm2(pi_interval, rng):
    z = SpectralFn.zeros(pi_interval, 3)
    w, rec = decouple_thm2(CX, -2.0, z, z)
    assert not np.any(w.coeffs)
    assert rec.t == pytest.approx((3 + R5) / 2)
    with pytest.raises(HypothesisError):
        decouple_thm2(MIRROR, -2.0, z, z)
    for _ in range(100):
        A = random_coupling(rng, "a>d")
        f, g = SpectralFn(pi_interval, rng.normal(size=12)), SpectralFn(pi_interval, rng.normal(size=12))
        mu = rng.uniform(-10, 10)
        u, v = solve_system(A, mu, f, g)
        w, rec = decouple_thm2(A, mu, f, g)
        np.testing.assert_allclose(w.coeffs, (u + rec.t * v).coeffs, atol=1e-10)
        # u solves the scalar equation with coefficient gamma2 and forcing (b/t) w + f
        g2 = gammas(A, 1.0, mu).gamma2
        np.testing.assert_allclose(solve_resolvent((A.b / rec.t) * w + f, g2).coeffs, u.coeffs,
                                   rtol=1e-8, atol=1e-10)


def test_decouple_thm6(pi_interval, rng):
    sp = spectrum(MIRROR, 1.0)
    z = SpectralFn.zeros(pi_interval, 2)
    u, v, w = decouple_thm6(MIRROR, sp.mu1_minus - 1, z, z)
    assert not any(np.any(x.coeffs) for x in (u, v, w))
    with pytest.raises(HypothesisError):
        decouple_thm6(MIRROR, sp.mu1_minus + 0.1, z, z)
    with pytest.raises(HypothesisError):
        decouple_thm6(CX, -10, z, z)
    for _ in range(100):
        A = random_coupling(rng, "a<d")
        mu = spectrum(A, 1.0).mu1_minus - rng.uniform(0.01, 5)
        f, g = SpectralFn(pi_interval, rng.normal(size=12)), SpectralFn(pi_interval, rng.normal(size=12))
        u, v = solve_system(A, mu, f, g)
        du, dv, w = decouple_thm6(A, mu, f, g)
        ts = coupling_constants(A).t_star
        np.testing.assert_allclose(du.coeffs, u.coeffs, atol=1e-10)
        np.testing.assert_allclose(dv.coeffs, v.coeffs, atol=1e-10)
        np.testing.assert_allclose(w.coeffs, (-u + ts * v).coeffs, atol=1e-10)


def test_thm6_example(pi_interval):
    sp = spectrum(MIRROR, 1.0)
    f, g = SpectralFn(pi_interval, [0.0, 0.0]), SpectralFn(pi_interval, [1.0, 0.0])
    u, v, _ = decouple_thm6(MIRROR, sp.mu1_minus - 1, f, g)
    assert classify_sign(u).verdict is Verdict.STRICTLY_POSITIVE
    assert classify_sign(v).verdict is Verdict.STRICTLY_POSITIVE


def test_verify_theorem_examples(pi_interval):
    sp = spectrum(CX, 1.0)
    phi1 = SpectralFn.mode(pi_interval, 1, 8)
    rep = verify_theorem(CX, sp.mu1_minus + 0.01, phi1, phi1, "T2", K=1.0)
    assert rep.u_report.verdict is Verdict.STRICTLY_NEGATIVE
    assert rep.v_report.verdict is Verdict.STRICTLY_POSITIVE
    assert rep.verdict == "confirmed" and rep.hypotheses.H5 is True
    rep = verify_theorem(CX, sp.mu1_minus + 0.01, -phi1, -phi1, "R3", K=1.0)
    assert (rep.u_report.verdict, rep.v_report.verdict) == (Verdict.STRICTLY_POSITIVE,
                                                            Verdict.STRICTLY_NEGATIVE)
    assert rep.verdict == "confirmed"
    spm = spectrum(MIRROR, 1.0)
    rep = verify_theorem(MIRROR, spm.mu1_minus + 0.01, -phi1, phi1, "T4", K=1.0)
    assert (rep.u_report.verdict, rep.v_report.verdict) == (Verdict.STRICTLY_NEGATIVE,
                                                            Verdict.STRICTLY_NEGATIVE)
    assert rep.verdict == "confirmed"
    rep = verify_theorem(MIRROR, spm.mu1_minus + 0.01, phi1, -phi1, "R5", K=1.0)
    assert rep.pattern_holds and rep.verdict == "confirmed"
    rep = verify_theorem(MIRROR, spm.mu1_minus - 1, phi1, phi1, "T6")
    assert rep.verdict == "confirmed"
    rep = verify_theorem(MIRROR, spm.mu1_minus - 1, -phi1, -phi1, "R7")
    assert rep.verdict == "confirmed"
    json.loads(rep.to_json())


def test_verify_theorem_reports_unmet_hypotheses(pi_interval):
    phi1 = SpectralFn.mode(pi_interval, 1, 4)
    rep = verify_theorem(CX, -3.0, phi1, phi1, "T2", K=1.0)
    assert rep.hypotheses.H2 is False and rep.verdict == "hypotheses-unmet"
    rep = verify_theorem(CX, spectrum(CX, 1.0).mu1_minus + 0.01, phi1, phi1, "T2")
    assert rep.hypotheses.H5 is None and rep.hypotheses_hold is None
    f = SpectralFn(pi_interval, [1.0, -0.5])
    rep = verify_theorem(CX, -3.0, f, 7 * f, "T6")
    assert rep.hypotheses_hold is False
    with pytest.raises(ValueError):
        verify_theorem(CX, -3.0, f, f, "T9")


def test_check_hypotheses_flags(pi_interval):
    f = SpectralFn(pi_interval, [1.0, -0.5])
    hyp = check_hypotheses(CX, -3.0, f, -1.0 * f)
    assert hyp.H1 and hyp.H2_prime and not hyp.H2 and hyp.H3 and not hyp.H3_prime
    assert (hyp.f_sign, hyp.g_sign) == (">=0", "<=0")
    assert check_hypotheses(CX, -3.0, SpectralFn.mode(pi_interval, 2), f).f_sign == "mixed"


def test_theorem2_budget(pi_interval, rng):
    phi1 = SpectralFn.mode(pi_interval, 1, 4)
    b = theorem2_budget(CX, 1.0, 4.0, phi1, phi1, K=2.0)
    assert b.script_B == 0 and b.capped and math.isinf(b.delta2)
    sp = spectrum(CX, 1.0)
    f = SpectralFn(pi_interval, [0.7, 0.2, -0.1])
    g = SpectralFn(pi_interval, [0.4, 0.0, 0.3])
    b = theorem2_budget(CX, 1.0, 4.0, f, g, K=2.0, mu=sp.mu1_minus)
    gap = sp.mu1_plus - sp.mu1_minus
    assert gap == pytest.approx(R5)
    assert b.script_A == pytest.approx(0.7 * (1 - 1 - sp.mu1_plus) / R5 + 0.4 / R5, rel=1e-14)
    assert b.sigma == pytest.approx(0.7 * (1 - 1 - sp.mu1_minus) / gap + 0.4 / gap, rel=1e-12)
    assert b.sigma >= b.script_A
    Bexp = (4 - 1 - sp.mu1_minus) / 3 * math.hypot(0.2, 0.1) + 1 / 3 * 0.3
    assert b.script_B == pytest.approx(Bexp, rel=1e-14)
    assert b.delta2 == pytest.approx(2.0 * b.script_A / Bexp, rel=1e-14)
    with pytest.raises(HypothesisError):
        theorem2_budget(MIRROR, 1.0, 4.0, f, g, K=1.0)
    with pytest.raises(HypothesisError):
        theorem2_budget(CX, 1.0, 4.0, -f, -g, K=1.0)


def test_sigma_is_phi1_coefficient_and_dominates(pi_interval, rng):
    for _ in range(100):
        A = random_coupling(rng, "a>d")
        sp = spectrum(A, 1.0)
        f = random_nonnegative(rng, pi_interval, 8)
        g = random_nonnegative(rng, pi_interval, 8)
        mu = sp.mu1_minus + rng.uniform(0.001, 0.999) * (sp.mu1_plus - sp.mu1_minus)
        b = theorem2_budget(A, 1.0, 4.0, f, g, K=1.0, mu=mu)
        w, rec = decouple_thm2(A, mu, f, g)
        h = (A.b / rec.t) * w + f
        assert h.coeffs[0] == pytest.approx(b.sigma, rel=1e-9)
        assert b.sigma >= b.script_A * (1 - 1e-12)


def test_counterexample_part1():
    for k in (0.0, 1.0, 7.0, 20 / 3):
        r = counterexample_part1(k)
        assert r.values["v1"] == pytest.approx(-1.0, abs=1e-10)
        assert r.values["v2"] == pytest.approx((1 - 3 * k) / 38, abs=1e-10)
    assert counterexample_part1(7.0).v_report.verdict is Verdict.MIXED
    assert counterexample_part1(1.0).v_report.verdict is Verdict.STRICTLY_NEGATIVE
    r = counterexample_part1(1 / 3)
    assert r.values["v2"] == pytest.approx(0.0, abs=1e-15)
    assert r.v_report.verdict is Verdict.STRICTLY_NEGATIVE
    assert counterexample_part1(20 / 3).v_report.verdict is Verdict.INDETERMINATE
    for k in (6.0, 6.6, 6.7, 8.0, 20.0):
        r = counterexample_part1(k)
        assert r.values["mp_fails"] == r.values["mp_fails_expected"]


def test_counterexample_part2_general_form_and_rules():
    for eps in (0.3, 0.1, 0.01):
        r = counterexample_part2(eps)
        assert r.values["ratio"] == pytest.approx(r.values["ratio_general_form"], rel=1e-10)
        assert r.values["f_sign"] == ">=0" and r.values["g_sign"] == "<=0"
        assert r.mu == pytest.approx(COUNTEREXAMPLE_MU1 + eps)
    # k = mu + eps^2 makes u_1 vanish faster than u_2
    prev = 0.0
    for eps in (0.1, 0.01, 0.001):
        r = counterexample_part2(eps, k_rule="shifted")
        assert r.values["ratio"] > prev
        prev = r.values["ratio"]
        assert r.values["g_sign"] == "<=0"
    assert r.u_report.verdict is Verdict.MIXED
    with pytest.raises(ValueError):
        counterexample_part2(0.6)
    with pytest.raises(ValueError):
        counterexample_part2(0.1, k_rule="other")


def test_part2_general_ratio_matches_two_mode_solve():
    for mu, k in ((-1.0, 2.0), (0.5, -3.0), (-2.0, 0.1)):
        f = SpectralFn(Domain.interval(math.pi), [1.0, -0.5])
        u, _ = solve_system(CX, mu, f, k * f)
        assert u.coeffs[1] / u.coeffs[0] == pytest.approx(part2_general_ratio(mu, k), rel=1e-12)
