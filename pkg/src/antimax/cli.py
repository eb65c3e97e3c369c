"""Command-line front end: ``antimax {scalar,delta,system,counterexample,selftest}``.

Every command reads an optional JSON config, lets flags override it, and
writes CSV/JSON reports into ``--out``.  Exit codes: 0 success, 1 selftest
failure, 2 config error, 3 resonance, 4 K undefined, 5 hypothesis violation
under ``--require-hypotheses``.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import fd
from .instances import random_coupling, random_nonnegative
from .scalar import (
    KUndefinedError,
    ResonanceError,
    Verdict,
    classify_sign,
    decompose,
    empirical_amp_interval,
    k_hat,
    k_row,
    solve_resolvent,
)
from .spectral import (
    Domain,
    SpectralFn,
    interior_grid,
    grid_values,
    principal_eigenvalue,
    second_eigenvalue,
)
from .system import (
    COUNTEREXAMPLE_DOMAIN,
    COUNTEREXAMPLE_MATRIX,
    THEOREMS,
    CouplingMatrix,
    HypothesisError,
    counterexample_forcing,
    counterexample_part1,
    counterexample_part2,
    solve_system,
    spectrum,
    verify_theorem,
)

MU_RULE = re.compile(
    r"^\s*(?P<base>mu1_minus|mu1_plus|lambda1)\s*(?:(?P<op>[+-])\s*(?P<amount>eps|[0-9.eE+-]+))?\s*$")

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_RESONANCE, EXIT_K_UNDEFINED, EXIT_HYPOTHESIS = range(6)


class ConfigError(ValueError):
    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


# ---------------------------------------------------------------------------
# output helpers
# ---------------------------------------------------------------------------

def fmt(x) -> str:
    """Shortest round-trip text for floats; stable across runs."""
    if isinstance(x, (bool, np.bool_)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    return str(x)


def _clean(obj):
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        x = float(obj)
        return x if math.isfinite(x) else repr(x)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, Verdict):
        return obj.value
    return obj


def write_json(path: Path, data) -> None:
    path.write_text(json.dumps(_clean(data), indent=2, sort_keys=True) + "\n")


def write_csv(path: Path, header: list[str], rows) -> None:
    with path.open("w", newline="") as fp:
        w = csv.writer(fp, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(x) for x in row])


def pmap(fn, items, workers: int):
    """Ordered map over a thread pool; results come back in input order."""
    items = list(items)
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# config
# ---------------------------------------------------------------------------

def load_config(path: str | None) -> dict:
    if not path:
        return {}
    try:
        with open(path) as fp:
            data = json.load(fp)
    except OSError as exc:
        raise ConfigError("config", f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError("config", f"malformed JSON in {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config", "top level must be a JSON object")
    return data


def parse_domain(cfg: dict, default: Domain) -> Domain:
    if "domain" not in cfg:
        return default
    try:
        return Domain.from_dict(cfg["domain"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError("domain", str(exc)) from exc


def parse_fn(cfg: dict, key: str, domain: Domain, M: int | None) -> SpectralFn:
    try:
        coeffs = [float(c) for c in cfg[key]]
        f = SpectralFn(domain, coeffs)
    except KeyError as exc:
        raise ConfigError(key, "missing") from exc
    except (TypeError, ValueError) as exc:
        raise ConfigError(key, str(exc)) from exc
    return f.padded(M) if M else f


def parse_matrix(cfg: dict) -> CouplingMatrix:
    try:
        return CouplingMatrix.of(cfg["A"])
    except KeyError as exc:
        raise ConfigError("A", "missing") from exc
    except (TypeError, ValueError) as exc:
        raise ConfigError("A", f"expected [a, b, c, d]: {exc}") from exc


def resolve_mu(cfg: dict, A: CouplingMatrix, lam1: float) -> float:
    if "mu" in cfg:
        try:
            return float(cfg["mu"])
        except (TypeError, ValueError) as exc:
            raise ConfigError("mu", str(exc)) from exc
    rule = cfg.get("mu_rule")
    if rule is None:
        raise ConfigError("mu", "give mu or mu_rule")
    m = MU_RULE.match(str(rule))
    if m is None:
        raise ConfigError("mu_rule", f"expected '<mu1_minus|mu1_plus|lambda1> [+|- <number|eps>]', got {rule!r}")
    sp = spectrum(A, lam1)
    base = {"mu1_minus": sp.mu1_minus, "mu1_plus": sp.mu1_plus, "lambda1": lam1}[m["base"]]
    if m["op"] is None:
        return base
    try:
        amount = float(cfg["eps"]) if m["amount"] == "eps" else float(m["amount"])
    except (KeyError, ValueError) as exc:
        raise ConfigError("eps", f"mu_rule {rule!r} needs a numeric eps") from exc
    return base + amount if m["op"] == "+" else base - amount


def resolve_g(cfg: dict, f: SpectralFn, domain: Domain, M: int | None, k: float | None) -> SpectralFn:
    if "g" in cfg and cfg.get("g_rule") is None:
        return parse_fn(cfg, "g", domain, M)
    rule = cfg.get("g_rule", "k*f")
    if rule.replace(" ", "") != "k*f":
        raise ConfigError("g_rule", f"only 'k*f' is supported, got {rule!r}")
    if k is None:
        raise ConfigError("k", "g_rule 'k*f' needs k")
    return k * f


def _positive(name: str, value):
    if value is not None and not value > 0:
        raise ConfigError(name, f"must be positive, got {value}")
    return value


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_scalar(args) -> int:
    cfg = load_config(args.config)
    dom = parse_domain(cfg, Domain.interval(1.0))
    if args.h:
        cfg["h"] = args.h
    h = parse_fn(cfg, "h", dom, args.modes)
    lam1, lam2 = principal_eigenvalue(dom), second_eigenvalue(dom)
    sweep = dict(cfg.get("sweep", {}))
    if args.sweep:
        sweep.update(zip(("start", "stop", "step"), args.sweep))
    start = float(sweep.get("start", 0.0))
    stop = float(sweep.get("stop", lam2 - lam1))
    step = _positive("sweep.step", float(sweep.get("step", (lam2 - lam1) / 100)))
    if stop <= start:
        raise ConfigError("sweep", "stop must exceed start")
    offset = lam1 if sweep.get("relative_to", "lambda1") == "lambda1" else 0.0
    count = int(math.floor((stop - start) / step + 1e-9))
    mus = [offset + start + j * step for j in range(1, count + 1)]

    def row(mu):
        rep = classify_sign(solve_resolvent(h, mu), args.grid, args.tol)
        return mu, rep.verdict.value, rep.min_interior, rep.boundary_min_normal_derivative

    rows = pmap(row, mus, args.workers)
    out = _outdir(args)
    write_csv(out / "scalar_sweep.csv", ["mu", "verdict", "min_interior", "boundary_min_nd"], rows)
    flips = [r[0] for r, prev in zip(rows[1:], rows) if r[1] != prev[1]]
    print(f"scalar: {len(rows)} sweep points, lambda1={lam1!r}")
    if flips:
        print(f"verdict changes at mu - lambda1 ~ {flips[0] - lam1!r}")
    return EXIT_OK


def cmd_delta(args) -> int:
    cfg = load_config(args.config)
    dom = parse_domain(cfg, Domain.interval(1.0))
    lam1, lam2 = principal_eigenvalue(dom), second_eigenvalue(dom)
    family_cfg = cfg.get("family")
    if args.family_s:
        family_cfg = [[1.0, s] for s in args.family_s]
    if not family_cfg:
        raise ConfigError("family", "missing or empty")
    family = [parse_fn({"h": c}, "h", dom, args.modes) for c in family_cfg]
    if args.Lambda_offset is not None:
        Lambda = lam1 + args.Lambda_offset
    elif "Lambda" in cfg:
        Lambda = float(cfg["Lambda"])
    elif "Lambda_offset" in cfg:
        Lambda = lam1 + float(cfg["Lambda_offset"])
    else:
        Lambda = lam1 + 0.95 * (lam2 - lam1)
    if not lam1 < Lambda < lam2:
        raise ConfigError("Lambda", f"must lie in ({lam1}, {lam2})")
    q = float(cfg.get("q", 2.0))
    scan_step = cfg.get("scan_step")
    tol = _positive("bisection_tol", float(cfg.get("bisection_tol", 1e-9)))
    for i, h in enumerate(family):
        if decompose(h).alpha <= 0:
            raise ConfigError(f"family[{i}]", "phi_1 coefficient must be positive")

    amps = pmap(lambda h: empirical_amp_interval(h, Lambda, scan_step, tol, q, args.grid),
                family, args.workers)
    table = [k_row(a) for a in amps]
    out = _outdir(args)
    write_csv(out / "k_table.csv", ["alpha", "h_perp_norm", "delta_star", "capped", "ratio"],
              [[r["alpha"], r["h_perp_norm"], r["delta_star"], r["capped"], r["ratio"]] for r in table])
    report = {"Lambda": Lambda, "lambda1": lam1, "intervals": [a.to_dict() for a in amps]}
    for a in amps:
        flag = " (cap-bound)" if a.capped else ""
        print(f"delta_star={a.delta_star!r}{flag}")
    try:
        report["K_hat"] = k_hat(table)
    except KUndefinedError as exc:
        report["K_hat"] = None
        write_json(out / "delta_report.json", report)
        print(f"K undefined: {exc}", file=sys.stderr)
        return EXIT_K_UNDEFINED
    write_json(out / "delta_report.json", report)
    print(f"K_hat={report['K_hat']!r}")
    return EXIT_OK


def _oracle_discrepancy(A, mu, f, g, u, v, n) -> float:
    grid = fd.FdGrid(f.domain, n)
    axes = interior_grid(f.domain, n)
    uf, vf = fd.fd_solve_system(A, mu, grid_values(f, axes), grid_values(g, axes), grid)
    return float(max(np.max(np.abs(uf - grid_values(u, axes))),
                     np.max(np.abs(vf - grid_values(v, axes)))))


def cmd_system(args) -> int:
    cfg = load_config(args.scenario or args.config)
    dom = parse_domain(cfg, COUNTEREXAMPLE_DOMAIN)
    lam1 = principal_eigenvalue(dom)
    A = parse_matrix(cfg)
    f = parse_fn(cfg, "f", dom, args.modes)
    theorem = args.theorem or cfg.get("theorem")
    if theorem is not None and theorem not in THEOREMS:
        raise ConfigError("theorem", f"unknown id {theorem!r}")
    K = args.K if args.K is not None else cfg.get("K")

    if args.search_mp:
        return _search_mp(args, dom)

    sweep = cfg.get("sweep", {})
    ks = [args.k] if args.k is not None else sweep.get("k", [cfg.get("k")])
    mu_override = [args.mu] if args.mu is not None else sweep.get("mu")
    eps_list = sweep.get("eps")

    cases = []
    for k in ks:
        if mu_override is not None:
            cases.extend((float(m), k) for m in mu_override)
        elif eps_list is not None:
            cases.extend((resolve_mu({**cfg, "eps": e}, A, lam1), k) for e in eps_list)
        else:
            cases.append((resolve_mu(cfg, A, lam1), k))

    def run(case):
        mu, k = case
        g = resolve_g(cfg, f, dom, args.modes, None if k is None else float(k))
        if theorem:
            rep = verify_theorem(A, mu, f, g, theorem, K=K, n=args.grid, tau=args.tol)
            u, v = solve_system(A, mu, f, g)
            body = rep.to_dict()
            ur, vr = rep.u_report, rep.v_report
        else:
            u, v = solve_system(A, mu, f, g)
            ur, vr = classify_sign(u, args.grid, args.tol), classify_sign(v, args.grid, args.tol)
            body = {"u": ur.to_dict(), "v": vr.to_dict()}
            rep = None
        body.update(mu=mu, k=k, u_coeffs=list(u.coeffs), v_coeffs=list(v.coeffs))
        if args.oracle:
            body["oracle_sup_discrepancy"] = _oracle_discrepancy(A, mu, f, g, u, v, args.oracle)
        return body, ur, vr, rep

    results = pmap(run, cases, args.workers)
    out = _outdir(args)
    header = ["mu", "k", "u_verdict", "v_verdict", "u_min", "u_max", "v_min", "v_max"]
    if args.oracle:
        header.append("oracle_sup_discrepancy")
    rows = []
    for body, ur, vr, _ in results:
        row = [body["mu"], "" if body["k"] is None else body["k"], ur.verdict.value, vr.verdict.value,
               ur.min_interior, ur.max_interior, vr.min_interior, vr.max_interior]
        if args.oracle:
            row.append(body["oracle_sup_discrepancy"])
        rows.append(row)
    write_csv(out / "system_sweep.csv", header, rows)
    write_json(out / "system_report.json",
               {"A": A.tolist(), "domain": dom.to_dict(), "theorem": theorem,
                "cases": [r[0] for r in results]})
    for body, ur, vr, rep in results:
        line = f"mu={body['mu']!r} k={body['k']!r}: u {ur.verdict.value}, v {vr.verdict.value}"
        if rep is not None:
            line += f" [{rep.theorem}: {rep.verdict}]"
        if vr.verdict is Verdict.MIXED or ur.verdict is Verdict.MIXED:
            line += " -- sign change"
        if args.oracle:
            line += f" oracle={body['oracle_sup_discrepancy']:.3e}"
        print(line)
    if args.require_hypotheses and any(r[3] is not None and r[3].hypotheses_hold is False for r in results):
        print("hypotheses violated", file=sys.stderr)
        return EXIT_HYPOTHESIS
    return EXIT_OK


def _search_mp(args, dom: Domain) -> int:
    """Random a < d, mu < mu1_minus, f, g >= 0 instances where positivity fails."""
    if dom.dim != 1:
        raise ConfigError("domain", "search mode supports intervals only")
    rng = np.random.default_rng(args.seed)
    lam1 = principal_eigenvalue(dom)
    M = args.modes or 16
    rows = []
    for _ in range(args.search_mp):
        A = random_coupling(rng, "a<d")
        mu = spectrum(A, lam1).mu1_minus - rng.uniform(0.01, 2)
        f = random_nonnegative(rng, dom, M, alpha=rng.uniform(0.1, 2))
        g = random_nonnegative(rng, dom, M, alpha=rng.uniform(0.1, 2))
        u, v = solve_system(A, mu, f, g)
        ur, vr = classify_sign(u, args.grid), classify_sign(v, args.grid)
        if not (ur.verdict is Verdict.STRICTLY_POSITIVE and vr.verdict is Verdict.STRICTLY_POSITIVE):
            rows.append([*A.tolist(), mu, ur.verdict.value, vr.verdict.value,
                         list(f.coeffs), list(g.coeffs)])
    out = _outdir(args)
    write_csv(out / "mp_search.csv", ["a", "b", "c", "d", "mu", "u_verdict", "v_verdict"],
              [r[:7] for r in rows])
    write_json(out / "mp_search.json", {"seed": args.seed, "trials": args.search_mp, "found": rows})
    print(f"search: {len(rows)} of {args.search_mp} instances lose positivity")
    return EXIT_OK


def cmd_counterexample(args) -> int:
    M = args.modes or 16
    out = _outdir(args)
    if args.part == 1:
        ks = args.k if args.k else [1.0, 20 / 3, 7.0]
        reps = pmap(lambda k: counterexample_part1(k, M, args.grid), ks, args.workers)
        write_csv(out / "counterexample_part1.csv",
                  ["k", "v1", "v2", "v2_closed_form", "v_verdict", "mp_fails"],
                  [[r.k, r.values["v1"], r.values["v2"], r.values["v2_closed_form"],
                    r.v_report.verdict.value, r.values["mp_fails"]] for r in reps])
        write_json(out / "counterexample_part1.json", [r.to_dict() for r in reps])
        for r in reps:
            print(f"k={r.k!r}: v {r.v_report.verdict.value}"
                  + (" -> maximum principle fails" if r.values["mp_fails"] else ""))
        return EXIT_OK
    eps = args.eps if args.eps else [0.1, 0.01, 0.001]
    if any(not 0 < e < 0.5 for e in eps):
        raise ConfigError("eps", "values must lie in (0, 0.5)")
    reps = pmap(lambda e: counterexample_part2(e, M, args.grid, args.k_rule), eps, args.workers)
    write_csv(out / "counterexample_part2.csv",
              ["eps", "k", "ratio", "ratio_displayed_form", "displayed_rel_error", "u_verdict"],
              [[r.values["eps"], r.k, r.values["ratio"], r.values["ratio_displayed_form"],
                r.values["displayed_rel_error"], r.u_report.verdict.value] for r in reps])
    write_json(out / "counterexample_part2.json", [r.to_dict() for r in reps])
    for r in reps:
        print(f"eps={r.values['eps']!r}: u2/u1={r.values['ratio']!r} "
              f"(displayed form {r.values['ratio_displayed_form']!r}), u {r.u_report.verdict.value}")
    return EXIT_OK


def cmd_selftest(args) -> int:
    checks = []

    def check(name, fn):
        try:
            ok = bool(fn())
        except Exception as exc:  # noqa: BLE001
            ok = False
            name = f"{name} ({exc})"
        checks.append(ok)
        print(f"{'PASS' if ok else 'FAIL'}  {name}")

    def cx1():
        r = counterexample_part1(7.0)
        return r.values["closed_form_error"] < 1e-10 and r.values["mp_fails"]

    def sharp():
        I = Domain.interval(1.0)
        amp = empirical_amp_interval(SpectralFn(I, [1.0, 1.0]), n=2048)
        return abs(amp.delta_star - math.pi ** 2) < 1e-6 * math.pi ** 2

    def thm6():
        rep = verify_theorem([1, 1, -1, 4], spectrum([1, 1, -1, 4], 1.0).mu1_minus - 1,
                             SpectralFn(COUNTEREXAMPLE_DOMAIN, [0.0, 0.0]),
                             SpectralFn(COUNTEREXAMPLE_DOMAIN, [1.0, 0.0]), "T6")
        return rep.verdict == "confirmed"

    def oracle():
        f = counterexample_forcing(4)
        u, v = solve_system(COUNTEREXAMPLE_MATRIX, -3.0, f, 7 * f)
        return _oracle_discrepancy(COUNTEREXAMPLE_MATRIX, -3.0, f, 7 * f, u, v, 511) < 1e-4

    check("counterexample part 1 closed form and sign change", cx1)
    check("sharp two-mode validity interval", sharp)
    check("positivity below mu1- with a < d", thm6)
    check("finite-difference agreement at n=511", oracle)
    return EXIT_OK if all(checks) else EXIT_FAIL


def _outdir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file")
    common.add_argument("--modes", type=int, help="truncation M (pads inputs)")
    common.add_argument("--grid", type=int, help="evaluation grid size n")
    common.add_argument("--tol", type=float, help="absolute sign tolerance (default: relative 1e-9)")
    common.add_argument("--out", default=".", help="output directory")
    common.add_argument("--oracle", type=int, metavar="N", help="cross-check against FD on N points")
    common.add_argument("--require-hypotheses", action="store_true")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--workers", type=int, default=1)

    p = argparse.ArgumentParser(prog="antimax", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("scalar", parents=[common], help="sign sweep of the scalar resolvent")
    s.add_argument("--h", type=float, nargs="+", help="forcing coefficients")
    s.add_argument("--sweep", type=float, nargs=3, metavar=("START", "STOP", "STEP"),
                   help="mu - lambda1 range; START is excluded")
    s.set_defaults(func=cmd_scalar)

    s = sub.add_parser("delta", parents=[common], help="validity intervals and K estimate")
    s.add_argument("--family-s", type=float, nargs="+", help="family phi_1 + s phi_2")
    s.add_argument("--Lambda-offset", type=float, help="Lambda - lambda1")
    s.set_defaults(func=cmd_delta)

    s = sub.add_parser("system", parents=[common], help="solve / verify the 2x2 system")
    s.add_argument("--scenario", help="scenario JSON")
    s.add_argument("--theorem", choices=sorted(THEOREMS))
    s.add_argument("--k", type=float)
    s.add_argument("--mu", type=float)
    s.add_argument("--K", type=float, help="constant for the mu-window of T2/R3/T4/R5")
    s.add_argument("--search-mp", type=int, metavar="TRIALS",
                   help="random search for positivity failures below mu1_minus with a < d")
    s.set_defaults(func=cmd_system)

    s = sub.add_parser("counterexample", parents=[common], help="reproduce the counterexample")
    s.add_argument("--part", type=int, choices=(1, 2), required=True)
    s.add_argument("--k", type=float, nargs="+")
    s.add_argument("--eps", type=float, nargs="+")
    s.add_argument("--k-rule", choices=("anchored", "shifted"), default="anchored")
    s.set_defaults(func=cmd_counterexample)

    s = sub.add_parser("selftest", parents=[common], help="quick end-to-end checks")
    s.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        for name in ("modes", "grid", "tol", "oracle"):
            _positive(f"--{name}", getattr(args, name))
        return args.func(args)
    except ConfigError as exc:
        print(f"config error in {exc.field}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ResonanceError, fd.DiscreteResonanceError) as exc:
        print(f"resonance: {exc}", file=sys.stderr)
        return EXIT_RESONANCE
    except HypothesisError as exc:
        print(f"hypothesis violation: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS


if __name__ == "__main__":
    sys.exit(main())
