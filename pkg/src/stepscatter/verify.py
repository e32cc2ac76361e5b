"""Built-in verification battery.

Runs the same kinds of cross-checks the test suite pins down, packaged
so an installed copy can vouch for itself (`stepscatter verify`).  The
`fast` level samples every check in under a minute even on the pure
backend; `full` runs the complete grids, including the 50-point
closed-form-vs-integration comparison.
"""
import math
from dataclasses import dataclass, replace

import numpy as np

from . import specfun
from .analytic import (
    connection_coeffs,
    make_context,
    transmission,
    transmission_step,
    wavefunction,
)
from .errors import StepScatterError
from .heun import heun_from_context, heun_residual, termination_defect
from .model import BarrierParams
from .oracle import default_grid, integrate, residual_of, richardson_T

__all__ = ["CheckResult", "run_checks"]

_SEED = 20260816

# frozen reference values (extended-precision oracles)
_GAMMA_1_2I_SQ = 0.023467059305403783  # |Gamma(1+2i)|^2 = 2 pi / sinh(2 pi)
_LGAMMA_10_10I = 8.236131750448718 + 23.948703413782037j  # Stirling series
_BINOM_CASE = 0.51682404499562703 - 0.50017473395418991j  # 3^(-0.3-0.7i)
_LOG_CASE = 1.3862943611198906  # 2 ln 2 = 2F1(1,1;2;1/2)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _random_context(rng):
    v0 = rng.uniform(-2.0, 2.0)
    v1 = math.exp(rng.uniform(math.log(0.1), math.log(5.0))) * rng.choice((-1.0, 1.0))
    sigma = math.exp(rng.uniform(math.log(0.01), math.log(3.0))) * rng.choice((-1.0, 1.0))
    energy = v0 + abs(v1) + math.exp(rng.uniform(math.log(0.05), math.log(20.0)))
    p = BarrierParams(v0=v0, v1=v1, sigma=sigma)
    return p, energy


def _check_gamma(level, rng):
    g = specfun.gamma
    worst = 0.0
    # recurrence bridge: gamma(z) against gamma(z + n) / prod(z + k), which
    # reaches the reflected half-plane through an independent route
    for _ in range(400 if level == "full" else 200):
        z = complex(rng.uniform(-20.0, 20.0),
                    rng.uniform(0.05, 20.0) * rng.choice((-1.0, 1.0)))
        n = max(0, math.ceil(0.5 - z.real))
        prod = complex(1.0)
        for k in range(n):
            prod *= z + k
        ref = g(z + n) / prod
        worst = max(worst, abs(g(z) - ref) / abs(ref))
    # duplication formula on the direct (non-reflected) half-plane
    for _ in range(40 if level == "full" else 20):
        z = complex(rng.uniform(0.5, 10.0), rng.uniform(-10.0, 10.0))
        ref = 2.0 ** (2.0 * z - 1.0) / math.sqrt(math.pi) * g(z) * g(z + 0.5)
        worst = max(worst, abs(g(2.0 * z) - ref) / abs(ref))
    worst = max(worst, abs(g(0.5) - math.sqrt(math.pi)) / math.sqrt(math.pi))
    worst = max(worst, abs(g(5.0) - 24.0) / 24.0)
    mod = abs(g(1.0 + 2.0j)) ** 2
    worst = max(worst, abs(mod - _GAMMA_1_2I_SQ) / _GAMMA_1_2I_SQ)
    return worst <= 1e-10, f"max defect {worst:.2e} (tol 1e-10)"


def _check_log_gamma(level, rng):
    worst = 0.0
    for _ in range(200 if level == "full" else 100):
        z = complex(rng.uniform(-20.0, 20.0),
                    rng.uniform(0.05, 20.0) * rng.choice((-1.0, 1.0)))
        diff = abs(np.exp(specfun.log_gamma(z)) - specfun.gamma(z)) / abs(specfun.gamma(z))
        worst = max(worst, diff)
    worst = max(worst, abs(specfun.log_gamma(5.0) - math.log(24.0)))
    worst = max(worst, abs(specfun.log_gamma(0.5) - 0.5 * math.log(math.pi)))
    worst = max(worst, abs(specfun.log_gamma(10.0 + 10.0j) - _LGAMMA_10_10I))
    return worst <= 1e-10, f"max defect {worst:.2e} (tol 1e-10)"


def _check_hyp2f1_values(level, rng):
    worst = 0.0
    val = specfun.hyp2f1(0.3 + 0.7j, 1.1, 1.1, -2.0)
    worst = max(worst, abs(val - _BINOM_CASE) / abs(_BINOM_CASE))
    val = specfun.hyp2f1(1.0, 1.0, 2.0, 0.5)
    worst = max(worst, abs(val - _LOG_CASE) / _LOG_CASE)
    # Gauss-sum limit through the 1-w transformation; w close enough to 1
    # that the O(1-w) series tail sits below the tolerance
    a, b, c = 0.3, 0.4 - 0.2j, 2.3 + 0.1j
    gauss = np.exp(
        specfun.log_gamma(c) + specfun.log_gamma(c - a - b)
        - specfun.log_gamma(c - a) - specfun.log_gamma(c - b)
    )
    val = specfun.hyp2f1(a, b, c, 1.0 - 1e-12)
    worst = max(worst, abs(val - gauss) / abs(gauss))
    return worst <= 1e-10, f"max rel err {worst:.2e} (tol 1e-10)"


def _draw_params(rng):
    while True:
        a = complex(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0))
        b = complex(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0))
        c = complex(rng.uniform(0.3, 3.0), rng.uniform(-2.0, 2.0))
        clear = True
        for v in (c - a - b, a - b):
            if abs(v.imag) < 0.1 and abs(v.real - round(v.real)) < 0.1:
                clear = False
        for v in (c, c - a, c - b, a, b):
            if abs(v.imag) < 0.05 and v.real < 0.5 and abs(v.real - round(v.real)) < 0.1:
                clear = False
        if clear:
            return a, b, c


def _check_hyp2f1_paths(level, rng):
    worst = 0.0
    n_sets = 30 if level == "full" else 12
    for _ in range(n_sets):
        a, b, c = _draw_params(rng)
        for w in (-8.0, -4.0, -2.5, -1.5, -0.8, -0.3, 0.3):
            main = specfun.hyp2f1(a, b, c, w)
            # independent route: the other Pfaff map, summed directly
            alt = (1.0 - w) ** (-b) * specfun._series(b, c - a, c, w / (w - 1.0))
            worst = max(worst, abs(main - alt) / max(abs(main), 1e-300))
    return worst <= 1e-10, f"max path disagreement {worst:.2e} over {n_sets * 7} evals (tol 1e-10)"


def _check_hyp2f1_deriv(level, rng):
    worst = 0.0
    delta = 1e-6
    for _ in range(12 if level == "full" else 6):
        a, b, c = _draw_params(rng)
        for w in (-3.0, -0.7, 0.2, 0.45):
            fd = (specfun.hyp2f1(a, b, c, w + delta)
                  - specfun.hyp2f1(a, b, c, w - delta)) / (2.0 * delta)
            dv = specfun.hyp2f1_deriv(a, b, c, w)
            worst = max(worst, abs(fd - dv) / max(abs(dv), 1e-300))
    return worst <= 1e-8, f"max FD mismatch {worst:.2e} (tol 1e-8)"


def _check_context_identities(level, rng):
    worst = 0.0
    for _ in range(300 if level == "full" else 150):
        p, energy = _random_context(rng)
        ctx = make_context(p, energy)
        scale = max(1.0, abs(ctx.kappa) ** 2)
        worst = max(worst, abs(ctx.kappa**2 - (2.0 * ctx.k1**2 - ctx.k2**2)) / scale)
        worst = max(worst, abs(ctx.a + ctx.b - ctx.c + 1.0 - 2.0 * ctx.alpha2))
        worst = max(worst, abs(ctx.alpha0**2 - 2.0 * (ctx.alpha1**2 + ctx.alpha2**2)) / scale)
    return worst <= 1e-12, f"max defect {worst:.2e} (tol 1e-12)"


def _check_termination(level, rng, tamper_q=0.0):
    worst = 0.0
    for _ in range(1000 if level == "full" else 300):
        p, energy = _random_context(rng)
        h = heun_from_context(make_context(p, energy))
        if tamper_q:
            h = replace(h, q=h.q + tamper_q)
        fuchs = h.gamma_h + h.delta_h + h.epsilon_h - (h.alpha_h + h.beta_h + 1.0)
        worst = max(worst, abs(fuchs), abs(termination_defect(h)))
    return worst <= 1e-12, f"max |q(q+g-d) - ab| {worst:.2e} (tol 1e-12)"


def _criterion_sets(level):
    sets = []
    v1s = (0.5, 1.0, 3.0) if level == "full" else (1.0,)
    for v1 in v1s:
        for sigma in (-2.0, -1.0, -0.5, -0.1):
            for j in range(5):
                sets.append((v1, sigma, v1 + 2.0 * (j + 1)))
    return sets


def _check_two_route(level, rng):
    worst = 0.0
    sets = _criterion_sets(level)
    for v1, sigma, energy in sets:
        p = BarrierParams(v0=0.0, v1=v1, sigma=sigma)
        ctx = make_context(p, energy)
        A, _, C = connection_coeffs(ctx)
        t_coeff = (ctx.k2.real / ctx.k1) * abs(C / A) ** 2
        t_closed = transmission(p, energy).T
        worst = max(worst, abs(t_coeff - t_closed) / t_closed)
    return worst <= 1e-10, f"max rel gap {worst:.2e} over {len(sets)} points (tol 1e-10)"


def _check_heun_residual(level, rng):
    worst = 0.0
    zs = np.geomspace(1.05, 6.0, 25)
    sets = _criterion_sets(level) if level == "full" else [(1.0, -1.0, 2.0)]
    for v1, sigma, energy in sets:
        ctx = make_context(BarrierParams(v0=0.0, v1=v1, sigma=sigma), energy)
        h = heun_from_context(ctx)
        for z in zs:
            worst = max(worst, heun_residual(h, ctx, z))
    return worst <= 1e-8, f"max normalized residual {worst:.2e} (tol 1e-8)"


def _check_schrodinger_residual(level, rng):
    cases = [(BarrierParams(), 2.0)]
    if level == "full":
        cases.append((BarrierParams(v1=3.0, sigma=-0.5), 5.0))
    worst = 0.0
    for p, energy in cases:
        ctx = make_context(p, energy)
        xs = p.x0 + np.linspace(-3.0, 3.0, 31) * abs(p.sigma)
        res = residual_of(p, energy, lambda x: wavefunction(ctx, x), xs)
        worst = max(worst, float(res.max()))
    return worst <= 1e-6, f"max normalized residual {worst:.2e} (tol 1e-6)"


def _check_sigma_parity(level, rng):
    worst = 0.0
    for _ in range(100):
        p, energy = _random_context(rng)
        t_pos = transmission(replace(p, sigma=abs(p.sigma)), energy).T
        t_neg = transmission(replace(p, sigma=-abs(p.sigma)), energy).T
        worst = max(worst, abs(t_pos - t_neg))
    return worst <= 1e-12, f"max |T(s)-T(-s)| {worst:.2e} (tol 1e-12)"


def _check_transparency(level, rng):
    worst = 0.0
    count = 0
    for v1 in (0.5, 1.0, 3.0):
        for sigma in (-1.5, -2.0, -3.0):
            k2_min = 12.0 / (math.pi * abs(sigma))
            e_min = v1 + 0.5 * k2_min * k2_min
            for energy in (e_min * 1.02, e_min * 1.5, e_min * 3.0):
                p = BarrierParams(v0=0.0, v1=v1, sigma=sigma)
                worst = max(worst, transmission(p, energy).R)
                count += 1
    return worst <= 1e-8, f"max 1-T {worst:.2e} over {count} opaque-free points (tol 1e-8)"


def _check_step_limit(level, rng):
    sigmas = np.geomspace(1e-3, 1e-1, 7)
    gaps = []
    for s in sigmas:
        res = transmission(BarrierParams(sigma=float(s)), 2.0)
        gap = res.T - res.T_sp
        if gap <= 0.0:
            return False, f"T - T_sp not positive at sigma = {s}"
        gaps.append(gap)
    slope = np.polyfit(np.log(sigmas), np.log(gaps), 1)[0]
    ok = abs(slope - 2.0) <= 0.1
    return ok, f"log-log slope {slope:.4f} (expect 2.0 +- 0.1), gaps all positive"


def _oracle_grid(level):
    if level == "full":
        return [(sigma, 1.0 + e) for sigma in (-2.0, -1.0, -0.5, -0.25, -0.1)
                for e in np.linspace(0.5, 8.0, 10)]
    return [(-1.0, 2.0), (-0.5, 3.5)]


def _check_oracle(level, rng):
    worst_rel = 0.0
    worst_est = 0.0
    pts = _oracle_grid(level)
    for sigma, energy in pts:
        p = BarrierParams(sigma=sigma)
        t_num, est = richardson_T(p, energy)
        t_ref = transmission(p, energy).T
        worst_rel = max(worst_rel, abs(t_num - t_ref) / t_ref)
        worst_est = max(worst_est, est)
    ok = worst_rel <= 1e-6 and worst_est < 1e-8
    return ok, (f"max rel gap {worst_rel:.2e} (tol 1e-6), "
                f"max step-halving estimate {worst_est:.2e} (tol 1e-8), {len(pts)} points")


def _check_flux(level, rng):
    worst = 0.0
    for sigma, energy in ((-1.0, 2.0), (-0.7, 4.0), (-1.3, 1.6)):
        p = BarrierParams(sigma=sigma)
        num = integrate(p, energy)
        worst = max(worst, abs(num.T_num + num.R_num - 1.0))
    return worst <= 1e-6, f"max |T+R-1| {worst:.2e} (tol 1e-6)"


_CHECKS = [
    ("specfun.gamma", _check_gamma),
    ("specfun.log_gamma", _check_log_gamma),
    ("specfun.hyp2f1_values", _check_hyp2f1_values),
    ("specfun.hyp2f1_paths", _check_hyp2f1_paths),
    ("specfun.hyp2f1_derivative", _check_hyp2f1_deriv),
    ("analytic.context_identities", _check_context_identities),
    ("heun.termination_identity", _check_termination),
    ("analytic.two_route_transmission", _check_two_route),
    ("heun.operator_residual", _check_heun_residual),
    ("oracle.schrodinger_residual", _check_schrodinger_residual),
    ("analytic.sigma_parity", _check_sigma_parity),
    ("analytic.transparency", _check_transparency),
    ("analytic.step_limit", _check_step_limit),
    ("oracle.vs_closed_form", _check_oracle),
    ("oracle.flux_conservation", _check_flux),
]


def run_checks(level="fast", tamper_q=0.0, out=None):
    """Run the battery; returns a list of CheckResult.

    tamper_q is a test hook that offsets the Heun accessory parameter
    before the termination-identity check, to prove the battery can fail.
    """
    if level not in ("fast", "full"):
        raise ValueError(f"unknown level {level!r}")
    rng = np.random.default_rng(_SEED)
    results = []
    for name, fn in _CHECKS:
        try:
            if fn is _check_termination:
                passed, detail = fn(level, rng, tamper_q=tamper_q)
            else:
                passed, detail = fn(level, rng)
        except StepScatterError as exc:
            passed, detail = False, f"raised {type(exc).__name__}: {exc}"
        results.append(CheckResult(name, passed, detail))
        if out is not None:
            status = "PASS" if passed else "FAIL"
            out.write(f"{name:<34} {status:<5} {detail}\n")
    if out is not None:
        n_bad = sum(1 for r in results if not r.passed)
        total = len(results)
        out.write(f"{total - n_bad}/{total} checks passed ({level} level)\n")
    return results
