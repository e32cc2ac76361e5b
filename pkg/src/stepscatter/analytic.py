"""Closed-form scattering solution for the smooth asymmetric step.

For energy E above the base V0, the stationary Schrodinger equation for
the barrier of `model` admits an exact solution built from the Gauss
hypergeometric function.  With

    k1 = sqrt(2m(E - V0))/hbar          (wave number on the base side)
    k2 = sqrt(2m(E - V0 - V1))/hbar     (wave number on the raised side)
    kappa = sqrt(2m(E - V0 + V1))/hbar  (auxiliary; kappa^2 = 2k1^2 - k2^2)

and the exponent parameters

    alpha0 = i sigma k1,  alpha1 = i sigma kappa / 2,  alpha2 = i sigma k2 / 2,

the transmitted-wave solution in the variable z = sqrt(1 + e^{2(x-x0)/sigma})
is

    psi = (z+1)^alpha1 (z-1)^alpha2 u(z),
    u(z) = C2 [ F(w) + (alpha2 - alpha1 + b z)/(a b) dF/dz ],   w = (1-z)/2,

with F = 2F1(a, b; a+b-c+1; w) and (a, b, c) = (alpha1+alpha2-alpha0-1,
alpha1+alpha2+alpha0, 2 alpha1).  Its asymptotes define the connection
coefficients relative to plane waves in x - x0:

    psi -> C e^{i k2 (x-x0)}                 on the raised side,
    psi -> A e^{i k1 (x-x0)} + B e^{-i k1 (x-x0)}  on the base side,

and the transmission probability T = (k2/k1) |C/A|^2 collapses to the
closed form

    T = 2 sinh(2 pi sigma k1) sinh(pi sigma k2)
        / [cosh(pi sigma (2k1 + k2)) - cosh(pi sigma kappa)],

which this module evaluates in a log-sinh form that is stable for both
T -> 0 and 1 - T -> 1e-300, is even in sigma, and recovers the abrupt-step
limit 4 k1 k2/(k1+k2)^2 as sigma -> 0.  Below the raised side
(V0 < E <= V0 + V1) transmission is evanescent: T = 0, R = 1.

Branch conventions: square roots of negative arguments take the positive
imaginary branch, so evanescent k2 gives a transmitted tail that decays
toward the raised side.
"""
import cmath
import math
from dataclasses import dataclass

from . import specfun
from .errors import DomainError, PoleError, ThresholdError
from .model import BarrierParams, z_of_x

__all__ = [
    "ScatteringContext",
    "TransmissionResult",
    "make_context",
    "u_derivs",
    "wavefunction",
    "connection_coeffs",
    "transmission",
    "transmission_step",
]

# relative half-width of the guard window around E = V0 + V1
THRESHOLD_WINDOW = 1e-12

# |w| beyond which the plane-wave asymptote replaces the exact series.
# The asymptote drops O(1/z) tail terms while the exact route loses
# O(z * eps) to cancellation between F and g F', so the crossover near
# z ~ 1e7 keeps the switch seamless to ~1e-7 relative.
ASYMPTOTE_SWITCH = 3e6

# largest prefactor log-magnitude evaluated exactly before switching
_PREFACTOR_EXP_LIMIT = 600.0

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class ScatteringContext:
    """Wave numbers and hypergeometric parameters for one (barrier, E)."""

    params: BarrierParams
    energy: float
    k1: float
    k2: complex
    kappa: complex
    alpha0: complex
    alpha1: complex
    alpha2: complex
    a: complex
    b: complex
    c: complex


@dataclass(frozen=True)
class TransmissionResult:
    """Transmission/reflection at one energy.

    A, B, C are the plane-wave connection coefficients for the C2 = 1
    solution (phases relative to x - x0); they are None on the k2 = 0
    threshold and for V1 = 0, where the hypergeometric representation
    degenerates (T and R remain exact there).
    """

    energy: float
    T: float
    R: float
    T_sp: float
    A: complex | None
    B: complex | None
    C: complex | None


def make_context(p, energy):
    """Precompute wave numbers, exponents and (a, b, c) for energy > V0."""
    if not math.isfinite(energy):
        raise DomainError(f"energy must be finite, got {energy}")
    if not energy > p.v0:
        raise DomainError(f"need E > V0 for a propagating incident wave, got E = {energy}")
    coef = p.coef
    k1 = math.sqrt(coef * (energy - p.v0))
    k2 = cmath.sqrt(complex(coef * (energy - p.v0 - p.v1)))
    kappa = cmath.sqrt(complex(coef * (energy - p.v0 + p.v1)))
    alpha0 = 1j * p.sigma * k1
    alpha1 = 0.5j * p.sigma * kappa
    alpha2 = 0.5j * p.sigma * k2
    return ScatteringContext(
        params=p,
        energy=energy,
        k1=k1,
        k2=k2,
        kappa=kappa,
        alpha0=alpha0,
        alpha1=alpha1,
        alpha2=alpha2,
        a=alpha1 + alpha2 - alpha0 - 1.0,
        b=alpha1 + alpha2 + alpha0,
        c=2.0 * alpha1,
    )


def _is_threshold(p, energy):
    return abs(energy - (p.v0 + p.v1)) < THRESHOLD_WINDOW * max(1.0, abs(p.v1))


def _f_derivs(ctx, w, order):
    """z-derivatives 0..order of the C2-basis function F(w), w = (1-z)/2.

    Each z-derivative contributes a factor -1/2 and a parameter step, so
    F^(k) = (-1/2)^k (a)_k (b)_k / (m)_k 2F1(a+k, b+k; m+k; w) with
    m = a + b - c + 1 = 2 alpha2.  Takes w rather than z so callers can
    form it without the z - 1 cancellation near the raised-side tail.
    """
    m = ctx.a + ctx.b - ctx.c + 1.0
    out = []
    pref = complex(1.0)
    for k in range(order + 1):
        out.append(pref * specfun.hyp2f1(ctx.a + k, ctx.b + k, m + k, w))
        pref *= -0.5 * (ctx.a + k) * (ctx.b + k) / (m + k)
    return out


def u_derivs(ctx, z, c2=1.0):
    """u, u', u'' of the transmitted-wave factor at z > 1 (C1 = 0 branch).

    u = C2 [F + g F'] with g(z) = (alpha2 - alpha1 + b z)/(a b); the
    derivatives follow from g' = 1/a.
    """
    if not z > 1.0:
        raise DomainError(f"u_derivs requires z > 1, got z = {z}")
    if ctx.params.v1 == 0.0:
        raise ThresholdError("V1 = 0: the hypergeometric representation degenerates (u = 0)")
    f0, f1, f2, f3 = _f_derivs(ctx, 0.5 * (1.0 - z), 3)
    g = (ctx.alpha2 - ctx.alpha1 + ctx.b * z) / (ctx.a * ctx.b)
    gp = 1.0 / ctx.a
    u = f0 + g * f1
    up = f1 + gp * f1 + g * f2
    upp = f2 + 2.0 * gp * f2 + g * f3
    return c2 * u, c2 * up, c2 * upp


def _coefficient_c(ctx, c2):
    return 2.0 ** (ctx.alpha1 - ctx.alpha2 - 2.0) * (2.0 - ctx.alpha0 / ctx.alpha2) * c2


def _gamma_quotient(nums, dens):
    """exp(sum log_gamma(nums) - sum log_gamma(dens)); denominator pole -> 0."""
    total = complex(0.0)
    for v in nums:
        total += specfun.log_gamma(v)
    for v in dens:
        try:
            total -= specfun.log_gamma(v)
        except PoleError:
            return complex(0.0)
    return cmath.exp(total)


def connection_coeffs(ctx, c2=1.0):
    """Plane-wave amplitudes (A, B, C) of the C2-normalized solution.

    Phases are relative to exp(+-i k (x - x0)).  Raises ThresholdError at
    k2 = 0 and for V1 = 0, where the representation degenerates.
    """
    p = ctx.params
    if p.v1 == 0.0:
        raise ThresholdError("V1 = 0: connection coefficients degenerate (free propagation)")
    if ctx.alpha2 == 0.0 or _is_threshold(p, ctx.energy):
        raise ThresholdError(
            f"E = {ctx.energy} is on the k2 = 0 threshold; use the limiting branch T = 0"
        )
    a0, a1, a2 = ctx.alpha0, ctx.alpha1, ctx.alpha2
    A = (
        -(2.0 ** (a1 + a2 - a0))
        * (a1 - a2)
        * (a1 + a2)
        * _gamma_quotient((2.0 * a0, 2.0 * a2), (a0 - a1 + a2 + 1.0, a0 + a1 + a2 + 1.0))
        * c2
    )
    B = (
        2.0 ** (a1 + a2 + a0)
        * _gamma_quotient((-2.0 * a0, 2.0 * a2), (-a0 - a1 + a2, -a0 + a1 + a2))
        * c2
    )
    C = _coefficient_c(ctx, c2)
    return A, B, C


def wavefunction(ctx, x, c2=1.0):
    """The scattering wavefunction psi(x) of the C2-normalized solution.

    Exact hypergeometric evaluation while |(1-z)/2| <= 1e3 and the
    prefactor stays within double range; beyond that (deep on the base
    side) the plane-wave asymptote A e^{i k1 (x-x0)} + B e^{-i k1 (x-x0)}
    is substituted.
    """
    if c2 == 0.0:
        return complex(0.0)
    p = ctx.params
    if p.v1 == 0.0:
        raise ThresholdError("V1 = 0: the hypergeometric representation degenerates")
    z = z_of_x(p, x)
    if z == 1.0:
        # underflow end of the raised-side tail: the transmitted wave alone
        return _coefficient_c(ctx, c2) * cmath.exp(1j * ctx.k2 * (x - p.x0))
    t = 2.0 * (x - p.x0) / p.sigma
    if t < 0.0:
        # rationalized sqrt(1 + e^t) - 1: avoids the cancellation that
        # costs ~|log eps| digits of phase in the raised-side tail
        et = math.exp(t)
        zm1 = et / (1.0 + math.sqrt(1.0 + et))
    else:
        zm1 = z - 1.0
    use_asymptote = 0.5 * zm1 > ASYMPTOTE_SWITCH
    if not use_asymptote and not math.isinf(z):
        pref_exp = (ctx.alpha1 * cmath.log(z + 1.0) + ctx.alpha2 * cmath.log(zm1)).real
        use_asymptote = abs(pref_exp) > _PREFACTOR_EXP_LIMIT
    if use_asymptote or math.isinf(z):
        A, B, _ = connection_coeffs(ctx, c2)
        phase = cmath.exp(1j * ctx.k1 * (x - p.x0))
        return A * phase + B / phase
    f0, f1 = _f_derivs(ctx, -0.5 * zm1, 1)
    g = (ctx.alpha2 - ctx.alpha1 + ctx.b * z) / (ctx.a * ctx.b)
    u = f0 + g * f1
    return c2 * (z + 1.0) ** ctx.alpha1 * zm1 ** ctx.alpha2 * u


def _logsinh(x):
    """log(sinh(x)) for x >= 0, stable for both tiny and huge x."""
    if x == 0.0:
        return -math.inf
    return x - _LN2 + math.log(-math.expm1(-2.0 * x))


def _log_cosh_minus(t, c):
    """log(cosh(t) - c) for |c| <= 1, stable for large |t|."""
    t = abs(t)
    if t > 30.0:
        return t - _LN2 + math.log1p((math.exp(-2.0 * t) - 2.0 * c * math.exp(-t)))
    value = math.cosh(t) - c
    if value <= 0.0:
        return -math.inf
    return math.log(value)


def _closed_form_TR(p, energy):
    """(T, R) from the sinh/cosh closed form, constructed so T + R = 1.

    Rewriting 2 sinh A sinh B = cosh(A+B) - cosh(A-B) turns the closed
    form into R = [cosh(A-B) - cosh D]/[cosh(A+B) - cosh D], evaluated in
    log space; whichever of T, R is the smaller is exponentiated and the
    other taken as its complement.
    """
    coef = p.coef
    k1 = math.sqrt(coef * (energy - p.v0))
    k2 = math.sqrt(coef * (energy - p.v0 - p.v1))
    kap_sq = coef * (energy - p.v0 + p.v1)
    s = math.pi * p.sigma
    arg_a = 2.0 * s * k1
    arg_b = s * k2
    arg_c = arg_a + arg_b
    d_ab = abs(arg_a - arg_b)
    if kap_sq >= 0.0:
        arg_d = abs(s) * math.sqrt(kap_sq)
        log_den = _LN2 + _logsinh(0.5 * (abs(arg_c) + arg_d)) + _logsinh(0.5 * (abs(arg_c) - arg_d))
        log_t = _LN2 + _logsinh(abs(arg_a)) + _logsinh(abs(arg_b)) - log_den
        log_r = _LN2 + _logsinh(0.5 * (d_ab + arg_d)) + _logsinh(0.5 * (d_ab - arg_d)) - log_den
    else:
        # deep step-down: the auxiliary wave number is imaginary and the
        # cosh of it becomes a cosine
        cos_d = math.cos(abs(s) * math.sqrt(-kap_sq))
        log_den = _log_cosh_minus(arg_c, cos_d)
        log_t = _LN2 + _logsinh(abs(arg_a)) + _logsinh(abs(arg_b)) - log_den
        log_r = _log_cosh_minus(d_ab, cos_d) - log_den
    if log_r <= -_LN2:
        R = math.exp(log_r)
        return 1.0 - R, R
    T = math.exp(log_t)
    return T, 1.0 - T


def transmission_step(p, energy):
    """Abrupt-step transmission 4 k1 k2/(k1 + k2)^2; 0 at and below the
    raised side."""
    if not energy > p.v0:
        raise DomainError(f"need E > V0, got E = {energy}")
    if energy <= p.v0 + p.v1:
        return 0.0
    coef = p.coef
    k1 = math.sqrt(coef * (energy - p.v0))
    k2 = math.sqrt(coef * (energy - p.v0 - p.v1))
    return 4.0 * k1 * k2 / ((k1 + k2) * (k1 + k2))


def transmission(p, energy):
    """Exact transmission/reflection for the smooth step at one energy.

    T + R = 1 holds exactly by construction.  Sub-barrier energies
    (V0 < E <= V0 + V1) give T = 0, R = 1; the k2 = 0 threshold window is
    treated as sub-barrier.  V1 = 0 gives T = 1 exactly.
    """
    if not energy > p.v0:
        raise DomainError(f"need E > V0, got E = {energy}")
    t_sp = transmission_step(p, energy)
    if p.v1 == 0.0:
        return TransmissionResult(energy, 1.0, 0.0, t_sp, None, None, None)
    if _is_threshold(p, energy):
        return TransmissionResult(energy, 0.0, 1.0, t_sp, None, None, None)
    if energy < p.v0 + p.v1:
        ctx = make_context(p, energy)
        try:
            A, B, C = connection_coeffs(ctx)
        except (ThresholdError, PoleError):
            A = B = C = None
        return TransmissionResult(energy, 0.0, 1.0, t_sp, A, B, C)
    T, R = _closed_form_TR(p, energy)
    A, B, C = connection_coeffs(make_context(p, energy))
    return TransmissionResult(energy, T, R, t_sp, A, B, C)
