"""Reduction of the scattering problem to the general Heun equation.

In the variable z the factor u(z) of the wavefunction satisfies

    u'' + (gamma/(z - a1) + delta/(z - a2) + epsilon/(z - a3)) u'
        + (alpha beta z - q) / ((z - a1)(z - a2)(z - a3)) u = 0

with singular points (a1, a2, a3) = (-1, 1, 0) and accessory parameters
fixed by the scattering context:

    gamma = 1 + 2 alpha1,  delta = 1 + 2 alpha2,  epsilon = -1,
    alpha = alpha1 + alpha2 - alpha0,  beta = alpha1 + alpha2 + alpha0,
    q = alpha2 - alpha1.

These satisfy the Fuchs relation gamma + delta + epsilon = alpha + beta + 1
and the two-term-recurrence termination condition q(q + gamma - delta) =
alpha beta, which is what makes the hypergeometric closed form possible:
it is algebraically equivalent to the wave-number constraint
kappa^2 = 2 k1^2 - k2^2.

`heun_residual` substitutes the hypergeometric solution into the Heun
operator as an independent consistency check, and `frobenius_series`
builds local power-series solutions at the singular points from the
generic three-term recurrence.
"""
import math
from dataclasses import dataclass, replace

import numpy as np

from .analytic import u_derivs
from .errors import DomainError, ResonantExponentError

__all__ = [
    "HeunParams",
    "heun_from_context",
    "termination_defect",
    "heun_residual",
    "frobenius_series",
    "frobenius_eval",
    "fit_local_params",
]

# closest approach to a singular point allowed in residual evaluation
_Z_MARGIN = 1e-3

_NONRESONANT_TOL = 1e-9


@dataclass(frozen=True)
class HeunParams:
    """Singular points and accessory parameters of the Heun form."""

    a1: float
    a2: float
    a3: float
    gamma_h: complex
    delta_h: complex
    epsilon_h: complex
    alpha_h: complex
    beta_h: complex
    q: complex

    @property
    def points(self):
        return (self.a1, self.a2, self.a3)

    def local_coeff(self, point_index):
        """First-order coefficient attached to the singular point."""
        return (self.gamma_h, self.delta_h, self.epsilon_h)[point_index]


def heun_from_context(ctx):
    """Heun parameters induced by a scattering context."""
    return HeunParams(
        a1=-1.0,
        a2=1.0,
        a3=0.0,
        gamma_h=1.0 + 2.0 * ctx.alpha1,
        delta_h=1.0 + 2.0 * ctx.alpha2,
        epsilon_h=complex(-1.0),
        alpha_h=ctx.alpha1 + ctx.alpha2 - ctx.alpha0,
        beta_h=ctx.alpha1 + ctx.alpha2 + ctx.alpha0,
        q=ctx.alpha2 - ctx.alpha1,
    )


def termination_defect(h):
    """q(q + gamma - delta) - alpha beta; zero for scattering contexts."""
    return h.q * (h.q + h.gamma_h - h.delta_h) - h.alpha_h * h.beta_h


def _operator_residual(h, z, u, up, upp):
    d1 = z - h.a1
    d2 = z - h.a2
    d3 = z - h.a3
    denom = d1 * d2 * d3
    return (
        upp
        + (h.gamma_h / d1 + h.delta_h / d2 + h.epsilon_h / d3) * up
        + (h.alpha_h * h.beta_h * z - h.q) * u / denom
    )


def heun_residual(h, ctx, z, c2=1.0):
    """Normalized Heun-operator residual of the hypergeometric solution.

    Evaluates |H[u](z)| / max(|u|, |u'|, |u''|) at real z > 1; exact
    satisfaction of the ODE means this vanishes to rounding.
    """
    z = float(z)
    if not math.isfinite(z) or z <= 1.0 + _Z_MARGIN:
        raise DomainError(f"residual evaluation requires z > {1.0 + _Z_MARGIN}, got z = {z}")
    u, up, upp = u_derivs(ctx, z, c2)
    scale = max(abs(u), abs(up), abs(upp))
    if scale == 0.0:
        return 0.0
    return abs(_operator_residual(h, z, u, up, upp)) / scale


def frobenius_series(h, point_index=1, exponent_index=0, n_terms=40):
    """Coefficients of a local Frobenius solution at a singular point.

    Returns (mu, coeffs) with u(z) = sum_n coeffs[n] (z - s)^{n + mu},
    normalized to coeffs[0] = 1.  The indicial exponents at s are
    {0, 1 - c_s} with c_s the local first-order coefficient;
    exponent_index selects one.  Raises ResonantExponentError when the
    exponents differ by an integer (logarithmic case, unsupported).
    """
    if n_terms < 1:
        raise DomainError("n_terms must be positive")
    s = h.points[point_index]
    others = [i for i in range(3) if i != point_index]
    c_s = h.local_coeff(point_index)
    d_p = s - h.points[others[0]]
    d_r = s - h.points[others[1]]
    c_p = h.local_coeff(others[0])
    c_r = h.local_coeff(others[1])

    diff = 1.0 - c_s  # exponent difference mu_1 - mu_0
    if abs(diff.imag) < _NONRESONANT_TOL and abs(diff.real - round(diff.real)) < _NONRESONANT_TOL:
        raise ResonantExponentError(
            f"indicial exponents at z = {s} differ by ~integer ({diff}); series form unsupported"
        )
    mu = complex(0.0) if exponent_index == 0 else diff

    # polynomial coefficients of the ODE multiplied through by
    # (z-a1)(z-a2)(z-a3), expanded in t = z - s
    e2 = d_p + d_r
    e1 = d_p * d_r
    f2 = h.gamma_h + h.delta_h + h.epsilon_h
    f1 = c_s * (d_p + d_r) + c_p * d_r + c_r * d_p
    g1 = h.alpha_h * h.beta_h
    g0 = g1 * s - h.q

    coeffs = np.zeros(n_terms, dtype=complex)
    coeffs[0] = 1.0
    for n in range(n_terms - 1):
        lead = (n + 1 + mu) * e1 * (n + mu + c_s)
        mid = coeffs[n] * ((n + mu) * (n + mu - 1.0) * e2 + (n + mu) * f1 + g0)
        low = complex(0.0)
        if n >= 1:
            low = coeffs[n - 1] * ((n - 1 + mu) * (n - 2 + mu) + (n - 1 + mu) * f2 + g1)
        coeffs[n + 1] = -(mid + low) / lead
    return mu, coeffs


def frobenius_eval(h, mu, coeffs, z, point_index=1):
    """(u, u', u'') of a Frobenius series at real or complex z."""
    t = z - h.points[point_index]
    if t == 0:
        raise DomainError("evaluate the series away from its expansion point")
    u = complex(0.0)
    up = complex(0.0)
    upp = complex(0.0)
    for n, cn in enumerate(coeffs):
        e = n + mu
        tp = t ** (e - 2.0)
        upp += cn * e * (e - 1.0) * tp
        up += cn * e * tp * t
        u += cn * tp * t * t
    return u, up, upp


def fit_local_params(ctx, z_pair=(2.0, 3.0)):
    """Independent numerical recovery of (delta, q).

    Treats delta and q as unknowns, demands that the hypergeometric
    solution annihilate the Heun operator at two sample points, and
    solves the resulting 2x2 linear system.  The other parameters are
    taken at their derived values.
    """
    h = heun_from_context(ctx)
    rows = []
    rhs = []
    for z in z_pair:
        u, up, upp = u_derivs(ctx, float(z))
        d1 = z - h.a1
        d3 = z - h.a3
        denom = d1 * (z - h.a2) * d3
        rows.append((up / (z - h.a2), -u / denom))
        rhs.append(-(upp + (h.gamma_h / d1 + h.epsilon_h / d3) * up
                     + h.alpha_h * h.beta_h * z * u / denom))
    det = rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    delta_fit = (rhs[0] * rows[1][1] - rhs[1] * rows[0][1]) / det
    q_fit = (rows[0][0] * rhs[1] - rows[1][0] * rhs[0]) / det
    return delta_fit, q_fit


def _tampered(h, dq):
    """Test hook: a copy of h with q offset by dq (breaks termination)."""
    return replace(h, q=h.q + dq)
