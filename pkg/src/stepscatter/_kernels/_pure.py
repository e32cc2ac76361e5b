"""Pure-Python reference implementations of the hot kernels.

Semantics here are the contract; the Cython module `_core` mirrors this
file statement for statement and must agree to double-precision rounding.
"""
import math

# exponent clamp keeping exp() inside double range; the potential is
# exactly flat to machine precision beyond it anyway
_EXP_CLAMP = 700.0


def hyp2f1_series(a, b, c, w, max_terms=20000, rtol=1e-16):
    """Sum the Gauss series sum_n (a)_n (b)_n / (c)_n w^n / n!.

    Returns (value, terms_used, converged).  Convergence requires three
    consecutive terms below rtol relative to the running sum.  The caller
    is responsible for keeping |w| small enough for the series to be
    sensible; this routine only sums.
    """
    term = complex(1.0)
    total = complex(1.0)
    streak = 0
    for n in range(max_terms):
        term *= (a + n) * (b + n) * w / ((c + n) * (n + 1.0))
        total += term
        if abs(term) < rtol * abs(total):
            streak += 1
            if streak >= 3:
                return total, n + 1, True
        else:
            streak = 0
    return total, max_terms, False


def rk4_scatter(v0, v1, x0, sigma, coef, energy, x_from, x_to, n_steps,
                psi0, dpsi0, stride=0, xs_out=None, psis_out=None):
    """Propagate psi'' = coef*(V(x) - E)*psi with classic fixed-step RK4.

    coef is 2m/hbar^2; V is the smooth step v0 + v1/sqrt(1 + e^{2(x-x0)/sigma}).
    Starts from (psi0, dpsi0) at x_from and integrates to x_to in n_steps
    equal steps (x_to < x_from gives leftward propagation).  If stride > 0
    and sample buffers are given, every stride-th node (including the
    start) is recorded.  Returns (psi, dpsi, n_samples).
    """
    h = (x_to - x_from) / n_steps
    psi = complex(psi0)
    dpsi = complex(dpsi0)

    def f(x):
        t = 2.0 * (x - x0) / sigma
        if t > _EXP_CLAMP:
            t = _EXP_CLAMP
        elif t < -_EXP_CLAMP:
            t = -_EXP_CLAMP
        return coef * (v0 + v1 / math.sqrt(1.0 + math.exp(t)) - energy)

    m = 0
    if stride > 0 and xs_out is not None:
        xs_out[0] = x_from
        psis_out[0] = psi
        m = 1
    for i in range(n_steps):
        x = x_from + i * h  # recompute from the index: no accumulated drift
        f1 = f(x)
        f2 = f(x + 0.5 * h)
        f4 = f(x + h)
        k1p = dpsi
        k1q = f1 * psi
        k2p = dpsi + 0.5 * h * k1q
        k2q = f2 * (psi + 0.5 * h * k1p)
        k3p = dpsi + 0.5 * h * k2q
        k3q = f2 * (psi + 0.5 * h * k2p)
        k4p = dpsi + h * k3q
        k4q = f4 * (psi + h * k3p)
        psi = psi + (h / 6.0) * (k1p + 2.0 * k2p + 2.0 * k3p + k4p)
        dpsi = dpsi + (h / 6.0) * (k1q + 2.0 * k2q + 2.0 * k3q + k4q)
        if stride > 0 and xs_out is not None and (i + 1) % stride == 0 and m < len(xs_out):
            xs_out[m] = x_from + (i + 1) * h
            psis_out[m] = psi
            m += 1
    return psi, dpsi, m
