# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; statement-for-statement mirror of _pure.py."""
from libc.math cimport exp, sqrt

cdef double _EXP_CLAMP = 700.0


def hyp2f1_series(double complex a, double complex b, double complex c,
                  double w, int max_terms=20000, double rtol=1e-16):
    """Sum the Gauss series; see _pure.hyp2f1_series for the contract."""
    cdef double complex term = 1.0
    cdef double complex total = 1.0
    cdef int streak = 0
    cdef int n
    for n in range(max_terms):
        term = term * (a + n) * (b + n) * w / ((c + n) * (n + 1.0))
        total = total + term
        if abs(term) < rtol * abs(total):
            streak += 1
            if streak >= 3:
                return total, n + 1, True
        else:
            streak = 0
    return total, max_terms, False


cdef inline double _fval(double x, double v0, double v1, double x0,
                         double sigma, double coef, double energy) nogil:
    cdef double t = 2.0 * (x - x0) / sigma
    if t > _EXP_CLAMP:
        t = _EXP_CLAMP
    elif t < -_EXP_CLAMP:
        t = -_EXP_CLAMP
    return coef * (v0 + v1 / sqrt(1.0 + exp(t)) - energy)


def rk4_scatter(double v0, double v1, double x0, double sigma, double coef,
                double energy, double x_from, double x_to, long n_steps,
                double complex psi0, double complex dpsi0, long stride=0,
                double[::1] xs_out=None, double complex[::1] psis_out=None):
    """Fixed-step RK4 propagation; see _pure.rk4_scatter for the contract."""
    cdef double h = (x_to - x_from) / n_steps
    cdef double complex psi = psi0
    cdef double complex dpsi = dpsi0
    cdef double complex k1p, k1q, k2p, k2q, k3p, k3q, k4p, k4q
    cdef double f1, f2, f4, x
    cdef long i, m = 0
    cdef long cap = 0
    cdef bint record = stride > 0 and xs_out is not None
    if record:
        cap = xs_out.shape[0]
        xs_out[0] = x_from
        psis_out[0] = psi
        m = 1
    for i in range(n_steps):
        x = x_from + i * h
        f1 = _fval(x, v0, v1, x0, sigma, coef, energy)
        f2 = _fval(x + 0.5 * h, v0, v1, x0, sigma, coef, energy)
        f4 = _fval(x + h, v0, v1, x0, sigma, coef, energy)
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
        if record and (i + 1) % stride == 0 and m < cap:
            xs_out[m] = x_from + (i + 1) * h
            psis_out[m] = psi
            m += 1
    return psi, dpsi, m
