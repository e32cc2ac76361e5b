"""Complex special functions for scattering amplitudes.

Provides the Gauss hypergeometric function 2F1(a, b; c; w) for complex
parameters and real argument w < 1, its w-derivative, and the complex
gamma / log-gamma pair used in connection-coefficient prefactors.

Evaluation strategy for 2F1: the defining series converges fast only for
small |w|, so the argument is first mapped into [0, 2/3] by one of the
standard linear transformations,

    |w| <= 1/2      direct series,
    1/2 < w < 1     pair of series in 1 - w,
    -2 <= w < -1/2  single series in w/(w-1) with (1-w)^(-a) prefactor,
    w < -2          pair of series in 1/(1-w) with (1-w)^(-a), (1-w)^(-b)
                    prefactors.

The two-series transformations have apparent singularities when c-a-b
(respectively a-b) is an integer: each series carries a gamma pole that
cancels against the other.  Near-integer cases are recovered by an even
four-point Richardson limit over symmetric complex shifts of b, which
keeps the accuracy at ~1e-12 there versus ~1e-13 elsewhere.  Arguments
w >= 1 are outside the supported domain.
"""
import cmath
import math

from . import _kernels
from .errors import AccuracyError, DomainError, PoleError

__all__ = ["gamma", "log_gamma", "hyp2f1", "hyp2f1_deriv"]

SERIES_MAX_TERMS = 20000
SERIES_RTOL = 1e-16

# window for treating c-a-b or a-b as an integer: inside it the direct
# formula would lose more than ~1e-12 to gamma-pole roundoff, so the
# extrapolated limit takes over
_DEGENERATE_TOL = 3e-5
# symmetric parameter shift of the extrapolated limit, 1e-4 in modulus;
# the imaginary part keeps every shifted gamma argument off the poles
_DEGENERATE_SHIFT = 7.0710678118654755e-05 * (1.0 + 1.0j)

_SQRT_2PI = math.sqrt(2.0 * math.pi)
_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)

# rational-approximation constants for the gamma function (g = 607/128);
# relative error < 5e-14 across the tested |z| <= 50 half-plane
_LANCZOS_G = 4.7421875
_LANCZOS = (
    0.999999999999997092,
    57.1562356658629235,
    -59.5979603554754912,
    14.1360979747417471,
    -0.491913816097620199,
    0.339946499848118887e-4,
    0.465236289270485756e-4,
    -0.983744753048795646e-4,
    0.158088703224912494e-3,
    -0.210264441724104883e-3,
    0.217439618115212643e-3,
    -0.164318106536763890e-3,
    0.844182239838527433e-4,
    -0.261908384015814087e-4,
    0.368991826595316234e-5,
)


def _pole_at(z):
    """Return the pole location if z is a non-positive integer, else None."""
    if z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real):
        return int(z.real)
    return None


def _near_pole_shift(z):
    """Distance to the recurrence route for z close to a non-positive integer.

    Within 1/2 of a pole the reflection formula loses ~|z + n| relative
    accuracy to the zero of sin(pi z); the recurrence product keeps full
    precision there because z + n is computed exactly.  Returns the shift
    n + 1 to a safe argument, or None when reflection is fine.
    """
    nr = round(z.real)
    if nr <= 0 and abs(z - nr) < 0.5 and nr > -120:
        return 1 - int(nr)
    return None


def _lanczos_sum(z):
    # z is already shifted so the series is evaluated at z >= -0.5 offsets
    s = _LANCZOS[0]
    for k in range(1, len(_LANCZOS)):
        s += _LANCZOS[k] / (z + k)
    return s


def gamma(z):
    """Complex gamma function.

    Raises PoleError at non-positive integers.  Uses reflection for
    Re(z) < 0.5, so accuracy there is limited by sin(pi*z) as well.
    """
    z = complex(z)
    pole = _pole_at(z)
    if pole is not None:
        raise PoleError(pole)
    if z.real < 0.5:
        shift = _near_pole_shift(z)
        if shift is not None:
            prod = complex(1.0)
            for k in range(shift):
                prod *= z + k
            return gamma(z + shift) / prod
        return math.pi / (cmath.sin(math.pi * z) * gamma(1.0 - z))
    zz = z - 1.0
    t = zz + _LANCZOS_G + 0.5
    return _SQRT_2PI * t ** (zz + 0.5) * cmath.exp(-t) * _lanczos_sum(zz)


def _clog1p(x):
    """log(1 + x) for complex x, accurate for |x| << 1."""
    if abs(x) < 1e-4:
        return x * (1.0 + x * (-0.5 + x * (1.0 / 3.0 + x * -0.25)))
    return cmath.log(1.0 + x)


def _log_sin(u):
    """log(sin(u)), stable for large |Im(u)|; imaginary part branch-loose."""
    if abs(u.imag) < 1.0:
        return cmath.log(cmath.sin(u))
    if u.imag > 0.0:
        # sin(u) = (i/2) e^{-iu} (1 - e^{2iu}); |e^{2iu}| = e^{-2 Im u} < 1
        return cmath.log(0.5j) - 1j * u + _clog1p(-cmath.exp(2j * u))
    return _log_sin(u.conjugate()).conjugate()


def log_gamma(z):
    """log of the gamma function, computed without intermediate overflow.

    Exact branch of the analytic continuation for Re(z) >= 0.5 (matches
    gamma on exponentiation everywhere); on the reflected half-plane the
    imaginary part is only defined modulo 2*pi.
    """
    z = complex(z)
    pole = _pole_at(z)
    if pole is not None:
        raise PoleError(pole)
    if z.real < 0.5:
        shift = _near_pole_shift(z)
        if shift is not None:
            total = log_gamma(z + shift)
            for k in range(shift):
                total -= cmath.log(z + k)
            return total
        return math.log(math.pi) - _log_sin(math.pi * z) - log_gamma(1.0 - z)
    zz = z - 1.0
    t = zz + _LANCZOS_G + 0.5
    return _LOG_SQRT_2PI + (zz + 0.5) * cmath.log(t) - t + cmath.log(_lanczos_sum(zz))


def _series(a, b, c, w):
    value, _, converged = _kernels.hyp2f1_series(a, b, c, w, SERIES_MAX_TERMS, SERIES_RTOL)
    if not converged:
        raise AccuracyError(
            f"hypergeometric series stalled at argument {w!r} after {SERIES_MAX_TERMS} terms"
        )
    return value


def _gamma_coef(nums, dens):
    """exp(sum log_gamma(nums) - sum log_gamma(dens)).

    A pole in a denominator makes the coefficient exactly zero (the 1/gamma
    factor vanishes); a pole in a numerator is a genuine singularity and
    propagates.
    """
    total = complex(0.0)
    for v in nums:
        total += log_gamma(v)
    for v in dens:
        try:
            total -= log_gamma(v)
        except PoleError:
            return complex(0.0)
    return cmath.exp(total)


def _split_integer(v):
    """(m, eps) with v = m + eps, m the nearest integer; the subtraction
    is exact, so eps keeps full relative accuracy however small it is."""
    m = int(round(v.real))
    return m, v - m


def _log_gamma_near(m, eps):
    """log Gamma(m + eps) for integer m and a small exact offset eps.

    Forming m + eps in doubles rounds eps at the ulp of m, which a
    nearby gamma pole amplifies by 1/|eps|; recursing down to
    Gamma(1 + eps) instead keeps eps exact in the one singular log
    factor.
    """
    if m <= 0 and eps == 0.0:
        raise PoleError(m, f"gamma pole at {m}")
    if m > 0 or m < -300:
        return log_gamma(complex(m) + eps)
    total = log_gamma(1.0 + eps)
    for k in range(m, 1):
        total -= cmath.log(complex(k) + eps)
    return total


def _pair_one_minus_w(a, b, c, w, m, eps):
    """Series pair in 1 - w for 1/2 < w < 1, singular at integer c-a-b.

    The difference c - a - b arrives pre-split as m + eps so that the
    singular gamma factors and the near-terminating series parameter
    keep full relative accuracy in eps.
    """
    u = 1.0 - w
    lg_c = log_gamma(c)
    try:
        co1 = cmath.exp(lg_c + _log_gamma_near(m, eps) - log_gamma(c - a) - log_gamma(c - b))
    except PoleError:
        co1 = complex(0.0)
    try:
        co2 = cmath.exp(lg_c + _log_gamma_near(-m, -eps) - log_gamma(a) - log_gamma(b))
    except PoleError:
        co2 = complex(0.0)
    first = co1 * _series(a, b, complex(1 - m) - eps, u)
    second = u ** (complex(m) + eps) * co2 * _series(c - a, c - b, complex(1 + m) + eps, u)
    return first + second


def _pair_reciprocal(a, b, c, w, m, eps):
    """Series pair in 1/(1-w) for w < -2, singular at integer a - b.

    The difference a - b arrives pre-split as m + eps, as in
    _pair_one_minus_w.
    """
    u = 1.0 / (1.0 - w)
    lg_c = log_gamma(c)
    try:
        co1 = cmath.exp(lg_c + _log_gamma_near(-m, -eps) - log_gamma(b) - log_gamma(c - a))
    except PoleError:
        co1 = complex(0.0)
    try:
        co2 = cmath.exp(lg_c + _log_gamma_near(m, eps) - log_gamma(a) - log_gamma(c - b))
    except PoleError:
        co2 = complex(0.0)
    first = (1.0 - w) ** (-a) * co1 * _series(a, c - b, complex(1 + m) + eps, u)
    second = (1.0 - w) ** (-b) * co2 * _series(b, c - a, complex(1 - m) - eps, u)
    return first + second


def _degenerate_limit(pair, a, b, c, w, m, eps):
    """Even four-point Richardson limit of a series pair across its
    apparent singularity at integer c-a-b or a-b.

    2F1 is analytic in b, so values at b +- d and b +- 2d recover the
    on-singularity value with the odd and quadratic shift terms
    cancelled: the error is O(d^4) analytic plus ~1e-16/d gamma-pole
    roundoff, about 1e-12 at |d| = 1e-4.  Shifting b moves the split
    offset eps by the exact same amount in the opposite direction.
    """
    d = _DEGENERATE_SHIFT
    g1 = pair(a, b + d, c, w, m, eps - d) + pair(a, b - d, c, w, m, eps + d)
    g2 = pair(a, b + 2.0 * d, c, w, m, eps - 2.0 * d) + pair(
        a, b - 2.0 * d, c, w, m, eps + 2.0 * d
    )
    return (4.0 * g1 - g2) / 6.0


def hyp2f1(a, b, c, w):
    """Gauss hypergeometric function 2F1(a, b; c; w), complex parameters,
    real argument w < 1.

    Raises DomainError for w >= 1, PoleError when c is a non-positive
    integer, AccuracyError if an internal series fails to converge.
    """
    a = complex(a)
    b = complex(b)
    c = complex(c)
    w = float(w)
    if not (w < 1.0):
        raise DomainError(f"argument w = {w} outside the supported range w < 1")
    pole = _pole_at(c)
    if pole is not None:
        raise PoleError(pole, f"lower parameter c = {pole} is a pole of 2F1")

    if abs(w) <= 0.5:
        return _series(a, b, c, w)

    if w > 0.5:
        m, eps = _split_integer(c - a - b)
        if abs(eps) < _DEGENERATE_TOL:
            return _degenerate_limit(_pair_one_minus_w, a, b, c, w, m, eps)
        return _pair_one_minus_w(a, b, c, w, m, eps)

    if w >= -2.0:
        # single-series map onto w/(w-1) in (1/3, 2/3]
        return (1.0 - w) ** (-a) * _series(a, c - b, c, w / (w - 1.0))

    m, eps = _split_integer(a - b)
    if abs(eps) < _DEGENERATE_TOL:
        return _degenerate_limit(_pair_reciprocal, a, b, c, w, m, eps)
    return _pair_reciprocal(a, b, c, w, m, eps)


def hyp2f1_deriv(a, b, c, w):
    """d/dw of 2F1(a, b; c; w) via the contiguous identity
    (a b / c) * 2F1(a+1, b+1; c+1; w)."""
    a = complex(a)
    b = complex(b)
    c = complex(c)
    return a * b / c * hyp2f1(a + 1.0, b + 1.0, c + 1.0, w)
