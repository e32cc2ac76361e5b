import cmath
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from stepscatter import (
    BarrierParams,
    connection_coeffs,
    make_context,
    transmission,
    transmission_step,
    u_derivs,
    wavefunction,
)
from stepscatter.errors import DomainError, ThresholdError

# frozen references for v0=0, v1=1, x0=0, sigma=-1 at E=2
T_CANONICAL = 0.99995180878144865576
T_SP_CANONICAL = 0.97056274847714058562
C_CANONICAL = -0.19391803404272408689 + 0.072725613689108033044j

CANON = BarrierParams()


def _random_params(rng, allow_negative_v1=False):
    v0 = rng.uniform(-2.0, 2.0)
    v1 = math.exp(rng.uniform(math.log(0.1), math.log(5.0)))
    if allow_negative_v1 and rng.uniform() < 0.3:
        v1 = -v1
    sigma = math.exp(rng.uniform(math.log(0.02), math.log(3.0))) * rng.choice((-1.0, 1.0))
    return BarrierParams(v0=v0, v1=v1, sigma=sigma)


def test_context_canonical_values():
    ctx = make_context(CANON, 2.0)
    assert_allclose(ctx.k1, 2.0, rtol=1e-15)
    assert_allclose(ctx.k2, math.sqrt(2.0), rtol=1e-15)
    assert_allclose(ctx.kappa, math.sqrt(6.0), rtol=1e-15)
    assert_allclose(ctx.alpha0, -2.0j, rtol=1e-15)
    assert_allclose(ctx.alpha1, -0.5j * math.sqrt(6.0), rtol=1e-15)
    assert_allclose(ctx.alpha2, -0.5j * math.sqrt(2.0), rtol=1e-15)
    # hypergeometric parameters tie to the exponents
    assert_allclose(ctx.a + ctx.b - ctx.c + 1.0, 2.0 * ctx.alpha2, atol=1e-15)


def test_context_rejects_bad_energy():
    with pytest.raises(DomainError):
        make_context(CANON, 0.0)
    with pytest.raises(DomainError):
        make_context(CANON, -1.0)
    with pytest.raises(DomainError):
        make_context(CANON, math.nan)


def test_context_branch_choices():
    # evanescent far side: k2 on the +i branch
    ctx = make_context(CANON, 0.5)
    assert ctx.k2.real == 0.0 and ctx.k2.imag > 0.0
    # kappa imaginary for a deep enough down-step
    ctx = make_context(BarrierParams(v1=-2.0), 1.0)
    assert ctx.kappa.real == 0.0 and ctx.kappa.imag > 0.0


def test_u_derivs_finite_difference():
    # h large enough that the difference is not swamped by the ~1e-14
    # noise of the u values themselves (|u| >> h |u'| here)
    ctx = make_context(CANON, 2.0)
    h = 1e-5
    for z in (1.3, 2.0, 4.5):
        u_m, up_m, upp_m = u_derivs(ctx, z - h)
        u_0, up_0, upp_0 = u_derivs(ctx, z)
        u_p, up_p, upp_p = u_derivs(ctx, z + h)
        assert_allclose((u_p - u_m) / (2.0 * h), up_0, rtol=1e-7)
        assert_allclose((up_p - up_m) / (2.0 * h), upp_0, rtol=1e-7)


def test_u_derivs_threshold_guard():
    ctx = make_context(BarrierParams(v1=0.0), 2.0)
    with pytest.raises(ThresholdError):
        u_derivs(ctx, 2.0)
    ctx = make_context(CANON, 2.0)
    with pytest.raises(DomainError):
        u_derivs(ctx, 1.0)
    with pytest.raises(DomainError):
        u_derivs(ctx, 0.5)


def test_connection_coeffs_canonical():
    ctx = make_context(CANON, 2.0)
    A, B, C = connection_coeffs(ctx)
    assert_allclose([C.real, C.imag], [C_CANONICAL.real, C_CANONICAL.imag], rtol=1e-12)
    # flux conservation: |A|^2 - |B|^2 = (k2/k1) |C|^2
    lhs = abs(A) ** 2 - abs(B) ** 2
    rhs = (ctx.k2.real / ctx.k1) * abs(C) ** 2
    assert_allclose(lhs, rhs, rtol=1e-12)


def test_connection_coeffs_flux_random():
    rng = np.random.default_rng(20260816)
    for _ in range(50):
        p = _random_params(rng, allow_negative_v1=True)
        top = max(p.v0, p.v0 + p.v1)
        energy = top + math.exp(rng.uniform(math.log(0.05), math.log(10.0)))
        ctx = make_context(p, energy)
        A, B, C = connection_coeffs(ctx)
        lhs = abs(A) ** 2 - abs(B) ** 2
        rhs = (ctx.k2.real / ctx.k1) * abs(C) ** 2
        assert_allclose(lhs, rhs, rtol=1e-10)


def test_connection_coeffs_evanescent_unit_reflection():
    # below the far-side threshold every incident wave reflects
    for energy in (0.2, 0.6, 0.95):
        ctx = make_context(CANON, energy)
        A, B, C = connection_coeffs(ctx)
        assert_allclose(abs(B / A), 1.0, rtol=1e-11)


def test_wavefunction_transmitted_tail():
    # far on the lowered side psi approaches C exp(i k2 (x - x0))
    ctx = make_context(CANON, 2.0)
    _, _, C = connection_coeffs(ctx)
    for x in (9.0, 10.5):
        expected = C * cmath.exp(1j * ctx.k2 * (x - ctx.params.x0))
        assert_allclose(wavefunction(ctx, x), expected, rtol=1e-6)
    # so far out that z rounds to 1 exactly: the plane-wave form verbatim
    x = 40.0
    expected = C * cmath.exp(1j * ctx.k2 * (x - ctx.params.x0))
    assert wavefunction(ctx, x) == expected


def test_wavefunction_asymptote_switch_is_seamless():
    # just below the switch (z ~ 6e6) the exact route must already agree
    # with the plane-wave form it is about to hand over to
    ctx = make_context(CANON, 2.0)
    A, B, _ = connection_coeffs(ctx)
    x = -0.5 * math.log(3.0e13)  # z^2 - 1 = exp(-2x), z ~ 5.5e6
    expected = (A * cmath.exp(1j * ctx.k1 * x) + B * cmath.exp(-1j * ctx.k1 * x))
    assert_allclose(wavefunction(ctx, x), expected, rtol=1e-6)
    # past the switch the plane-wave form is returned verbatim
    x = -25.0
    expected = (A * cmath.exp(1j * ctx.k1 * x) + B * cmath.exp(-1j * ctx.k1 * x))
    assert_allclose(wavefunction(ctx, x), expected, rtol=1e-14)


def test_wavefunction_scaling_and_guards():
    ctx = make_context(CANON, 2.0)
    assert wavefunction(ctx, 1.0, c2=0.0) == 0.0
    assert_allclose(wavefunction(ctx, 1.0, c2=2.0j),
                    2.0j * wavefunction(ctx, 1.0), rtol=1e-14)
    flat = make_context(BarrierParams(v1=0.0), 2.0)
    with pytest.raises(ThresholdError):
        wavefunction(flat, 1.0)


def test_transmission_canonical():
    res = transmission(CANON, 2.0)
    assert_allclose(res.T, T_CANONICAL, rtol=1e-13)
    assert res.T + res.R == 1.0
    assert_allclose(res.T_sp, T_SP_CANONICAL, rtol=1e-13)
    assert res.energy == 2.0


def test_transmission_step_values():
    assert_allclose(transmission_step(CANON, 2.0), T_SP_CANONICAL, rtol=1e-13)
    # explicit 4 k1 k2 / (k1 + k2)^2
    k1, k2 = 2.0, math.sqrt(2.0)
    assert_allclose(transmission_step(CANON, 2.0),
                    4.0 * k1 * k2 / (k1 + k2) ** 2, rtol=1e-14)
    assert transmission_step(CANON, 0.5) == 0.0
    assert transmission_step(CANON, 1.0) == 0.0
    with pytest.raises(DomainError):
        transmission_step(CANON, -0.5)


def test_transmission_flat_barrier():
    res = transmission(BarrierParams(v1=0.0), 3.0)
    assert res.T == 1.0 and res.R == 0.0
    assert res.A is None and res.B is None and res.C is None


def test_transmission_threshold_window():
    res = transmission(CANON, 1.0)
    assert res.T == 0.0 and res.R == 1.0
    assert res.A is None
    res = transmission(CANON, 1.0 + 1e-14)
    assert res.T == 0.0 and res.R == 1.0
    # just outside the window the full machinery runs
    res = transmission(CANON, 1.0 + 1e-9)
    assert 0.0 < res.T < 1e-3
    assert res.A is not None


def test_transmission_evanescent_band():
    res = transmission(CANON, 0.5)
    assert res.T == 0.0 and res.R == 1.0
    assert res.A is not None  # coefficients still meaningful below threshold
    with pytest.raises(DomainError):
        transmission(CANON, -0.1)


def test_transmission_down_step():
    # inverted step (v1 < 0) with imaginary kappa takes the oscillatory branch
    p = BarrierParams(v1=-2.0)
    res = transmission(p, 1.0)
    assert 0.0 < res.T < 1.0
    assert res.T + res.R == 1.0
    ctx = make_context(p, 1.0)
    A, _, C = connection_coeffs(ctx)
    assert_allclose((ctx.k2.real / ctx.k1) * abs(C / A) ** 2, res.T, rtol=1e-10)


def test_transmission_monotone_in_energy():
    es = np.linspace(1.02, 8.0, 60)
    ts = np.array([transmission(CANON, float(e)).T for e in es])
    assert np.all(np.diff(ts) > 0.0)
    assert np.all((ts > 0.0) & (ts < 1.0))


def test_transmission_sigma_parity_exact():
    for sigma in (0.3, 1.0, 2.7):
        for energy in (1.3, 2.0, 5.0):
            t_neg = transmission(BarrierParams(sigma=-sigma), energy).T
            t_pos = transmission(BarrierParams(sigma=sigma), energy).T
            assert t_neg == t_pos


def test_transmission_opaque_and_transparent_limits():
    # wide smooth step is nearly transparent
    assert transmission(BarrierParams(sigma=-40.0), 1.5).R < 1e-10
    # narrow step approaches the abrupt-step law from above
    res = transmission(BarrierParams(sigma=-1e-4), 2.0)
    assert res.T > res.T_sp
    assert res.T - res.T_sp < 1e-6


def test_transmission_mass_hbar_scaling():
    # T depends on the parameters only through sigma * k; doubling hbar
    # halves every k, which doubling sigma exactly compensates
    base = BarrierParams(v1=1.0, sigma=-2.0)
    scaled = BarrierParams(v1=1.0, sigma=-4.0, hbar=2.0)
    t1 = transmission(base, 2.0).T
    t2 = transmission(scaled, 2.0).T
    assert_allclose(t1, t2, rtol=1e-13)
