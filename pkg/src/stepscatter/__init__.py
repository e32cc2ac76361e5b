"""Exact quantum scattering on a smooth asymmetric potential step.

The potential V(x) = V0 + V1 / sqrt(1 + exp(2 (x - x0) / sigma))
interpolates between an abrupt step (sigma -> 0) and an adiabatic one.
The stationary Schrodinger equation for it closes in terms of Gauss
hypergeometric functions, giving machine-precision transmission and
reflection coefficients, exact wavefunctions, and a confluence-free
reduction to a Heun equation whose termination condition this package
checks explicitly.  A Runge-Kutta integrator (`oracle`) provides an
independent numerical cross-check of everything the closed form claims.
"""
from ._kernels import backend_name
from .analytic import (
    ScatteringContext,
    TransmissionResult,
    connection_coeffs,
    make_context,
    transmission,
    transmission_step,
    u_derivs,
    wavefunction,
)
from .errors import (
    AccuracyError,
    DomainError,
    PoleError,
    ResolutionError,
    ResonantExponentError,
    StepScatterError,
    ThresholdError,
)
from .heun import (
    HeunParams,
    fit_local_params,
    frobenius_eval,
    frobenius_series,
    heun_from_context,
    heun_residual,
    termination_defect,
)
from .model import BarrierParams, potential, potential_step, rho, z_of_x
from .oracle import GridSpec, NumericScattering, integrate, residual_of, richardson_T
from .specfun import gamma, hyp2f1, hyp2f1_deriv, log_gamma
from .verify import CheckResult, run_checks

__version__ = "0.1.0"

__all__ = [
    "AccuracyError",
    "BarrierParams",
    "CheckResult",
    "DomainError",
    "GridSpec",
    "HeunParams",
    "NumericScattering",
    "PoleError",
    "ResolutionError",
    "ResonantExponentError",
    "ScatteringContext",
    "StepScatterError",
    "ThresholdError",
    "TransmissionResult",
    "backend_name",
    "connection_coeffs",
    "fit_local_params",
    "frobenius_eval",
    "frobenius_series",
    "gamma",
    "heun_from_context",
    "heun_residual",
    "hyp2f1",
    "hyp2f1_deriv",
    "integrate",
    "log_gamma",
    "make_context",
    "potential",
    "potential_step",
    "residual_of",
    "rho",
    "richardson_T",
    "run_checks",
    "termination_defect",
    "transmission",
    "transmission_step",
    "u_derivs",
    "wavefunction",
    "z_of_x",
    "__version__",
]
