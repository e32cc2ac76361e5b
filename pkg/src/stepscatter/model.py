"""Barrier geometry: the smooth asymmetric step and its auxiliary map.

The potential is

    V(x) = V0 + V1 / sqrt(1 + e^{2(x - x0)/sigma}),

a smooth step of height V1 on a base V0, centered at x0 with width |sigma|.
Sign conventions: sigma < 0 places the raised side (V0 + V1) at x -> +inf,
so a wave incident from the left on V0 climbs the step; sigma > 0 is the
mirror image.  V1 < 0 gives a step down.  sigma = 0 is excluded; the
abrupt-step limit is available separately as `potential_step`.

The substitution z(x) = sqrt(1 + e^{2(x - x0)/sigma}) maps the real line
onto z in (1, inf) and underlies the closed-form scattering solution; its
derivative dz/dx = (z^2 - 1)/(sigma z) is exposed as `rho`.

All routines are total on the real line: exponentials are evaluated
asymptotically where they would overflow, returning exact limiting values.
"""
import math
from dataclasses import dataclass

from .errors import DomainError

__all__ = ["BarrierParams", "potential", "potential_step", "z_of_x", "rho"]


@dataclass(frozen=True)
class BarrierParams:
    """Barrier and particle parameters (hbar = m = 1 by default)."""

    v0: float = 0.0
    v1: float = 1.0
    x0: float = 0.0
    sigma: float = -1.0
    mass: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        for name in ("v0", "v1", "x0", "sigma", "mass", "hbar"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise DomainError(f"{name} must be finite, got {value}")
        if self.sigma == 0.0:
            raise DomainError("sigma must be nonzero (use potential_step for the abrupt limit)")
        if self.mass <= 0.0 or self.hbar <= 0.0:
            raise DomainError("mass and hbar must be positive")

    @property
    def coef(self):
        """2m/hbar^2, the Schrodinger-equation prefactor."""
        return 2.0 * self.mass / (self.hbar * self.hbar)


def potential(p, x):
    """V(x) for the smooth step; exact limiting values far from x0."""
    t = 2.0 * (x - p.x0) / p.sigma
    if t > 709.0:
        # 1/sqrt(1+e^t) -> e^{-t/2}; underflows smoothly to the exact limit V0
        return p.v0 + p.v1 * math.exp(-0.5 * t)
    return p.v0 + p.v1 / math.sqrt(1.0 + math.exp(t))


def potential_step(p, x):
    """Abrupt-step (sigma -> 0) limit of the same geometry.

    The raised side sits where `potential` tends to V0 + V1 for the sign
    of sigma carried by p.  At x0 the smooth profile equals V0 + V1/sqrt(2)
    for every sigma, so that is the pointwise limit returned there.
    """
    if x == p.x0:
        return p.v0 + p.v1 / math.sqrt(2.0)
    high = (x > p.x0) if p.sigma < 0.0 else (x < p.x0)
    return p.v0 + (p.v1 if high else 0.0)


def z_of_x(p, x):
    """The coordinate map z = sqrt(1 + e^{2(x - x0)/sigma}) in (1, inf).

    Computed asymptotically where the exponential exceeds double range;
    returns inf past the representable end of that tail.
    """
    t = 2.0 * (x - p.x0) / p.sigma
    if t > 1416.0:
        return math.inf
    if t > 709.0:
        return math.exp(0.5 * t)
    return math.sqrt(1.0 + math.exp(t))


def rho(p, z):
    """dz/dx expressed in z: (z^2 - 1)/(sigma z); requires z > 1."""
    if not z > 1.0:
        raise DomainError(f"rho requires z > 1, got z = {z}")
    return (z * z - 1.0) / (p.sigma * z)
