"""Quadrature stencils for the bond integral, material calibration and
boundary correction factors.

The bond integral at a grid node,

    int_{x-d}^{x+d} kappa (u(y) - u(x)) / |y - x| dy,    d = m h,

is approximated with the composite trapezoidal rule on the nodes ``x + j h``.
The weight of node ``j`` divided by the kernel distance ``|j| h`` is
independent of ``h``, so the discrete operator reads
``kappa * sum_j c_j (u_{i+j} - u_i)`` with

    c_j = 1/|j|        for 0 < |j| < m
    c_j = 1/(2|j|)     for |j| = m

The node ``j = 0`` carries no weight: the one-sided limits of the integrand
there cancel.
"""
from dataclasses import dataclass, field
import math

import numpy as np

from .errors import ConfigurationError, DomainError


@dataclass(frozen=True)
class InteriorStencil:
    m: int
    coeffs: dict = field(repr=False)

    @property
    def diagonal(self):
        return sum(self.coeffs.values())

    @property
    def offsets(self):
        return np.array(sorted(self.coeffs))

    @property
    def weights(self):
        return np.array([self.coeffs[j] for j in sorted(self.coeffs)])

    def row(self):
        """Coefficients on ``u_{i-m}..u_{i+m}`` of ``-sum_j c_j (u_{i+j} - u_i)``."""
        r = np.zeros(2 * self.m + 1)
        for j, c in self.coeffs.items():
            r[self.m + j] -= c
        r[self.m] = self.diagonal
        return r

    def apply(self, samples):
        """``sum_j c_j (f_{j} - f_0)`` for samples ``f_{-m}..f_{m}``."""
        samples = np.asarray(samples, dtype=float)
        centre = samples[self.m]
        return sum(c * (samples[self.m + j] - centre) for j, c in self.coeffs.items())


def pd_interior_stencil(m):
    if int(m) != m or m < 1:
        raise ValueError(f"stencil ratio m must be a positive integer, got {m}")
    m = int(m)
    coeffs = {}
    for k in range(1, m + 1):
        c = 1.0 / k if k < m else 1.0 / (2 * k)
        coeffs[k] = coeffs[-k] = c
    return InteriorStencil(m, coeffs)


@dataclass(frozen=True)
class MaterialScaling:
    """Bond stiffness ``kappa`` and the row constants ``alpha``, ``beta``."""

    kappa: float
    alpha: float
    beta: float

    @classmethod
    def for_grid(cls, modulus_area, disc):
        h, delta = disc.h, disc.delta
        kappa = calibrate_kappa(modulus_area, delta)
        return cls(kappa=kappa,
                   alpha=kappa * delta**2 / (16.0 * h**2),
                   beta=modulus_area / (2.0 * h**2))


def calibrate_kappa(EA, delta):
    """Bond stiffness that matches ``EA`` in the small-horizon limit."""
    if not (EA > 0 and delta > 0):
        raise ValueError(f"EA and delta must be positive, got EA={EA}, delta={delta}")
    return 2.0 * EA / delta**2


def skin_correction_factor(x, delta):
    """Ratio ``kappa_bar(x)/kappa`` that restores full stiffness at distance
    ``x`` from a free surface. Defined on ``[0, delta]``; mirror for the right end."""
    if not delta > 0:
        raise ValueError("delta must be positive")
    if not 0.0 <= x <= delta:
        raise DomainError(f"x={x} outside [0, delta={delta}]")
    return 2.0 * delta**2 / (delta**2 + x**2)


def edm_analytic_correction(x, delta):
    """Stiffness factor for the odd-extension model at distance ``x`` from the
    boundary, ``1 / (4s - (3 - 2 ln s) s**2)`` with ``s = x/delta``.

    The factor grows like ``1/(4s)`` as ``s -> 0`` and tends to 1 as
    ``s -> 1``; both ends are excluded.
    """
    if not delta > 0:
        raise ValueError("delta must be positive")
    if not 0.0 < x < delta:
        raise DomainError(f"x={x} outside the open interval (0, delta={delta})")
    s = x / delta
    return 1.0 / (4.0 * s - (3.0 - 2.0 * math.log(s)) * s * s)


def edm_numeric_correction():
    """Factor that turns the reduced EDM row at ``x_1`` into a consistent
    approximation of ``-u''`` (the row only captures 7/8 of it)."""
    return 8.0 / 7.0


def neumann_one_sided_row(h):
    """Left-sided second-order weights for ``u'(1)`` on ``(u_{n-2}, u_{n-1}, u_n)``."""
    if not h > 0:
        raise ValueError("h must be positive")
    return (1.0 / (2.0 * h), -4.0 / (2.0 * h), 3.0 / (2.0 * h))


def vhm_local_horizon(x, delta):
    """Piecewise linear horizon ``min(x, delta, 1 - x)``; zero at both ends."""
    if not 0 < delta <= 0.5:
        raise ConfigurationError(f"variable horizon needs 0 < delta <= 1/2, got {delta}")
    xa = np.asarray(x, dtype=float)
    if np.any(xa < 0.0) or np.any(xa > 1.0):
        raise DomainError("x must lie in [0, 1]")
    dv = np.minimum(np.minimum(xa, delta), 1.0 - xa)
    return float(dv) if np.ndim(x) == 0 else dv
