"""Bar problem, uniform grid and the catalogue of manufactured solutions.

The bar occupies ``[0, 1]``, is clamped at ``x = 0`` and loaded by a traction
``g`` at ``x = 1``::

    -EA u'' = f_b    in (0, 1)
         u  = u0     at x = 0
      EA u' = g      at x = 1

Every manufactured case is defined for unit stiffness and then scaled, so
that ``exact_solution`` does not depend on ``EA`` while ``body_force`` and
``neumann_data`` scale linearly with it.
"""
from dataclasses import dataclass
import enum

import numpy as np

from .errors import ConfigurationError, DomainError
from .stencils import vhm_local_horizon


class Case(enum.Enum):
    LINEAR = "linear"
    QUADRATIC = "quadratic"
    CUBIC = "cubic"
    QUARTIC = "quartic"
    QUARTIC_PD = "quartic-pd"
    EXPONENTIAL = "exponential"

    @property
    def is_polynomial(self):
        return self is not Case.EXPONENTIAL


@dataclass(frozen=True)
class BarProblem:
    """Material, loading and manufactured-solution selector.

    ``epsilon`` is only meaningful (and then required) for
    ``Case.EXPONENTIAL``; it sets the width of the boundary layer at ``x = 1``.
    """

    case: Case = Case.QUADRATIC
    modulus_area: float = 1.0
    traction_g: float = 1.0
    dirichlet_u0: float = 0.0
    epsilon: float | None = None

    def __post_init__(self):
        if isinstance(self.case, str):
            object.__setattr__(self, "case", Case(self.case))
        if not self.modulus_area > 0:
            raise ConfigurationError(f"EA must be positive, got {self.modulus_area}")
        if self.case is Case.EXPONENTIAL:
            if self.epsilon is None or not 0 < self.epsilon < 1:
                raise ConfigurationError(
                    f"exponential case needs 0 < epsilon < 1, got {self.epsilon}")
        elif self.epsilon is not None:
            raise ConfigurationError("epsilon only applies to the exponential case")

    @classmethod
    def exponential(cls, epsilon, modulus_area=1.0):
        return cls(Case.EXPONENTIAL, modulus_area=modulus_area, epsilon=epsilon)


@dataclass(frozen=True)
class Discretization:
    """Uniform grid ``x_i = i/n`` with horizon ``delta = m*h``.

    The centre node of the first full-horizon stencil must fit inside the
    bar, hence ``n >= 2m``.
    """

    n: int
    m: int = 2

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 1:
            raise ConfigurationError(f"m must be a positive integer, got {self.m}")
        if int(self.n) != self.n or self.n < 2 * self.m:
            raise ConfigurationError(
                f"need n >= 2m for a full interior stencil, got n={self.n}, m={self.m}")

    @property
    def h(self):
        return 1.0 / self.n

    @property
    def delta(self):
        return self.m / self.n

    @classmethod
    def from_delta(cls, delta, m):
        """Grid with ``h = delta/m``; ``1/delta`` times ``m`` must be an integer."""
        n = round(m / delta)
        if not np.isclose(n * delta, m, rtol=0, atol=1e-9):
            raise ConfigurationError(f"delta={delta} with m={m} gives a non-integer n")
        return cls(n, m)


def grid_points(disc):
    """Nodes ``x_0..x_n``; computed as ``i/n`` so that ``x_n == 1`` exactly."""
    return np.arange(disc.n + 1) / disc.n


def _check_unit_interval(x):
    x = np.asarray(x, dtype=float)
    if np.any(x < 0.0) or np.any(x > 1.0) or np.any(np.isnan(x)):
        raise DomainError("x must lie in [0, 1]")
    return x


def _scalar_or_array(values, x):
    return float(values) if np.ndim(x) == 0 else values


def _expm1_neg(eps):
    # 1 - exp(-1/eps) without cancellation for large eps
    return -np.expm1(-1.0 / eps)


def body_force(p, disc, x):
    """Body force density ``f_b(x)`` for the selected case.

    ``disc`` is only consulted by ``Case.QUARTIC_PD`` (it needs the horizon);
    pass ``None`` for the other cases.
    """
    xa = _check_unit_interval(x)
    case = p.case
    if case is Case.LINEAR:
        f = np.zeros_like(xa)
    elif case is Case.QUADRATIC:
        f = np.ones_like(xa)
    elif case is Case.CUBIC:
        f = xa.copy()
    elif case is Case.QUARTIC:
        f = xa**2
    elif case is Case.QUARTIC_PD:
        if disc is None:
            raise ConfigurationError("the peridynamic quartic load needs a discretization")
        dv = vhm_local_horizon(xa, disc.delta)
        f = xa**2 + dv**2 / 12.0
    else:
        eps = p.epsilon
        f = np.exp(-(1.0 - xa) / eps) / (eps**2 * _expm1_neg(eps))
    return _scalar_or_array(p.modulus_area * f, x)


def exact_solution(p, x):
    """Exact solution of the local problem; vanishes at ``x = 0``.

    Polynomial cases are written for ``EA u'(1) = g`` with ``g = EA``; any
    other traction adds the linear mode ``(g/EA - 1) x``.
    """
    xa = _check_unit_interval(x)
    case = p.case
    if case is Case.EXPONENTIAL:
        eps = p.epsilon
        u = xa - (np.exp(-(1.0 - xa) / eps) - np.exp(-1.0 / eps)) / _expm1_neg(eps)
        return _scalar_or_array(u, x)
    if case is Case.LINEAR:
        u = xa.copy()
    elif case is Case.QUADRATIC:
        u = xa * (4.0 - xa) / 2.0
    elif case is Case.CUBIC:
        u = xa * (3.0 - xa) * (3.0 + xa) / 6.0
    else:
        u = xa * (16.0 - xa**3) / 12.0
    u = u + (p.traction_g / p.modulus_area - 1.0) * xa
    return _scalar_or_array(u + p.dirichlet_u0, x)


def neumann_data(p):
    """Traction at ``x = 1``.

    Polynomial cases return ``traction_g``; the exponential case has its
    traction fixed by the manufactured solution.
    """
    if p.case is Case.EXPONENTIAL:
        eps = p.epsilon
        return p.modulus_area * (1.0 - 1.0 / (eps * _expm1_neg(eps)))
    return p.traction_g
