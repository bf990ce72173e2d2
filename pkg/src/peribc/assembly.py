"""Banded linear systems for the local model and the two peridynamic
boundary treatments.

Row layouts follow the collocation systems with

    alpha = kappa delta^2 / (16 h^2),    beta = EA / (2 h^2) = 4 alpha  (m = 2).

``EDM_FULL`` keeps the extension unknowns ``u_{-2}, u_{-1}, u_{n+1}, u_{n+2}``
and the odd-reflection constraints; all other methods solve for
``u_0..u_n`` only.
"""
from dataclasses import dataclass, field
import enum
import io

import numpy as np

from .errors import ConfigurationError, UnsupportedConfigurationError
from .problem import body_force, grid_points, neumann_data
from .stencils import (
    MaterialScaling,
    edm_analytic_correction,
    edm_numeric_correction,
    neumann_one_sided_row,
    pd_interior_stencil,
)


class MethodKind(enum.Enum):
    LLEM = "LLEM"
    EDM_FULL = "EDM_full"
    EDM_REDUCED = "EDM"
    EDM_I = "EDM_I"
    EDM_II = "EDM_II"
    VHM = "VHM"

    @property
    def is_edm(self):
        return self in (MethodKind.EDM_FULL, MethodKind.EDM_REDUCED,
                        MethodKind.EDM_I, MethodKind.EDM_II)


@dataclass(frozen=True)
class Neumann:
    """Traction condition at ``x = 1``; ``g=None`` takes it from the problem."""

    g: float | None = None


@dataclass(frozen=True)
class Dirichlet:
    u1: float


@dataclass(frozen=True)
class MethodSpec:
    kind: MethodKind
    right_bc: Neumann | Dirichlet = Neumann()

    def __post_init__(self):
        if isinstance(self.kind, str):
            object.__setattr__(self, "kind", method_kind(self.kind))

    @property
    def label(self):
        return self.kind.value


_ALIASES = {
    "llem": MethodKind.LLEM,
    "edm": MethodKind.EDM_REDUCED,
    "edm_reduced": MethodKind.EDM_REDUCED,
    "edm-reduced": MethodKind.EDM_REDUCED,
    "edm_full": MethodKind.EDM_FULL,
    "edm-full": MethodKind.EDM_FULL,
    "edm_i": MethodKind.EDM_I,
    "edm-i": MethodKind.EDM_I,
    "edm1": MethodKind.EDM_I,
    "edm_ii": MethodKind.EDM_II,
    "edm-ii": MethodKind.EDM_II,
    "edm2": MethodKind.EDM_II,
    "vhm": MethodKind.VHM,
}


def method_kind(name):
    """Look up a ``MethodKind`` by a case-insensitive name such as ``"edm-ii"``."""
    if isinstance(name, MethodKind):
        return name
    try:
        return _ALIASES[name.strip().lower()]
    except KeyError:
        raise ConfigurationError(f"unknown method {name!r}") from None


@dataclass(frozen=True)
class BandedSystem:
    """Square banded matrix with right-hand side.

    ``bands[i, k]`` holds ``A[i, i - lower_bw + k]``; slots that fall outside
    the matrix stay zero. Row ``r`` corresponds to grid index
    ``r + index_offset``.
    """

    lower_bw: int
    upper_bw: int
    bands: np.ndarray = field(repr=False)
    rhs: np.ndarray = field(repr=False)
    index_offset: int = 0
    h: float = 0.0

    @property
    def size(self):
        return self.bands.shape[0]

    @property
    def coords(self):
        return (np.arange(self.size) + self.index_offset) * self.h

    def to_dense(self):
        n, lo = self.size, self.lower_bw
        a = np.zeros((n, n))
        for k in range(self.bands.shape[1]):
            off = k - lo
            i = np.arange(max(0, -off), min(n, n - off))
            a[i, i + off] = self.bands[i, k]
        return a

    def matvec(self, u):
        u = np.asarray(u, dtype=self.bands.dtype)
        n, lo = self.size, self.lower_bw
        out = np.zeros(n, dtype=np.result_type(self.bands, u))
        for k in range(self.bands.shape[1]):
            off = k - lo
            i = np.arange(max(0, -off), min(n, n - off))
            out[i] += self.bands[i, k] * u[i + off]
        return out

    def row(self, i):
        """Dense copy of row ``i``."""
        r = np.zeros(self.size)
        lo = self.lower_bw
        for k, v in enumerate(self.bands[i]):
            j = i - lo + k
            if 0 <= j < self.size:
                r[j] = v
        return r

    def norm_inf(self):
        return float(np.max(np.sum(np.abs(self.bands), axis=1)))


class _Builder:
    def __init__(self, size, lower, upper, index_offset=0, h=0.0):
        self.lower, self.upper = lower, upper
        self.bands = np.zeros((size, lower + upper + 1))
        self.rhs = np.zeros(size)
        self.index_offset, self.h = index_offset, h

    def put(self, row, first_col, coeffs, rhs):
        for c, v in enumerate(coeffs, start=first_col):
            k = c - row + self.lower
            if not 0 <= k < self.bands.shape[1]:
                raise ConfigurationError(f"entry ({row}, {c}) outside the band")
            self.bands[row, k] = v
        self.rhs[row] = rhs

    def build(self):
        self.bands.setflags(write=False)
        self.rhs.setflags(write=False)
        return BandedSystem(self.lower, self.upper, self.bands, self.rhs,
                            self.index_offset, self.h)


def _interior_load(p, disc):
    x = grid_points(disc)
    f = np.zeros(disc.n + 1)
    f[1:-1] = body_force(p, disc, x[1:-1])
    return f


def _close_right(b, p, disc, spec, neumann_coeffs):
    n = disc.n
    if isinstance(spec.right_bc, Dirichlet):
        b.put(n, n, [1.0], spec.right_bc.u1)
    else:
        g = spec.right_bc.g
        b.put(n, n - 2, neumann_coeffs, neumann_data(p) if g is None else g)


def assemble_llem(p, disc, spec=None):
    spec = spec or MethodSpec(MethodKind.LLEM)
    n, h = disc.n, disc.h
    if n < 3:
        raise ConfigurationError("the local model needs n >= 3")
    beta = p.modulus_area / (2.0 * h**2)
    f = _interior_load(p, disc)
    b = _Builder(n + 1, 2, 1, h=h)
    b.put(0, 0, [1.0], p.dirichlet_u0)
    for i in range(1, n):
        b.put(i, i - 1, [-2 * beta, 4 * beta, -2 * beta], f[i])
    _close_right(b, p, disc, spec, [beta * h, -4 * beta * h, 3 * beta * h])
    return b.build()


def _require_m2(disc, kind):
    if disc.m != 2:
        raise UnsupportedConfigurationError(
            f"{kind.value} is only defined for delta = 2h (m=2), got m={disc.m}")
    if disc.n < 4:
        raise ConfigurationError(f"{kind.value} needs n >= 4, got {disc.n}")


def assemble_edm_full(p, disc, spec=None):
    spec = spec or MethodSpec(MethodKind.EDM_FULL)
    _require_m2(disc, MethodKind.EDM_FULL)
    n, h = disc.n, disc.h
    alpha = MaterialScaling.for_grid(p.modulus_area, disc).alpha
    f = _interior_load(p, disc)
    o = 2  # row of u_0
    b = _Builder(n + 5, 4, 4, index_offset=-2, h=h)
    b.put(0, 0, [1.0, 0.0, -2.0, 0.0, 1.0], 0.0)
    b.put(1, 1, [1.0, -2.0, 1.0], 0.0)
    b.put(o, o, [1.0], p.dirichlet_u0)
    interior = alpha * np.array([-1.0, -4.0, 10.0, -4.0, -1.0])
    for i in range(1, n):
        b.put(i + o, i + o - 2, interior, f[i])
    r = n + o
    if isinstance(spec.right_bc, Dirichlet):
        b.put(r, r, [1.0], spec.right_bc.u1)
    else:
        g = spec.right_bc.g
        b.put(r, r - 2, alpha * h * np.array([2.0, -8.0, 0.0, 8.0, -2.0]),
              neumann_data(p) if g is None else g)
    b.put(r + 1, r - 1, [1.0, -2.0, 1.0], 0.0)
    b.put(r + 2, r - 2, [1.0, 0.0, -2.0, 0.0, 1.0], 0.0)
    return b.build()


def edm_boundary_factor(kind, disc):
    """Row multiplier used at ``x_1`` and ``x_{n-1}`` by the EDM variants."""
    if kind is MethodKind.EDM_I:
        return edm_analytic_correction(disc.h, disc.delta)
    if kind is MethodKind.EDM_II:
        return edm_numeric_correction()
    return 1.0


def assemble_edm_reduced(p, disc, spec=None):
    spec = spec or MethodSpec(MethodKind.EDM_REDUCED)
    kind = spec.kind
    if kind not in (MethodKind.EDM_REDUCED, MethodKind.EDM_I, MethodKind.EDM_II):
        raise ConfigurationError(f"{kind.value} is not a reduced EDM variant")
    _require_m2(disc, kind)
    n, h = disc.n, disc.h
    alpha = MaterialScaling.for_grid(p.modulus_area, disc).alpha
    # x_1 and x_{n-1} both sit at half a horizon from their boundary
    fac = edm_boundary_factor(kind, disc)
    f = _interior_load(p, disc)
    b = _Builder(n + 1, 2, 2, h=h)
    b.put(0, 0, [1.0], p.dirichlet_u0)
    b.put(1, 0, fac * alpha * np.array([-6.0, 11.0, -4.0, -1.0]), f[1])
    interior = alpha * np.array([-1.0, -4.0, 10.0, -4.0, -1.0])
    for i in range(2, n - 1):
        b.put(i, i - 2, interior, f[i])
    b.put(n - 1, n - 3, fac * alpha * np.array([-1.0, -4.0, 11.0, -6.0]), f[n - 1])
    _close_right(b, p, disc, spec, alpha * h * np.array([4.0, -16.0, 12.0]))
    return b.build()


def assemble_vhm(p, disc, spec=None):
    spec = spec or MethodSpec(MethodKind.VHM)
    n, m, h = disc.n, disc.m, disc.h
    EA = p.modulus_area
    f = _interior_load(p, disc)
    stencils = {k: pd_interior_stencil(k) for k in range(1, m + 1)}
    b = _Builder(n + 1, max(m, 2), m, h=h)
    b.put(0, 0, [1.0], p.dirichlet_u0)
    for i in range(1, n):
        mi = min(i, m, n - i)
        if mi < 1:
            raise RuntimeError(f"node {i} has an empty horizon")
        # kappa_bar * delta_v^2 = kappa * delta^2 = 2 EA
        scale = 2.0 * EA / (mi * h) ** 2
        b.put(i, i - mi, scale * stencils[mi].row(), f[i])
    _close_right(b, p, disc, spec, EA * np.array(neumann_one_sided_row(h)))
    return b.build()


_ASSEMBLERS = {
    MethodKind.LLEM: assemble_llem,
    MethodKind.EDM_FULL: assemble_edm_full,
    MethodKind.EDM_REDUCED: assemble_edm_reduced,
    MethodKind.EDM_I: assemble_edm_reduced,
    MethodKind.EDM_II: assemble_edm_reduced,
    MethodKind.VHM: assemble_vhm,
}


def assemble(p, disc, spec):
    if not isinstance(spec, MethodSpec):
        spec = MethodSpec(method_kind(spec))
    return _ASSEMBLERS[spec.kind](p, disc, spec)


def dense_csv(system):
    """Dense matrix as CSV text, one row per line, 17 significant digits."""
    buf = io.StringIO()
    for row in system.to_dense():
        buf.write(",".join(f"{v:.16e}" for v in row))
        buf.write("\n")
    return buf.getvalue()


def dump_dense_csv(system, path):
    with open(path, "w", newline="\n", encoding="ascii") as fh:
        fh.write(dense_csv(system))
