"""Direct solvers for ``BandedSystem``.

``banded_lu_solve`` factors the band in place with partial pivoting (the
row-reordered EDM system puts unit-pivot constraint rows ahead of the
bond rows, so pivoting is not optional). A few steps of iterative
refinement with the residual accumulated in extended precision follow;
they matter for the cancellation-prone EDM errors where the discrete error
is many orders of magnitude smaller than the solution.

``dense_solve_oracle`` goes through LAPACK on the expanded matrix and is
meant for cross-checking only.
"""
from dataclasses import dataclass
import warnings

import numpy as np
import scipy.linalg

from .errors import SingularMatrixError, SizeGuardError

PIVOT_RTOL = 1e-14
DENSE_LIMIT = 2048


@dataclass(frozen=True)
class SolutionVector:
    coords: np.ndarray
    values: np.ndarray
    method: object = None
    disc: object = None
    index_offset: int = 0

    def __post_init__(self):
        if len(self.coords) != len(self.values):
            raise ValueError("coords and values must have equal length")

    def physical(self):
        """``(coords, values)`` restricted to the nodes ``x_0..x_n`` of the bar."""
        i0 = -self.index_offset
        stop = len(self.values) - i0
        return self.coords[i0:stop], self.values[i0:stop]


class BandedLU:
    """LU factors of a banded matrix, LAPACK ``gbtrf`` layout.

    Column ``j`` of the matrix lives in column ``j`` of ``ab`` with
    ``A[i, j] == ab[kl + ku + i - j, j]``; the top ``kl`` rows receive
    the fill-in produced by row interchanges.
    """

    def __init__(self, system):
        self.n = n = system.size
        self.kl, self.ku = kl, ku = system.lower_bw, system.upper_bw
        self.kv = kv = kl + ku
        ab = np.zeros((2 * kl + ku + 1, n))
        for k in range(system.bands.shape[1]):
            off = k - kl  # column minus row
            i = np.arange(max(0, -off), min(n, n - off))
            ab[kv - off, i + off] = system.bands[i, k]
        self.ab = ab
        self.ipiv = np.zeros(n, dtype=int)
        self.tol = PIVOT_RTOL * system.norm_inf()
        self._factor()

    def _factor(self):
        ab, n, kl, kv = self.ab, self.n, self.kl, self.kv
        ju = 0
        for j in range(n):
            km = min(kl, n - 1 - j)
            col = ab[kv:kv + km + 1, j]
            jp = int(np.argmax(np.abs(col)))
            self.ipiv[j] = j + jp
            pivot = col[jp]
            if abs(pivot) <= self.tol:
                raise SingularMatrixError(j, pivot)
            ju = max(ju, min(j + self.ku + jp, n - 1))
            cols = np.arange(j, ju + 1)
            if jp:
                r1, r2 = kv + j - cols, kv + j + jp - cols
                tmp = ab[r1, cols].copy()
                ab[r1, cols] = ab[r2, cols]
                ab[r2, cols] = tmp
            if km:
                ab[kv + 1:kv + km + 1, j] /= ab[kv, j]
                if ju > j:
                    rows = np.arange(j + 1, j + km + 1)[:, None]
                    c = cols[None, 1:]
                    ab[kv + rows - c, c] -= ab[kv + 1:kv + km + 1, j][:, None] * ab[kv + j - c, c]

    def solve(self, b):
        ab, n, kl, kv = self.ab, self.n, self.kl, self.kv
        x = np.array(b, dtype=float)
        for j in range(n):
            p = self.ipiv[j]
            if p != j:
                x[j], x[p] = x[p], x[j]
            km = min(kl, n - 1 - j)
            if km:
                x[j + 1:j + km + 1] -= ab[kv + 1:kv + km + 1, j] * x[j]
        for i in range(n - 1, -1, -1):
            hi = min(n - 1, i + kv)
            if hi > i:
                c = np.arange(i + 1, hi + 1)
                x[i] -= ab[kv + i - c, c] @ x[i + 1:hi + 1]
            x[i] /= ab[kv, i]
        return x


def _residual(system, u):
    # extended precision where the platform has it; plain float64 otherwise
    wide = np.longdouble
    bands = system.bands.astype(wide)
    n, lo = system.size, system.lower_bw
    uw = np.asarray(u, dtype=wide)
    r = system.rhs.astype(wide)
    for k in range(bands.shape[1]):
        off = k - lo
        i = np.arange(max(0, -off), min(n, n - off))
        r[i] -= bands[i, k] * uw[i + off]
    return np.asarray(r, dtype=float)


def _solution(system, values, method, disc):
    return SolutionVector(system.coords, values, method, disc, system.index_offset)


def banded_lu_solve(system, refine=3, method=None, disc=None):
    """Solve ``A u = b`` for a ``BandedSystem``.

    ``refine`` bounds the number of iterative-refinement sweeps; refinement
    stops early once the correction no longer shrinks.
    """
    lu = BandedLU(system)
    u = lu.solve(system.rhs)
    last = np.inf
    for _ in range(refine):
        du = lu.solve(_residual(system, u))
        size = np.max(np.abs(du))
        if not size < last:
            break
        u = u + du
        last = size
        if size <= np.finfo(float).eps * np.max(np.abs(u)) * 1e-3:
            break
    return _solution(system, u, method, disc)


def dense_solve_oracle(system, method=None, disc=None):
    """Reference solve through the expanded dense matrix."""
    if system.size > DENSE_LIMIT:
        raise SizeGuardError(
            f"system of size {system.size} exceeds the dense oracle limit {DENSE_LIMIT}")
    a = system.to_dense()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(a, check_finite=True)
    tol = PIVOT_RTOL * system.norm_inf()
    small = np.flatnonzero(np.abs(np.diag(lu)) <= tol)
    if small.size:
        raise SingularMatrixError(int(small[0]), float(lu[small[0], small[0]]))
    u = scipy.linalg.lu_solve((lu, piv), system.rhs)
    return _solution(system, u, method, disc)


def residual_ok(system, u, rtol=1e-10):
    """Backward-error check ``|A u - b| <= rtol (|A| |u| + |b|)`` in the max norm."""
    r = system.matvec(u) - system.rhs
    bound = rtol * (system.norm_inf() * np.max(np.abs(u)) + np.max(np.abs(system.rhs)))
    return float(np.max(np.abs(r))) <= bound
