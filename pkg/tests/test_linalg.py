import numpy as np
import pytest
import scipy.linalg

from peribc import (
    BandedSystem, BarProblem, Case, Discretization, SingularMatrixError,
    SizeGuardError, SolutionVector, assemble, banded_lu_solve, dense_solve_oracle,
    residual_ok,
)
from peribc.linalg import BandedLU

from conftest import ALL_METHODS, POLY_CASES


def _problem(case):
    return BarProblem.exponential(0.1) if case is Case.EXPONENTIAL else BarProblem(case)


@pytest.mark.parametrize("method", ALL_METHODS)
@pytest.mark.parametrize("case", POLY_CASES + (Case.QUARTIC_PD, Case.EXPONENTIAL))
@pytest.mark.parametrize("n", [4, 8, 16])
def test_banded_matches_dense(method, case, n):
    s = assemble(_problem(case), Discretization(n, 2), method)
    a = banded_lu_solve(s).values
    b = dense_solve_oracle(s).values
    assert np.max(np.abs(a - b)) <= 1e-10 * max(1.0, np.max(np.abs(b)))
    assert residual_ok(s, a)


@pytest.mark.parametrize("m", [1, 3, 4, 8])
def test_banded_matches_dense_vhm_general_m(m):
    s = assemble(BarProblem(Case.QUARTIC_PD), Discretization(8 * m, m), "VHM")
    assert np.allclose(banded_lu_solve(s).values, dense_solve_oracle(s).values,
                       rtol=0, atol=1e-10)


def _random_banded(rng, n, kl, ku):
    bands = rng.standard_normal((n, kl + ku + 1))
    for k in range(kl + ku + 1):
        off = k - kl
        for i in range(n):
            if not 0 <= i + off < n:
                bands[i, k] = 0.0
    return BandedSystem(kl, ku, bands, rng.standard_normal(n), 0, 1.0)


@pytest.mark.parametrize("kl,ku", [(1, 1), (2, 1), (2, 2), (4, 4), (3, 0), (0, 2)])
def test_random_banded_systems_need_pivoting(kl, ku):
    rng = np.random.default_rng(1234 + kl * 10 + ku)
    for _ in range(5):
        s = _random_banded(rng, 30, kl, ku)
        ref = scipy.linalg.solve(s.to_dense(), s.rhs)
        got = banded_lu_solve(s).values
        assert np.allclose(got, ref, rtol=1e-9, atol=1e-9)


def test_factor_matches_lapack_pivots():
    rng = np.random.default_rng(7)
    s = _random_banded(rng, 12, 2, 2)
    lu = BandedLU(s)
    a = s.to_dense()
    _, piv = scipy.linalg.lu_factor(a)
    assert np.array_equal(lu.ipiv, piv)


def test_singular_detection():
    bands = np.zeros((4, 3))
    bands[:, 1] = [1.0, 1.0, 0.0, 1.0]
    s = BandedSystem(1, 1, bands, np.ones(4), 0, 1.0)
    with pytest.raises(SingularMatrixError) as exc:
        banded_lu_solve(s)
    assert exc.value.row == 2
    with pytest.raises(SingularMatrixError):
        dense_solve_oracle(s)


def test_size_guard():
    s = assemble(BarProblem(), Discretization(4096, 2), "LLEM")
    with pytest.raises(SizeGuardError):
        dense_solve_oracle(s)
    assert residual_ok(s, banded_lu_solve(s).values)


def test_deterministic():
    s = assemble(BarProblem(Case.QUARTIC), Discretization(64, 2), "EDM_II")
    a, b = banded_lu_solve(s).values, banded_lu_solve(s).values
    assert a.tobytes() == b.tobytes()


def test_solution_vector():
    with pytest.raises(ValueError):
        SolutionVector(np.zeros(3), np.zeros(4))
    s = assemble(BarProblem(), Discretization(8, 2), "EDM_full")
    x, u = banded_lu_solve(s).physical()
    assert len(x) == 9 and x[0] == 0.0 and x[-1] == 1.0


def test_large_vhm_solve_is_accurate():
    s = assemble(BarProblem(Case.QUARTIC), Discretization(8192, 2), "VHM")
    assert residual_ok(s, banded_lu_solve(s).values)
