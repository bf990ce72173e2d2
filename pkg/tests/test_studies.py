import json

import numpy as np
import pytest

from peribc import Case, ConfigurationError, NumericalError
from peribc.studies import (
    DeltaConvergence, EdmCorrection, MConvergence, SolveOnce, SteepGradient,
    StudySpec, fmt, run_study,
)


def _lines(path):
    with open(path, "rb") as fh:
        data = fh.read()
    assert b"\r" not in data
    return data.decode("ascii").split("\n")


def test_fmt():
    assert fmt(3) == "3"
    assert fmt(0.1) == "1.0000000000000001e-01"
    assert fmt(-0.0) == "0.0000000000000000e+00"
    assert fmt(None) == ""


def test_delta_convergence_csv(tmp_path):
    res = run_study(StudySpec(DeltaConvergence(Case.QUARTIC), str(tmp_path)))
    lines = _lines(res.path)
    assert lines[0] == "n,delta,LLEM,EDM,VHM"
    assert lines[-1] == "" and len(lines) == 6
    row = dict(zip(lines[0].split(","), lines[4].split(",")))
    assert row["n"] == "32" and row["delta"] == "6.2500000000000000e-02"
    assert float(row["LLEM"]) == pytest.approx(0.00060, abs=5e-6)
    assert float(row["EDM"]) == pytest.approx(0.00511, abs=5e-6)
    assert float(row["VHM"]) == pytest.approx(0.00076, abs=5e-6)
    assert all(1.8 < r < 2.1 for r in res.rates["LLEM"])


def test_delta_convergence_extra_columns(tmp_path):
    st = DeltaConvergence(Case.CUBIC, ("LLEM", "EDM", "VHM", "EDM_I", "EDM_II"))
    res = run_study(StudySpec(st, str(tmp_path)))
    assert _lines(res.path)[0] == "n,delta,LLEM,EDM,VHM,EDM_I,EDM_II"
    n16 = res.rows[2]
    assert n16[2] == pytest.approx(0.00096, abs=5e-6) and n16[4] == pytest.approx(n16[2], abs=1e-12)


def test_quadratic_local_columns_vanish(tmp_path):
    res = run_study(StudySpec(DeltaConvergence(Case.QUADRATIC), str(tmp_path)))
    for row in res.rows:
        assert row[2] <= 1e-12 and row[4] <= 1e-12
    assert res.rates["LLEM"] == [None, None, None]
    summary = json.loads(open(res.path[:-4] + ".json").read())
    assert summary["study"] == "delta_conv"
    assert summary["observed_rates"]["LLEM"] == ["exact"] * 3
    assert set(summary["rows"][0]) == {"n", "delta", "LLEM", "EDM", "VHM"}


def test_m_convergence_csv(tmp_path):
    res = run_study(StudySpec(MConvergence(0.25), str(tmp_path)))
    lines = _lines(res.path)
    assert lines[0] == "m,h,VHM_error"
    assert lines[1].startswith("2,1.2500000000000000e-01,")
    assert res.rows[0][2] == pytest.approx(0.008072916666666785, rel=1e-9)


def test_edm_correction_csv(tmp_path):
    res = run_study(StudySpec(EdmCorrection(), str(tmp_path)))
    assert _lines(res.path)[0] == "n,delta,EDM,EDM_I,EDM_II"
    assert res.rows[0][3] == pytest.approx(0.0010471314156873602, rel=1e-9)
    assert res.rows[1][2] == pytest.approx(0.005114227123314417, rel=1e-9)
    assert all(1.9 < r < 2.1 for r in res.rates["EDM_II"])


def test_steep_gradient_csv(tmp_path):
    res = run_study(StudySpec(SteepGradient(0.1, (32, 64)), str(tmp_path), emit_profiles=True))
    assert _lines(res.path)[0] == "n,LLEM,VHM"
    prof = tmp_path / "profiles" / "steep_gradient_eps0.1_VHM_n64.csv"
    assert _lines(prof)[0] == "x,u,u_exact,error" and len(_lines(prof)) == 67
    with pytest.raises(ConfigurationError):
        run_study(StudySpec(SteepGradient(0.2), str(tmp_path)))


def test_solve_once(tmp_path):
    res = run_study(StudySpec(SolveOnce(Case.LINEAR, "LLEM", 4), str(tmp_path), dump_matrix=True))
    data = np.loadtxt(res.path, delimiter=",", skiprows=1)
    assert np.allclose(data[:, 1], data[:, 0], atol=1e-14)
    assert (tmp_path / "solve_LLEM_linear_n4_m2_matrix.csv").exists()
    res = run_study(StudySpec(SolveOnce(Case.QUARTIC, "VHM", 16), str(tmp_path)))
    assert res.reports[0].max_relative == pytest.approx(0.00294, abs=5e-6)


def test_solve_once_edm_quadratic_profile(tmp_path):
    res = run_study(StudySpec(SolveOnce(Case.QUADRATIC, "EDM", 8), str(tmp_path)))
    err = np.loadtxt(res.path, delimiter=",", skiprows=1)[:, 3]
    # the extended-domain error is one-signed with its peak away from the ends
    assert np.all(err[1:] < 0) or np.all(err[1:] > 0)
    assert 0 < np.argmax(np.abs(err)) <= 8


def test_deterministic_bytes(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    r1 = run_study(StudySpec(EdmCorrection(), str(a)))
    r2 = run_study(StudySpec(EdmCorrection(), str(b)))
    assert open(r1.path, "rb").read() == open(r2.path, "rb").read()


def test_bad_configurations(tmp_path):
    with pytest.raises(ConfigurationError):
        run_study(StudySpec(DeltaConvergence(Case.QUARTIC, n_list=(4, 12)), str(tmp_path)))
    with pytest.raises(ConfigurationError):
        run_study(StudySpec(DeltaConvergence(Case.EXPONENTIAL), str(tmp_path)))
    with pytest.raises(ConfigurationError) as exc:
        run_study(StudySpec(SolveOnce(Case.QUARTIC, "EDM", 32, 4), str(tmp_path)))
    assert "n=32, m=4" in str(exc.value)
    with pytest.raises(ConfigurationError):
        run_study(StudySpec(object(), str(tmp_path)))
    assert issubclass(NumericalError, ArithmeticError)
