"""Convergence studies that write CSV tables (and optional profiles).

Every writer uses ``%.16e`` for reals and ``\\n`` line endings so that output
files are byte-identical between runs on the same platform.
"""
from dataclasses import dataclass, field
import json
import os

from .analysis import error_report, observed_rates
from .assembly import MethodSpec, assemble, dump_dense_csv, method_kind
from .errors import ConfigurationError, NumericalError
from .linalg import banded_lu_solve
from .problem import BarProblem, Case, Discretization, exact_solution

DEFAULT_DELTA_METHODS = ("LLEM", "EDM", "VHM")
EDM_VARIANTS = ("EDM", "EDM_I", "EDM_II")
STEEP_N_LISTS = {0.1: (32, 64, 128, 256, 512), 0.01: (512, 1024, 2048, 4096, 8192)}


def fmt(v):
    if v is None:
        return ""
    if isinstance(v, int):
        return str(v)
    return "%.16e" % (v + 0.0)  # no "-0"


def _check_n_list(n_list):
    n_list = tuple(int(n) for n in n_list)
    if not n_list:
        raise ConfigurationError("n_list is empty")
    for a, b in zip(n_list, n_list[1:]):
        if b != 2 * a:
            raise ConfigurationError(f"n_list must double at every step, got {n_list}")
    return n_list


@dataclass(frozen=True)
class DeltaConvergence:
    case: Case = Case.QUADRATIC
    methods: tuple = DEFAULT_DELTA_METHODS
    n_list: tuple = (4, 8, 16, 32)
    # the reference delta-convergence tables leave out the traction node
    nodes: str = "interior"

    name = "delta_conv"


@dataclass(frozen=True)
class MConvergence:
    delta: float = 0.25
    m_list: tuple = (2, 4, 8)

    name = "m_conv"


@dataclass(frozen=True)
class EdmCorrection:
    n_list: tuple = (16, 32, 64, 128)

    name = "edm_correction"


@dataclass(frozen=True)
class SteepGradient:
    epsilon: float = 0.1
    n_list: tuple | None = None

    name = "steep_gradient"


@dataclass(frozen=True)
class SolveOnce:
    case: Case = Case.QUADRATIC
    method: str = "VHM"
    n: int = 8
    m: int = 2
    epsilon: float | None = None

    name = "solve"


@dataclass(frozen=True)
class StudySpec:
    study: object
    output_dir: str = "."
    emit_profiles: bool = False
    dump_matrix: bool = False


@dataclass
class StudyResult:
    study: str
    path: str
    header: list
    rows: list
    rates: dict = field(default_factory=dict)
    reports: list = field(default_factory=list, repr=False)


def _solve(p, disc, method):
    spec = MethodSpec(method_kind(method))
    where = f"{spec.label}, case={p.case.value}, n={disc.n}, m={disc.m}"
    try:
        system = assemble(p, disc, spec)
        sol = banded_lu_solve(system, method=spec, disc=disc)
    except NumericalError as exc:
        raise NumericalError(f"{where}: {exc}") from exc
    except ConfigurationError as exc:
        raise ConfigurationError(f"{where}: {exc}") from exc
    return system, sol


def _write_csv(path, header, rows):
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", newline="\n", encoding="ascii") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(fmt(v) for v in row) + "\n")


def _write_profile(out, tag, p, sol, report):
    x, u = sol.physical()
    rows = zip(x.tolist(), u.tolist(), exact_solution(p, x).tolist(), report.error.tolist())
    _write_csv(os.path.join(out, "profiles", tag + ".csv"), ["x", "u", "u_exact", "error"], rows)


def _write_summary(result):
    stem = os.path.splitext(result.path)[0]
    rows = [dict(zip(result.header, r)) for r in result.rows]
    rates = {k: ["exact" if r is None else r for r in v] for k, v in result.rates.items()}
    with open(stem + ".json", "w", newline="\n", encoding="ascii") as fh:
        json.dump({"study": result.study, "rows": rows, "observed_rates": rates}, fh, indent=1)
        fh.write("\n")


def _rates(h_list, columns):
    rates = {}
    for name, errs in columns.items():
        if len(errs) >= 2 and all(e is not None for e in errs):
            rates[name] = observed_rates(zip(h_list, errs))
    return rates


def _finish(spec, study, filename, header, rows, rates, reports):
    path = os.path.join(spec.output_dir, filename)
    _write_csv(path, header, rows)
    result = StudyResult(study, path, header, rows, rates, reports)
    _write_summary(result)
    return result


def run_delta_convergence(spec):
    """Max relative errors for ``m = 2`` as ``delta = 2/n`` shrinks."""
    st = spec.study
    case = Case(st.case)
    if case not in (Case.QUADRATIC, Case.CUBIC, Case.QUARTIC, Case.LINEAR):
        raise ConfigurationError(f"delta convergence needs a polynomial case, got {case.value}")
    labels = [method_kind(m).value for m in st.methods]
    n_list = _check_n_list(st.n_list)
    p = BarProblem(case)
    rows, reports = [], []
    cols = {lab: [] for lab in labels}
    for n in n_list:
        disc = Discretization(n, 2)
        row = [n, disc.delta]
        for lab in labels:
            _, sol = _solve(p, disc, lab)
            rep = error_report(sol, p, st.nodes)
            reports.append(rep)
            row.append(rep.max_relative)
            cols[lab].append(rep.max_relative)
            if spec.emit_profiles:
                _write_profile(spec.output_dir, f"delta_conv_{case.value}_{lab}_n{n}", p, sol, rep)
        rows.append(row)
    rates = _rates([1.0 / n for n in n_list], cols)
    return _finish(spec, "delta_conv", f"delta_conv_{case.value}.csv",
                   ["n", "delta"] + labels, rows, rates, reports)


def run_m_convergence(spec):
    """VHM errors at fixed horizon while ``h = delta/m`` shrinks."""
    st = spec.study
    m_list = tuple(int(m) for m in st.m_list)
    for a, b in zip(m_list, m_list[1:]):
        if b != 2 * a:
            raise ConfigurationError(f"m_list must double at every step, got {m_list}")
    p = BarProblem(Case.QUARTIC_PD)
    rows, reports, errs, hs = [], [], [], []
    for m in m_list:
        disc = Discretization.from_delta(st.delta, m)
        _, sol = _solve(p, disc, "VHM")
        rep = error_report(sol, p)
        reports.append(rep)
        rows.append([m, disc.h, rep.max_relative])
        errs.append(rep.max_relative)
        hs.append(disc.h)
        if spec.emit_profiles:
            _write_profile(spec.output_dir, f"m_conv_n{disc.n}_m{m}", p, sol, rep)
    tag = f"{1.0 / st.delta:g}"
    return _finish(spec, "m_conv", f"m_conv_delta_1_{tag}.csv", ["m", "h", "VHM_error"],
                   rows, _rates(hs, {"VHM_error": errs}), reports)


def run_edm_correction(spec):
    """Quartic case with the plain and the two corrected reduced EDM systems."""
    n_list = _check_n_list(spec.study.n_list)
    p = BarProblem(Case.QUARTIC)
    rows, reports = [], []
    cols = {lab: [] for lab in EDM_VARIANTS}
    for n in n_list:
        disc = Discretization(n, 2)
        row = [n, disc.delta]
        for lab in EDM_VARIANTS:
            _, sol = _solve(p, disc, lab)
            rep = error_report(sol, p)
            reports.append(rep)
            row.append(rep.max_relative)
            cols[lab].append(rep.max_relative)
            if spec.emit_profiles:
                _write_profile(spec.output_dir, f"edm_correction_{lab}_n{n}", p, sol, rep)
        rows.append(row)
    rates = _rates([1.0 / n for n in n_list], cols)
    return _finish(spec, "edm_correction", "edm_correction.csv",
                   ["n", "delta"] + list(EDM_VARIANTS), rows, rates, reports)


def run_steep_gradient(spec):
    """Max absolute errors for the boundary-layer solution, ``m = 2``."""
    st = spec.study
    eps = float(st.epsilon)
    n_list = st.n_list
    if n_list is None:
        try:
            n_list = STEEP_N_LISTS[eps]
        except KeyError:
            raise ConfigurationError(f"no default n list for epsilon={eps}; pass one") from None
    n_list = _check_n_list(n_list)
    p = BarProblem.exponential(eps)
    rows, reports = [], []
    cols = {"LLEM": [], "VHM": []}
    for n in n_list:
        disc = Discretization(n, 2)
        row = [n]
        for lab in cols:
            _, sol = _solve(p, disc, lab)
            rep = error_report(sol, p)
            reports.append(rep)
            row.append(rep.max_absolute)
            cols[lab].append(rep.max_absolute)
            if spec.emit_profiles:
                _write_profile(spec.output_dir, f"steep_gradient_eps{eps:g}_{lab}_n{n}", p, sol, rep)
        rows.append(row)
    rates = _rates([1.0 / n for n in n_list], cols)
    return _finish(spec, "steep_gradient", f"steep_gradient_eps{eps:g}.csv",
                   ["n", "LLEM", "VHM"], rows, rates, reports)


def run_solve_once(spec):
    """Single solve; writes ``x,u,u_exact,error`` and optionally the dense matrix."""
    st = spec.study
    case = Case(st.case)
    p = BarProblem(case, epsilon=st.epsilon if case is Case.EXPONENTIAL else None)
    disc = Discretization(st.n, st.m)
    kind = method_kind(st.method)
    system, sol = _solve(p, disc, kind)
    rep = error_report(sol, p)
    stem = f"solve_{kind.value}_{case.value}_n{disc.n}_m{disc.m}"
    x, u = sol.physical()
    rows = [list(r) for r in zip(x.tolist(), u.tolist(),
                                 exact_solution(p, x).tolist(), rep.error.tolist())]
    path = os.path.join(spec.output_dir, stem + ".csv")
    _write_csv(path, ["x", "u", "u_exact", "error"], rows)
    if spec.dump_matrix:
        dump_dense_csv(system, os.path.join(spec.output_dir, stem + "_matrix.csv"))
    return StudyResult("solve", path, ["x", "u", "u_exact", "error"], rows, {}, [rep])


RUNNERS = {
    DeltaConvergence: run_delta_convergence,
    MConvergence: run_m_convergence,
    EdmCorrection: run_edm_correction,
    SteepGradient: run_steep_gradient,
    SolveOnce: run_solve_once,
}


def run_study(spec):
    try:
        runner = RUNNERS[type(spec.study)]
    except KeyError:
        raise ConfigurationError(f"unknown study {spec.study!r}") from None
    return runner(spec)


def reproduce_all(output_dir):
    """Every table of the convergence studies, written below ``output_dir``."""
    specs = [DeltaConvergence(Case(c), DEFAULT_DELTA_METHODS + ("EDM_I", "EDM_II"))
             for c in ("quadratic", "cubic", "quartic")]
    specs += [MConvergence(0.25), MConvergence(0.125), EdmCorrection(),
              SteepGradient(0.1), SteepGradient(0.01)]
    return [run_study(StudySpec(s, output_dir)) for s in specs]


__all__ = [
    "DeltaConvergence", "MConvergence", "EdmCorrection", "SteepGradient", "SolveOnce",
    "StudySpec", "StudyResult", "run_delta_convergence", "run_m_convergence",
    "run_edm_correction", "run_steep_gradient", "run_solve_once", "run_study",
    "reproduce_all", "fmt",
]
