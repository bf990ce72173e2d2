"""Classical boundary conditions for a 1D bond-based peridynamic bar.

Three discretizations of the same clamped/loaded bar on ``[0, 1]``:

* ``LLEM``: the local model ``-EA u'' = f`` with central differences,
* ``EDM``: odd extension of the displacement beyond both ends, with the
  full or reduced system and two boundary-row corrections,
* ``VHM``: a horizon that shrinks linearly to zero at the boundary.
"""
from .analysis import ErrorReport, error_report, observed_rates
from .assembly import (
    BandedSystem,
    Dirichlet,
    MethodKind,
    MethodSpec,
    Neumann,
    assemble,
    dense_csv,
    dump_dense_csv,
    method_kind,
)
from .errors import (
    ConfigurationError,
    DomainError,
    NumericalError,
    PeribcError,
    SingularMatrixError,
    SizeGuardError,
    UnsupportedConfigurationError,
)
from .linalg import SolutionVector, banded_lu_solve, dense_solve_oracle, residual_ok
from .problem import (
    BarProblem,
    Case,
    Discretization,
    body_force,
    exact_solution,
    grid_points,
    neumann_data,
)
from .stencils import (
    InteriorStencil,
    MaterialScaling,
    calibrate_kappa,
    edm_analytic_correction,
    edm_numeric_correction,
    neumann_one_sided_row,
    pd_interior_stencil,
    skin_correction_factor,
    vhm_local_horizon,
)

__version__ = "0.1.0"


def solve(p, disc, method="VHM", nodes="all"):
    """Assemble and solve in one call; returns ``(SolutionVector, ErrorReport)``."""
    spec = method if isinstance(method, MethodSpec) else MethodSpec(method_kind(method))
    sol = banded_lu_solve(assemble(p, disc, spec), method=spec, disc=disc)
    return sol, error_report(sol, p, nodes)
