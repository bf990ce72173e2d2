"""Error norms and observed convergence rates."""
from dataclasses import dataclass, field
import math

import numpy as np

from .problem import exact_solution

# below this |u_exact| the relative error is not reported
RELATIVE_GUARD = 1e-14
# errors below this count as exact reproduction when estimating rates
EXACT_THRESHOLD = 1e-13
NODE_RANGES = ("all", "interior")


@dataclass(frozen=True)
class ErrorReport:
    method: object
    n: int
    m: int
    delta: float
    h: float
    max_relative: float | None
    max_absolute: float
    nodes: str
    x: np.ndarray = field(repr=False)
    error: np.ndarray = field(repr=False)

    @property
    def pointwise(self):
        return list(zip(self.x.tolist(), self.error.tolist()))


def error_report(sol, p, nodes="all"):
    """Max-norm errors over ``x_1..x_n`` (``nodes="all"``) or over
    ``x_1..x_{n-1}`` (``nodes="interior"``, leaving out the traction node).

    ``error`` holds the signed ``u_exact(x_i) - u_i`` for ``i = 0..n``;
    extension nodes of the full EDM system are dropped.
    """
    if nodes not in NODE_RANGES:
        raise ValueError(f"nodes must be one of {NODE_RANGES}, got {nodes!r}")
    x, u = sol.physical()
    exact = exact_solution(p, x)
    e = exact - u
    stop = len(e) if nodes == "all" else len(e) - 1
    tail = np.abs(e[1:stop])
    ref = np.abs(exact[1:stop])
    rel = None
    if np.all(ref >= RELATIVE_GUARD):
        rel = float(np.max(tail / ref))
    disc = sol.disc
    return ErrorReport(
        method=sol.method,
        n=disc.n if disc is not None else len(x) - 1,
        m=disc.m if disc is not None else 0,
        delta=disc.delta if disc is not None else math.nan,
        h=disc.h if disc is not None else 1.0 / (len(x) - 1),
        max_relative=rel,
        max_absolute=float(np.max(tail)),
        nodes=nodes,
        x=x,
        error=e,
    )


def observed_rates(errors):
    """``log2(E_k / E_{k+1})`` for successive grid halvings.

    ``errors`` is a sequence of ``(h, E)`` pairs with ``h`` halving at each
    step. Pairs where either error is below ``EXACT_THRESHOLD`` yield
    ``None`` (exact reproduction, no rate).
    """
    errors = list(errors)
    if len(errors) < 2:
        raise ValueError("need at least two (h, error) pairs")
    rates = []
    for (h0, e0), (h1, e1) in zip(errors, errors[1:]):
        if not math.isclose(h0, 2.0 * h1, rel_tol=1e-9):
            raise ValueError(f"h must halve between entries, got {h0} -> {h1}")
        if abs(e0) < EXACT_THRESHOLD or abs(e1) < EXACT_THRESHOLD:
            rates.append(None)
        else:
            rates.append(math.log2(e0 / e1))
    return rates
