"""Exact solvers for second-kind hypersingular integral equations

    u(x) = sqrt(1-x^2) f(x) + (alpha/pi) sqrt(1-x^2) FP int u(t)/(t-x)^n dt

on (-1, 1) with polynomial forcing, n >= 2 and alpha > 0.  All solver
arithmetic happens in Q(pi) (rational functions of pi), so solutions like
4*pi/(pi+2) and their zero residuals are exact, and an independent
brute-force singular-quadrature oracle cross-checks everything in floats.
"""

from .kernel import FinitePartOperator, WeightedSolution, gamma_ratio, pv_moment
from .oracle import (
    QuadConfig,
    chebyshev_T,
    chebyshev_U,
    fp_integral_order2,
    fp_integral_ordern,
    pv_integral,
)
from .poly import Poly
from .scalars import PI, Scalar
from .solvers import (
    CONVERGED,
    DIVERGING,
    INCONCLUSIVE,
    Problem,
    SeriesDiagnostics,
    SingularSystemError,
    Solution,
    mpm_solve,
    pm_solve,
    wmpm_solve,
)

__version__ = "0.1.0"

__all__ = [
    "CONVERGED",
    "DIVERGING",
    "INCONCLUSIVE",
    "FinitePartOperator",
    "PI",
    "Poly",
    "Problem",
    "QuadConfig",
    "Scalar",
    "SeriesDiagnostics",
    "SingularSystemError",
    "Solution",
    "WeightedSolution",
    "chebyshev_T",
    "chebyshev_U",
    "fp_integral_order2",
    "fp_integral_ordern",
    "gamma_ratio",
    "mpm_solve",
    "pm_solve",
    "pv_integral",
    "pv_moment",
    "wmpm_solve",
    "__version__",
]
