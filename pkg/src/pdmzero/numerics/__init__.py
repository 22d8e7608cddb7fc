"""Independent numerical checks: 1D oracle eigensolver, special functions, 2D operator residual."""

from .eigensolver import EigenResult, Grid1D, default_grid, eigen_solve, norm_check
from .special import AnalyticEigenfunction, analytic_eigenfunction, laguerre

__all__ = [
    "AnalyticEigenfunction",
    "EigenResult",
    "Grid1D",
    "analytic_eigenfunction",
    "default_grid",
    "eigen_solve",
    "laguerre",
    "norm_check",
]
