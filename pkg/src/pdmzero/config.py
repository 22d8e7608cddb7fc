"""Tolerances and defaults shared by the library and the CLI."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    von_roos: float = 1e-12  # alpha + beta + gamma = -1
    root: float = 1e-12  # |residual| accepted by the family solver
    norm: float = 1e-10  # eigenvector unit norm
    orthogonality: float = 1e-8
    separation: float = 1e-9  # relative mismatch of E_rho + E_z
    boundary_bisection: float = 1e-14  # admissibility breakpoint location


TOL = Tolerances()

# Pre-scan resolution of the family solver: bracket length / SCAN_DIVISIONS.
SCAN_DIVISIONS = 1024

# Default grid spacing for the 1D oracle and cap on node count.
DEFAULT_H = 2e-3
MAX_DEFAULT_NODES = 20000

# Coupling defaults (a^2, atilde^2, A_tilde, B_tilde) and mass scale b.
DEFAULT_A_SQ = 4.0
DEFAULT_ATILDE_SQ = 4.0
DEFAULT_A_TILDE = 1.0
DEFAULT_B_TILDE = 1.0
DEFAULT_B = 2.0
