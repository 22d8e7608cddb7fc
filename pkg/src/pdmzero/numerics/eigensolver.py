"""Finite-difference oracle for half-line problems -u'' + C/x^2 u + V u = E u."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..config import DEFAULT_H, MAX_DEFAULT_NODES, TOL
from ..errors import DomainError, GridTooCoarse
from ..separation import EffectiveProblem, PotentialKind
from .tridiagonal import bisect_eigenvalues, inverse_iteration


@dataclass(frozen=True)
class Grid1D:
    """Uniform interior nodes x_i = i h, i = 1..n_points, walls at 0 and x_max.

    ``x_max = (n_points + 1) h`` is the outer Dirichlet wall.
    """

    n_points: int
    h: float

    def __post_init__(self):
        if self.n_points < 1 or not (self.h > 0):
            raise DomainError("grid needs n_points >= 1 and h > 0")

    @classmethod
    def from_extent(cls, x_max: float, h: float) -> "Grid1D":
        if not (x_max > 0 and h > 0):
            raise DomainError("x_max and h must be positive")
        intervals = max(int(round(x_max / h)), 2)
        return cls(intervals - 1, x_max / intervals)

    @property
    def x_min(self) -> float:
        return self.h

    @property
    def x_max(self) -> float:
        return (self.n_points + 1) * self.h

    @property
    def x(self) -> np.ndarray:
        return self.h * np.arange(1, self.n_points + 1)

    def refined(self) -> "Grid1D":
        """Same walls, spacing halved."""
        return Grid1D(2 * self.n_points + 1, self.h / 2.0)


@dataclass(frozen=True)
class EigenResult:
    eigenvalues: np.ndarray
    eigenfunctions: np.ndarray  # shape (count, n_points)
    grid: Grid1D


def default_extent(problem: EffectiveProblem, count: int) -> float:
    l_abs = problem.l_abs
    if problem.potential_kind is PotentialKind.HARMONIC_OSCILLATOR:
        omega = problem.omega
        return 6.0 * math.sqrt((2 * count + l_abs + 1.0) / omega)
    if problem.potential_kind is PotentialKind.COULOMB:
        return 40.0 * (count + l_abs + 1.0) / problem.coupling
    raise DomainError("a potential-free problem needs an explicit x_max")


def default_grid(problem: EffectiveProblem, count: int, h: Optional[float] = None, x_max: Optional[float] = None) -> Grid1D:
    x_max = default_extent(problem, count) if x_max is None else x_max
    if h is None:
        h = max(DEFAULT_H, x_max / MAX_DEFAULT_NODES)
    return Grid1D.from_extent(x_max, h)


def hamiltonian_bands(problem: EffectiveProblem, grid: Grid1D):
    """Diagonal and off-diagonal of the second-order central-difference operator."""
    x = grid.x
    h2 = grid.h * grid.h
    diag = 2.0 / h2 + problem.effective_potential(x)
    off = np.full(grid.n_points - 1, -1.0 / h2)
    return diag, off


def eigen_solve(problem: EffectiveProblem, count: int, grid: Optional[Grid1D] = None) -> EigenResult:
    """Lowest ``count`` eigenpairs on a Dirichlet half-line grid.

    Eigenvalues carry O(h^2) discretisation error.  Eigenfunctions are
    normalised to unit trapezoidal norm and signed positive near the wall.
    """
    if count < 1:
        raise DomainError("count must be >= 1")
    if grid is None:
        grid = default_grid(problem, count)
    if count > grid.n_points // 10:
        raise GridTooCoarse(f"{count} modes requested on {grid.n_points} nodes")
    diag, off = hamiltonian_bands(problem, grid)
    values = bisect_eigenvalues(diag, off, count)

    # >= ~12 nodes per local wavelength for the highest mode requested
    v_eff = diag - 2.0 / grid.h**2
    k_max = math.sqrt(max(float(np.max(values[-1] - v_eff)), 0.0))
    if k_max * grid.h > 0.5:
        raise GridTooCoarse(f"k*h = {k_max * grid.h:.3g} for mode {count - 1}; refine the grid")

    vectors = np.empty((count, grid.n_points))
    for k, lam in enumerate(values):
        v = inverse_iteration(diag, off, lam)
        v /= math.sqrt(grid.h)  # unit trapezoidal norm (u vanishes at both walls)
        lead = v[np.argmax(np.abs(v) > 1e-3 * np.max(np.abs(v)))]
        vectors[k] = v if lead > 0 else -v
    return EigenResult(values, vectors, grid)


def norm_check(u, grid: Grid1D) -> float:
    """Trapezoidal integral of |u|^2 including the zero wall values."""
    u = np.asarray(u)
    return float(grid.h * np.sum(np.abs(u) ** 2))


def overlap(u, v, grid: Grid1D) -> float:
    return float(grid.h * np.sum(np.conj(u) * v).real)


def is_orthonormal(result: EigenResult) -> bool:
    g = result.grid
    for a in range(len(result.eigenvalues)):
        if abs(norm_check(result.eigenfunctions[a], g) - 1.0) > TOL.norm:
            return False
        for b in range(a):
            if abs(overlap(result.eigenfunctions[a], result.eigenfunctions[b], g)) > TOL.orthogonality:
                return False
    return True
