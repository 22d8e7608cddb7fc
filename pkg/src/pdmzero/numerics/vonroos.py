"""Direct finite-difference application of the von Roos Hamiltonian.

    H = -1/4 [M^g div(M^b grad(M^a .)) + M^a div(M^b grad(M^g .))] + V

acts on Psi = psi(rho, z) e^{i m phi}; the phi derivatives are taken
analytically (d^2/dphi^2 -> -m^2), so only a (rho, z) grid is needed.
Fluxes use M^b at half nodes; the residual is reported on interior nodes
with a fixed layer next to every grid edge left out.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple

import numpy as np

from ..ambiguity import AmbiguityParameters
from ..errors import DomainError
from ..separation import (
    AssembledPotential,
    CaseId,
    PdmSpec,
    PotentialKind,
    QuantumNumbers,
    WavefunctionAssembly,
    assemble_wavefunction,
    axial_problem,
    mass_at,
    radial_problem,
)
from .eigensolver import Grid1D
from .special import analytic_eigenfunction

BOUNDARY_LAYER = 2


@dataclass
class ResidualReport2D:
    h_rho: float
    h_z: float
    residual_norm: float
    wavefunction_norm: float
    convergence_order: Optional[float] = None
    refined: Optional["ResidualReport2D"] = None
    separation_gap: float = 0.0
    rho: Optional[np.ndarray] = field(default=None, repr=False)
    z: Optional[np.ndarray] = field(default=None, repr=False)
    field: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def relative_residual(self) -> float:
        if self.wavefunction_norm == 0:
            return math.inf
        return self.residual_norm / self.wavefunction_norm

    def row(self) -> dict:
        return {
            "h_rho": self.h_rho,
            "h_z": self.h_z,
            "residual_norm": self.residual_norm,
            "wavefunction_norm": self.wavefunction_norm,
            "relative_residual": self.relative_residual,
            "separation_gap": self.separation_gap,
            "convergence_order": self.convergence_order,
        }


RESIDUAL_HEADER = (
    "h_rho", "h_z", "residual_norm", "wavefunction_norm",
    "relative_residual", "separation_gap", "convergence_order",
)


def apply_hamiltonian(pdm: PdmSpec, params: AmbiguityParameters, potential: Callable, psi: WavefunctionAssembly, rho, z):
    """H Psi (profile part) on nodes rho[1:-1] x z[1:-1].

    ``rho`` and ``z`` are uniform, strictly positive node vectors.
    """
    rho = np.asarray(rho, dtype=float)
    z = np.asarray(z, dtype=float)
    h_r = _uniform_step(rho)
    h_z = _uniform_step(z)
    R, Z = np.meshgrid(rho, z, indexing="ij")
    prof = psi.profile(R, Z)
    mass = mass_at(pdm, R, Z)
    rho_half = 0.5 * (rho[1:] + rho[:-1])
    z_half = 0.5 * (z[1:] + z[:-1])
    Rh, Zr = np.meshgrid(rho_half, z, indexing="ij")
    Rz, Zh = np.meshgrid(rho, z_half, indexing="ij")
    mb_r = mass_at(pdm, Rh, Zr) ** params.beta
    mb_z = mass_at(pdm, Rz, Zh) ** params.beta
    inner = (slice(1, -1), slice(1, -1))
    R_in = R[inner]
    m2 = float(psi.m) ** 2

    def term(outer, inner_pow):
        f = mass**inner_pow * prof
        flux_r = Rh * mb_r * (f[1:, :] - f[:-1, :]) / h_r
        div_r = (flux_r[1:, :] - flux_r[:-1, :]) / h_r / R[1:-1, :]
        flux_z = mb_z * (f[:, 1:] - f[:, :-1]) / h_z
        div_z = (flux_z[:, 1:] - flux_z[:, :-1]) / h_z
        azim = -m2 / R_in**2 * mass[inner] ** params.beta * f[inner]
        return mass[inner] ** outer * (div_r[:, 1:-1] + div_z[1:-1, :] + azim)

    kinetic = -0.25 * (term(params.gamma, params.alpha) + term(params.alpha, params.gamma))
    v = np.asarray(potential(R_in, Z[inner]), dtype=float)
    return kinetic + v * prof[inner]


def von_roos_residual(
    pdm: PdmSpec,
    params: AmbiguityParameters,
    potential,
    psi: WavefunctionAssembly,
    grids: Tuple[Grid1D, Grid1D],
    *,
    refine: bool = False,
    keep_field: bool = False,
) -> ResidualReport2D:
    """Discrete L2 norm of H Psi (target 0 at E = 0).

    Norms use the cylindrical measure rho drho dphi dz.  With ``refine`` the
    computation is repeated with both spacings halved and the observed order
    log2(r(h)/r(h/2)) is attached to the returned report.
    """
    rho_grid, z_grid = grids
    if not (isinstance(rho_grid, Grid1D) and isinstance(z_grid, Grid1D)):
        raise DomainError("von_roos_residual needs uniform Grid1D grids")
    report = _residual_once(pdm, params, potential, psi, rho_grid, z_grid, keep_field)
    if refine:
        fine = _residual_once(pdm, params, potential, psi, rho_grid.refined(), z_grid.refined(), keep_field)
        if fine.residual_norm > 0 and report.residual_norm > 0:
            report.convergence_order = math.log2(report.residual_norm / fine.residual_norm)
        report.refined = fine
    return report


def _residual_once(pdm, params, potential, psi, rho_grid, z_grid, keep_field):
    n_r, n_z = rho_grid.n_points, z_grid.n_points
    if min(n_r, n_z) < 2 * BOUNDARY_LAYER + 3:
        raise DomainError("grid too small for the boundary layer")
    rho, z = rho_grid.x, z_grid.x
    hpsi = apply_hamiltonian(pdm, params, potential, psi, rho, z)
    # apply_hamiltonian already dropped one node per edge
    cut = BOUNDARY_LAYER - 1
    keep = (slice(cut, hpsi.shape[0] - cut), slice(cut, hpsi.shape[1] - cut))
    r_nodes = rho[1:-1][keep[0]]
    z_nodes = z[1:-1][keep[1]]
    res = hpsi[keep]
    R, Z = np.meshgrid(r_nodes, z_nodes, indexing="ij")
    prof = psi.profile(R, Z)
    w = R * rho_grid.h * z_grid.h
    report = ResidualReport2D(
        h_rho=rho_grid.h,
        h_z=z_grid.h,
        residual_norm=float(np.sqrt(np.sum(w * res * res))),
        wavefunction_norm=float(np.sqrt(np.sum(w * prof * prof))),
        separation_gap=float(getattr(psi, "separation_gap", 0.0)),
    )
    if keep_field:
        report.rho, report.z, report.field = r_nodes, z_nodes, res
    return report


def case_parts(case: AssembledPotential, params: AmbiguityParameters, qn: QuantumNumbers):
    """Analytic radial and axial eigenfunctions for one case.

    Case 1 takes the axial oscillator on the formal branch of negative
    frequency, so that its energy -|atilde|(2 n_z + |L| + 1) can cancel the
    positive radial one.
    """
    rp = radial_problem(case, params, qn.m)
    ap = axial_problem(case, params)
    if rp.potential_kind is PotentialKind.HARMONIC_OSCILLATOR:
        radial = analytic_eigenfunction(rp.potential_kind, qn.n_rho, rp.l_abs, rp.omega)
    else:
        radial = analytic_eigenfunction(rp.potential_kind, qn.n_rho, rp.l_abs, rp.coupling)
    if ap.potential_kind is PotentialKind.HARMONIC_OSCILLATOR:
        omega = -ap.omega if case.case_id is CaseId.CASE1 else ap.omega
        axial = analytic_eigenfunction(ap.potential_kind, qn.n_z, ap.l_abs, omega)
    else:
        axial = analytic_eigenfunction(ap.potential_kind, qn.n_z, ap.l_abs, ap.coupling)
    return radial, axial


def case_wavefunction(case: AssembledPotential, params: AmbiguityParameters, qn: QuantumNumbers, *, check=True) -> WavefunctionAssembly:
    radial, axial = case_parts(case, params, qn)
    return assemble_wavefunction(case, params, qn, radial, axial, check=check)


def default_residual_grids(case: AssembledPotential, params, qn, h: float):
    """Grids reaching a few decay lengths of each part."""
    rp = radial_problem(case, params, qn.m)
    ap = axial_problem(case, params)
    return (Grid1D.from_extent(_extent(rp, qn.n_rho), h), Grid1D.from_extent(_extent(ap, qn.n_z), h))


def _extent(problem, n):
    if problem.potential_kind is PotentialKind.HARMONIC_OSCILLATOR:
        return 3.0 * math.sqrt((2 * n + problem.l_abs + 1.0) * 4.0 / problem.omega)
    return 12.0 * (n + problem.l_abs + 1.0) / problem.coupling


def _uniform_step(x):
    if x.size < 3:
        raise DomainError("need at least three nodes")
    d = np.diff(x)
    h = float(d.mean())
    if np.max(np.abs(d - h)) > 1e-9 * h:
        raise DomainError("non-uniform grid")
    return h
