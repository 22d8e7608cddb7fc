"""Separated zero-energy problems for the mass M = b z^j rho^(2 upsilon + 1) / 2.

With f(phi) = 1 and no azimuthal potential, Psi = rho^upsilon U(rho)
e^{i m phi}/sqrt(2 pi) z^{j/2} Z(z) solves H Psi = 0 exactly when

    -U'' + (ell^2 - 1/4)/rho^2 U + Vr(rho) U = -k^2 U
    -Z'' + F/z^2 Z + Vz(z) Z = +k^2 Z

share the same k^2.  The four solvable cases pair a radial oscillator
(upsilon = 1/2) or Coulomb term (upsilon = -1) with an axial oscillator or
Coulomb term on the half-line z > 0 (wall for z < 0).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .ambiguity import AmbiguityParameters, barrier_f, zeta
from .config import (
    DEFAULT_A_SQ,
    DEFAULT_A_TILDE,
    DEFAULT_ATILDE_SQ,
    DEFAULT_B,
    DEFAULT_B_TILDE,
    TOL,
)
from .errors import DomainError, InadmissibleError, SeparationMismatch


@dataclass(frozen=True)
class PdmSpec:
    b: float
    j: float
    upsilon: float

    def __post_init__(self):
        if not (self.b > 0 and math.isfinite(self.b)):
            raise DomainError(f"mass scale b must be positive, got {self.b!r}")
        if not (math.isfinite(self.j) and math.isfinite(self.upsilon)):
            raise DomainError("j and upsilon must be finite")


@dataclass(frozen=True)
class QuantumNumbers:
    n_rho: int
    n_z: int
    m: int

    def __post_init__(self):
        for name in ("n_rho", "n_z", "m"):
            if int(getattr(self, name)) != getattr(self, name):
                raise DomainError(f"{name} must be an integer")
        if self.n_rho < 0 or self.n_z < 0:
            raise DomainError("n_rho and n_z must be nonnegative")


class PotentialKind(enum.Enum):
    HARMONIC_OSCILLATOR = "ho"
    COULOMB = "coulomb"
    NONE = "none"


class CaseId(enum.IntEnum):
    CASE1 = 1  # upsilon = 1/2, oscillator in rho, oscillator in z
    CASE2 = 2  # upsilon = -1, Coulomb in rho, oscillator in z
    CASE3 = 3  # upsilon = 1/2, oscillator in rho, Coulomb in z
    CASE4 = 4  # upsilon = -1, Coulomb in rho, Coulomb in z

    @property
    def upsilon(self) -> float:
        return 0.5 if self in (CaseId.CASE1, CaseId.CASE3) else -1.0

    @property
    def radial_kind(self) -> PotentialKind:
        if self in (CaseId.CASE1, CaseId.CASE3):
            return PotentialKind.HARMONIC_OSCILLATOR
        return PotentialKind.COULOMB

    @property
    def axial_kind(self) -> PotentialKind:
        if self in (CaseId.CASE1, CaseId.CASE2):
            return PotentialKind.HARMONIC_OSCILLATOR
        return PotentialKind.COULOMB


@dataclass(frozen=True)
class CaseCouplings:
    """Component couplings; each case reads only its own pair.

    ``a_sq`` and ``atilde_sq`` are the squared oscillator strengths in
    Vr = a^2 rho^2/4 and Vz = atilde^2 z^2/4; ``A_tilde``/``B_tilde`` enter
    Vr = -2 A/rho and Vz = -2 B/z.
    """

    a_sq: float = DEFAULT_A_SQ
    atilde_sq: float = DEFAULT_ATILDE_SQ
    A_tilde: float = DEFAULT_A_TILDE
    B_tilde: float = DEFAULT_B_TILDE

    @property
    def a_abs(self) -> float:
        return math.sqrt(self.a_sq)

    @property
    def atilde_abs(self) -> float:
        return math.sqrt(self.atilde_sq)


@dataclass(frozen=True)
class EffectiveProblem:
    """-u'' + C/x^2 u + V(x) u = E u on (0, inf), u(0) = 0.

    ``coupling`` is the potential coefficient: V = coupling * x^2 for the
    oscillator (a^2/4) and V = -2 coupling / x for Coulomb.  ``axis`` fixes
    the sign convention E = -k^2 ("rho") or E = +k^2 ("z").
    """

    barrier_coefficient: float
    potential_kind: PotentialKind
    coupling: float
    axis: str = "z"

    def __post_init__(self):
        object.__setattr__(self, "potential_kind", PotentialKind(self.potential_kind))
        if self.axis not in ("rho", "z"):
            raise DomainError(f"axis must be 'rho' or 'z', got {self.axis!r}")

    @property
    def l_abs(self) -> float:
        rad = self.barrier_coefficient + 0.25
        if rad < 0:
            raise InadmissibleError("barrier below -1/4 (fall to center)", "barrier_below_quarter")
        return math.sqrt(rad)

    @property
    def omega(self) -> float:
        """Oscillator frequency omega with V = omega^2 x^2 / 4."""
        if self.potential_kind is not PotentialKind.HARMONIC_OSCILLATOR:
            raise AttributeError("omega is defined for the oscillator only")
        return 2.0 * math.sqrt(self.coupling)

    def potential(self, x):
        x = np.asarray(x, dtype=float)
        if self.potential_kind is PotentialKind.HARMONIC_OSCILLATOR:
            return self.coupling * x * x
        if self.potential_kind is PotentialKind.COULOMB:
            return -2.0 * self.coupling / x
        return np.zeros_like(x)

    def effective_potential(self, x):
        x = np.asarray(x, dtype=float)
        return self.barrier_coefficient / (x * x) + self.potential(x)

    def kz_sq(self, energy: float) -> float:
        return -energy if self.axis == "rho" else energy


@dataclass(frozen=True)
class AssembledPotential:
    """V(rho, z) = [Vr(rho) + Vz(z)] / (b z^j rho^(2 upsilon + 1)) for one case."""

    case_id: CaseId
    couplings: CaseCouplings
    pdm: PdmSpec

    def __post_init__(self):
        if self.pdm.upsilon != self.case_id.upsilon:
            raise DomainError(
                f"case {int(self.case_id)} requires upsilon={self.case_id.upsilon}, "
                f"got {self.pdm.upsilon}"
            )

    @classmethod
    def for_case(cls, case_id, couplings=None, b=DEFAULT_B, j=0.0):
        case_id = CaseId(int(case_id))
        return cls(case_id, couplings or CaseCouplings(), PdmSpec(b, j, case_id.upsilon))

    def radial_component(self, rho):
        rho = np.asarray(rho, dtype=float)
        c = self.couplings
        if self.case_id.radial_kind is PotentialKind.HARMONIC_OSCILLATOR:
            return c.a_sq * rho * rho / 4.0
        return -2.0 * c.A_tilde / rho

    def axial_component(self, z):
        z = np.asarray(z, dtype=float)
        c = self.couplings
        if self.case_id.axial_kind is PotentialKind.HARMONIC_OSCILLATOR:
            return c.atilde_sq * z * z / 4.0
        return -2.0 * c.B_tilde / z

    def quotient_form(self, rho, z):
        rho, z = _check_quadrant(rho, z)
        b, j, u = self.pdm.b, self.pdm.j, self.pdm.upsilon
        return (self.radial_component(rho) + self.axial_component(z)) / (
            b * z**j * rho ** (2.0 * u + 1.0)
        )

    def __call__(self, rho, z):
        return potential_at(self, rho, z)


@dataclass(frozen=True)
class WavefunctionAssembly:
    """Psi(rho, phi, z) = rho^upsilon U(rho) e^{i m phi}/sqrt(2 pi) z^{j/2} Z(z).

    ``radial`` and ``axial`` are vectorised callables.  Psi vanishes for z <= 0.
    """

    radial: Callable
    axial: Callable
    pdm: PdmSpec
    m: int
    separation_gap: float = 0.0

    def profile(self, rho, z):
        """Real (rho, z) profile without the azimuthal factor."""
        rho = np.asarray(rho, dtype=float)
        z = np.asarray(z, dtype=float)
        out = np.zeros(np.broadcast(rho, z).shape)
        rho_b, z_b = np.broadcast_arrays(rho, z)
        mask = (z_b > 0) & (rho_b > 0)
        r, zz = rho_b[mask], z_b[mask]
        out[mask] = (
            r**self.pdm.upsilon * self.radial(r) * zz ** (self.pdm.j / 2.0) * self.axial(zz)
        )
        return out

    def __call__(self, rho, phi, z):
        phase = np.exp(1j * self.m * np.asarray(phi, dtype=float)) / math.sqrt(2.0 * math.pi)
        return self.profile(rho, z) * phase


def mass_at(pdm: PdmSpec, rho, z):
    rho, z = _check_quadrant(rho, z)
    return pdm.b * z**pdm.j * rho ** (2.0 * pdm.upsilon + 1.0) / 2.0


def effective_ell(upsilon: float, m: int, zeta_minus_beta: float) -> Optional[float]:
    """|ell| of the radial barrier, or None when the radicand is negative."""
    rad = ell_radicand(upsilon, m, zeta_minus_beta)
    if rad < 0.0:
        return None
    return math.sqrt(rad)


def ell_radicand(upsilon, m, zeta_minus_beta):
    return (
        upsilon * (upsilon + 1.0)
        + m * m
        + 0.25
        - (2.0 * upsilon + 1.0) ** 2 * (zeta_minus_beta - 1.0) / 2.0
    )


def radial_problem(case: AssembledPotential, params: AmbiguityParameters, m: int) -> EffectiveProblem:
    rad = ell_radicand(case.case_id.upsilon, m, zeta(params) - params.beta)
    if rad < 0.0:
        raise InadmissibleError(
            f"radial index radicand {rad!r} < 0 for case {int(case.case_id)}", "ell_radicand_negative"
        )
    kind = case.case_id.radial_kind
    c = case.couplings
    coupling = c.a_sq / 4.0 if kind is PotentialKind.HARMONIC_OSCILLATOR else c.A_tilde
    return EffectiveProblem(rad - 0.25, kind, coupling, axis="rho")


def axial_problem(case: AssembledPotential, params: AmbiguityParameters) -> EffectiveProblem:
    f = barrier_f(params, case.pdm.j)
    if f + 0.25 < 0.0:
        raise InadmissibleError(f"F + 1/4 = {f + 0.25!r} < 0", "script_l_radicand_negative")
    kind = case.case_id.axial_kind
    c = case.couplings
    coupling = c.atilde_sq / 4.0 if kind is PotentialKind.HARMONIC_OSCILLATOR else c.B_tilde
    return EffectiveProblem(f, kind, coupling, axis="z")


def potential_at(case: AssembledPotential, rho, z):
    """Closed-form interaction potential of the case."""
    rho, z = _check_quadrant(rho, z)
    b, j = case.pdm.b, case.pdm.j
    c = case.couplings
    cid = case.case_id
    if cid is CaseId.CASE1:
        return c.a_sq / (4 * b * z**j) + c.atilde_sq / (4 * b * rho**2 * z ** (j - 2))
    if cid is CaseId.CASE2:
        return -2 * c.A_tilde / (b * z**j) + c.atilde_sq * rho / (4 * b * z ** (j - 2))
    if cid is CaseId.CASE3:
        return c.a_sq / (4 * b * z**j) - 2 * c.B_tilde / (b * rho**2 * z ** (j + 1))
    return -2 * c.A_tilde / (b * z**j) - 2 * c.B_tilde * rho / (b * z ** (j + 1))


def assemble_wavefunction(case, params, qn, radial_solution, axial_solution, *, check=True):
    """Combine radial and axial eigenfunctions into Psi.

    Each solution must expose ``energy`` (its own 1D eigenvalue).  The
    radial energy is -k^2 and the axial one +k^2, so they must cancel;
    otherwise :class:`SeparationMismatch` is raised unless ``check`` is off,
    in which case the gap is recorded on the result.
    """
    e_rho = float(radial_solution.energy)
    e_z = float(axial_solution.energy)
    gap = e_rho + e_z
    scale = max(abs(e_rho), abs(e_z), 1.0)
    if check and abs(gap) > TOL.separation * scale:
        raise SeparationMismatch(
            f"radial energy {e_rho!r} and axial energy {e_z!r} do not cancel (gap {gap!r})"
        )
    return WavefunctionAssembly(radial_solution, axial_solution, case.pdm, int(qn.m), gap)


def _check_quadrant(rho, z):
    rho = np.asarray(rho, dtype=float)
    z = np.asarray(z, dtype=float)
    if np.any(rho <= 0) or np.any(z <= 0):
        raise DomainError("rho and z must be positive")
    if rho.ndim == 0 and z.ndim == 0:
        return float(rho), float(z)
    return rho, z
