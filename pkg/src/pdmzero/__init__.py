"""Zero-energy separability of the von Roos PDM Hamiltonian in cylindrical coordinates."""

__version__ = "0.1.0"

from .ambiguity import AmbiguityParameters, BarrierStrength, NamedSet, barrier_f, named_set, script_l, zeta
from .separation import (
    AssembledPotential,
    CaseCouplings,
    CaseId,
    EffectiveProblem,
    PdmSpec,
    PotentialKind,
    QuantumNumbers,
    WavefunctionAssembly,
    assemble_wavefunction,
    axial_problem,
    effective_ell,
    mass_at,
    potential_at,
    radial_problem,
)
from .spectra import (
    ConstraintReport,
    EvaluationMode,
    Family,
    SpectrumConvention,
    case1_j0_target,
    constraint_residual,
    coulomb_kz,
    ho_level,
    scan,
    solve_family,
)
