import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from pdmzero.ambiguity import AmbiguityParameters, named_set, zeta
from pdmzero.errors import DomainError, InadmissibleError, SeparationMismatch
from pdmzero.separation import (
    AssembledPotential,
    CaseCouplings,
    CaseId,
    PdmSpec,
    PotentialKind,
    QuantumNumbers,
    assemble_wavefunction,
    axial_problem,
    effective_ell,
    mass_at,
    potential_at,
    radial_problem,
)
from pdmzero.numerics.special import analytic_eigenfunction


def params_with_zeta_minus_beta(target, beta=-1.0):
    """Von Roos triple with zeta - beta = target on the fixed-beta slice."""
    # zeta - beta = 2 a^2 + 2 a (1 + beta) + (1+beta)(2+beta) - beta(beta+1) - beta, gamma = -1-a-beta
    c = 1.0 + beta
    qa, qb, qc = 2.0, 2.0 * c, c * (2.0 + beta) - beta * (beta + 1.0) - beta - target
    disc = qb * qb - 4 * qa * qc
    if disc < 0:
        return None
    a = (-qb + math.sqrt(disc)) / (2 * qa)
    return AmbiguityParameters(a, beta, -1.0 - a - beta)


def test_helper_hits_target():
    p = params_with_zeta_minus_beta(1.375)
    assert zeta(p) - p.beta == pytest.approx(1.375, abs=1e-13)


def test_mass_at_examples():
    assert mass_at(PdmSpec(2, 0, -0.5), 3.7, 0.2) == 1.0
    assert mass_at(PdmSpec(2, 1, 0.5), 2.0, 3.0) == pytest.approx(12.0)
    assert mass_at(PdmSpec(2, 0, -1), 4.0, 1.0) == pytest.approx(0.25)


@pytest.mark.parametrize("rho, z", [(0.0, 1.0), (1.0, 0.0), (-1.0, 1.0)])
def test_mass_at_domain(rho, z):
    with pytest.raises(DomainError):
        mass_at(PdmSpec(2, 0, 0.5), rho, z)


def test_pdm_requires_positive_b():
    with pytest.raises(DomainError):
        PdmSpec(0.0, 0, 0.5)


def test_effective_ell_examples():
    assert effective_ell(-0.5, 3, 17.0) == 3
    assert effective_ell(0.5, 0, 11 / 8) == pytest.approx(0.5)
    assert effective_ell(-1.0, 0, 1.5) == 0.0
    assert effective_ell(0.5, 0, 2.0) is None


@given(st.integers(-50, 50), st.floats(-1e3, 1e3, allow_nan=False))
def test_effective_ell_degenerate_upsilon(m, zb):
    assert effective_ell(-0.5, m, zb) == abs(m)


def test_radial_problem_examples():
    case1 = AssembledPotential.for_case(1)
    rp = radial_problem(case1, named_set("mm"), 0)
    assert rp.barrier_coefficient == pytest.approx(0.0, abs=1e-15)
    assert rp.potential_kind is PotentialKind.HARMONIC_OSCILLATOR
    assert rp.coupling == 4.0 / 4.0
    assert rp.axis == "rho"

    p = params_with_zeta_minus_beta(1.5)
    rp2 = radial_problem(AssembledPotential.for_case(2), p, 0)
    assert rp2.barrier_coefficient == pytest.approx(-0.25, abs=1e-12)
    assert rp2.potential_kind is PotentialKind.COULOMB

    p3 = params_with_zeta_minus_beta(11 / 8)
    assert radial_problem(case1, p3, 1).barrier_coefficient == pytest.approx(1.0, abs=1e-12)


def test_radial_problem_inadmissible():
    with pytest.raises(InadmissibleError) as exc:
        radial_problem(AssembledPotential.for_case(1), named_set("gw"), 0)
    assert exc.value.reason == "ell_radicand_negative"


@given(st.floats(-2, 2), st.floats(-2, 2), st.integers(0, 5), st.sampled_from([1, 2, 3, 4]))
def test_radial_barrier_matches_effective_ell(a, g, m, cid):
    p = AmbiguityParameters.from_alpha_gamma(a, g)
    case = AssembledPotential.for_case(cid)
    ell = effective_ell(case.case_id.upsilon, m, zeta(p) - p.beta)
    if ell is None:
        return
    rp = radial_problem(case, p, m)
    assert rp.barrier_coefficient + 0.25 == pytest.approx(ell * ell, rel=4 * np.finfo(float).eps, abs=1e-300)


def test_axial_problem_examples():
    mm, bdd = named_set("mm"), named_set("bdd")
    assert axial_problem(AssembledPotential.for_case(1, j=0.0), mm).barrier_coefficient == 0
    assert axial_problem(AssembledPotential.for_case(1, j=1.0), mm).barrier_coefficient == pytest.approx(5 / 16)
    ap = axial_problem(AssembledPotential.for_case(3, j=2.0), bdd)
    assert ap.barrier_coefficient == pytest.approx(2.0)
    assert ap.potential_kind is PotentialKind.COULOMB
    assert ap.axis == "z"


def test_axial_problem_inadmissible():
    # GW: zeta = 2, beta = 0, so F = -j^2/4 = -1 at j = 2
    case = AssembledPotential.for_case(1, j=2.0)
    with pytest.raises(InadmissibleError) as exc:
        axial_problem(case, named_set("gw"))
    assert exc.value.reason == "script_l_radicand_negative"


def test_potential_at_examples():
    c = CaseCouplings(a_sq=4, atilde_sq=4, A_tilde=1, B_tilde=1)
    assert potential_at(AssembledPotential.for_case(1, c), 1.0, 1.0) == pytest.approx(1.0)
    assert potential_at(AssembledPotential.for_case(4, c), 1.0, 1.0) == pytest.approx(-2.0)
    zero = AssembledPotential.for_case(1, CaseCouplings(a_sq=0, atilde_sq=0))
    rho = np.linspace(0.1, 5, 7)
    assert np.all(potential_at(zero, rho, rho[::-1]) == 0)


def test_potential_at_domain():
    with pytest.raises(DomainError):
        potential_at(AssembledPotential.for_case(2), 0.0, 1.0)


def test_case_upsilon_mismatch():
    with pytest.raises(DomainError):
        AssembledPotential(CaseId.CASE1, CaseCouplings(), PdmSpec(2, 0, -1))


def _parts_case1_mm():
    radial = analytic_eigenfunction("ho", 0, 0.5, 2.0)
    axial = analytic_eigenfunction("ho", 0, 0.5, -2.0)
    return radial, axial


def test_assemble_case1_ground_state():
    case = AssembledPotential.for_case(1)
    radial, axial = _parts_case1_mm()
    psi = assemble_wavefunction(case, named_set("mm"), QuantumNumbers(0, 0, 0), radial, axial)
    rho, z = np.array([0.3, 1.1]), np.array([0.7, 0.2])
    expected = rho**0.5 * radial(rho) * axial(z)
    np.testing.assert_allclose(psi.profile(rho, z), expected, rtol=1e-14)


def test_assemble_constant_mass_product():
    case = AssembledPotential.for_case(1)
    pdm = PdmSpec(2.0, 0.0, -0.5)
    u = analytic_eigenfunction("ho", 0, 0.5, 2.0)
    from pdmzero.separation import WavefunctionAssembly
    psi = WavefunctionAssembly(u, u, pdm, 0)
    x = np.linspace(0.1, 3, 5)
    np.testing.assert_allclose(psi.profile(x, x), x**-0.5 * u(x) * u(x), rtol=1e-14)


def test_assemble_mismatch():
    case = AssembledPotential.for_case(1)
    radial = analytic_eigenfunction("ho", 0, 0.5, 2.0)
    axial = analytic_eigenfunction("ho", 0, 0.5, 2.0)  # decaying branch: energies add up
    with pytest.raises(SeparationMismatch):
        assemble_wavefunction(case, named_set("mm"), QuantumNumbers(0, 0, 0), radial, axial)
    psi = assemble_wavefunction(case, named_set("mm"), QuantumNumbers(0, 0, 0), radial, axial, check=False)
    assert psi.separation_gap == pytest.approx(6.0)


@given(st.floats(0.05, 5), st.floats(-10, 10), st.floats(0.05, 5), st.integers(-3, 3))
def test_wavefunction_periodic_and_walled(rho, phi, z, m):
    case = AssembledPotential.for_case(1)
    radial, axial = _parts_case1_mm()
    psi = assemble_wavefunction(case, named_set("mm"), QuantumNumbers(0, 0, m), radial, axial, check=False)
    assert psi(rho, phi, z) == pytest.approx(psi(rho, phi + 2 * math.pi, z), rel=1e-12, abs=1e-300)
    assert psi(rho, phi, -z) == 0
