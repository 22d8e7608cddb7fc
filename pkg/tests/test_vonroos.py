import numpy as np
import pytest

from pdmzero.ambiguity import AmbiguityParameters, named_set
from pdmzero.errors import DomainError
from pdmzero.numerics import Grid1D
from pdmzero.numerics.vonroos import (
    apply_hamiltonian,
    case_wavefunction,
    default_residual_grids,
    von_roos_residual,
)
from pdmzero.separation import AssembledPotential, CaseCouplings, PdmSpec, QuantumNumbers, WavefunctionAssembly
from pdmzero.spectra import ALPHA_EQUALS_GAMMA, solve_family

QN0 = QuantumNumbers(0, 0, 0)
CONST_MASS = PdmSpec(2.0, 0.0, -0.5)


def _reference_state():
    # psi = exp(-rho^2/2) z exp(-z^2/2) solves -1/2 lap psi + V psi = 0
    radial = lambda r: r**0.5 * np.exp(-r * r / 2)
    axial = lambda z: z * np.exp(-z * z / 2)
    potential = lambda r, z: 0.5 * (r * r + z * z) - 2.5
    return WavefunctionAssembly(radial, axial, CONST_MASS, 0), potential


def _schrodinger_fd(f, rho, z, h, potential):
    """-1/2 cylindrical Laplacian plus V by plain central differences."""
    R = rho[:, None]
    rp, rm = R[1:-1] + h / 2, R[1:-1] - h / 2
    lap_r = (rp * (f[2:, 1:-1] - f[1:-1, 1:-1]) - rm * (f[1:-1, 1:-1] - f[:-2, 1:-1])) / (h * h * R[1:-1])
    lap_z = (f[1:-1, 2:] - 2 * f[1:-1, 1:-1] + f[1:-1, :-2]) / (h * h)
    Rg, Zg = np.meshgrid(rho[1:-1], z[1:-1], indexing="ij")
    return -0.5 * (lap_r + lap_z) + potential(Rg, Zg) * f[1:-1, 1:-1]


@pytest.mark.parametrize("set_name", ["mm", "bdd", "zk"])
def test_constant_mass_matches_schrodinger(set_name):
    psi, potential = _reference_state()
    g = Grid1D.from_extent(6.0, 0.05)
    rho = z = g.x
    R, Z = np.meshgrid(rho, z, indexing="ij")
    f = psi.profile(R, Z)
    got = apply_hamiltonian(CONST_MASS, named_set(set_name), potential, psi, rho, z)
    ref = _schrodinger_fd(f, rho, z, g.h, potential)
    np.testing.assert_allclose(got, ref, rtol=1e-10, atol=1e-12)


def test_constant_mass_residual_converges():
    psi, potential = _reference_state()
    g = Grid1D.from_extent(6.0, 0.04)
    rep = von_roos_residual(CONST_MASS, named_set("mm"), potential, psi, (g, g), refine=True)
    assert rep.convergence_order == pytest.approx(2.0, abs=0.3)


def _mm_case1(h):
    case = AssembledPotential.for_case(1)
    p = named_set("mm")
    psi = case_wavefunction(case, p, QN0)
    grids = (Grid1D.from_extent(5.0, h), Grid1D.from_extent(3.0, h))
    return case, p, psi, grids


def test_mm_case1_order():
    case, p, psi, grids = _mm_case1(0.02)
    rep = von_roos_residual(case.pdm, p, case, psi, grids, refine=True)
    assert rep.separation_gap == 0
    assert 1.7 <= rep.convergence_order <= 2.3
    assert rep.refined.residual_norm < rep.residual_norm


def test_perturbed_beta_residual_is_large():
    case, p, psi, grids = _mm_case1(0.02)
    good = von_roos_residual(case.pdm, p, case, psi, grids)
    bad_params = AmbiguityParameters(-0.25, -0.4, -0.35)
    bad = von_roos_residual(case.pdm, bad_params, case, psi, grids)
    assert bad.residual_norm >= 10 * good.residual_norm


def test_case3_oracle_roots_converge_published_roots_do_not():
    c = CaseCouplings(B_tilde=3.0)
    case = AssembledPotential.for_case(3, c)
    kw = dict(couplings=c, bracket=(-3.0, 2.0), mode="rederived")
    oracle = solve_family(3, ALPHA_EQUALS_GAMMA, 0, QN0, convention="oracle", **kw)
    published = solve_family(3, ALPHA_EQUALS_GAMMA, 0, QN0, convention="published", **kw)
    assert [r.alpha for r in oracle] == pytest.approx([-2.25, 1.25], abs=1e-10)
    for p in oracle:
        psi = case_wavefunction(case, p, QN0)
        rep = von_roos_residual(case.pdm, p, case, psi, default_residual_grids(case, p, QN0, 0.02), refine=True)
        assert rep.convergence_order > 1.4
        assert rep.relative_residual < 1e-2
    for p in published:
        psi = case_wavefunction(case, p, QN0, check=False)
        assert abs(psi.separation_gap) > 1
        rep = von_roos_residual(case.pdm, p, case, psi, default_residual_grids(case, p, QN0, 0.02), refine=True)
        assert rep.relative_residual > 1
        assert abs(rep.convergence_order) < 0.5


def _case1_j1_report(alpha, h, keep_field=False):
    case = AssembledPotential.for_case(1, j=1.0)
    p = AmbiguityParameters.from_alpha_gamma(alpha, alpha)
    psi = case_wavefunction(case, p, QN0)
    grids = (Grid1D.from_extent(5.0, h), Grid1D.from_extent(3.0, h))
    return von_roos_residual(case.pdm, p, case, psi, grids, refine=True, keep_field=keep_field)


def test_case1_j1_roots():
    roots = solve_family(1, ALPHA_EQUALS_GAMMA, 1.0, QN0, bracket=(-1.0, 0.5))
    assert [r.alpha for r in roots] == pytest.approx([-2 / 3, 0.0], abs=1e-10)


def test_case1_j1_smooth_root_converges():
    assert _case1_j1_report(0.0, 0.02).convergence_order > 1.7


def test_case1_j1_singular_root_converges_away_from_edges():
    # M^alpha Psi ~ z^(2/3) at alpha = -2/3: edge error dominates the full norm
    rep = _case1_j1_report(-2 / 3, 0.02, keep_field=True)

    def window(r):
        R, Z = np.meshgrid(r.rho, r.z, indexing="ij")
        m = (R > 0.5) & (R < 4) & (Z > 0.5) & (Z < 2.5)
        return np.sqrt(np.sum((R * r.h_rho * r.h_z * r.field**2)[m]))

    assert np.log2(window(rep) / window(rep.refined)) == pytest.approx(2.0, abs=0.3)


def test_keep_field_shape():
    case, p, psi, grids = _mm_case1(0.05)
    rep = von_roos_residual(case.pdm, p, case, psi, grids, keep_field=True)
    assert rep.field.shape == (rep.rho.size, rep.z.size)
    assert rep.rho[0] == pytest.approx(3 * grids[0].h)


def test_non_uniform_grid_rejected():
    psi, potential = _reference_state()
    x = np.array([0.1, 0.2, 0.35, 0.5, 0.6])
    with pytest.raises(DomainError):
        apply_hamiltonian(CONST_MASS, named_set("mm"), potential, psi, x, x)
    with pytest.raises(DomainError):
        von_roos_residual(CONST_MASS, named_set("mm"), potential, psi, (x, x))
