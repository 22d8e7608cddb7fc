"""Analytic half-line spectra and the auxiliary quantization constraints.

Each constraint has the shape ``-1/4 + X^2 = F(alpha, beta, gamma, j)`` where
X is the value of |L| forced by matching the radial and axial separation
constants.  Two evaluation modes exist:

``PUBLISHED``
    the closed-form brackets exactly as printed for cases 1-4;
``REDERIVED``
    X obtained from the analytic ladders of :func:`ho_level` and
    :func:`coulomb_kz` under a chosen :class:`SpectrumConvention`.

They differ for cases 2-4 (Coulomb denominators, and a different radial
radicand and oscillator scaling in case 3).
"""

from __future__ import annotations

import cmath
import enum
import itertools
import math
from dataclasses import dataclass
from typing import Iterable, List, Optional

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .ambiguity import AmbiguityParameters, barrier_f, zeta
from .config import SCAN_DIVISIONS, TOL
from .separation import (
    CaseCouplings,
    CaseId,
    EffectiveProblem,
    PotentialKind,
    QuantumNumbers,
    ell_radicand,
)


class SpectrumConvention(enum.Enum):
    AS_PUBLISHED = "published"
    ORACLE_CALIBRATED = "oracle"

    @property
    def coulomb_offset(self) -> float:
        return 1.0 if self is SpectrumConvention.AS_PUBLISHED else 0.5


class EvaluationMode(enum.Enum):
    PUBLISHED = "published"
    REDERIVED = "rederived"


def ho_level(omega: float, l_abs: float, n: int) -> float:
    """omega (2n + |L| + 1) for -u'' + (L^2 - 1/4)/x^2 u + omega^2 x^2/4 u."""
    if not omega > 0:
        raise ValueError(f"omega must be positive, got {omega!r}")
    return omega * (2 * n + l_abs + 1.0)


def coulomb_kz(coupling: float, l_abs: float, n: int, convention=SpectrumConvention.ORACLE_CALIBRATED) -> float:
    """kappa with bound energy -kappa^2 for -u'' + (L^2 - 1/4)/x^2 u - 2 c/x u."""
    if not coupling > 0:
        raise ValueError(f"coupling must be positive, got {coupling!r}")
    convention = SpectrumConvention(convention)
    return coupling / (n + l_abs + convention.coulomb_offset)


def analytic_level(problem: EffectiveProblem, n: int, convention=SpectrumConvention.ORACLE_CALIBRATED) -> float:
    """Eigenvalue E_n of an effective problem."""
    if problem.potential_kind is PotentialKind.HARMONIC_OSCILLATOR:
        return ho_level(problem.omega, problem.l_abs, n)
    if problem.potential_kind is PotentialKind.COULOMB:
        return -coulomb_kz(problem.coupling, problem.l_abs, n, convention) ** 2
    raise ValueError("no analytic spectrum for a potential-free problem")


@dataclass(frozen=True)
class ConstraintReport:
    case_id: CaseId
    params: AmbiguityParameters
    j: float
    qn: QuantumNumbers
    zeta: float
    f_value: float
    lhs: float
    rhs: float
    residual: float
    ell_admissible: bool
    script_l_admissible: bool
    sign_compatible: bool
    mode: EvaluationMode = EvaluationMode.PUBLISHED
    convention: SpectrumConvention = SpectrumConvention.ORACLE_CALIBRATED

    @property
    def admissible(self) -> bool:
        return self.ell_admissible and self.script_l_admissible and self.sign_compatible

    @property
    def formal_branch(self) -> bool:
        """True when k_z^2 has opposite signs on the two sides (cases 1 and 4).

        Matching then relies on a formal branch choice for the square roots.
        """
        return self.case_id in (CaseId.CASE1, CaseId.CASE4)

    @property
    def reason(self) -> Optional[str]:
        if not self.ell_admissible:
            return "ell_radicand_negative"
        if not self.script_l_admissible:
            return "script_l_radicand_negative"
        if not self.sign_compatible:
            return "matched_script_l_negative"
        return None

    def row(self) -> dict:
        p = self.params
        return {
            "case": int(self.case_id),
            "j": self.j,
            "n_rho": self.qn.n_rho,
            "n_z": self.qn.n_z,
            "m": self.qn.m,
            "alpha": p.alpha,
            "beta": p.beta,
            "gamma": p.gamma,
            "zeta": self.zeta,
            "F": self.f_value,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "residual": self.residual,
            "admissible": self.admissible,
        }


REPORT_HEADER = (
    "case", "j", "n_rho", "n_z", "m", "alpha", "beta", "gamma",
    "zeta", "F", "lhs", "rhs", "residual", "admissible",
)


def _sqrt(x):
    if isinstance(x, complex) or x < 0:
        return cmath.sqrt(x)
    return math.sqrt(x)


def _published_bracket(case_id, zb, qn, c: CaseCouplings):
    nr, nz, m = qn.n_rho, qn.n_z, qn.m
    if case_id is CaseId.CASE1:
        rad = m * m + 3.0 - 2.0 * zb
        return rad, 2.0 * (nr - nz) + _sqrt(rad)
    rad = m * m + 0.75 - zb / 2.0
    s = _sqrt(rad)
    if case_id is CaseId.CASE2:
        return rad, (c.A_tilde**2 / c.atilde_abs) / (nr + 1.0 + s) ** 2 - 2.0 * nz - 1.0
    if case_id is CaseId.CASE3:
        return rad, (c.B_tilde / c.a_abs) / (2.0 * nr + 1.0 + s) ** 0.5 - nz - 1.0
    return rad, (c.B_tilde / c.A_tilde) * (nr + 1.0 + s) - nz - 1.0


def _rederived_bracket(case_id, zb, qn, c: CaseCouplings, convention):
    nr, nz, m = qn.n_rho, qn.n_z, qn.m
    rad = ell_radicand(case_id.upsilon, m, zb)
    ell = _sqrt(rad)
    off = convention.coulomb_offset
    if case_id is CaseId.CASE1:
        # ladders |a|(2n_rho+ell+1) = |atilde|(2n_z+L+1) on the branch sqrt(atilde^2) = -sqrt(a^2)
        return rad, (c.a_abs / c.atilde_abs) * (2.0 * nr + ell + 1.0) - 2.0 * nz - 1.0
    if case_id is CaseId.CASE2:
        kz_sq = (c.A_tilde / (nr + ell + off)) ** 2
        return rad, kz_sq / c.atilde_abs - 2.0 * nz - 1.0
    if case_id is CaseId.CASE3:
        return rad, c.B_tilde / _sqrt(c.a_abs * (2.0 * nr + ell + 1.0)) - nz - off
    return rad, (c.B_tilde / c.A_tilde) * (nr + ell + off) - nz - off


def constraint_residual(
    case_id,
    params: AmbiguityParameters,
    j: float,
    qn: QuantumNumbers,
    couplings: Optional[CaseCouplings] = None,
    mode=EvaluationMode.PUBLISHED,
    convention=SpectrumConvention.ORACLE_CALIBRATED,
) -> ConstraintReport:
    """Residual (-1/4 + X^2) - F of one auxiliary quantization constraint.

    Negative radicands are not raised: the bracket is evaluated on the
    principal complex branch, ``lhs`` keeps its real part, and the report is
    flagged inadmissible.
    """
    case_id = CaseId(int(case_id))
    mode = EvaluationMode(mode)
    convention = SpectrumConvention(convention)
    couplings = couplings or CaseCouplings()
    z = zeta(params)
    zb = z - params.beta
    f = barrier_f(params, j)
    if mode is EvaluationMode.PUBLISHED:
        rad, x = _published_bracket(case_id, zb, qn, couplings)
    else:
        rad, x = _rederived_bracket(case_id, zb, qn, couplings, convention)
    lhs_c = -0.25 + x * x
    lhs = float(lhs_c.real) if isinstance(lhs_c, complex) else float(lhs_c)
    sign_ok = not isinstance(x, complex) and x >= 0.0
    return ConstraintReport(
        case_id=case_id,
        params=params,
        j=float(j),
        qn=qn,
        zeta=z,
        f_value=f,
        lhs=lhs,
        rhs=f,
        residual=lhs - f,
        ell_admissible=rad >= 0.0,
        script_l_admissible=f + 0.25 >= 0.0,
        sign_compatible=sign_ok,
        mode=mode,
        convention=convention,
    )


def case1_j0_target(qn: QuantumNumbers) -> float:
    """zeta - beta required by the case-1 constraint at j = 0."""
    return 0.5 * (qn.m**2 + 3.0 - (2.0 * qn.n_z - 2.0 * qn.n_rho + 0.5) ** 2)


@dataclass(frozen=True)
class Family:
    """One-parameter slice through the von Roos plane, parameterised by alpha."""

    kind: str  # "alpha-eq-gamma" or "fixed-beta"
    beta: Optional[float] = None

    @classmethod
    def parse(cls, text: str) -> "Family":
        t = text.strip().lower()
        if t in ("alpha-eq-gamma", "alphaequalsgamma", "alpha=gamma"):
            return cls("alpha-eq-gamma")
        if t.startswith("fixed-beta="):
            return cls("fixed-beta", float(t.split("=", 1)[1]))
        raise ValueError(f"unknown family {text!r}")

    def params(self, alpha: float) -> AmbiguityParameters:
        if self.kind == "alpha-eq-gamma":
            return AmbiguityParameters(alpha, -1.0 - 2.0 * alpha, alpha)
        return AmbiguityParameters(alpha, self.beta, -1.0 - alpha - self.beta)

    def __str__(self):
        return self.kind if self.beta is None else f"fixed-beta={self.beta!r}"


ALPHA_EQUALS_GAMMA = Family("alpha-eq-gamma")


def fixed_beta(beta: float) -> Family:
    return Family("fixed-beta", float(beta))


def solve_family(
    case_id,
    family: Family,
    j: float,
    qn: QuantumNumbers,
    couplings: Optional[CaseCouplings] = None,
    bracket=(-1.0, 0.0),
    tolerance: float = TOL.root,
    mode=EvaluationMode.PUBLISHED,
    convention=SpectrumConvention.ORACLE_CALIBRATED,
) -> List[AmbiguityParameters]:
    """All admissible roots of the constraint residual along ``family``.

    A uniform pre-scan splits the bracket at admissibility boundaries; sign
    changes are refined with Brent's method and touching (double) roots are
    found by minimising |residual| around local minima.  Only roots with
    |residual| < tolerance are returned, sorted by alpha.
    """
    lo, hi = (float(v) for v in bracket)
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        raise ValueError(f"invalid bracket {bracket!r}")
    if not tolerance > 0:
        raise ValueError("tolerance must be positive")

    def report(a):
        return constraint_residual(case_id, family.params(a), j, qn, couplings, mode, convention)

    def res(a):
        return report(a).residual

    def ok(a):
        return report(a).admissible

    xs = np.linspace(lo, hi, SCAN_DIVISIONS + 1)
    adm = [ok(x) for x in xs]
    runs = _admissible_runs(xs, adm, ok)

    roots = []
    for a, b, interior in runs:
        pts = [a] + interior + [b]
        vals = [res(p) for p in pts]
        for p, v in zip(pts, vals):
            if v == 0.0:
                roots.append(p)
        for k in range(len(pts) - 1):
            v0, v1 = vals[k], vals[k + 1]
            if v0 * v1 < 0:
                roots.append(brentq(res, pts[k], pts[k + 1], xtol=1e-15, rtol=4 * np.finfo(float).eps))
        for k in range(1, len(pts) - 1):
            v_prev, v, v_next = vals[k - 1], vals[k], vals[k + 1]
            if v != 0 and v_prev * v > 0 and v * v_next > 0 and abs(v) <= abs(v_prev) and abs(v) <= abs(v_next):
                opt = minimize_scalar(
                    lambda t: abs(res(t)),
                    bounds=(pts[k - 1], pts[k + 1]),
                    method="bounded",
                    options={"xatol": 1e-14},
                )
                roots.append(float(opt.x))

    accepted = []
    span = hi - lo
    for r in sorted(roots):
        if not ok(r) or abs(res(r)) >= tolerance:
            continue
        if accepted and abs(r - accepted[-1]) <= 1e-9 * max(span, 1.0):
            if abs(res(r)) < abs(res(accepted[-1])):
                accepted[-1] = r
            continue
        accepted.append(r)
    return [family.params(r) for r in accepted]


def _admissible_runs(xs, adm, ok):
    """Maximal admissible sub-intervals with refined end points.

    Returns (start, end, interior_scan_points) triples.
    """
    runs = []
    n = len(xs)
    k = 0
    while k < n:
        if not adm[k]:
            k += 1
            continue
        start_k = k
        while k + 1 < n and adm[k + 1]:
            k += 1
        end_k = k
        start = xs[start_k] if start_k == 0 else _boundary(xs[start_k - 1], xs[start_k], ok)
        end = xs[end_k] if end_k == n - 1 else _boundary(xs[end_k + 1], xs[end_k], ok)
        interior = [float(x) for x in xs[start_k:end_k + 1] if start < x < end]
        runs.append((float(start), float(end), interior))
        k += 1
    return runs


def _boundary(bad, good, ok):
    """Bisect the admissibility predicate; returns an admissible point."""
    for _ in range(200):
        if abs(good - bad) <= TOL.boundary_bisection * max(1.0, abs(good)):
            break
        mid = 0.5 * (bad + good)
        if ok(mid):
            good = mid
        else:
            bad = mid
    return good


def scan(
    case_id,
    params: AmbiguityParameters,
    j: float,
    n_rho_range: Iterable[int],
    n_z_range: Iterable[int],
    m_range: Iterable[int],
    couplings: Optional[CaseCouplings] = None,
    mode=EvaluationMode.PUBLISHED,
    convention=SpectrumConvention.ORACLE_CALIBRATED,
) -> List[ConstraintReport]:
    """One report per (n_rho, n_z, m), in lexicographic order."""
    rows = []
    for nr, nz, m in itertools.product(sorted(n_rho_range), sorted(n_z_range), sorted(m_range)):
        rows.append(
            constraint_residual(case_id, params, j, QuantumNumbers(nr, nz, m), couplings, mode, convention)
        )
    return rows
