"""Generalized Laguerre polynomials and closed-form half-line eigenfunctions."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from ..separation import PotentialKind
from ..spectra import SpectrumConvention, coulomb_kz, ho_level


def laguerre(n: int, a: float, x):
    """L_n^(a)(x) from (k+1) L_{k+1} = (2k+1+a-x) L_k - (k+a) L_{k-1}."""
    if n < 0 or int(n) != n:
        raise ValueError("n must be a nonnegative integer")
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if n == 0:
        return prev if prev.ndim else float(prev)
    cur = 1.0 + a - x
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + a - x) * cur - (k + a) * prev) / (k + 1)
    return cur if np.ndim(cur) else float(cur)


@dataclass(frozen=True)
class AnalyticEigenfunction:
    """Closed-form eigenfunction u_n(x) with its eigenvalue ``energy``.

    For the oscillator a negative ``coupling`` (frequency) selects the formal
    inverted branch: the same ODE with energy -|omega|(2n+L+1), growing like
    exp(|omega| x^2/4).  That branch is left unnormalised (``normalizable``
    is False, ``norm_const`` = 1).
    """

    kind: PotentialKind
    n: int
    l_abs: float
    coupling: float
    scale: float  # omega for the oscillator, kappa for Coulomb
    energy: float
    norm_const: float
    normalizable: bool = True

    def raw(self, x):
        x = np.asarray(x, dtype=float)
        L = self.l_abs
        if self.kind is PotentialKind.HARMONIC_OSCILLATOR:
            w = self.scale
            return x ** (L + 0.5) * np.exp(-w * x * x / 4.0) * laguerre(self.n, L, w * x * x / 2.0)
        kappa = self.scale
        l = L - 0.5
        return x ** (l + 1.0) * np.exp(-kappa * x) * laguerre(self.n, 2.0 * l + 1.0, 2.0 * kappa * x)

    def __call__(self, x):
        return self.norm_const * self.raw(x)


def analytic_eigenfunction(kind, n: int, l_abs: float, coupling: float) -> AnalyticEigenfunction:
    """Textbook eigenfunction of the half-line oscillator or Coulomb problem.

    ``coupling`` is the frequency omega (V = omega^2 x^2/4) for the
    oscillator and the strength c (V = -2c/x) for Coulomb; the Coulomb decay
    rate uses the oracle-calibrated kappa = c/(n + |L| + 1/2).
    """
    kind = PotentialKind(kind)
    if l_abs < 0:
        raise ValueError("l_abs must be nonnegative")
    if kind is PotentialKind.HARMONIC_OSCILLATOR:
        if coupling == 0:
            raise ValueError("oscillator frequency must be nonzero")
        if coupling < 0:
            energy = -ho_level(-coupling, l_abs, n)
            return AnalyticEigenfunction(kind, n, l_abs, coupling, coupling, energy, 1.0, normalizable=False)
        energy = ho_level(coupling, l_abs, n)
        scale = coupling
        x_end = 2.0 * math.sqrt(energy) / coupling + 12.0 / math.sqrt(coupling)
    elif kind is PotentialKind.COULOMB:
        if not coupling > 0:
            raise ValueError("Coulomb coupling must be positive")
        kappa = coulomb_kz(coupling, l_abs, n, SpectrumConvention.ORACLE_CALIBRATED)
        energy = -kappa * kappa
        scale = kappa
        x_end = 2.0 * coupling / kappa**2 + 60.0 / kappa
    else:
        raise ValueError("no analytic eigenfunction for a potential-free problem")
    fn = AnalyticEigenfunction(kind, n, l_abs, coupling, scale, energy, 1.0)
    # integrand is below 1e-50 of its peak beyond x_end
    norm_sq, _ = quad(lambda t: float(fn.raw(t)) ** 2, 0.0, x_end, epsabs=0.0, epsrel=1e-13, limit=1000)
    return AnalyticEigenfunction(kind, n, l_abs, coupling, scale, energy, 1.0 / math.sqrt(norm_sq))
