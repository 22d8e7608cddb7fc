"""Symmetric tridiagonal eigenpairs by Sturm-sequence bisection and inverse iteration."""

from __future__ import annotations

import numpy as np
from scipy.linalg import solve_banded

from ..errors import EigenSolveError

_EPS = np.finfo(float).eps


def sturm_count(diag, off_sq, shift, pivmin=None) -> int:
    """Number of eigenvalues strictly below ``shift``.

    ``off_sq`` holds the squared off-diagonal entries (length n - 1).
    """
    if pivmin is None:
        pivmin = _pivmin(np.asarray(diag), np.asarray(off_sq))
    count = 0
    q = diag[0] - shift
    if q < 0:
        count += 1
    for d, e2 in zip(diag[1:], off_sq):
        if q == 0.0:
            q = -pivmin
        q = d - shift - e2 / q
        if q < 0:
            count += 1
    return count


def _pivmin(diag, off_sq):
    scale = max(float(np.max(np.abs(diag))), float(np.max(off_sq)) if len(off_sq) else 0.0, 1.0)
    return _EPS * _EPS * scale


def gershgorin(diag, off):
    a = np.abs(off)
    radius = np.zeros_like(diag)
    radius[:-1] += a
    radius[1:] += a
    return float(np.min(diag - radius)), float(np.max(diag + radius))


def bisect_eigenvalues(diag, off, count, max_iter=200):
    """Lowest ``count`` eigenvalues, ascending."""
    diag = np.asarray(diag, dtype=float)
    off = np.asarray(off, dtype=float)
    n = diag.size
    if not 1 <= count <= n:
        raise ValueError(f"count must be in [1, {n}]")
    # plain Python floats keep the sequential recurrence fast
    d_list = diag.tolist()
    e2_list = (off * off).tolist()
    pivmin = _pivmin(diag, off * off)
    lo0, hi0 = gershgorin(diag, off)
    pad = 2 * _EPS * max(abs(lo0), abs(hi0), 1.0)
    lo0 -= pad
    hi0 += pad

    values = []
    lower = lo0
    for k in range(count):
        lo, hi = lower, hi0
        for _ in range(max_iter):
            mid = 0.5 * (lo + hi)
            if hi - lo <= 2 * _EPS * max(abs(lo), abs(hi)) + 1e-300 or mid in (lo, hi):
                break
            if sturm_count(d_list, e2_list, mid, pivmin) > k:
                hi = mid
            else:
                lo = mid
        else:
            raise EigenSolveError(f"bisection for eigenvalue {k} did not converge")
        lam = 0.5 * (lo + hi)
        values.append(lam)
        lower = lo
    return np.array(values)


def inverse_iteration(diag, off, eigenvalue, iterations=3):
    """Unit (Euclidean) eigenvector for a converged ``eigenvalue``."""
    diag = np.asarray(diag, dtype=float)
    off = np.asarray(off, dtype=float)
    n = diag.size
    norm_t = max(float(np.max(np.abs(diag))) + 2 * float(np.max(np.abs(off), initial=0.0)), 1.0)
    shift = eigenvalue + 8 * _EPS * norm_t
    ab = np.zeros((3, n))
    ab[0, 1:] = off
    ab[1, :] = diag - shift
    ab[2, :-1] = off
    # deterministic start vector with no special symmetry
    x = 1.0 + 0.5 * np.sin(np.arange(1, n + 1) * 0.7548776662466927)
    for _ in range(iterations):
        x = solve_banded((1, 1), ab, x, check_finite=False)
        nrm = np.linalg.norm(x)
        if not np.isfinite(nrm) or nrm == 0:
            raise EigenSolveError("inverse iteration broke down")
        x /= nrm
    return x
