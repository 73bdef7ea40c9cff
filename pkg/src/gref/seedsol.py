"""Seed wavefunctions: Jacobi factors with real indexes, nodes, residuals.

A seed solution (lam0, lam1) of order m lifts to the wavefunction

    Phi(z) = z^((lam0+1)/2) * (1-z)^((lam1+1)/2) * P_m^{(lam1, lam0)}(2z - 1)

on 0 < z < 1.  The Jacobi indexes here are arbitrary reals, frequently
negative non-integers, so the evaluation must not assume the classical
orthogonal range.  Normalization constants are irrelevant for node
counting and factorization use, and are not applied.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .charexp import SeedSolution
from .errors import OutOfInterval
from .liouville import bose_invariant
from .params import PotentialSpec

_DEGENERATE_TOL = 1e-9


def jacobi_eval(alpha: float, beta: float, m: int, eta):
    """Jacobi polynomial P_m^{(alpha, beta)} at eta, general real indexes.

    Uses the three-term recurrence seeded by P0 = 1 and
    P1 = (alpha-beta)/2 + (alpha+beta+2)/2 * eta.  When a recurrence
    denominator 2k(k+alpha+beta)(2k+alpha+beta-2) degenerates the
    evaluation falls back to the explicit finite sum, which is a
    polynomial identity in the indexes and therefore exact there.
    """
    if m < 0:
        raise ValueError("order m must be nonnegative")
    eta_arr = np.asarray(eta, dtype=float)
    scalar = eta_arr.ndim == 0
    if _recurrence_degenerate(alpha, beta, m):
        out = _jacobi_sum(alpha, beta, m, eta_arr)
    else:
        out = _jacobi_recurrence(alpha, beta, m, eta_arr)
    return float(out) if scalar else out


def _recurrence_degenerate(alpha: float, beta: float, m: int) -> bool:
    ab = alpha + beta
    for k in range(2, m + 1):
        if abs(k + ab) < _DEGENERATE_TOL or abs(2 * k + ab - 2.0) < _DEGENERATE_TOL:
            return True
    return False


def _jacobi_recurrence(alpha, beta, m, eta):
    p_prev = np.ones_like(eta)
    if m == 0:
        return p_prev
    p = 0.5 * (alpha - beta) + 0.5 * (alpha + beta + 2.0) * eta
    for k in range(2, m + 1):
        ab = alpha + beta
        a_k = 2.0 * k * (k + ab) * (2.0 * k + ab - 2.0)
        b_k = (2.0 * k + ab - 1.0) * ((2.0 * k + ab) * (2.0 * k + ab - 2.0) * eta
                                      + alpha * alpha - beta * beta)
        c_k = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * (2.0 * k + ab)
        p_prev, p = p, (b_k * p - c_k * p_prev) / a_k
    return p


def _jacobi_sum(alpha, beta, m, eta):
    """Explicit finite sum with generalized binomials; exact for any indexes."""
    half_minus = 0.5 * (eta - 1.0)
    half_plus = 0.5 * (eta + 1.0)
    total = np.zeros_like(eta)
    for s in range(m + 1):
        c1 = 1.0
        for k in range(m - s):
            c1 *= (m + alpha - k)
        c1 /= math.factorial(m - s)
        c2 = 1.0
        for k in range(s):
            c2 *= (m + beta - k)
        c2 /= math.factorial(s)
        total = total + c1 * c2 * half_minus ** s * half_plus ** (m - s)
    return total


def jacobi_eval_sum(alpha: float, beta: float, m: int, eta):
    """Explicit-sum evaluation, kept as an independent cross-check path."""
    eta_arr = np.asarray(eta, dtype=float)
    out = _jacobi_sum(alpha, beta, m, eta_arr)
    return float(out) if eta_arr.ndim == 0 else out


@dataclass(frozen=True)
class SeedWavefunction:
    """Wavefunction data for one seed solution."""

    spec: PotentialSpec
    sol: SeedSolution

    @property
    def rho0(self) -> float:
        return 0.5 * (self.sol.lam0 + 1.0)

    @property
    def rho1(self) -> float:
        return 0.5 * (self.sol.lam1 + 1.0)

    def __call__(self, z):
        return seed_wavefunction(self.spec, self.sol, z)


def seed_wavefunction(spec: PotentialSpec, sol: SeedSolution, z):
    """Phi(z) = z^rho0 (1-z)^rho1 P_m^{(lam1, lam0)}(2z-1) on (0, 1)."""
    zf = np.asarray(z, dtype=float)
    if np.any(zf <= 0.0) or np.any(zf >= 1.0):
        raise OutOfInterval("seed wavefunctions are evaluated strictly inside (0, 1)")
    rho0 = 0.5 * (sol.lam0 + 1.0)
    rho1 = 0.5 * (sol.lam1 + 1.0)
    val = zf ** rho0 * (1.0 - zf) ** rho1 * jacobi_eval(sol.lam1, sol.lam0, sol.m, 2.0 * zf - 1.0)
    return float(val) if np.ndim(z) == 0 else val


def rcsle_residual(spec: PotentialSpec, sol: SeedSolution, grid=None) -> float:
    """Scaled equation mismatch max |Phi'' + I(z; eps) Phi| over a grid.

    Second derivatives come from order-six central stencils whose step
    shrinks with the distance to the nearest endpoint.  Each pointwise
    mismatch is normalized by the larger of the grid amplitude of Phi
    and the local term size |Phi''| + |I Phi|: members irregular at an
    endpoint grow by dozens of decades across the grid, where only the
    relative cancellation of the two terms is representable.  For a
    correct (sol, eps) pair the value is bounded by the stencil
    truncation, below 1e-6.
    """
    if grid is None:
        k = np.arange(1, 200)
        theta = np.pi * k / 200.0
        grid = 1e-4 + (1.0 - 2e-4) * 0.5 * (1.0 - np.cos(theta))
    grid = np.asarray(grid, dtype=float)
    if np.any(grid < 1e-4) or np.any(grid > 1.0 - 1e-4):
        raise OutOfInterval("residual grid must avoid 1e-4 bands at both endpoints")

    # order-6 second-derivative weights on a 7-point uniform stencil
    w = np.array([2.0, -27.0, 270.0, -490.0, 270.0, -27.0, 2.0]) / 180.0
    phi = seed_wavefunction(spec, sol, grid)
    amax = float(np.max(np.abs(phi)))
    worst = 0.0
    for z0, p0 in zip(grid, phi):
        h = 0.01 * min(z0, 1.0 - z0, 0.25)
        zs = z0 + h * np.arange(-3, 4)
        vals = seed_wavefunction(spec, sol, zs)
        d2 = float(np.dot(w, vals)) / (h * h)
        term = bose_invariant(spec, z0, sol.eps) * p0
        scale = max(amax, abs(d2) + abs(term))
        worst = max(worst, abs(d2 + term) / scale)
    return worst


def count_interior_zeros(spec: PotentialSpec, sol: SeedSolution) -> int:
    """Sign changes of the Jacobi factor on (0, 1), bisection confirmed.

    The power prefactors never change sign inside the interval, so the
    polynomial factor carries all interior nodes; away from the
    endpoints they are simple, hence countable by bracketing.  The scan
    uses 64*(m+2) clustered points, at least 32 per possible node gap.
    """
    m = sol.m
    if m == 0:
        return 0
    n_pts = 64 * (m + 2)
    k = np.arange(1, n_pts + 1)
    z = 0.5 * (1.0 - np.cos(np.pi * k / (n_pts + 1)))
    z = z[(z > 1e-12) & (z < 1.0 - 1e-12)]
    vals = jacobi_eval(sol.lam1, sol.lam0, m, 2.0 * z - 1.0)
    count = 0
    for i in range(len(z) - 1):
        a, b = vals[i], vals[i + 1]
        if a == 0.0:
            continue
        if a * b < 0.0:
            lo, hi, flo = z[i], z[i + 1], a
            for _ in range(40):
                mid = 0.5 * (lo + hi)
                fm = jacobi_eval(sol.lam1, sol.lam0, m, 2.0 * mid - 1.0)
                if flo * fm <= 0.0:
                    hi = mid
                else:
                    lo, flo = mid, fm
            count += 1
    return count
