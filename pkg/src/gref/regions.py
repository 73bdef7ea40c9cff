"""Geometry of the (lambda0, mu0) quadrant for a given seed order m.

Three straight lines, the zero-factorization-energy separatrices

    mu0 = lambda0 + 2m + 1,     mu0 = 2m + 1 - lambda0,     mu0 = lambda0 - 2m - 1,

carve the quadrant into four Areas.  Area A (above the first line)
guarantees at least m+1 bound levels; on each line the free term of the
lam1 quartic vanishes, so one solution sits at zero energy.  Threshold
curves mark where a regular solution turns into the ground state, and
the double-root curves mark where one quartic route loses its fraction
formula.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .charexp import SeedSolution, enumerate_solutions, lam0_quartic, lam1_quartic
from .errors import DomainExceeded, NotNearSeparatrix
from .params import PotentialSpec

_BOUNDARY_TOL = 1e-12


def area_of(lambda0: float, mu0: float, m: int) -> str:
    """Area letter A/B/C/D; boundary bands resolve to D."""
    M = 2 * m + 1
    if lambda0 < mu0 - M - _BOUNDARY_TOL:
        return "A"
    if mu0 + lambda0 < M - _BOUNDARY_TOL:
        return "B"
    if lambda0 > mu0 + M + _BOUNDARY_TOL:
        return "C"
    return "D"


def on_separatrix(lambda0: float, mu0: float, m: int, tol: float = _BOUNDARY_TOL) -> bool:
    M = 2 * m + 1
    return (abs(mu0 - lambda0 - M) <= tol
            or abs(mu0 + lambda0 - M) <= tol
            or abs(lambda0 - mu0 - M) <= tol)


def separatrices(lambda0: float, m: int) -> dict[str, float | None]:
    """The three separatrix ordinates at this lambda0; negatives are absent."""
    M = 2 * m + 1
    mu_b = M - lambda0
    mu_c = lambda0 - M
    return {
        "muA": lambda0 + M,
        "muB": mu_b if mu_b > 0.0 else None,
        "muC": mu_c if mu_c > 0.0 else None,
    }


def threshold_curves(spec: PotentialSpec, m: int) -> tuple[Callable[[float], float],
                                                           Callable[[float], float]]:
    """Evaluators mu_a(lambda0), mu_b(lambda0) of the two threshold curves.

    On the first curve the lam1 quartic has the root -m (a regular
    solution of type a reaches the ground level); on the second the
    partner quartic does.  mu_b is real only for lambda0 <= m.
    """
    d, c0, a2 = spec.d, spec.c0, spec.a2

    def mu_a(lambda0: float) -> float:
        s = math.sqrt(c0 * m * m + lambda0 * lambda0)
        val = -d * m * m + 2 * m + 1 + lambda0 * lambda0 + 2.0 * (m + 1) * s
        return math.sqrt(val)

    def mu_b(lambda0: float) -> float:
        if lambda0 > m:
            raise DomainExceeded(f"mu_b needs lambda0 <= m, got lambda0={lambda0}, m={m}")
        t = (m * m - lambda0 * lambda0) / c0
        root = math.sqrt(t)
        return math.sqrt((root + m + 1.0) ** 2 - a2 * t)

    return mu_a, mu_b


def drt_curves(spec: PotentialSpec, m: int) -> tuple[Callable[[float], float],
                                                     Callable[[float], float]]:
    """Evaluators of the two double-root curves in the (lambda0, mu0) plane.

    On ad_mu the lam1 quartic has the double root -(2m+1); on bd_mu the
    partner quartic does.
    """
    d, c0, a2 = spec.d, spec.c0, spec.a2
    M = 2 * m + 1

    def ad_mu(lambda0: float) -> float:
        val = lambda0 * lambda0 - (1.0 + d) * M * M
        if val <= 0.0:
            raise DomainExceeded(f"ad curve not real at lambda0={lambda0} for m={m}")
        return math.sqrt(val)

    def bd_mu(lambda0: float) -> float:
        if lambda0 > M or a2 > 1.0:
            raise DomainExceeded(f"bd curve needs lambda0 <= 2m+1 and a2 <= 1, got {lambda0}, {a2}")
        val = (1.0 - a2) * (M * M - lambda0 * lambda0) / c0
        if val <= 0.0:
            raise DomainExceeded(f"bd curve not real at lambda0={lambda0} for m={m}")
        return math.sqrt(val)

    return ad_mu, bd_mu


def nodeless_predict(sol: SeedSolution) -> str:
    """Node verdict from the opposite-sign-index rule.

    A Jacobi polynomial with indexes of opposite sign is free of zeros
    on (-1, 1) exactly when its order is below the absolute value of the
    negative index.  Bound states of order m carry m nodes; the verdict
    for doubly-irregular solutions is left to numeric counting.
    """
    if sol.sol_type == "a":
        return "nodeless" if sol.m < abs(sol.lam1) else "has_nodes"
    if sol.sol_type == "b":
        return "nodeless" if sol.m < abs(sol.lam0) else "has_nodes"
    if sol.sol_type == "c":
        return "nodeless" if sol.m == 0 else "has_nodes"
    return "unknown"


def near_separatrix_root(lambda0: float, mu0: float, m: int,
                         rel_dist: float = 0.05) -> float:
    """Small lam1 root near a separatrix from the free-term/linear ratio.

    Valid within relative distance ``rel_dist`` of one of the three
    lines; exactly on a line the value is 0.  The returned sign follows
    the side of the line: positive above the A and B lines and on the
    C side of the C line.
    """
    M = 2 * m + 1
    dists = [abs(mu0 - lambda0 - M), abs(mu0 + lambda0 - M), abs(lambda0 - mu0 - M)]
    scale = max(1.0, mu0)
    if min(dists) > rel_dist * scale:
        raise NotNearSeparatrix(f"point ({lambda0}, {mu0}) is not near a separatrix for m={m}")
    free = ((mu0 + lambda0 + M) * (mu0 - lambda0 - M)
            * (mu0 + M - lambda0) * (mu0 + lambda0 - M))
    linear = -4.0 * M * (mu0 * mu0 + lambda0 * lambda0 - M * M)
    if linear == 0.0:
        raise NotNearSeparatrix("degenerate vertex: linear quartic coefficient vanishes")
    return -free / linear


def bound_count(spec: PotentialSpec, *, count_rule: str = "strict") -> int:
    """Number of bound levels supported by the potential.

    With no reflection barrier (lambda0 = 0) this is the count of orders
    m with 2m+1 < mu0; ``count_rule='ceiling'`` instead applies the
    rounded closed form ceil((mu0-1)/2) + 1 verbatim.  With a barrier
    the count is the longest run m = 0, 1, ... for which a type-c
    solution exists.
    """
    if spec.lambda0 == 0.0:
        if count_rule == "ceiling":
            return int(math.ceil(0.5 * (spec.mu0 - 1.0))) + 1
        return _al_count(spec.mu0)
    n = 0
    m_cap = int(math.ceil(spec.mu0)) + 2
    for m in range(m_cap + 1):
        sols = enumerate_solutions(spec, m, count_zeros=False, tag=False)
        if any(s.sol_type == "c" for s in sols):
            n = m + 1
        else:
            break
    return n


def _al_count(mu0: float) -> int:
    return max(0, len([m for m in range(int(mu0) + 1) if 2 * m + 1 < mu0]))


@dataclass(frozen=True)
class RegionReport:
    """Where one (lambda0, mu0) point sits relative to all named curves."""

    m: int
    area: str
    boundary: bool
    sep_values: dict[str, float | None]
    threshold_a: float | None
    threshold_b: float | None
    ad_mu: float | None
    bd_mu: float | None
    bound_count_estimate: int


def region_report(spec: PotentialSpec, m: int) -> RegionReport:
    """Assemble the full geometric report for spec.rays at order m."""
    lambda0, mu0 = spec.lambda0, spec.mu0
    mu_a, mu_b = threshold_curves(spec, m)
    ad_mu, bd_mu = drt_curves(spec, m)
    return RegionReport(
        m=m,
        area=area_of(lambda0, mu0, m),
        boundary=on_separatrix(lambda0, mu0, m),
        sep_values=separatrices(lambda0, m),
        threshold_a=_try_eval(mu_a, lambda0),
        threshold_b=_try_eval(mu_b, lambda0),
        ad_mu=_try_eval(ad_mu, lambda0),
        bd_mu=_try_eval(bd_mu, lambda0),
        bound_count_estimate=bound_count(spec),
    )


def _try_eval(fn, x):
    try:
        return fn(x)
    except DomainExceeded:
        return None


def quartic_free_term(spec: PotentialSpec, m: int, lambda0: float | None = None) -> float:
    """Free term of the lam1 quartic; vanishes on every separatrix."""
    return float(lam1_quartic(spec, m, lambda0=lambda0)[-1])


def drt_double_root_residual(spec: PotentialSpec, m: int, which: str) -> tuple[float, float]:
    """Value and derivative of the cut quartic at -(2m+1), both ~0 on its curve."""
    M = 2 * m + 1
    coeffs = lam1_quartic(spec, m) if which == "ad" else lam0_quartic(spec, m)
    val = float(np.polyval(coeffs, -M))
    der = float(np.polyval(np.polyder(coeffs), -M))
    return val, der
