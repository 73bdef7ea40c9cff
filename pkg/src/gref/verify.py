"""Oracle-equivalence suites behind the ``verify`` command.

Each family pits a closed-form route against the generic double-step
enumeration (or against an exact polynomial identity) over randomized
parameter draws and reports the worst deviation seen.
"""

from __future__ import annotations

import math

import numpy as np

from . import closedform
from .charexp import enumerate_solutions, lam1_quartic
from .params import PotentialSpec, RayIdentifiers, TangentPoly, canonicalize

FAMILIES = ("al", "ltp", "rm", "drt", "crossing")


def _random_tp(rng, allow_negative_a2=True):
    c0 = float(rng.uniform(0.08, 3.0))
    lo = -3.0 if allow_negative_a2 else 0.0
    hi = (1.0 - math.sqrt(c0)) ** 2
    a2 = float(rng.uniform(lo, max(lo + 1e-6, hi - 0.02)))
    if a2 >= hi:
        a2 = lo
    return c0, a2


def _match_solutions(ref, got, tol):
    """Worst distance between two solution sets, matched by exponent pairs."""
    worst = 0.0
    if len(ref) != len(got):
        return math.inf
    used = set()
    for r in ref:
        best, best_d = None, math.inf
        for i, g in enumerate(got):
            if i in used:
                continue
            dd = max(abs(r.lam0 - g.lam0) / (1.0 + abs(r.lam0)),
                     abs(r.lam1 - g.lam1) / (1.0 + abs(r.lam1)))
            if dd < best_d:
                best, best_d = i, dd
        used.add(best)
        worst = max(worst, best_d)
    return worst


def verify_al(seed: int = 0, n: int = 200) -> dict:
    """Leveled-limit quadratic factors vs the generic route."""
    rng = np.random.default_rng(seed)
    worst_sol = 0.0
    worst_coeff = 0.0
    trials = 0
    while trials < n:
        c0, a2 = _random_tp(rng)
        if c0 == 1.0:
            continue
        mu0 = float(rng.uniform(1.2, 14.0))
        spec = canonicalize(a2=a2, c0=c0, c1=1.0, lambda0=0.0, mu0=mu0)
        m = int(rng.integers(0, 6))
        ref = closedform.al_solutions(spec, m)
        got = enumerate_solutions(spec, m, count_zeros=False, tag=False)
        worst_sol = max(worst_sol, _match_solutions(ref, got, 1e-8))
        prod = closedform.al_product_coeffs(spec, m)
        quartic = lam1_quartic(spec, m)
        scale = np.max(np.abs(quartic)) or 1.0
        worst_coeff = max(worst_coeff, float(np.max(np.abs(prod - quartic)) / scale))
        trials += 1
    passed = worst_sol <= 1e-8 and worst_coeff <= 1e-10
    return {"family": "al", "passed": bool(passed), "trials": trials,
            "max_solution_dev": worst_sol, "max_coefficient_dev": worst_coeff}


def verify_ltp(seed: int = 0, n: int = 200) -> dict:
    """Linear-TP closed forms, factorization, and threshold agreement."""
    rng = np.random.default_rng(seed)
    worst_sol = 0.0
    worst_coeff = 0.0
    worst_thr = 0.0
    trials = 0
    while trials < n:
        c0 = float(rng.uniform(0.08, 3.0))
        if abs(c0 - 1.0) < 0.02:
            continue
        lam0 = float(rng.uniform(0.0, 3.0))
        mu0 = float(rng.uniform(0.3, 14.0))
        spec = canonicalize(a2=0.0, c0=c0, c1=1.0, lambda0=lam0, mu0=mu0)
        m = int(rng.integers(0, 6))
        ref = [s for s in closedform.ltp_solutions(spec, m) if s.sol_type != "boundary"]
        got = [s for s in enumerate_solutions(spec, m, count_zeros=False, tag=False)
               if s.sol_type != "boundary"]
        worst_sol = max(worst_sol, _match_solutions(ref, got, 1e-8))
        prod = closedform.ltp_product_coeffs(spec, m)
        quartic = lam1_quartic(spec, m)
        scale = np.max(np.abs(quartic)) or 1.0
        worst_coeff = max(worst_coeff, float(np.max(np.abs(prod - quartic)) / scale))
        lines = closedform.ltp_special_lines(spec, m)
        from .regions import threshold_curves

        mu_a, mu_b = threshold_curves(spec, m)
        la = float(rng.uniform(0.0, max(m, 0.01)))
        worst_thr = max(worst_thr, abs(lines.threshold_a(la) - mu_a(la)))
        if la <= m and m > 0:
            worst_thr = max(worst_thr, abs(lines.threshold_b(la) - mu_b(la)))
        trials += 1
    passed = worst_sol <= 1e-8 and worst_coeff <= 1e-10 and worst_thr <= 1e-10
    return {"family": "ltp", "passed": bool(passed), "trials": trials,
            "max_solution_dev": worst_sol, "max_coefficient_dev": worst_coeff,
            "max_threshold_dev": worst_thr}


def verify_rm(seed: int = 0, n: int = 150) -> dict:
    """Rosen-Morse elementary forms vs the generic route."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    trials = 0
    while trials < n:
        a_par = float(rng.uniform(0.4, 6.0))
        b_par = float(rng.uniform(0.0, 8.0))
        m = int(rng.integers(0, 6))
        if abs(a_par - m) < 0.05:
            continue
        mu0 = 2.0 * a_par + 1.0
        lam0 = 2.0 * math.sqrt(b_par)
        spec = canonicalize(a2=0.0, c0=1.0, c1=1.0, lambda0=lam0, mu0=mu0)
        ref = [s for s in closedform.rm_solutions(lam0, mu0, m) if s.sol_type != "boundary"]
        got = [s for s in enumerate_solutions(spec, m, count_zeros=False, tag=False)
               if s.sol_type != "boundary"]
        worst = max(worst, _match_solutions(ref, got, 1e-8))
        trials += 1
    return {"family": "rm", "passed": bool(worst <= 1e-8), "trials": trials,
            "max_solution_dev": worst}


def verify_drt(seed: int = 0, n: int = 120) -> dict:
    """Cut-curve decompositions: polynomial identities and double roots."""
    rng = np.random.default_rng(seed)
    worst_coeff = 0.0
    worst_root = 0.0
    trials = 0
    while trials < n:
        c0 = float(rng.uniform(0.1, 2.5))
        d = -2.0 * math.sqrt(c0) - float(rng.uniform(0.05, 2.5))
        a2 = d + c0 + 1.0
        m = int(rng.integers(0, 4))
        M = 2 * m + 1
        which = "ad" if rng.random() < 0.5 else "bd"
        if which == "ad":
            lam_min = math.sqrt(max(0.0, (1.0 + d))) * M
            lam0 = float(rng.uniform(lam_min + 0.05, lam_min + 3.0))
            if lam0 * lam0 <= (1.0 + d) * M * M:
                continue
        else:
            if a2 > 1.0:
                continue
            lam0 = float(rng.uniform(0.0, M - 0.05))
        spec = canonicalize(a2=a2, c0=c0, c1=1.0, lambda0=lam0, mu0=1.0)
        try:
            g1, f1, g0, f0 = closedform.drt_product_coeffs(spec, m, lam0, which)
        except Exception:
            continue
        s1 = np.max(np.abs(g1)) or 1.0
        s0 = np.max(np.abs(g0)) or 1.0
        worst_coeff = max(worst_coeff,
                          float(np.max(np.abs(g1 - f1)) / s1),
                          float(np.max(np.abs(g0 - f0)) / s0))
        dec = closedform.drt_decomposition(spec, m, lam0, which)
        on = canonicalize(a2=a2, c0=c0, c1=1.0, lambda0=lam0, mu0=dec.mu0)
        got = enumerate_solutions(on, m, count_zeros=False, tag=False)
        worst_root = max(worst_root, _match_solutions(dec.solutions, got, 1e-6))
        trials += 1
    passed = worst_coeff <= 1e-9 and worst_root <= 1e-6
    return {"family": "drt", "passed": bool(passed), "trials": trials,
            "max_coefficient_dev": worst_coeff, "max_root_dev": worst_root}


def verify_crossing(seed: int = 0, n: int = 120) -> dict:
    """Vanishing-barrier scaled limit of the quartic near mu0 = 2m + 1."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    trials = 0
    while trials < n:
        c0 = float(rng.uniform(0.1, 2.5))
        if abs(c0 - 1.0) < 0.05:
            continue
        d = -2.0 * math.sqrt(c0) - float(rng.uniform(0.05, 2.0))
        a2 = d + c0 + 1.0
        m = int(rng.integers(1, 4))
        M = 2 * m + 1
        v = float(rng.uniform(-2.0, 2.0))
        y = float(rng.uniform(-2.0, 2.0))
        lim = closedform.crossing_limit(
            canonicalize(a2=a2, c0=c0, c1=1.0, lambda0=0.0, mu0=float(M)), v)
        target = 4.0 * M * M * np.polyval(np.array(lim.a2_1), y)
        if abs(target) < 1e-3:
            continue

        def scaled(l0):
            tp = TangentPoly(c0=c0, a2=a2)
            sp = PotentialSpec(tp=tp, rays=RayIdentifiers(lambda0=l0, mu0=M + l0 * v))
            return float(np.polyval(lam1_quartic(sp, m), l0 * y)) / (l0 * l0)

        # first-order Richardson in lambda0 removes the O(lambda0) term
        value = 2.0 * scaled(5e-5) - scaled(1e-4)
        worst = max(worst, abs(value - target) / abs(target))
        trials += 1
    return {"family": "crossing", "passed": bool(worst <= 1e-5), "trials": trials,
            "max_limit_dev": worst}


def run_family(family: str, seed: int = 0) -> dict:
    runner = {
        "al": verify_al,
        "ltp": verify_ltp,
        "rm": verify_rm,
        "drt": verify_drt,
        "crossing": verify_crossing,
    }.get(family)
    if runner is None:
        raise ValueError(f"unknown family {family!r}; choose from {FAMILIES}")
    return runner(seed=seed)
