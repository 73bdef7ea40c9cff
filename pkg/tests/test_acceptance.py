"""Acceptance suite: one test per criterion, each printing PASS/FAIL.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines as the
criteria complete.
"""

import math
import time

import numpy as np
import pytest

from gref.charexp import (
    enumerate_solutions,
    lam1_quartic,
    real_roots,
)
from gref.closedform import (
    al_product_coeffs,
    crossing_limit,
    drt_product_coeffs,
    ltp_product_coeffs,
    rm_nodeless_range,
    rm_solutions,
)
from gref.params import PotentialSpec, RayIdentifiers, TangentPoly, canonicalize
from gref.regions import bound_count, near_separatrix_root, quartic_free_term, threshold_curves
from gref.seedsol import count_interior_zeros
from gref.susy import SeedFF, darboux_partner, schrodinger_spectrum, spectral_grid

from conftest import random_spec, random_spec_in_area_a, random_tp

E1 = canonicalize(a2=0.0, c0=0.25, c1=1.0, lambda0=0.0, mu0=8.0)
E1_LEVELS = np.array([-196.0 / 9.0, -100.0 / 9.0, -4.0, -4.0 / 9.0])


def _report(number: int, ok: bool, detail: str) -> None:
    print(f"ACCEPTANCE {number}: {'PASS' if ok else 'FAIL'} - {detail}")


def test_criterion_1_quartet_identity_suite():
    rng = np.random.default_rng(101)
    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(500):
        m = int(rng.integers(0, 5))
        spec = random_spec_in_area_a(rng, m)
        sols = enumerate_solutions(spec, m)
        ok_types = sorted(s.sol_type for s in sols) == ["a", "b", "c", "d"]
        assert ok_types, (spec, m, [s.sol_type for s in sols])
        for s in sols:
            e_mu = abs(s.lam0 + s.lam1 + 2 * m + 1 - s.mu_signed)
            e_25 = (abs(s.lam0 ** 2 - spec.lambda0 ** 2 - spec.c0 * s.lam1 ** 2)
                    / max(1.0, s.lam0 ** 2))
            e_29 = (abs(s.mu_signed ** 2 - spec.mu0 ** 2 - spec.a2 * s.lam1 ** 2)
                    / max(1.0, s.mu_signed ** 2))
            worst = max(worst, e_mu, e_25, e_29)
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-9 and elapsed < 10.0
    _report(1, ok, f"500 quartets, worst identity dev {worst:.2e}, {elapsed:.1f} s")
    assert ok


def test_criterion_2_e1_closed_form_reproduction():
    coeffs = lam1_quartic(E1, 1)
    roots = sorted(real_roots(coeffs))
    expected = sorted([-22.0, 10.0, 10.0 / 3.0, -22.0 / 3.0])
    dev = max(abs(a - b) for a, b in zip(roots, expected))
    free_ok = abs(coeffs[-1] - 3025.0) <= 1e-10 * 3025.0
    lead_ok = abs(coeffs[0] - 0.5625) <= 1e-12
    prod_ok = abs(np.prod(roots) - 3025.0 / 0.5625) <= 1e-8 * 3025.0 / 0.5625
    sols = sorted(enumerate_solutions(E1, 1), key=lambda s: s.lam1)
    sol_dev = max(abs(s.lam1 - e) for s, e in zip(sols, expected))
    ok = dev <= 1e-10 and sol_dev <= 1e-10 and free_ok and lead_ok and prod_ok
    _report(2, ok, f"lam1 dev {dev:.2e}, free 3025, leading 0.5625, "
                   f"product {np.prod(roots):.4f}")
    assert ok


def test_criterion_3_factorization_identities():
    rng = np.random.default_rng(103)
    worst_al = worst_ltp = worst_drt = 0.0
    for _ in range(120):
        spec = random_spec(rng, lambda0=0.0)
        m = int(rng.integers(0, 5))
        q = lam1_quartic(spec, m)
        worst_al = max(worst_al, float(
            np.max(np.abs(q - al_product_coeffs(spec, m))) / np.max(np.abs(q))))
    for _ in range(120):
        c0 = float(rng.uniform(0.08, 3.0))
        spec = canonicalize(a2=0.0, c0=c0, c1=1.0,
                            lambda0=float(rng.uniform(0.0, 3.0)),
                            mu0=float(rng.uniform(0.5, 12.0)))
        m = int(rng.integers(0, 5))
        q = lam1_quartic(spec, m)
        worst_ltp = max(worst_ltp, float(
            np.max(np.abs(q - ltp_product_coeffs(spec, m))) / np.max(np.abs(q))))
    n_drt = 0
    while n_drt < 120:
        c0, a2 = random_tp(rng, c0_range=(0.1, 2.5), depth=(0.05, 2.5))
        d = a2 - c0 - 1.0
        m = int(rng.integers(0, 4))
        M = 2 * m + 1
        which = "ad" if rng.random() < 0.5 else "bd"
        if which == "ad":
            lam0 = math.sqrt(max(0.0, 1.0 + d)) * M + float(rng.uniform(0.05, 3.0))
        else:
            if a2 > 1.0:
                continue
            lam0 = float(rng.uniform(0.0, M - 0.05))
        spec = canonicalize(a2=a2, c0=c0, c1=1.0, lambda0=lam0, mu0=1.0)
        g1, f1, g0, f0 = drt_product_coeffs(spec, m, lam0, which)
        worst_drt = max(worst_drt,
                        float(np.max(np.abs(g1 - f1)) / np.max(np.abs(g1))),
                        float(np.max(np.abs(g0 - f0)) / np.max(np.abs(g0))))
        n_drt += 1
    ok = worst_al <= 1e-10 and worst_ltp <= 1e-10 and worst_drt <= 1e-9
    _report(3, ok, f"leveled {worst_al:.2e}, linear-TP {worst_ltp:.2e}, "
                   f"cut-curve {worst_drt:.2e}")
    assert ok


def test_criterion_4_eigensolver_oracle():
    t0 = time.perf_counter()
    sg = spectral_grid(E1, h=0.01, kappa_min=0.6)
    levels = schrodinger_spectrum(sg.x, sg.v)
    dev = max(abs(g - w) / abs(w) for g, w in zip(levels, E1_LEVELS))
    count_ok = len(levels) == 4 == bound_count(E1)
    rng = np.random.default_rng(104)
    matched = 0
    for _ in range(20):
        mu0 = float(rng.uniform(1.8, 8.0))
        while min(abs(mu0 - k) for k in (1.0, 3.0, 5.0, 7.0)) < 0.8:
            mu0 = float(rng.uniform(1.8, 8.0))
        c0, a2 = random_tp(rng, c0_range=(0.2, 2.0))
        spec = canonicalize(a2=a2, c0=c0, c1=1.0, lambda0=0.0, mu0=mu0)
        expected = bound_count(spec)
        gap = mu0 - (2 * (expected - 1) + 1)
        kappa = gap / (1.0 + math.sqrt(c0))
        sgi = spectral_grid(spec, h=0.01, kappa_min=min(1.0, kappa))
        got = len(schrodinger_spectrum(sgi.x, sgi.v))
        assert got == expected, (spec, got, expected)
        matched += 1
    elapsed = time.perf_counter() - t0
    ok = dev <= 1e-3 and count_ok and matched == 20 and elapsed < 120.0
    _report(4, ok, f"E1 spectrum dev {dev:.2e}, count 4, "
                   f"{matched}/20 level counts match, {elapsed:.1f} s")
    assert ok


def test_criterion_5_isospectrality():
    t0 = time.perf_counter()
    sg = spectral_grid(E1, h=0.01, kappa_min=0.6)
    base = schrodinger_spectrum(sg.x, sg.v)
    sols0 = {s.sol_type: s for s in enumerate_solutions(E1, 0)}
    sols1 = {s.sol_type: s for s in enumerate_solutions(E1, 1)}

    assert sols1["b"].eps == pytest.approx(-100.0)
    v_b = darboux_partner(sg.x, sg.v, SeedFF(E1, sols1["b"]).on_grid(sg))
    iso = schrodinger_spectrum(sg.x, v_b)
    iso_dev = max(abs(a - b) / abs(a) for a, b in zip(base, iso))
    iso_ok = len(iso) == len(base) and iso_dev <= 1e-3

    assert sols0["d"].eps == pytest.approx(-36.0)
    v_d = darboux_partner(sg.x, sg.v, SeedFF(E1, sols0["d"]).on_grid(sg))
    ins = schrodinger_spectrum(sg.x, v_d)
    ins_ok = (len(ins) == len(base) + 1
              and abs(ins[0] + 36.0) <= 1e-2
              and max(abs(a - b) / abs(a) for a, b in zip(base, ins[1:])) <= 1e-3)

    v_c = darboux_partner(sg.x, sg.v, SeedFF(E1, sols0["c"]).on_grid(sg))
    dele = schrodinger_spectrum(sg.x, v_c)
    del_ok = (len(dele) == len(base) - 1
              and max(abs(a - b) / abs(a) for a, b in zip(base[1:], dele)) <= 1e-3)

    elapsed = time.perf_counter() - t0
    ok = iso_ok and ins_ok and del_ok and elapsed < 180.0
    _report(5, ok, f"isospectral dev {iso_dev:.2e}, inserted {ins[0]:.4f}, "
                   f"ground deleted, {elapsed:.1f} s")
    assert ok


def test_criterion_6_ios_zero_count_equivalence():
    rng = np.random.default_rng(106)
    checked = 0
    exceptions = 0
    while checked < 500:
        m = int(rng.integers(0, 6))
        spec = random_spec(rng)
        for s in enumerate_solutions(spec, m, count_zeros=False, tag=False):
            if s.sol_type not in ("a", "b"):
                continue
            neg = abs(s.lam1) if s.sol_type == "a" else abs(s.lam0)
            if abs(neg - m) < 1e-6:
                continue
            zeros = count_interior_zeros(spec, s)
            if (zeros == 0) != (m < neg):
                exceptions += 1
            checked += 1
    below_ok = True
    for _ in range(12):
        mu0 = float(rng.uniform(2.0, 7.5))
        while min(abs(mu0 - k) for k in (1.0, 3.0, 5.0, 7.0)) < 0.8:
            mu0 = float(rng.uniform(2.0, 7.5))
        c0, a2 = random_tp(rng, c0_range=(0.2, 2.0))
        spec = canonicalize(a2=a2, c0=c0, c1=1.0, lambda0=0.0, mu0=mu0)
        n = bound_count(spec)
        kappa = (mu0 - (2 * (n - 1) + 1)) / (1.0 + math.sqrt(c0))
        sgi = spectral_grid(spec, h=0.01, kappa_min=min(1.0, kappa))
        ground = schrodinger_spectrum(sgi.x, sgi.v)[0]
        for m in range(6):
            for s in enumerate_solutions(spec, m, count_zeros=False, tag=False):
                if s.sol_type in ("a", "b") and s.eps < ground - 1e-6:
                    if count_interior_zeros(spec, s) != 0:
                        below_ok = False
    ok = exceptions == 0 and below_ok
    _report(6, ok, f"{checked} regular members, {exceptions} rule exceptions, "
                   f"below-ground all nodeless: {below_ok}")
    assert ok


def test_criterion_7_rosen_morse_suite():
    rng = np.random.default_rng(107)
    worst = 0.0
    trials = 0
    type_ok = True
    nodeless_ok = True
    while trials < 100:
        A = float(rng.uniform(0.4, 6.0))
        B = float(rng.uniform(0.0, 8.0))
        m = int(rng.integers(0, 7))
        if abs(A - m) < 0.05 or abs(abs(A - m) ** 2 - B) < 1e-2:
            continue
        lam0 = 2.0 * math.sqrt(B)
        mu0 = 2.0 * A + 1.0
        spec = canonicalize(a2=0.0, c0=1.0, c1=1.0, lambda0=lam0, mu0=mu0)
        closed = [s for s in rm_solutions(lam0, mu0, m) if s.sol_type != "boundary"]
        generic = [s for s in enumerate_solutions(spec, m, count_zeros=False, tag=False)
                   if s.sol_type != "boundary"]
        assert len(closed) == len(generic)
        for c in closed:
            best = min(abs(c.lam1 - g.lam1) / (1.0 + abs(c.lam1)) for g in generic)
            worst = max(worst, best)
        f_minus = [s for s in closed if s.mu_signed > 0][0]
        sb = math.sqrt(B)
        want = ("c" if m < A - sb else "a'" if m < A else
                "b''" if m < A + sb else "d'")
        if f_minus.label != want:
            type_ok = False
        if f_minus.label == "a'":
            pred = rm_nodeless_range(A, B, m, "a1")
            if (count_interior_zeros(spec, f_minus) == 0) != pred:
                nodeless_ok = False
        if f_minus.label == "b''":
            pred = rm_nodeless_range(A, B, m, "b2")
            if (count_interior_zeros(spec, f_minus) == 0) != pred:
                nodeless_ok = False
        trials += 1
    ok = worst <= 1e-8 and type_ok and nodeless_ok
    _report(7, ok, f"100 draws, worst dev {worst:.2e}, type map {type_ok}, "
                   f"nodeless windows {nodeless_ok}")
    assert ok


def test_criterion_8_separatrix_threshold_geometry():
    rng = np.random.default_rng(108)
    worst_free = 0.0
    worst_thr = 0.0
    for _ in range(100):
        m = int(rng.integers(0, 5))
        M = 2 * m + 1
        lam0 = float(rng.uniform(0.0, 4.0))
        for mu0 in (lam0 + M, M - lam0, lam0 - M):
            if mu0 <= 0:
                continue
            spec = random_spec(rng, lambda0=lam0, mu0=mu0)
            scale = max(1.0, float(np.max(np.abs(lam1_quartic(spec, m)))))
            worst_free = max(worst_free, abs(quartic_free_term(spec, m)) / scale)
        spec = random_spec(rng, lambda0=lam0)
        if m >= 1:
            mu_a, _ = threshold_curves(spec, m)
            on = canonicalize(a2=spec.a2, c0=spec.c0, c1=1.0,
                              lambda0=lam0, mu0=mu_a(lam0))
            q = lam1_quartic(on, m)
            worst_thr = max(worst_thr, abs(float(np.polyval(q, -m)))
                            / max(1.0, float(np.max(np.abs(q)))))
    near_ok = True
    checked = 0
    while checked < 60:
        c0, a2 = random_tp(rng, c0_range=(0.1, 2.5), depth=(0.05, 2.0))
        m = int(rng.integers(0, 4))
        M = 2 * m + 1
        lam0 = float(rng.uniform(0.2, 3.0))
        line = rng.choice(["A", "B", "C"])
        mu0 = {"A": lam0 + M + 0.01, "B": M - lam0 + 0.01, "C": lam0 - M - 0.01}[line]
        if mu0 < 1.0 or abs(mu0 - M) < 0.3:
            continue
        spec = canonicalize(a2=a2, c0=c0, c1=1.0, lambda0=lam0, mu0=mu0)
        approx = near_separatrix_root(lam0, mu0, m)
        roots = real_roots(lam1_quartic(spec, m))
        nearest = min(roots, key=lambda r: abs(r - approx))
        if abs(nearest - approx) > 0.05 * abs(nearest):
            near_ok = False
        checked += 1
    worst_lim = 0.0
    checked = 0
    while checked < 60:
        c0, a2 = random_tp(rng, c0_range=(0.1, 2.5))
        if abs(c0 - 1.0) < 0.05:
            continue
        m = int(rng.integers(1, 4))
        M = 2 * m + 1
        v = float(rng.uniform(-2.0, 2.0))
        y = float(rng.uniform(-2.0, 2.0))
        lim = crossing_limit(canonicalize(a2=a2, c0=c0, c1=1.0,
                                          lambda0=0.0, mu0=float(M)), v)
        target = 4.0 * M * M * float(np.polyval(np.array(lim.a2_1), y))
        if abs(target) < 1e-3:
            continue

        def scaled(l0):
            sp = PotentialSpec(tp=TangentPoly(c0=c0, a2=a2),
                               rays=RayIdentifiers(lambda0=l0, mu0=M + l0 * v))
            return float(np.polyval(lam1_quartic(sp, m), l0 * y)) / (l0 * l0)

        # probe at lambda0 = 1e-4; first-order extrapolation removes the
        # O(lambda0) term of the vanishing-barrier expansion
        value = 2.0 * scaled(5e-5) - scaled(1e-4)
        worst_lim = max(worst_lim, abs(value - target) / abs(target))
        checked += 1
    ok = (worst_free <= 1e-9 and worst_thr <= 1e-9 and near_ok
          and worst_lim <= 1e-5)
    _report(8, ok, f"free term {worst_free:.2e}, threshold root {worst_thr:.2e}, "
                   f"near-separatrix 5% {near_ok}, scaled limit {worst_lim:.2e}")
    assert ok
