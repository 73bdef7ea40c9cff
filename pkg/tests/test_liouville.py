import math

import numpy as np
import pytest

from gref.charexp import enumerate_solutions
from gref.errors import OutOfInterval
from gref.liouville import (
    bose_invariant,
    density,
    map_grid,
    map_variable,
    potential,
    sample_profile,
    schwarzian,
)
from gref.params import canonicalize
from gref.susy import xspace_values

from conftest import random_spec

D1 = np.array([-1.0, 9.0, -45.0, 0.0, 45.0, -9.0, 1.0]) / 60.0
D2 = np.array([2.0, -27.0, 270.0, -490.0, 270.0, -27.0, 2.0]) / 180.0
D3 = np.array([1.0, -8.0, 13.0, 0.0, -13.0, 8.0, -1.0]) / 8.0


def test_density_values(e1_spec):
    assert density(e1_spec, 0.5) == pytest.approx(2.5, abs=1e-14)
    rm = canonicalize(a2=0.0, c0=1.0, c1=1.0, lambda0=0.0, mu0=3.0)
    assert density(rm, 0.5) == pytest.approx(4.0, abs=1e-14)


def test_density_pole_structure(e1_spec):
    # rho ~ c0 / (4 z^2) into the left endpoint
    z = 1e-8
    assert density(e1_spec, z) * 4.0 * z * z / e1_spec.c0 == pytest.approx(1.0, rel=1e-6)


def test_density_domain():
    spec = canonicalize(a2=0.0, c0=0.25, c1=1.0, lambda0=0.0, mu0=8.0)
    for bad in (0.0, 1.0, -0.1, 1.1):
        with pytest.raises(OutOfInterval):
            density(spec, bad)


def _fd_schwarzian(spec, x0, h):
    xs = x0 + h * np.arange(-3, 4)
    zs = np.array([map_variable(spec, "z_of_x", float(x)) for x in xs])
    d1 = float(np.dot(D1, zs)) / h
    d2 = float(np.dot(D2, zs)) / (h * h)
    d3 = float(np.dot(D3, zs)) / h ** 3
    return d3 / d1 - 1.5 * (d2 / d1) ** 2


def test_schwarzian_matches_finite_differences():
    rng = np.random.default_rng(21)
    for _ in range(5):
        spec = random_spec(rng, mu0=float(rng.uniform(2.0, 8.0)))
        for x0 in np.linspace(-1.5, 2.0, 10):
            coarse = _fd_schwarzian(spec, x0, 0.04)
            fine = _fd_schwarzian(spec, x0, 0.02)
            fd = (16.0 * fine - coarse) / 15.0
            z0 = map_variable(spec, "z_of_x", float(x0))
            exact = schwarzian(spec, z0)
            assert abs(fd - exact) <= 1e-6 * (1.0 + abs(exact))


def test_schwarzian_endpoint_limits():
    rng = np.random.default_rng(22)
    for _ in range(20):
        spec = random_spec(rng)
        assert schwarzian(spec, 1.0 - 1e-8) == pytest.approx(-2.0, abs=1e-6)
        assert schwarzian(spec, 1e-8) == pytest.approx(-2.0 / spec.c0, rel=1e-6)


def test_bose_invariant_hand_value():
    spec = canonicalize(a2=0.0, c0=0.25, c1=1.0, lambda0=1.0, mu0=1.0)
    # h00 = 0, h01 = -1, f0 = 0: only the z=1 pole term survives
    assert bose_invariant(spec, 0.5, 0.0) == pytest.approx(2.0, abs=1e-13)


def test_bose_invariant_energy_linearity(e1_spec):
    rng = np.random.default_rng(23)
    for _ in range(50):
        z = float(rng.uniform(0.05, 0.95))
        e1v, e2v = float(rng.uniform(-30, 0)), float(rng.uniform(-30, 0))
        lhs = bose_invariant(e1_spec, z, e1v + e2v) - bose_invariant(e1_spec, z, e2v)
        assert lhs == pytest.approx(density(e1_spec, z) * e1v, rel=1e-12)


def test_bose_invariant_residue_at_origin():
    rng = np.random.default_rng(24)
    for _ in range(20):
        spec = random_spec(rng)
        h00 = spec.lambda0 ** 2 - 1.0
        z = 1e-9
        assert -4.0 * z * z * bose_invariant(spec, z, 0.0) == pytest.approx(h00, abs=1e-6)


def test_map_variable_anchor_and_roundtrip():
    rng = np.random.default_rng(25)
    spec = random_spec(rng)
    assert map_variable(spec, "x_of_z", 0.5) == pytest.approx(0.0, abs=1e-12)
    for _ in range(100):
        z = float(rng.uniform(0.01, 0.99))
        x = map_variable(spec, "x_of_z", z)
        assert abs(map_variable(spec, "z_of_x", x) - z) <= 1e-9


def test_map_variable_monotone():
    spec = canonicalize(a2=0.0, c0=0.25, c1=1.0, lambda0=0.3, mu0=5.0)
    xs = np.linspace(-8.0, 8.0, 81)
    zs = [map_variable(spec, "z_of_x", float(x)) for x in xs]
    assert all(b > a for a, b in zip(zs, zs[1:]))


def test_potential_vanishes_at_plus_infinity(e1_spec):
    assert abs(potential(e1_spec, 1.0 - 1e-8)) <= 1e-6


def test_potential_reflection_barrier():
    rng = np.random.default_rng(26)
    for _ in range(20):
        spec = random_spec(rng, mu0=float(rng.uniform(1.0, 6.0)),
                           c0_range=(0.25, 2.5))
        barrier = spec.lambda0 ** 2 / spec.c0
        assert potential(spec, 1e-9) == pytest.approx(barrier, abs=2e-5)
        assert potential(spec, 1.0 - 1e-8) == pytest.approx(0.0, abs=1e-5)


def test_leveled_potential_has_equal_tails():
    rng = np.random.default_rng(27)
    for _ in range(10):
        spec = random_spec(rng, lambda0=0.0, mu0=float(rng.uniform(1.5, 6.0)))
        left = potential(spec, 1e-9)
        right = potential(spec, 1.0 - 1e-9)
        assert abs(left) <= 1e-5 and abs(right) <= 1e-5


def test_profile_asymptotic_fields():
    spec = canonicalize(a2=0.0, c0=0.5, c1=1.0, lambda0=1.2, mu0=5.0)
    prof = sample_profile(spec, -6.0, 8.0, 100)
    assert prof.v_plus_inf == 0.0
    assert prof.v_minus_inf == pytest.approx(1.2 ** 2 / 0.5)
    assert prof.z_anchor == 0.5
    assert len(prof.x_samples) == 101


def test_profile_resolution_consistency():
    # doubling the grid keeps shared nodes identical: V is pointwise in z
    spec = canonicalize(a2=0.0, c0=0.25, c1=1.0, lambda0=0.4, mu0=5.0)
    p1 = sample_profile(spec, -4.0, 6.0, 100)
    p2 = sample_profile(spec, -4.0, 6.0, 200)
    assert np.max(np.abs(p2.v_samples[::2] - p1.v_samples)) < 1e-8


def test_seed_solutions_solve_the_line_equation():
    # psi = rho^(1/4) Phi(z(x)) must satisfy psi'' + (eps - V) psi = 0;
    # the stencil step tracks the seed's exponential growth rate
    rng = np.random.default_rng(28)
    checked = 0
    while checked < 20:
        spec = random_spec(rng, mu0=float(rng.uniform(3.0, 8.0)),
                           lambda0=float(rng.uniform(0.0, 1.5)))
        sols = enumerate_solutions(spec, int(rng.integers(0, 3)),
                                   count_zeros=False, tag=False)
        if not sols:
            continue
        sol = sols[int(rng.integers(0, len(sols)))]
        kappa = max(abs(sol.lam1), abs(sol.lam0) / math.sqrt(spec.c0), 1.0)
        if kappa > 120.0:
            continue
        h = min(0.02, 0.12 / kappa)
        n = int(math.ceil(4.0 / h)) + (int(math.ceil(4.0 / h)) % 2)
        x = np.linspace(-2.0, 2.0, n + 1)
        grid = map_grid(spec, x)
        psi = xspace_values(spec, sol, grid)
        v = grid.potential_values()
        h = x[1] - x[0]
        worst = 0.0
        for i in range(3, len(x) - 3, 2):
            d2 = float(np.dot(D2, psi[i - 3:i + 4])) / (h * h)
            worst = max(worst, abs(d2 + (sol.eps - v[i]) * psi[i]))
        assert worst <= 1e-5 * np.max(np.abs(psi))
        checked += 1
