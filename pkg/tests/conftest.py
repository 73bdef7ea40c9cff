"""Shared fixtures and random-parameter helpers."""

from __future__ import annotations

import math

import pytest

from gref.params import canonicalize


@pytest.fixture(scope="session")
def e1_spec():
    """The worked linear-TP instance used throughout: c0=1/4, mu0=8, leveled."""
    return canonicalize(a2=0.0, c0=0.25, c1=1.0, lambda0=0.0, mu0=8.0)


def random_tp(rng, *, c0_range=(0.1, 3.0), depth=(0.05, 3.0)):
    """(c0, a2) with a second-order TP of positive discriminant."""
    c0 = float(rng.uniform(*c0_range))
    d = -2.0 * math.sqrt(c0) - float(rng.uniform(*depth))
    return c0, d + c0 + 1.0


def random_spec(rng, *, lambda0=None, mu0=None, **tp_kw):
    c0, a2 = random_tp(rng, **tp_kw)
    if lambda0 is None:
        lambda0 = float(rng.uniform(0.0, 3.0))
    if mu0 is None:
        mu0 = float(rng.uniform(0.5, 12.0))
    return canonicalize(a2=a2, c0=c0, c1=1.0, lambda0=lambda0, mu0=mu0)


def random_spec_in_area_a(rng, m, *, margin=(0.1, 15.0), **tp_kw):
    """Spec whose ray point lies strictly inside Area A at order m."""
    c0, a2 = random_tp(rng, **tp_kw)
    lambda0 = float(rng.uniform(0.0, 3.0))
    mu0 = lambda0 + (2 * m + 1) + float(rng.uniform(*margin))
    return canonicalize(a2=a2, c0=c0, c1=1.0, lambda0=lambda0, mu0=mu0)
