"""Validated parametrization of tangent polynomials and ray identifiers.

A potential in this family is fixed by a tangent polynomial (TP)

    T(z) = d*z*(z-1) + c0*(1-z)^2 + c1*z^2,    d = a2 - c0 - c1,

positive on [0, 1], together with two nonnegative "ray identifiers":
lambda0, the zero-energy exponent difference at z = 0, and mu0, the one
at infinity.  The TP value at z = 1 is a pure scale (absorbed into the
x and energy units), so every spec is canonicalized to c1 = 1.

Accepted TPs: second order with two distinct real roots (discriminant
delta_t = d^2 - 4*c0 > 0, equivalently d < -2*sqrt(c0)), the linear
reduction a2 = 0, and the Rosen-Morse point c0 = 1, a2 = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import ComplexTPRoots, NonPositiveCoefficient, TPNotPositiveOnInterval

_BOUNDARY_TOL = 1e-12


@dataclass(frozen=True)
class TangentPoly:
    """Canonicalized tangent polynomial, c1 fixed to 1."""

    c0: float
    a2: float
    c1: float = 1.0

    @property
    def d(self) -> float:
        return self.a2 - self.c0 - self.c1

    @property
    def delta_t(self) -> float:
        """Discriminant of T as a quadratic in z."""
        return self.d * self.d - 4.0 * self.c0 * self.c1


@dataclass(frozen=True)
class RayIdentifiers:
    """Zero-energy exponent differences at z = 0 and at infinity."""

    lambda0: float
    mu0: float


@dataclass(frozen=True)
class PotentialSpec:
    """Full parametrization of one potential: TP plus ray identifiers."""

    tp: TangentPoly
    rays: RayIdentifiers

    # flat accessors, used pervasively downstream
    @property
    def c0(self) -> float:
        return self.tp.c0

    @property
    def a2(self) -> float:
        return self.tp.a2

    @property
    def d(self) -> float:
        return self.tp.d

    @property
    def delta_t(self) -> float:
        return self.tp.delta_t

    @property
    def lambda0(self) -> float:
        return self.rays.lambda0

    @property
    def mu0(self) -> float:
        return self.rays.mu0

    @property
    def is_ltp(self) -> bool:
        """Linear tangent polynomial (vanishing leading coefficient)."""
        return self.tp.a2 == 0.0

    @property
    def is_rm(self) -> bool:
        """Rosen-Morse point: c0 = 1 and a2 = 0."""
        return self.tp.a2 == 0.0 and self.tp.c0 == 1.0

    def as_dict(self) -> dict:
        return {
            "a2": self.a2,
            "c0": self.c0,
            "c1": self.tp.c1,
            "lambda0": self.lambda0,
            "mu0": self.mu0,
        }


def canonicalize(raw: Mapping[str, float] | None = None, **kwargs: float) -> PotentialSpec:
    """Validate raw parameters and rescale the tangent polynomial to c1 = 1.

    ``raw`` (or keyword arguments) must provide a2, c0, c1, lambda0, mu0.
    The TP scale freedom is absorbed by dividing a2, c0, c1 by c1.

    Raises NonPositiveCoefficient, ComplexTPRoots, or
    TPNotPositiveOnInterval when the parameters leave the supported
    family.
    """
    src = dict(raw) if raw is not None else {}
    src.update(kwargs)
    try:
        a2 = float(src["a2"])
        c0 = float(src["c0"])
        c1 = float(src.get("c1", 1.0))
        lambda0 = float(src["lambda0"])
        mu0 = float(src["mu0"])
    except KeyError as exc:
        raise NonPositiveCoefficient(f"missing parameter {exc.args[0]!r}") from exc

    if c0 <= 0.0 or c1 <= 0.0:
        raise NonPositiveCoefficient(f"c0 and c1 must be positive, got c0={c0}, c1={c1}")
    if mu0 <= 0.0:
        raise NonPositiveCoefficient(f"mu0 must be positive, got {mu0}")
    if lambda0 < 0.0:
        raise NonPositiveCoefficient(f"lambda0 must be nonnegative, got {lambda0}")

    a2, c0 = a2 / c1, c0 / c1
    tp = TangentPoly(c0=c0, a2=a2)

    if a2 != 0.0:
        # second-order TP: only two distinct real roots are supported,
        # which pins d strictly below -2*sqrt(c0); the complementary
        # branch d >= 2*sqrt(c0) fails interval positivity below
        if -2.0 * math.sqrt(c0) <= tp.d < 2.0 * math.sqrt(c0):
            raise ComplexTPRoots(
                f"d = {tp.d:.6g} must lie below -2*sqrt(c0) = {-2.0 * math.sqrt(c0):.6g}"
                " (complex-conjugate or double TP roots are out of scope)"
            )

    _check_positive_on_interval(tp)
    return PotentialSpec(tp=tp, rays=RayIdentifiers(lambda0=lambda0, mu0=mu0))


def _check_positive_on_interval(tp: TangentPoly) -> None:
    # endpoint values, plus the vertex when it falls inside [0, 1]
    vals = [tp.c0, tp.c1]
    if tp.a2 != 0.0:
        zv = (tp.d + 2.0 * tp.c0) / (2.0 * tp.a2)
        if 0.0 < zv < 1.0:
            vals.append(_tp_value(tp, zv))
    if min(vals) <= 0.0:
        raise TPNotPositiveOnInterval(f"tangent polynomial not positive on [0,1]: min={min(vals)}")


def _tp_value(tp: TangentPoly, z):
    return tp.d * z * (z - 1.0) + tp.c0 * (1.0 - z) ** 2 + tp.c1 * z * z


def tp_eval(spec: PotentialSpec, z):
    """Tangent polynomial value d*z*(z-1) + c0*(1-z)^2 + z^2 (c1 = 1).

    Accepts scalars or arrays; identical to the a2-parametrized form
    a2*z*(z-1) + c0*(1-z) + z.
    """
    return _tp_value(spec.tp, np.asarray(z, dtype=float) if np.ndim(z) else float(z))


def tp_eval_pair(spec: PotentialSpec, z, omz):
    """TP evaluated from the pair (z, 1-z), stable near both endpoints."""
    return -spec.d * z * omz + spec.c0 * omz * omz + spec.tp.c1 * z * z
