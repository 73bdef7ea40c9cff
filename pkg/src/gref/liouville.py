"""Change of variable z(x), potential on the line, and related invariants.

The reference equation lives on 0 < z < 1 with the energy-dependent
rational coefficient

    I(z; eps) = I0(z) + rho(z) * eps,
    rho(z)    = T(z) / (4 z^2 (1-z)^2),

and the substitution z(x) defined by dx/dz = sqrt(rho).  The potential
on the line is

    V = -I0 / rho - (1/2) {z, x},

where {z, x} is the Schwarzian derivative of the substitution.  It
vanishes as x -> +infinity and tends to lambda0^2 / c0 (the reflection
barrier) as x -> -infinity.

Near the interval endpoints every quantity is evaluated from the pair
(z, 1-z) so that x-grids far into both tails keep full precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

from .errors import NonConvergence, OutOfInterval
from .params import PotentialSpec, tp_eval_pair

# pure-pole continuation of the map integral beyond this distance from
# an endpoint; see _x_of_pair
_EDGE = 1e-6
_X_TOL = 1e-10


def _check_interval(z) -> None:
    arr = np.asarray(z)
    if np.any(arr <= 0.0) or np.any(arr >= 1.0):
        raise OutOfInterval(f"z must lie in (0, 1), got {z!r}")


def density(spec: PotentialSpec, z):
    """Density rho(z) = T(z) / (4 z^2 (1-z)^2); strictly positive."""
    _check_interval(z)
    omz = 1.0 - np.asarray(z, dtype=float)
    return _density_pair(spec, np.asarray(z, dtype=float), omz)


def _density_pair(spec, z, omz):
    return tp_eval_pair(spec, z, omz) / (4.0 * z * z * omz * omz)


def schwarzian(spec: PotentialSpec, z):
    """Schwarzian derivative {z, x} of the substitution, in closed form.

    Equals (5 rho'^2 - 4 rho rho'') / (8 rho^3); tends to -2/c1 as
    z -> 1 and to -2/c0 as z -> 0.
    """
    _check_interval(z)
    zf = np.asarray(z, dtype=float)
    return _schwarzian_pair(spec, zf, 1.0 - zf)


def _schwarzian_pair(spec, z, omz):
    T = tp_eval_pair(spec, z, omz)
    c0, c1, a2 = spec.c0, spec.tp.c1, spec.a2
    inner = a2 - (a2 + (c1 - c0) * (z - omz)) / (z * omz) - 1.25 * spec.delta_t / T
    return -2.0 / T - inner * 2.0 * z * z * omz * omz / (T * T)


def bose_invariant(spec: PotentialSpec, z, eps: float):
    """Energy-dependent coefficient I(z; eps) = I0(z) + rho(z) * eps.

    The residues of I0 at its three second-order poles are fixed by the
    ray identifiers: h00 = lambda0^2 - 1 at z = 0, h01 = -1 at z = 1,
    and f0 = mu0^2 - 1 at infinity.
    """
    _check_interval(z)
    zf = np.asarray(z, dtype=float)
    omz = 1.0 - zf
    return _i0_pair(spec, zf, omz) + _density_pair(spec, zf, omz) * eps


def _i0_pair(spec, z, omz):
    h00 = spec.lambda0 ** 2 - 1.0
    f0 = spec.mu0 ** 2 - 1.0
    return -h00 / (4.0 * z * z * omz) + 1.0 / (4.0 * z * omz * omz) + f0 / (4.0 * z * omz)


def potential(spec: PotentialSpec, z):
    """Potential V = -I0/rho - (1/2){z,x} as a function of z in (0, 1)."""
    _check_interval(z)
    zf = np.asarray(z, dtype=float)
    return _potential_pair(spec, zf, 1.0 - zf)


def _potential_pair(spec, z, omz):
    # -I0/rho collapses to a plain rational: (h00*(1-z) - z + (1-mu0^2)*z*(1-z)) / T
    h00 = spec.lambda0 ** 2 - 1.0
    f0 = spec.mu0 ** 2 - 1.0
    T = tp_eval_pair(spec, z, omz)
    ratio = (h00 * omz - z - f0 * z * omz) / T
    return ratio - 0.5 * _schwarzian_pair(spec, z, omz)


# ---------------------------------------------------------------------------
# substitution z(x) and its inverse


def _sqrt_rho_regular(spec, t: float) -> float:
    # sqrt(rho) minus its simple poles at both endpoints; bounded on (0, 1)
    sc0 = math.sqrt(spec.c0)
    sc1 = math.sqrt(spec.tp.c1)
    return math.sqrt(_density_pair(spec, t, 1.0 - t)) - sc0 / (2.0 * t) - sc1 / (2.0 * (1.0 - t))


def _x_of_pair(spec, z: float, omz: float) -> float:
    """Map value x(z) with x(1/2) = 0, accurate into both tails.

    The regular part of sqrt(rho) is integrated by adaptive quadrature;
    the endpoint poles contribute exact log terms.  Beyond 1e-6 from an
    endpoint the regular part is continued linearly (its error there is
    O(1e-12)).
    """
    sc0 = math.sqrt(spec.c0)
    sc1 = math.sqrt(spec.tp.c1)
    zq = min(max(z, _EDGE), 1.0 - _EDGE)
    q = quad(lambda t: _sqrt_rho_regular(spec, t), 0.5, zq,
             epsabs=1e-13, epsrel=1e-12, limit=200)[0]
    if z < _EDGE:
        q += _sqrt_rho_regular(spec, _EDGE) * (z - _EDGE)
    elif omz < _EDGE:
        q += _sqrt_rho_regular(spec, 1.0 - _EDGE) * (_EDGE - omz)
    return q + 0.5 * sc0 * math.log(2.0 * z) - 0.5 * sc1 * math.log(2.0 * omz)


def _pair_of_u(u: float) -> tuple[float, float]:
    # z = 1/(1+e^-u): both members of the pair stay accurate for |u| large
    if u >= 0.0:
        e = math.exp(-u)
        return 1.0 / (1.0 + e), e / (1.0 + e)
    e = math.exp(u)
    return e / (1.0 + e), 1.0 / (1.0 + e)


def _u_of_x(spec, x: float) -> float:
    """Invert x(z) in the logit variable u = log(z/(1-z))."""
    sc0 = math.sqrt(spec.c0)
    sc1 = math.sqrt(spec.tp.c1)
    # x(u) is asymptotically linear with slopes sc0/2 and sc1/2
    lo = min(2.0 * x / sc0, 2.0 * x / sc1) - 16.0
    hi = max(2.0 * x / sc0, 2.0 * x / sc1) + 16.0

    def f(u):
        zz, oz = _pair_of_u(u)
        return _x_of_pair(spec, zz, oz) - x

    try:
        u = brentq(f, lo, hi, xtol=1e-13, maxiter=200)
    except ValueError as exc:
        raise NonConvergence(f"failed to bracket z(x) at x={x}") from exc
    # Newton polish towards machine precision; dx/du = sqrt(rho) z (1-z)
    for _ in range(3):
        zz, oz = _pair_of_u(u)
        r = _x_of_pair(spec, zz, oz) - x
        if r == 0.0:
            break
        u -= r / (math.sqrt(_density_pair(spec, zz, oz)) * zz * oz)
    return u


def map_variable(spec: PotentialSpec, direction: str, value: float) -> float:
    """Evaluate the substitution x(z) or its inverse z(x).

    direction 'x_of_z' integrates dx/dz = sqrt(rho) from the anchor
    z = 1/2 (true tails handled by log continuation); 'z_of_x' inverts
    the strictly increasing map to |dx| <= 1e-10.
    """
    if direction == "x_of_z":
        _check_interval(value)
        return _x_of_pair(spec, float(value), 1.0 - float(value))
    if direction == "z_of_x":
        u = _u_of_x(spec, float(value))
        return _pair_of_u(u)[0]
    raise ValueError(f"direction must be 'x_of_z' or 'z_of_x', got {direction!r}")


@dataclass(frozen=True)
class XGrid:
    """Substitution evaluated on an x-grid; the pair (z, 1-z) is kept."""

    spec: PotentialSpec
    x: np.ndarray
    u: np.ndarray
    z: np.ndarray
    omz: np.ndarray

    def potential_values(self) -> np.ndarray:
        return _potential_pair(self.spec, self.z, self.omz)


def map_grid(spec: PotentialSpec, x: np.ndarray) -> XGrid:
    """Solve z(x) on a whole grid by continuation Newton with bracketing fallback."""
    x = np.asarray(x, dtype=float)
    u = np.empty_like(x)
    guess = None
    for i, xv in enumerate(x):
        if guess is None:
            u[i] = _u_of_x(spec, xv)
        else:
            u[i] = _newton_u(spec, xv, guess)
        guess = u[i]
    z = np.empty_like(x)
    omz = np.empty_like(x)
    for i, uv in enumerate(u):
        z[i], omz[i] = _pair_of_u(uv)
    return XGrid(spec=spec, x=x, u=u, z=z, omz=omz)


def _newton_u(spec, x: float, u0: float) -> float:
    u = u0
    for _ in range(60):
        z, omz = _pair_of_u(u)
        r = _x_of_pair(spec, z, omz) - x
        if abs(r) <= _X_TOL:
            return u
        # dx/du = sqrt(rho) * dz/du with dz/du = z*(1-z)
        du = r / (math.sqrt(_density_pair(spec, z, omz)) * z * omz)
        if abs(du) > 4.0:
            du = math.copysign(4.0, du)
        u -= du
    return _u_of_x(spec, x)


@dataclass(frozen=True)
class PotentialProfile:
    """Sampled potential on an ordered x-grid with its asymptotic values."""

    x_samples: np.ndarray
    v_samples: np.ndarray
    v_plus_inf: float
    v_minus_inf: float
    z_anchor: float = 0.5


def sample_profile(spec: PotentialSpec, xmin: float, xmax: float, n: int) -> PotentialProfile:
    """Potential samples on a uniform grid of n+1 nodes over [xmin, xmax]."""
    if not (xmin < xmax) or n < 1:
        raise ValueError("need xmin < xmax and n >= 1")
    x = np.linspace(xmin, xmax, n + 1)
    grid = map_grid(spec, x)
    return PotentialProfile(
        x_samples=x,
        v_samples=grid.potential_values(),
        v_plus_inf=0.0,
        v_minus_inf=spec.lambda0 ** 2 / spec.c0,
    )
