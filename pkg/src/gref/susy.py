"""Darboux partners from nodeless seed functions and the grid eigensolver.

The spectrum oracle is independent of all closed forms: a three-point
Laplacian on a uniform x-grid with Dirichlet walls, Richardson
extrapolated over step h and 2h.  Partner potentials are

    V_hat = V - 2 (ln |f|)''                      (single step)
    V_hat = V - 2 (ln |W(f_1..f_k)|)''            (chains)

computed in log space throughout: below-ground seed functions grow
exponentially in both tails, so their values are never materialized on
wide grids, only log-derivatives are.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigvalsh_tridiagonal

from .charexp import SeedSolution, enumerate_solutions
from .errors import GridTooCoarse, NodeDetected, WronskianNode
from .liouville import PotentialProfile, XGrid, map_grid
from .params import PotentialSpec, tp_eval_pair
from .seedsol import count_interior_zeros, jacobi_eval


# ---------------------------------------------------------------------------
# spectrum oracle


def schrodinger_spectrum(x: np.ndarray, v: np.ndarray, n_max: int | None = None,
                         *, upper: float = -1e-8) -> np.ndarray:
    """Bound levels of -psi'' + V psi = E psi on the sampled box.

    Dirichlet walls at both grid ends; eigenvalues restricted to
    (min V, upper).  The three-point result at step h is extrapolated
    with the step-2h result from the decimated grid; the size of the
    extrapolation correction |E_h - E_2h| / 3 estimates the remaining
    uncertainty, and beyond 1e-3 per level GridTooCoarse is raised.
    """
    x = np.asarray(x, dtype=float)
    v = np.asarray(v, dtype=float)
    if x.ndim != 1 or x.shape != v.shape or len(x) < 16:
        raise ValueError("need matching 1-d arrays with at least 16 nodes")
    h = x[1] - x[0]
    if not np.allclose(np.diff(x), h, rtol=0, atol=1e-9 * abs(h)):
        raise ValueError("grid must be uniform")
    fine = _dirichlet_levels(v, h, upper)
    coarse = _dirichlet_levels(v[::2], 2.0 * h, upper)
    n = min(len(fine), len(coarse))
    out = list((4.0 * fine[:n] - coarse[:n]) / 3.0)
    for i in range(n):
        if abs(fine[i] - coarse[i]) / 3.0 > 1e-3 * max(1.0, abs(out[i])):
            raise GridTooCoarse(
                f"level {i}: extrapolation correction {abs(fine[i] - coarse[i]) / 3.0:.3e}")
    out.extend(fine[n:])  # shallow levels resolved only by the fine grid
    ev = np.array(sorted(out))
    if n_max is not None:
        ev = ev[:n_max]
    return ev


def _dirichlet_levels(v: np.ndarray, h: float, upper: float) -> np.ndarray:
    diag = v[1:-1] + 2.0 / (h * h)
    off = np.full(len(diag) - 1, -1.0 / (h * h))
    lo = float(np.min(v)) - 1.0
    return eigvalsh_tridiagonal(diag, off, select="v", select_range=(lo, upper))


@dataclass(frozen=True)
class SpectralGrid:
    """Potential samples plus the substitution data needed by seed functions."""

    grid: XGrid
    v: np.ndarray

    @property
    def x(self) -> np.ndarray:
        return self.grid.x

    def profile(self) -> PotentialProfile:
        spec = self.grid.spec
        return PotentialProfile(
            x_samples=self.grid.x, v_samples=self.v,
            v_plus_inf=0.0, v_minus_inf=spec.lambda0 ** 2 / spec.c0,
        )


def spectral_grid(spec: PotentialSpec, *, h: float = 0.01, tail_tol: float = 1e-6,
                  kappa_min: float = 1.0, max_span: float = 400.0) -> SpectralGrid:
    """Box and sampling for the eigensolver.

    The box ends where |V - V(inf)| < tail_tol on both sides, extended
    by a decay allowance 14/kappa_min so that the slowest bound state
    (decay rate kappa_min) is unaffected by the Dirichlet walls.
    Doubling-the-box validation is left to the caller's tests.
    """
    v_minus = spec.lambda0 ** 2 / spec.c0
    pad = max(8.0, 14.0 / kappa_min)
    x_left = _tail_edge(spec, v_minus, tail_tol, direction=-1.0) - pad
    x_right = _tail_edge(spec, 0.0, tail_tol, direction=+1.0) + pad
    if x_right - x_left > max_span:
        raise ValueError(f"required box [{x_left}, {x_right}] exceeds max_span")
    n = int(math.ceil((x_right - x_left) / h))
    n += n % 2  # keep the decimated grid aligned with both walls
    x = x_left + (x_right - x_left) * np.arange(n + 1) / n
    grid = map_grid(spec, x)
    return SpectralGrid(grid=grid, v=grid.potential_values())


def _tail_edge(spec, v_inf, tol, direction):
    from .liouville import _pair_of_u, _potential_pair, _u_of_x

    x = 0.0
    for _ in range(200):
        u = _u_of_x(spec, x)
        z, omz = _pair_of_u(u)
        if abs(_potential_pair(spec, z, omz) - v_inf) < tol:
            return x
        x += direction * 1.0
    raise ValueError("potential tail did not flatten within 200 length units")


# ---------------------------------------------------------------------------
# factorization functions


@dataclass(frozen=True)
class BoundFF:
    """Log data of one factorization function on a fixed x-grid."""

    eps: float
    dlog: np.ndarray     # d ln|f| / dx
    logabs: np.ndarray
    label: str = ""


@dataclass(frozen=True)
class SeedFF:
    """Factorization function built from a seed solution."""

    spec: PotentialSpec
    sol: SeedSolution

    def check_nodeless(self) -> None:
        if count_interior_zeros(self.spec, self.sol) > 0:
            raise NodeDetected(f"seed {self.sol.label} of order {self.sol.m} has interior nodes")

    def on_grid(self, sg: SpectralGrid) -> BoundFF:
        grid = sg.grid
        sol = self.sol
        rho0 = 0.5 * (sol.lam0 + 1.0)
        rho1 = 0.5 * (sol.lam1 + 1.0)
        z, omz = grid.z, grid.omz
        eta = z - omz
        p = jacobi_eval(sol.lam1, sol.lam0, sol.m, eta)
        if np.any(p == 0.0):
            raise NodeDetected("polynomial factor vanishes on a grid node")
        if sol.m > 0:
            dp = 0.5 * (sol.m + sol.lam0 + sol.lam1 + 1.0) * jacobi_eval(
                sol.lam1 + 1.0, sol.lam0 + 1.0, sol.m - 1, eta)
        else:
            dp = np.zeros_like(z)
        rho = tp_eval_pair(self.spec, z, omz) / (4.0 * z * z * omz * omz)
        dln_rho = _dlnrho_dz(self.spec, z, omz)
        dlog_z = rho0 / z - rho1 / omz + 2.0 * dp / p + 0.25 * dln_rho
        dlog = dlog_z / np.sqrt(rho)
        logabs = (0.25 * np.log(rho) + rho0 * np.log(z) + rho1 * np.log(omz)
                  + np.log(np.abs(p)))
        return BoundFF(eps=sol.eps, dlog=dlog, logabs=logabs, label=self.sol.label)

    def reciprocal_on_grid(self, sg: SpectralGrid) -> BoundFF:
        """The inverse function 1/f, a solution of the partner equation."""
        b = self.on_grid(sg)
        return BoundFF(eps=b.eps, dlog=-b.dlog, logabs=-b.logabs, label="1/" + b.label)


def _dlnrho_dz(spec, z, omz):
    t = tp_eval_pair(spec, z, omz)
    dt = spec.d * (z - omz) + 2.0 * spec.tp.c1 * z - 2.0 * spec.c0 * omz
    return dt / t - 2.0 / z + 2.0 / omz


def xspace_values(spec: PotentialSpec, sol: SeedSolution, grid: XGrid) -> np.ndarray:
    """psi(x) = rho^(1/4) Phi(z(x)); explicit values, narrow grids only."""
    rho0 = 0.5 * (sol.lam0 + 1.0)
    rho1 = 0.5 * (sol.lam1 + 1.0)
    z, omz = grid.z, grid.omz
    rho = tp_eval_pair(spec, z, omz) / (4.0 * z * z * omz * omz)
    p = jacobi_eval(sol.lam1, sol.lam0, sol.m, z - omz)
    return rho ** 0.25 * z ** rho0 * omz ** rho1 * p


# ---------------------------------------------------------------------------
# partner construction


def darboux_partner(x: np.ndarray, v: np.ndarray, ff) -> np.ndarray:
    """Partner samples V - 2 (ln|f|)'' for one factorization function.

    ``ff`` is either a BoundFF (log data; the second derivative then
    follows from the differential equation itself and no numerical
    differentiation happens) or an array of wavefunction samples, which
    must be strictly one-signed on the interior.
    """
    v = np.asarray(v, dtype=float)
    if isinstance(ff, BoundFF):
        # (ln f)'' = f''/f - (f'/f)^2 = (V - eps) - dlog^2
        return 2.0 * ff.eps - v + 2.0 * ff.dlog ** 2
    f = np.asarray(ff, dtype=float)
    if f.shape != v.shape:
        raise ValueError("sample arrays must share the grid")
    inner = f[1:-1]
    if np.any(inner == 0.0) or np.any(inner[:-1] * inner[1:] < 0.0):
        raise NodeDetected("factorization function changes sign on the interior grid")
    h = x[1] - x[0]
    logf = np.log(np.abs(f))
    d2 = np.empty_like(logf)
    d2[1:-1] = (logf[2:] - 2.0 * logf[1:-1] + logf[:-2]) / (h * h)
    d2[0], d2[-1] = d2[1], d2[-2]
    return v - 2.0 * d2


def crum_partner(x: np.ndarray, v: np.ndarray, ffs: list[BoundFF]) -> np.ndarray:
    """Partner samples for a chain, V - 2 (ln |W(f_1..f_k)|)''.

    Wronskian derivative rows are rebuilt from the differential equation
    (every second derivative is (V - eps) f), so the whole object reduces
    to the seeds' log-derivatives.  Chains of one and two steps are fully
    analytic; longer chains differentiate the scaled determinant
    numerically along the grid.
    """
    if len(ffs) == 0:
        raise ValueError("empty factorization chain")
    if len({round(f.eps, 12) for f in ffs}) != len(ffs):
        raise ValueError("chain energies must be distinct")
    v = np.asarray(v, dtype=float)
    if len(ffs) == 1:
        return darboux_partner(x, v, ffs[0])
    if len(ffs) == 2:
        return _crum_two(v, ffs[0], ffs[1])
    return _crum_general(x, v, ffs)


def _crum_two(v, f1: BoundFF, f2: BoundFF) -> np.ndarray:
    delta = f2.dlog - f1.dlog
    if np.any(delta == 0.0) or np.any(delta[:-1] * delta[1:] < 0.0):
        raise WronskianNode("two-step Wronskian changes sign on the grid")
    lpp1 = (v - f1.eps) - f1.dlog ** 2
    lpp2 = (v - f2.eps) - f2.dlog ** 2
    d_delta = lpp2 - lpp1
    dd_delta = -d_delta * (f1.dlog + f2.dlog) - delta * (lpp1 + lpp2)
    return v - 2.0 * (lpp1 + lpp2 + (dd_delta * delta - d_delta ** 2) / delta ** 2)


def _crum_general(x, v, ffs: list[BoundFF]) -> np.ndarray:
    k = len(ffs)
    n = len(v)
    rows = np.empty((k, k, n))
    for i, f in enumerate(ffs):
        rows[0, i] = 1.0
        rows[1, i] = f.dlog
        rows[2, i] = v - f.eps
        for j in range(3, k):
            # f^(j)/f = d/dx[f^(j-1)/f] + (f^(j-1)/f) * (f'/f)
            rows[j, i] = np.gradient(rows[j - 1, i], x) + rows[j - 1, i] * f.dlog
    det = np.empty(n)
    for t in range(n):
        det[t] = np.linalg.det(rows[:, :, t].T)
    if np.any(det == 0.0) or np.any(det[:-1] * det[1:] < 0.0):
        raise WronskianNode("chain Wronskian changes sign on the grid")
    logw = np.sum([f.logabs for f in ffs], axis=0) + np.log(np.abs(det))
    h = x[1] - x[0]
    d2 = np.empty_like(logw)
    d2[1:-1] = (logw[2:] - 2.0 * logw[1:-1] + logw[:-2]) / (h * h)
    d2[0], d2[-1] = d2[1], d2[-2]
    return v - 2.0 * d2


# ---------------------------------------------------------------------------
# orchestration and reporting


@dataclass(frozen=True)
class ExpectedChange:
    kind: str                  # 'isospectral' | 'insert' | 'delete_ground'
    energy: float | None = None


@dataclass(frozen=True)
class PartnerResult:
    base_profile: PotentialProfile
    partner_profile: PotentialProfile
    ff_chain: list[SeedSolution]
    base_spectrum: np.ndarray
    partner_spectrum: np.ndarray
    expected_change: ExpectedChange


@dataclass(frozen=True)
class IsospectralReport:
    passed: bool
    kind: str
    max_rel_dev: float
    matched: int
    unmatched_base: list[float] = field(default_factory=list)
    unmatched_partner: list[float] = field(default_factory=list)
    inserted_level: float | None = None

    def as_dict(self) -> dict:
        return {
            "passed": bool(self.passed),
            "kind": self.kind,
            "max_rel_dev": float(self.max_rel_dev),
            "matched": self.matched,
            "unmatched_base": [float(e) for e in self.unmatched_base],
            "unmatched_partner": [float(e) for e in self.unmatched_partner],
            "inserted_level": None if self.inserted_level is None else float(self.inserted_level),
        }


def expected_for_chain(base: np.ndarray, chain: list[SeedSolution]) -> ExpectedChange:
    """Net spectral change of a chain of admissible factorization steps."""
    kinds = []
    for sol in chain:
        if sol.sol_type == "c" and sol.m == 0:
            kinds.append("delete_ground")
        elif sol.sol_type in ("a", "b"):
            kinds.append("isospectral")
        elif sol.sol_type == "d":
            kinds.append("insert")
        else:
            raise ValueError(f"no admissible factorization role for type {sol.sol_type!r}")
    if kinds.count("insert") > 1 or kinds.count("delete_ground") > 1:
        raise ValueError("at most one insertion and one deletion per reported chain")
    if "insert" in kinds:
        eps = next(s.eps for s in chain if s.sol_type == "d")
        return ExpectedChange(kind="insert", energy=eps)
    if "delete_ground" in kinds:
        return ExpectedChange(kind="delete_ground")
    return ExpectedChange(kind="isospectral")


def build_partner(spec: PotentialSpec, chain: list[tuple[str, int]], *,
                  h: float = 0.01, kappa_min: float = 1.0) -> PartnerResult:
    """Assemble base and partner spectra for a chain of (type, m) requests."""
    sols = []
    for letter, m in chain:
        cands = [s for s in enumerate_solutions(spec, m) if s.sol_type == letter]
        cands.sort(key=lambda s: len(s.sequence_tag))
        if not cands:
            raise ValueError(f"no solution of type {letter!r} at order {m}")
        sols.append(cands[0])
    sg = spectral_grid(spec, h=h, kappa_min=kappa_min)
    bound = []
    for sol in sols:
        ff = SeedFF(spec=spec, sol=sol)
        ff.check_nodeless()
        bound.append(ff.on_grid(sg))
    v_hat = crum_partner(sg.x, sg.v, bound)
    base_spectrum = schrodinger_spectrum(sg.x, sg.v)
    partner_spectrum = schrodinger_spectrum(sg.x, v_hat)
    partner_profile = PotentialProfile(
        x_samples=sg.x, v_samples=v_hat,
        v_plus_inf=float(v_hat[-1]), v_minus_inf=float(v_hat[0]),
    )
    return PartnerResult(
        base_profile=sg.profile(),
        partner_profile=partner_profile,
        ff_chain=sols,
        base_spectrum=base_spectrum,
        partner_spectrum=partner_spectrum,
        expected_change=expected_for_chain(base_spectrum, sols),
    )


def isospectral_report(pr: PartnerResult, *, tol: float = 1e-3,
                       insert_tol: float = 1e-2) -> IsospectralReport:
    """Compare spectra according to the expected change of the chain."""
    base = list(map(float, pr.base_spectrum))
    partner = list(map(float, pr.partner_spectrum))
    kind = pr.expected_change.kind
    inserted = None
    if kind == "delete_ground":
        expected = base[1:]
    elif kind == "insert":
        energy = pr.expected_change.energy
        expected = sorted(base + [energy])
        near = [e for e in partner if abs(e - energy) <= insert_tol * max(1.0, abs(energy))]
        inserted = near[0] if near else None
    else:
        expected = base
    n = min(len(expected), len(partner))
    devs = [abs(a - b) / max(1.0, abs(a)) for a, b in zip(expected[:n], partner[:n])]
    max_dev = max(devs) if devs else 0.0
    passed = (len(expected) == len(partner)) and max_dev <= tol
    if kind == "insert":
        passed = passed and inserted is not None
    return IsospectralReport(
        passed=passed, kind=kind, max_rel_dev=max_dev, matched=n,
        unmatched_base=expected[n:], unmatched_partner=partner[n:],
        inserted_level=inserted,
    )
