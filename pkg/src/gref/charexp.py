"""Double-step enumeration of Jacobi-seed solutions at real energies.

A seed solution of polynomial order m is a pair of signed exponent
differences (lam0 at z = 0, lam1 at z = 1) obeying

    lam0 + lam1 + 2m + 1 = mu_signed,          mu_signed^2 = mu0^2 + a2*lam1^2,
    lam0^2 = lambda0^2 + c0*lam1^2,            eps = -lam1^2.

Eliminating one unknown turns the pair of radical constraints into a
quartic: one quartic in lam1 (leading coefficient delta_t) and a partner
quartic in lam0.  Each real root of either quartic determines the other
exponent difference through a fraction formula whose denominator
vanishes only on the double-root curves, where the partner quartic route
takes over.  The sign pattern of (lam0, lam1) classifies the solution:

    a: (+,-)   regular at z=0 only
    b: (-,+)   regular at z=1 only
    c: (+,+)   regular at both ends (bound state)
    d: (-,-)   irregular at both ends
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import Boundary, DegenerateAllZero, DenominatorVanishes
from .params import PotentialSpec

_DENOM_TOL = 1e-8
# enumeration hands roots this close to the cut value -(2m+1) to the other
# route: quartic roots near a double carry ~sqrt(eps) error, which the
# fraction denominator would amplify catastrophically
_ROUTE_SKIP = 1e-6
_MATCH_TOL = 1e-7
_TYPE_TOL = 1e-9
_HOMOTOPY_STEPS = 64


@dataclass(frozen=True)
class SeedSolution:
    """One seed-solution record of order m."""

    m: int
    lam0: float
    lam1: float
    mu_signed: float
    eps: float
    sol_type: str                 # 'a' | 'b' | 'c' | 'd' | 'boundary'
    sequence_tag: str = ""        # '' primary, "'" marks per extra sequence
    nodeless: str = "unknown"     # 'yes' | 'no' | 'numeric-only' | 'unknown'
    interior_zeros: int | None = None
    route: str = ""               # 'lam1-quartic' | 'lam0-quartic' | 'both' | 'closed-form'
    drt: str | None = None        # 'ad' | 'bd' when recovered on a double-root locus

    @property
    def is_primary(self) -> bool:
        return self.sequence_tag == ""

    @property
    def label(self) -> str:
        return self.sol_type + self.sequence_tag


@dataclass(frozen=True)
class MergeEvent:
    """Two same-type roots collapsed into a complex pair along the ray."""

    m: int
    lambda0_estimate: float
    lam1: float


@dataclass(frozen=True)
class EnumerationResult:
    solutions: list[SeedSolution]
    merge_events: list[MergeEvent] = field(default_factory=list)


# ---------------------------------------------------------------------------
# quartics and fraction formulas


def lam1_quartic(spec: PotentialSpec, m: int, lambda0: float | None = None) -> np.ndarray:
    """Coefficients (descending) of the quartic solved by lam1.

    Leading coefficient equals delta_t; the free term factorizes over
    the four lines mu0 = +-lambda0 +- (2m+1).
    """
    M = 2.0 * m + 1.0
    l0 = spec.lambda0 if lambda0 is None else lambda0
    mu0, d, c0 = spec.mu0, spec.d, spec.c0
    K = mu0 * mu0 - l0 * l0 - M * M
    return np.array([
        d * d - 4.0 * c0,
        -4.0 * M * (d + 2.0 * c0),
        4.0 * M * M * (1.0 - c0) + 2.0 * d * K - 4.0 * l0 * l0,
        -4.0 * M * (mu0 * mu0 + l0 * l0 - M * M),
        K * K - 4.0 * M * M * l0 * l0,
    ])


def lam0_quartic(spec: PotentialSpec, m: int, lambda0: float | None = None) -> np.ndarray:
    """Coefficients (descending) of the partner quartic solved by lam0."""
    M = 2.0 * m + 1.0
    l0 = spec.lambda0 if lambda0 is None else lambda0
    mu0, d, c0, a2 = spec.mu0, spec.d, spec.c0, spec.a2
    p2 = -d / c0
    p0 = M * M - mu0 * mu0 - (1.0 - a2) * l0 * l0 / c0
    return np.array([
        c0 * p2 * p2 - 4.0,
        4.0 * M * (c0 * p2 - 2.0),
        c0 * (4.0 * M * M + 2.0 * p2 * p0) - 4.0 * (M * M - l0 * l0),
        4.0 * M * (c0 * p0 + 2.0 * l0 * l0),
        c0 * p0 * p0 + 4.0 * M * M * l0 * l0,
    ])


def real_roots(coeffs) -> list[float]:
    """All real roots (with multiplicity) of a polynomial, polished.

    Leading coefficients that vanish relative to the coefficient scale
    are trimmed (degree deflation).  Complex pairs are discarded unless
    polishing their real part proves an actual (near-double) real root.
    """
    c = np.asarray(coeffs, dtype=float)
    scale = np.max(np.abs(c)) if c.size else 0.0
    if scale == 0.0:
        raise DegenerateAllZero("all polynomial coefficients vanish")
    keep = np.abs(c) > 1e-13 * scale
    first = int(np.argmax(keep))
    c = c[first:]
    if c.size <= 1:
        return []
    raw = np.roots(c)
    out: list[float] = []
    for r in raw:
        tol_im = 1e-9 * (1.0 + abs(r.real))
        if abs(r.imag) <= tol_im:
            out.append(_polish(c, r.real))
        elif abs(r.imag) <= 1e-3 * (1.0 + abs(r.real)):
            # multiple real roots come back as shallow complex pairs;
            # accept only when a nearby real point truly annihilates p
            cand = _polish(c, r.real)
            local = abs(cand - r.real) <= 4.0 * abs(r.imag) + 1e-12 * (1.0 + abs(r.real))
            if local and _residual(c, cand) <= 1e-12 * _residual_scale(c, cand):
                out.append(cand)
    out.sort()
    return out


def _residual(c, x: float) -> float:
    return abs(float(np.polyval(c, x)))


def _residual_scale(c, x: float) -> float:
    return float(np.max(np.abs(c))) * max(1.0, abs(x)) ** (len(c) - 1)


def _polish(c, x: float) -> float:
    # multiplicity-safe local iteration on p/p'
    dc = np.polyder(c)
    ddc = np.polyder(dc)
    best, best_res = x, _residual(c, x)
    for _ in range(50):
        p = float(np.polyval(c, x))
        dp = float(np.polyval(dc, x))
        ddp = float(np.polyval(ddc, x))
        denom = dp * dp - p * ddp
        if denom == 0.0:
            break
        step = p * dp / denom
        if not math.isfinite(step):
            break
        x -= step
        res = _residual(c, x)
        if res < best_res:
            best, best_res = x, res
        if best_res <= 1e-15 * _residual_scale(c, x) or abs(step) <= 1e-16 * (1.0 + abs(x)):
            break
    return best


def lambda0_from_lambda1(spec: PotentialSpec, m: int, lam1: float) -> float:
    """Partner exponent difference lam0 for a root lam1 of the first quartic.

    Raises DenominatorVanishes at lam1 = -(2m+1), which marks the locus
    where that quartic has a double root and the partner route applies.
    """
    M = 2.0 * m + 1.0
    den = 2.0 * (lam1 + M)
    if abs(lam1 + M) <= _DENOM_TOL:
        raise DenominatorVanishes(f"lam1 = {lam1} sits at -(2m+1) = {-M}")
    mu0, l0, d = spec.mu0, spec.lambda0, spec.d
    return (mu0 * mu0 - l0 * l0 - M * M + d * lam1 * lam1 - 2.0 * M * lam1) / den


def lambda1_from_lambda0(spec: PotentialSpec, m: int, lam0: float) -> float:
    """Partner exponent difference lam1 for a root lam0 of the second quartic."""
    M = 2.0 * m + 1.0
    if abs(lam0 + M) <= _DENOM_TOL:
        raise DenominatorVanishes(f"lam0 = {lam0} sits at -(2m+1) = {-M}")
    mu0, l0, c0, a2 = spec.mu0, spec.lambda0, spec.c0, spec.a2
    num = mu0 * mu0 + (a2 - 1.0) * (lam0 * lam0 - l0 * l0) / c0 - (lam0 + M) ** 2
    return num / (2.0 * (lam0 + M))


def classify_type(lam0: float, lam1: float) -> str:
    """Sign pattern of (lam0, lam1) -> one of a, b, c, d."""
    if abs(lam0) <= _TYPE_TOL or abs(lam1) <= _TYPE_TOL:
        raise Boundary(f"exponent difference at zero separatrix: ({lam0}, {lam1})")
    if lam0 > 0.0:
        return "a" if lam1 < 0.0 else "c"
    return "b" if lam1 > 0.0 else "d"


def energy_quartic_residual(spec: PotentialSpec, m: int, eps_abs: float) -> float:
    """Normalized residual of the energy-variable quartic at |eps|.

    Grouping even and odd powers of the lam1 quartic G(x) = E(x^2) + x*O(x^2)
    shows every root obeys E(|eps|)^2 = |eps| * O(|eps|)^2 with |eps| = lam1^2.
    Returned value is ~0 for each enumerated solution; selecting bound
    levels from this quartic alone is deliberately not attempted.
    """
    g4, g3, g2, g1, g0 = lam1_quartic(spec, m)
    even = g4 * eps_abs * eps_abs + g2 * eps_abs + g0
    odd = g3 * eps_abs + g1
    res = even * even - eps_abs * odd * odd
    scale = max(abs(g4), abs(g3), abs(g2), abs(g1), abs(g0)) ** 2 * max(1.0, eps_abs) ** 4
    return res / scale


# ---------------------------------------------------------------------------
# enumeration


def enumerate_solutions(spec: PotentialSpec, m: int, *, count_zeros: bool = True,
                        tag: bool = True) -> list[SeedSolution]:
    """All seed solutions of order m (at most four)."""
    return enumerate_with_events(spec, m, count_zeros=count_zeros, tag=tag).solutions


def enumerate_with_events(spec: PotentialSpec, m: int, *, count_zeros: bool = True,
                          tag: bool = True) -> EnumerationResult:
    """Run both quartic routes, merge, classify, tag and grade nodelessness.

    Solutions found by only one route (the other being cut by its
    double-root locus) are annotated rather than rejected.
    """
    M = 2.0 * m + 1.0
    # records (lam0, lam1, route, drt, quality); quality is the fraction
    # denominator of the producing route, small near its cut locus
    pairs: list[tuple] = []

    skip = _ROUTE_SKIP * (1.0 + M)
    for lam1 in real_roots(lam1_quartic(spec, m)):
        if abs(lam1 + M) <= skip:
            continue  # ad locus: this root is recovered by the partner route
        pairs.append((lambda0_from_lambda1(spec, m, lam1), lam1,
                      "lam1-quartic", None, abs(lam1 + M)))

    for lam0 in real_roots(lam0_quartic(spec, m)):
        if abs(lam0 + M) <= skip:
            continue  # bd locus: recovered by the other route
        lam1 = lambda1_from_lambda0(spec, m, lam0)
        drt = "ad" if abs(lam1 + M) <= skip else None
        pairs.append((lam0, lam1, "lam0-quartic", drt, abs(lam0 + M)))

    # mirror annotation: a lam1-route pair landing at lam0 = -(2m+1)
    # sits on the bd locus
    pairs = [
        (l0v, l1v, rt,
         drt or ("bd" if rt == "lam1-quartic" and abs(l0v + M) <= skip else None), q)
        for (l0v, l1v, rt, drt, q) in pairs
    ]

    merged = _merge_routes(pairs)

    solutions = []
    for lam0, lam1, route, drt in merged:
        mu_signed = lam0 + lam1 + M
        try:
            letter = classify_type(lam0, lam1)
        except Boundary:
            letter = "boundary"
        solutions.append(SeedSolution(
            m=m, lam0=lam0, lam1=lam1, mu_signed=mu_signed, eps=-lam1 * lam1,
            sol_type=letter, route=route, drt=drt,
        ))
    solutions.sort(key=lambda s: s.lam1)

    events: list[MergeEvent] = []
    if tag:
        solutions, events = _attach_tags(spec, m, solutions)
    if count_zeros:
        solutions = [_grade_nodelessness(spec, s) for s in solutions]
    return EnumerationResult(solutions=solutions, merge_events=events)


def _merge_routes(pairs):
    """Match route results to relative tolerance 1e-7 and deduplicate.

    When both routes witness one solution the values computed through
    the better-conditioned fraction (larger denominator) win.
    """
    out: list[list] = []
    for lam0, lam1, route, drt, quality in pairs:
        hit = None
        for rec in out:
            # near a cut both routes lose some figures; the match band
            # widens accordingly so they still identify
            band = _MATCH_TOL + 1e-9 / max(min(rec[4], quality), 1e-12)
            if (abs(rec[0] - lam0) <= band * (1.0 + abs(lam0))
                    and abs(rec[1] - lam1) <= band * (1.0 + abs(lam1))):
                hit = rec
                break
        if hit is None:
            out.append([lam0, lam1, route, drt, quality])
        else:
            if quality > hit[4]:
                hit[0], hit[1], hit[4] = lam0, lam1, quality
            if hit[2] != route:
                hit[2] = "both"
            hit[3] = hit[3] or drt
    if len(out) > 4:
        # keep dual-route consensus first; lone leftovers are artifacts
        out.sort(key=lambda r: (r[2] != "both", r[1]))
        out = out[:4]
        out.sort(key=lambda r: r[1])
    return [(r[0], r[1], r[2], r[3]) for r in out]


def _grade_nodelessness(spec: PotentialSpec, sol: SeedSolution) -> SeedSolution:
    from . import regions, seedsol  # deferred: regions/seedsol import this module

    verdict = regions.nodeless_predict(sol)
    if verdict == "nodeless":
        # guard the tolerance band around m = |negative index|
        margin = _ios_margin(sol)
        if margin is not None and margin <= _TYPE_TOL:
            verdict = "unknown"
    if verdict == "unknown":
        zeros = seedsol.count_interior_zeros(spec, sol)
        return replace(sol, nodeless="numeric-only", interior_zeros=zeros)
    return replace(sol, nodeless="yes" if verdict == "nodeless" else "no")


def _ios_margin(sol: SeedSolution) -> float | None:
    if sol.sol_type == "a":
        return abs(sol.lam1) - sol.m
    if sol.sol_type == "b":
        return abs(sol.lam0) - sol.m
    return None


# ---------------------------------------------------------------------------
# primary/secondary tagging by continuation from the leveled limit


def _al_tagged_roots(spec: PotentialSpec, m: int) -> list[list]:
    """Tagged lam1 roots at lambda0 = 0 from the two quadratic factors.

    Plus factor: (2*sqrt(c0) - d, 2(sqrt(c0)+1)(2m+1), (2m+1)^2 - mu0^2)
    holds the c/d families; minus factor (signs of sqrt(c0) flipped)
    holds a/b.  Within a same-letter pair the primary member is the one
    whose exponent at its regular end is smaller.
    """
    M = 2.0 * m + 1.0
    sc = math.sqrt(spec.c0)
    g0 = M * M - spec.mu0 ** 2
    tagged: list[list] = []
    for sgn in (+1.0, -1.0):
        g2 = 2.0 * sgn * sc - spec.d
        g1 = 2.0 * (sgn * sc + 1.0) * M
        roots = _quad_roots(g2, g1, g0)
        if not roots:
            continue
        if len(roots) == 1:
            r = roots[0]
            letter = _al_letter(sgn, r)
            tagged.append([r, letter, 0])
            continue
        r1, r2 = sorted(roots)
        if r1 < 0.0 < r2:
            if sgn > 0:
                tagged.append([r1, "d", 0])
                tagged.append([r2, "c", 0])
            else:
                tagged.append([r1, "a", 0])
                tagged.append([r2, "b", 0])
        elif r2 <= 0.0:
            letter = "d" if sgn > 0 else "a"
            tagged.append([r1, letter, 0])
            tagged.append([r2, letter, 1])
        else:
            letter = "c" if sgn > 0 else "b"
            tagged.append([r2, letter, 0])
            tagged.append([r1, letter, 1])
    return tagged


def _al_letter(sgn: float, root: float) -> str:
    if sgn > 0:
        return "c" if root > 0 else "d"
    return "b" if root > 0 else "a"


def _quad_roots(g2: float, g1: float, g0: float) -> list[float]:
    if g2 == 0.0:
        return [] if g1 == 0.0 else [-g0 / g1]
    disc = g1 * g1 - 4.0 * g2 * g0
    if disc < 0.0:
        return []
    s = math.sqrt(disc)
    return [(-g1 - s) / (2.0 * g2), (-g1 + s) / (2.0 * g2)]


def _attach_tags(spec: PotentialSpec, m: int,
                 solutions: list[SeedSolution]) -> tuple[list[SeedSolution], list[MergeEvent]]:
    tracked, events = _homotopy(spec, m)
    used: set[int] = set()
    tagged = []
    for sol in solutions:
        best, best_d = None, math.inf
        for i, (val, letter, primes) in enumerate(tracked):
            if i in used:
                continue
            dist = abs(val - sol.lam1)
            # prefer letter agreement when a double root is shared
            if letter == sol.sol_type:
                dist *= 0.5
            if dist < best_d:
                best, best_d = i, dist
        if best is None or best_d > 0.05 * (1.0 + abs(sol.lam1)):
            tagged.append(replace(sol, sequence_tag="'"))
            continue
        used.add(best)
        _, letter, primes = tracked[best]
        if letter != sol.sol_type and sol.sol_type != "boundary":
            primes += 1
        tagged.append(replace(sol, sequence_tag="'" * primes))
    return _uniquify_tags(tagged), events


def _uniquify_tags(solutions: list[SeedSolution]) -> list[SeedSolution]:
    seen: set[tuple[str, str]] = set()
    out = []
    for sol in sorted(solutions, key=lambda s: len(s.sequence_tag)):
        key = (sol.sol_type, sol.sequence_tag)
        while key in seen and sol.sol_type != "boundary":
            sol = replace(sol, sequence_tag=sol.sequence_tag + "'")
            key = (sol.sol_type, sol.sequence_tag)
        seen.add(key)
        out.append(sol)
    out.sort(key=lambda s: s.lam1)
    return out


def _homotopy(spec: PotentialSpec, m: int) -> tuple[list[list], list[MergeEvent]]:
    """March lambda0 from 0 to its target, carrying root tags along."""
    target = spec.lambda0
    state = _al_tagged_roots(spec, m)
    events: list[MergeEvent] = []
    if target == 0.0:
        return state, events
    M = 2.0 * m + 1.0
    steps = target * np.arange(1, _HOMOTOPY_STEPS + 1) / _HOMOTOPY_STEPS
    all_roots = _tracked_roots(spec, m, steps)
    for l0, roots in zip(steps, all_roots):
        state, lost = _match_step(state, roots, spec, m, l0, M)
        for vals in lost:
            events.append(MergeEvent(m=m, lambda0_estimate=l0,
                                     lam1=sum(v[0] for v in vals) / len(vals)))
    return state, events


def _tracked_roots(spec: PotentialSpec, m: int, lambda0s: np.ndarray) -> list[list[float]]:
    """Unpolished real roots per continuation step, one batched eigensolve.

    Tracking only needs a few correct digits; the final enumeration
    re-solves at the target with the polished path.
    """
    coeffs = np.stack([lam1_quartic(spec, m, lambda0=l0) for l0 in lambda0s])
    lead_ok = np.abs(coeffs[:, 0]) > 1e-13 * np.max(np.abs(coeffs), axis=1)
    out: list[list[float]] = []
    batch: list[np.ndarray] = []
    idx: list[int] = []
    for i, row in enumerate(coeffs):
        out.append([])
        if lead_ok[i]:
            comp = np.zeros((4, 4))
            comp[1:, :3] = np.eye(3)
            comp[0, :] = -row[1:] / row[0]
            batch.append(comp)
            idx.append(i)
    if batch:
        eigs = np.linalg.eigvals(np.stack(batch))
        for i, ev in zip(idx, eigs):
            keep = np.abs(ev.imag) <= 1e-7 * (1.0 + np.abs(ev.real))
            out[i] = sorted(ev.real[keep])
    for i, row in enumerate(coeffs):
        if not lead_ok[i]:
            out[i] = real_roots(row)
    return out


def _match_step(state, roots, spec, m, l0, M):
    # greedy nearest matching between tracked roots and the new root set
    remaining = list(range(len(roots)))
    matched: dict[int, int] = {}
    order = sorted(
        ((abs(state[i][0] - roots[j]), i, j) for i in range(len(state)) for j in remaining),
        key=lambda t: t[0],
    )
    used_i: set[int] = set()
    used_j: set[int] = set()
    for _, i, j in order:
        if i in used_i or j in used_j:
            continue
        used_i.add(i)
        used_j.add(j)
        matched[i] = j
    new_state = []
    for i, rec in enumerate(state):
        if i in matched:
            new_state.append([roots[matched[i]], rec[1], rec[2]])
    lost_groups = []
    lost = [state[i] for i in range(len(state)) if i not in matched]
    if lost:
        lost_groups.append(lost)
    # roots with no ancestor: a same-type pair re-appeared
    fresh = [roots[j] for j in range(len(roots)) if j not in used_j]
    if fresh:
        new_state.extend(_tag_fresh_pair(fresh, new_state, spec, m, l0, M))
    return new_state, lost_groups


def _tag_fresh_pair(fresh, state, spec, m, l0, M):
    out = []
    taken = {(rec[1], rec[2]) for rec in state}
    for r in sorted(fresh):
        try:
            lam0 = (spec.mu0 ** 2 - l0 * l0 - M * M + spec.d * r * r - 2.0 * M * r) / (2.0 * (r + M))
        except ZeroDivisionError:
            lam0 = 0.0
        try:
            letter = classify_type(lam0, r)
        except Boundary:
            letter = "d"
        primes = 1
        while (letter, primes) in taken:
            primes += 1
        taken.add((letter, primes))
        out.append([r, letter, primes])
    return out
