"""Analytic special cases: leveled limit, linear TP, Rosen-Morse, cutoffs.

Wherever the quartic of the double-step enumeration factorizes in closed
form these routines deliver the exponent differences directly.  They
double as oracles against the generic route:

* lambda0 = 0 ("leveled" potentials): product of two quadratics whose
  branches carry the c/d and a/b families;
* a2 = 0 (linear tangent polynomial): product of two quadratics for any
  ray identifiers;
* c0 = 1, a2 = 0 (Rosen-Morse): the quadratics collapse to linear ones
  and everything is elementary;
* double-root curves: one quartic factors over (lam + 2m + 1)^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import regions
from .charexp import SeedSolution, lam0_quartic, lam1_quartic
from .errors import (
    DomainExceeded,
    NoMerge,
    NotOnCurve,
    PoleAtAEqualsM,
    RMCase,
    SymCaseExcluded,
)
from .params import PotentialSpec, RayIdentifiers

_CLOSED_FORM = "closed-form"


@dataclass(frozen=True)
class QuadFactor:
    """One quadratic factor g2 x^2 + g1 x + g0 of a factorized quartic."""

    g2: float
    g1: float
    g0: float
    branch: str    # 'plus' | 'minus'
    variable: str  # 'lam1' | 'lam0'

    @property
    def discriminant(self) -> float:
        return self.g1 * self.g1 - 4.0 * self.g2 * self.g0

    def roots(self) -> list[float]:
        if self.g2 == 0.0:
            return [] if self.g1 == 0.0 else [-self.g0 / self.g1]
        disc = self.discriminant
        scale = self.g1 * self.g1 + abs(4.0 * self.g2 * self.g0)
        if disc < 0.0:
            if disc >= -1e-12 * scale:  # merge point within rounding
                return [-self.g1 / (2.0 * self.g2)] * 2
            return []
        s = math.sqrt(disc)
        return sorted([(-self.g1 - s) / (2.0 * self.g2), (-self.g1 + s) / (2.0 * self.g2)])

    def coeffs(self) -> np.ndarray:
        return np.array([self.g2, self.g1, self.g0])


@dataclass(frozen=True)
class ALFactors:
    lam1_plus: QuadFactor
    lam1_minus: QuadFactor
    lam0_plus: QuadFactor
    lam0_minus: QuadFactor


def al_factors(spec: PotentialSpec, m: int) -> ALFactors:
    """Quadratic factors of both quartics in the leveled limit lambda0 = 0.

    The plus branch holds the bound state (positive root) and the
    doubly-irregular partner; the minus branch holds the one-end-regular
    pair.  lam0 = +-sqrt(c0) * lam1 links the companion factors.
    """
    if spec.lambda0 != 0.0:
        raise ValueError("al_factors requires lambda0 = 0")
    if spec.c0 == 1.0 and spec.a2 < 0.0:
        raise SymCaseExcluded("symmetric tangent polynomial is out of scope")
    M = 2.0 * m + 1.0
    g0 = M * M - spec.mu0 ** 2

    def factor(sign: float, var: str) -> QuadFactor:
        c0 = spec.c0 if var == "lam1" else 1.0 / spec.c0
        d = spec.d if var == "lam1" else spec.d / spec.c0
        sc = math.sqrt(c0)
        return QuadFactor(
            g2=2.0 * sign * sc - d,
            g1=2.0 * (sign * sc + 1.0) * M,
            g0=g0,
            branch="plus" if sign > 0 else "minus",
            variable=var,
        )

    return ALFactors(
        lam1_plus=factor(+1.0, "lam1"),
        lam1_minus=factor(-1.0, "lam1"),
        lam0_plus=factor(+1.0, "lam0"),
        lam0_minus=factor(-1.0, "lam0"),
    )


def al_solutions(spec: PotentialSpec, m: int) -> list[SeedSolution]:
    """Seed solutions in the leveled limit, with sequence tags."""
    fac = al_factors(spec, m)
    sc = math.sqrt(spec.c0)
    out: list[SeedSolution] = []
    for factor, sign in ((fac.lam1_plus, +1.0), (fac.lam1_minus, -1.0)):
        roots = factor.roots()
        if not roots:
            continue
        tags = _al_branch_tags(roots, sign)
        for lam1, (letter, primes) in zip(roots, tags):
            lam0 = sign * sc * lam1
            out.append(SeedSolution(
                m=m, lam0=lam0, lam1=lam1, mu_signed=lam0 + lam1 + 2 * m + 1,
                eps=-lam1 * lam1, sol_type=letter, sequence_tag="'" * primes,
                route=_CLOSED_FORM,
            ))
    out.sort(key=lambda s: s.lam1)
    return out


def _al_branch_tags(roots: list[float], sign: float) -> list[tuple[str, int]]:
    if len(roots) == 1:
        r = roots[0]
        if sign > 0:
            return [("c" if r > 0 else "d", 0)]
        return [("b" if r > 0 else "a", 0)]
    r1, r2 = roots
    if r1 < 0.0 < r2:
        return [("d", 0), ("c", 0)] if sign > 0 else [("a", 0), ("b", 0)]
    if r2 <= 0.0:
        letter = "d" if sign > 0 else "a"
        return [(letter, 0), (letter, 1)]
    letter = "c" if sign > 0 else "b"
    return [(letter, 1), (letter, 0)]


@dataclass(frozen=True)
class MergeInfo:
    mu_merge: float
    merged_lam1: float


def al_merge(spec: PotentialSpec, m: int) -> MergeInfo:
    """Where the same-type regular pair of the minus branch merges.

    Only a negative leading TP coefficient terminates the regular
    sequences; for a2 >= 0 they are infinite and NoMerge is raised.
    Below mu_merge the minus-branch discriminant is negative and the
    pair is absent.
    """
    if spec.a2 >= 0.0:
        raise NoMerge("regular same-type sequences are infinite for a2 >= 0")
    if spec.delta_t <= 0.0:
        raise ValueError("al_merge needs a TP with positive discriminant")
    sc = math.sqrt(spec.c0)
    g2m = (1.0 - sc) ** 2 - spec.a2
    M = 2.0 * m + 1.0
    return MergeInfo(
        mu_merge=M * math.sqrt(-spec.a2 / g2m),
        merged_lam1=(sc - 1.0) * M / g2m,
    )


# ---------------------------------------------------------------------------
# linear tangent polynomial


def ltp_solutions(spec: PotentialSpec, m: int) -> list[SeedSolution]:
    """Closed-form seed solutions for the linear tangent polynomial.

    Both quartics factor into plus/minus quadratics with discriminants
    4*[c0*(2m+1 +- mu0)^2 + (1-c0)*lambda0^2]; for c0 > 1 the minus pair
    is absent between the two slanted merge lines and the plus pair
    below the cutoff line.  Sequence markers follow the per-Area
    classification tables for both TP-root positions.
    """
    if not spec.is_ltp:
        raise ValueError("ltp_solutions requires a2 = 0")
    if spec.c0 == 1.0:
        raise RMCase("c0 = 1 is the Rosen-Morse point; use rm_solutions")
    c0, l0, mu0 = spec.c0, spec.lambda0, spec.mu0
    M = 2.0 * m + 1.0
    out: list[SeedSolution] = []
    for sign in (+1.0, -1.0):
        X = sign * mu0 + M
        disc = 4.0 * (c0 * X * X + (1.0 - c0) * l0 * l0)
        if disc < 0.0:
            continue
        half = 0.5 * math.sqrt(disc)
        for j in (1, 2):
            s_j = -1.0 if j == 1 else 1.0
            lam1 = -(X + s_j * half) / (1.0 - c0)
            lam0 = c0 * (X + s_j * half / c0) / (1.0 - c0)
            letter = _sign_letter(lam0, lam1)
            primes = _ltp_primes(sign, j, letter, c0)
            out.append(SeedSolution(
                m=m, lam0=lam0, lam1=lam1, mu_signed=-sign * mu0,
                eps=-lam1 * lam1, sol_type=letter, sequence_tag="'" * primes,
                route=_CLOSED_FORM,
            ))
    out.sort(key=lambda s: s.lam1)
    return out


def _sign_letter(lam0: float, lam1: float) -> str:
    if lam0 == 0.0 or lam1 == 0.0:
        return "boundary"
    if lam0 > 0.0:
        return "a" if lam1 < 0.0 else "c"
    return "b" if lam1 > 0.0 else "d"


def _ltp_primes(sign: float, j: int, letter: str, c0: float) -> int:
    if letter == "boundary":
        return 0
    if sign > 0:
        if j == 2:
            return 0              # primary a (c0 < 1) or b (c0 > 1)
        return 3 if letter == "b" else 0
    if c0 < 1.0:
        if j == 2:
            return 0 if letter == "c" else 1
        return 1 if letter == "d" else 0
    if j == 2:
        return 0 if letter in ("c", "a") else 1
    return {"c": 0, "d": 1, "a": 1, "b": 2}.get(letter, 0)


@dataclass(frozen=True)
class LtpLines:
    """Slanted merge/cutoff lines and thresholds of the linear-TP plane."""

    line_plus: object | None    # mu0(lambda0) where the minus pair merges, upper
    line_minus: object | None   # lower merge line
    line_cutoff: object | None  # below it the plus pair is gone as well
    threshold_a: object
    threshold_b: object


def ltp_special_lines(spec: PotentialSpec, m: int) -> LtpLines:
    if not spec.is_ltp:
        raise ValueError("ltp_special_lines requires a2 = 0")
    c0 = spec.c0
    M = 2.0 * m + 1.0

    def threshold_a(lambda0: float) -> float:
        return math.sqrt(lambda0 * lambda0 + c0 * m * m) + m + 1.0

    def threshold_b(lambda0: float) -> float:
        if lambda0 > m:
            raise DomainExceeded(f"threshold_b needs lambda0 <= m = {m}")
        return m + 1.0 + math.sqrt((m * m - lambda0 * lambda0) / c0)

    if c0 <= 1.0:
        return LtpLines(None, None, None, threshold_a, threshold_b)
    slope = math.sqrt(1.0 - 1.0 / c0)
    return LtpLines(
        line_plus=lambda lambda0: slope * lambda0 + M,
        line_minus=lambda lambda0: -slope * lambda0 + M,
        line_cutoff=lambda lambda0: slope * lambda0 - M,
        threshold_a=threshold_a,
        threshold_b=threshold_b,
    )


# ---------------------------------------------------------------------------
# Rosen-Morse point


def rm_parameters(lambda0: float, mu0: float) -> tuple[float, float]:
    """Well-depth/asymmetry parameters A = (mu0-1)/2, B = lambda0^2/4."""
    return 0.5 * (mu0 - 1.0), 0.25 * lambda0 * lambda0


def rm_solutions(lambda0: float, mu0: float, m: int) -> list[SeedSolution]:
    """Elementary seed solutions of the Rosen-Morse potential (c0=1, a2=0).

    In terms of A and B the surviving branch pair is

        f-:  lam1 = (A-m)   - B/(A-m),    lam0 = (A-m)   + B/(A-m)
        f+:  lam1 = -(A+m+1) + B/(A+m+1), lam0 = -(A+m+1) - B/(A+m+1)

    The f- member runs through the types c, a', b'', d' as m passes
    A - sqrt(B), A, A + sqrt(B); f+ stays doubly irregular except beyond
    the steep-barrier line lambda0 = mu0 + 2m + 1 where it turns into a
    third regular-at-1 solution.
    """
    if mu0 <= 1.0:
        raise DomainExceeded(f"need mu0 > 1 for a positive depth parameter, got {mu0}")
    A, B = rm_parameters(lambda0, mu0)
    if abs(A - m) < 1e-10:
        raise PoleAtAEqualsM(f"exponent difference diverges on mu0 = 2m+1 (A = m = {m})")
    M = 2.0 * m + 1.0
    out = []

    u = A - m
    lam1 = u - B / u
    lam0 = u + B / u
    letter = _sign_letter(lam0, lam1)
    primes = {"c": 0, "a": 1, "b": 2, "d": 1}.get(letter, 0)
    out.append(SeedSolution(m=m, lam0=lam0, lam1=lam1, mu_signed=mu0,
                            eps=-lam1 * lam1, sol_type=letter,
                            sequence_tag="'" * primes, route=_CLOSED_FORM))

    w = A + m + 1.0
    lam1 = -(w - B / w)
    lam0 = -(w + B / w)
    letter = _sign_letter(lam0, lam1)
    primes = 3 if letter == "b" else 0
    out.append(SeedSolution(m=m, lam0=lam0, lam1=lam1, mu_signed=-mu0,
                            eps=-lam1 * lam1, sol_type=letter,
                            sequence_tag="'" * primes, route=_CLOSED_FORM))
    out.sort(key=lambda s: s.lam1)
    return out


def rm_nodeless_range(A: float, B: float, m: int, which: str) -> bool:
    """Closed-form nodelessness windows for the secondary regular members.

    which='a1' covers the below-barrier regular solution (exists for
    A - sqrt(B) < m < A): nodeless iff A - m/2 < sqrt(m^2/4 + B).
    which='b2' covers its continuation (A < m < A + sqrt(B)): nodeless
    iff B > m^2/4 or sqrt(m^2/4 - B) < A - m/2.
    """
    half = 0.5 * m
    if which == "a1":
        return 0.0 < A - half < math.sqrt(half * half + B)
    if which == "b2":
        if B > half * half:
            return True
        return math.sqrt(half * half - B) < A - half
    raise ValueError("which must be 'a1' or 'b2'")


# ---------------------------------------------------------------------------
# large-order asymptotics


def asymptotic_tau(spec: PotentialSpec) -> dict[str, float | None]:
    """Limits of lam1/(2m+1) for the four infinite families as m grows.

    The scaled exponent differences satisfy
    g2 * tau^2 + 2*(1 +- sqrt(c0)) * tau + 1 = 0 with g2 the leveled
    factor leading coefficient (1 +- sqrt(c0))^2 - a2, so the limits are
    (-(1 +- sqrt(c0)) -+ sqrt(a2)) / g2.  For a2 < 0 every family
    terminates by pair merging and all entries are None.
    """
    if spec.delta_t <= 0.0:
        raise ValueError("asymptotic_tau needs a TP with positive discriminant")
    sc = math.sqrt(spec.c0)
    out: dict[str, float | None] = {}
    regular = ("a", "a'") if spec.c0 < 1.0 else ("b", "b'")
    if spec.a2 < 0.0:
        return {regular[0]: None, regular[1]: None, "d": None, "d'": None}
    sa = math.sqrt(spec.a2)
    g2p = (1.0 + sc) ** 2 - spec.a2
    g2m = (1.0 - sc) ** 2 - spec.a2
    out["d"] = (-(1.0 + sc) - sa) / g2p
    out["d'"] = (-(1.0 + sc) + sa) / g2p
    r_lo = (-(1.0 - sc) - sa) / g2m
    r_hi = (-(1.0 - sc) + sa) / g2m
    if spec.c0 < 1.0:
        out[regular[0]], out[regular[1]] = r_lo, r_hi
    else:
        out[regular[0]], out[regular[1]] = r_hi, r_lo
    return out


def secondary_start_order(spec: PotentialSpec) -> int:
    """First order of the infinite secondary regular sequence."""
    return int(math.ceil(0.5 * (spec.mu0 - spec.lambda0 - 1.0))) + 1


# ---------------------------------------------------------------------------
# crossing-point limit of vanishing barrier at mu0 = 2m + 1


@dataclass(frozen=True)
class CrossingLimit:
    """Limit quadratics for the two roots vanishing at the line crossing."""

    a2_1: tuple[float, float, float]
    a2_0: tuple[float, float, float]
    discriminant: float
    lam1_scaled: list[float]
    lam0_scaled: list[float]
    v_a: float | None


def crossing_limit(spec: PotentialSpec, v: float) -> CrossingLimit:
    """Scaled limit of the quartic near lambda0 = 0, mu0 = 2m + 1.

    With y = lam1/lambda0 and v = (mu0 - 2m - 1)/lambda0 held fixed,
    g(lambda0*y)/lambda0^2 tends to 4*(2m+1)^2 * [(1-c0) y^2 - 2 v y
    + v^2 - 1]; the vanishing lam0 roots obey the companion quadratic
    with the same discriminant 4*(c0 v^2 + 1 - c0).
    """
    c0 = spec.c0
    if c0 == 1.0:
        raise SymCaseExcluded("crossing-point quadratics degenerate at c0 = 1")
    a21 = (1.0 - c0, -2.0 * v, v * v - 1.0)
    a20 = (c0 - 1.0, -2.0 * c0 * v, c0 * v * v + 1.0)
    disc = 4.0 * (c0 * v * v + 1.0 - c0)
    if disc >= 0.0:
        s = 0.5 * math.sqrt(disc)
        lam1_scaled = sorted([(v - s) / (1.0 - c0), (v + s) / (1.0 - c0)])
        lam0_scaled = sorted([(c0 * v - s) / (c0 - 1.0), (c0 * v + s) / (c0 - 1.0)])
    else:
        lam1_scaled, lam0_scaled = [], []
    v_a = math.sqrt(1.0 - 1.0 / c0) if c0 > 1.0 else None
    return CrossingLimit(a2_1=a21, a2_0=a20, discriminant=disc,
                         lam1_scaled=lam1_scaled, lam0_scaled=lam0_scaled, v_a=v_a)


# ---------------------------------------------------------------------------
# double-root curve decompositions


@dataclass(frozen=True)
class DrtDecomposition:
    """Factorized quartics and the full quartet on a double-root curve."""

    which: str
    lambda0: float
    mu0: float
    cofactor_lam1: np.ndarray
    cofactor_lam0: np.ndarray
    solutions: list[SeedSolution]
    disc_lam1: float
    disc_lam0: float


def drt_decomposition(spec: PotentialSpec, m: int, lambda0: float, which: str,
                      mu0: float | None = None) -> DrtDecomposition:
    """Closed-form quartet on the ad or bd double-root curve.

    The doubled pair sits at the cut value -(2m+1) of one exponent
    difference; the other two solutions come from the quadratic cofactor
    directly, never from numerical deflation of the quartic.
    """
    ad_mu, bd_mu = regions.drt_curves(spec, m)
    mu_curve = ad_mu(lambda0) if which == "ad" else bd_mu(lambda0)
    if mu0 is not None and abs(mu0 - mu_curve) > 1e-8 * (1.0 + mu_curve):
        raise NotOnCurve(f"mu0={mu0} is off the {which} curve value {mu_curve}")
    on = PotentialSpec(tp=spec.tp, rays=RayIdentifiers(lambda0=lambda0, mu0=mu_curve))
    d, c0 = spec.d, spec.c0
    M = 2.0 * m + 1.0
    if which == "ad":
        cof1 = np.array([d * d - 4.0 * c0,
                         -2.0 * d * (d + 2.0) * M,
                         (d + 2.0) ** 2 * M * M - 4.0 * lambda0 * lambda0])
        cof0 = np.array([d * d / c0 - 4.0,
                         -4.0 * M * (d + 2.0),
                         -d * d * lambda0 * lambda0 / c0 - (d + 2.0) ** 2 * M * M])
        lam0_pair = math.sqrt(lambda0 * lambda0 + c0 * M * M)
        pair = [
            _drt_solution(on, m, +lam0_pair, -M),
            _drt_solution(on, m, -lam0_pair, -M),
        ]
        others = [_drt_solution(on, m, (d * r - (d + 2.0) * M) / 2.0, r)
                  for r in _quad_roots_arr(cof1)]
    elif which == "bd":
        cof0 = np.array([(d * d - 4.0 * c0) / c0,
                         -2.0 * d * (d + 2.0 * c0) * M / c0,
                         (d + 2.0 * c0) ** 2 * M * M / c0 + 4.0 * lambda0 * lambda0])
        bdx = (1.0 + 2.0 * c0 / d) * M
        cof1 = np.array([d * d / c0 - 4.0,
                         -4.0 * M * (d / c0 + 2.0),
                         d * d * (lambda0 * lambda0 - bdx * bdx) / (c0 * c0)])
        lam1_pair = math.sqrt((M * M - lambda0 * lambda0) / c0)
        pair = [
            _drt_solution(on, m, -M, +lam1_pair),
            _drt_solution(on, m, -M, -lam1_pair),
        ]
        others = [_drt_solution(on, m, (2.0 * c0 * r + (d + 2.0 * c0) * M) / d, r)
                  for r in _quad_roots_arr(cof1)]
    else:
        raise ValueError("which must be 'ad' or 'bd'")
    sols = sorted(pair + others, key=lambda s: s.lam1)
    return DrtDecomposition(
        which=which, lambda0=lambda0, mu0=mu_curve,
        cofactor_lam1=cof1, cofactor_lam0=cof0, solutions=sols,
        disc_lam1=float(cof1[1] ** 2 - 4.0 * cof1[0] * cof1[2]),
        disc_lam0=float(cof0[1] ** 2 - 4.0 * cof0[0] * cof0[2]),
    )


def _drt_solution(spec: PotentialSpec, m: int, lam0: float, lam1: float) -> SeedSolution:
    return SeedSolution(
        m=m, lam0=lam0, lam1=lam1, mu_signed=lam0 + lam1 + 2 * m + 1,
        eps=-lam1 * lam1, sol_type=_sign_letter(lam0, lam1), route=_CLOSED_FORM,
        drt=None,
    )


def _quad_roots_arr(c: np.ndarray) -> list[float]:
    disc = c[1] * c[1] - 4.0 * c[0] * c[2]
    if disc < 0.0 or c[0] == 0.0:
        return []
    s = math.sqrt(disc)
    return sorted([(-c[1] - s) / (2.0 * c[0]), (-c[1] + s) / (2.0 * c[0])])


# ---------------------------------------------------------------------------
# factorization identity helpers (used by the verification suites)


def al_product_coeffs(spec: PotentialSpec, m: int) -> np.ndarray:
    """Coefficient form of the leveled-limit factorization of the lam1 quartic."""
    fac = al_factors(spec, m)
    return np.polymul(fac.lam1_plus.coeffs(), fac.lam1_minus.coeffs())


def ltp_product_coeffs(spec: PotentialSpec, m: int) -> np.ndarray:
    """Coefficient form of the linear-TP factorization of the lam1 quartic."""
    if not spec.is_ltp:
        raise ValueError("requires a2 = 0")
    c0, l0, mu0 = spec.c0, spec.lambda0, spec.mu0
    M = 2.0 * m + 1.0
    plus = np.array([c0 - 1.0, -2.0 * (M + mu0), l0 * l0 - (M + mu0) ** 2])
    minus = np.array([c0 - 1.0, -2.0 * (M - mu0), l0 * l0 - (M - mu0) ** 2])
    return np.polymul(plus, minus)


def drt_product_coeffs(spec: PotentialSpec, m: int, lambda0: float,
                       which: str) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Both sides of the two cut-curve factorization identities.

    Returns (lam1 quartic, its factored form, lam0 quartic, its factored
    form) evaluated on the requested curve.
    """
    dec = drt_decomposition(spec, m, lambda0, which)
    on = PotentialSpec(tp=spec.tp, rays=RayIdentifiers(lambda0=lambda0, mu0=dec.mu0))
    M = 2.0 * m + 1.0
    g1 = lam1_quartic(on, m)
    g0 = lam0_quartic(on, m)
    if which == "ad":
        f1 = np.polymul(np.array([1.0, 2.0 * M, M * M]), dec.cofactor_lam1)
        f0 = np.polymul(np.array([1.0, 0.0, -lambda0 ** 2 - spec.c0 * M * M]), dec.cofactor_lam0)
    else:
        f0 = np.polymul(np.array([1.0, 2.0 * M, M * M]), dec.cofactor_lam0)
        f1 = np.polymul(np.array([spec.c0, 0.0, -(M * M - lambda0 ** 2)]), dec.cofactor_lam1)
    return g1, f1, g0, f0
