"""Exact checks of Blichfeldt-type, Gillet-Soule-type and Mahler-type inequalities.

Every check returns a :class:`BoundReport` whose ``holds`` flag means
``lhs <= rhs`` under certified comparison.  Values involving the unit-ball
volume are :class:`~latnum.exact.PiScaled`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Union

from .davenport import ParallelepipedSpec, volume_polynomial
from .exact import PiScaled, ball_volume, compare, nth_root_enclosure, pi_enclosure, rank
from .lattice import count, lattice_points, lattice_span_dim
from .polytope import VPolytope, is_centrally_symmetric, polar, volume
from . import bodies

Scalar = Union[Fraction, PiScaled]


class HypothesisError(ValueError):
    """The body does not satisfy the hypotheses of the inequality."""


@dataclass(frozen=True)
class BoundReport:
    name: str
    lhs: Scalar
    rhs: Scalar
    holds: bool
    slack: Scalar | None
    details: dict = field(default_factory=dict, compare=False)

    @property
    def equality(self) -> bool:
        return compare(self.lhs, self.rhs) == 0


def _report(name: str, lhs, rhs, **details) -> BoundReport:
    a, b = PiScaled.of(lhs), PiScaled.of(rhs)
    if a.coeff == 0:
        slack = b
    elif b.coeff == 0:
        slack = -a
    elif a.pi_power == b.pi_power:
        slack = PiScaled(b.coeff - a.coeff, a.pi_power)
    else:
        slack = None  # rhs - lhs is not a single multiple of a power of pi
    if slack is not None and slack.is_rational():
        slack = slack.coeff
    lhs = lhs.coeff if isinstance(lhs, PiScaled) and lhs.is_rational() else lhs
    rhs = rhs.coeff if isinstance(rhs, PiScaled) and rhs.is_rational() else rhs
    return BoundReport(name, lhs, rhs, compare(lhs, rhs) <= 0, slack, details)


# --- Laguerre values ----------------------------------------------------------

def laguerre_at_2(n: int) -> Fraction:
    """``L_n(2) = sum_k binom(n, k) 2^k / k!`` by direct summation."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return sum((Fraction(math.comb(n, k) * 2 ** k, math.factorial(k)) for k in range(n + 1)), Fraction(0))


def laguerre_three_term(n: int) -> Fraction:
    """Same value from ``(k+1) L_{k+1} = (2k+3) L_k - k L_{k-1}``."""
    prev, cur = Fraction(0), Fraction(1)
    for k in range(n):
        prev, cur = cur, ((2 * k + 3) * cur - k * prev) / (k + 1)
    return cur


def symmetric_blichfeldt_constant(n: int) -> Fraction:
    """``n! L_n(2) / 2^n``; equals ``sum_i binom(n,i)^2 i! / 2^i``."""
    return Fraction(math.factorial(n)) * laguerre_at_2(n) / 2 ** n


# --- hypotheses ---------------------------------------------------------------

def _require_symmetric(K: VPolytope):
    if not K.is_full_dimensional():
        raise HypothesisError("body must be full-dimensional")
    if not is_centrally_symmetric(K):
        raise HypothesisError("body must be centrally symmetric (K = -K)")


def _require_lattice_span(K: VPolytope):
    if lattice_span_dim(K) != K.ambient_dim:
        raise HypothesisError("lattice points of K must span R^n affinely")


# --- Blichfeldt and van der Corput -------------------------------------------

def blichfeldt_lower_check(K: VPolytope) -> BoundReport:
    """``(#(K cap Z^n) - n) / n! <= vol(K)``."""
    _require_lattice_span(K)
    n = K.ambient_dim
    lam = count(K).total
    return _report("blichfeldt", Fraction(lam - n, math.factorial(n)), volume(K), lattice_points=lam)


def vdcorput_upper_check(K: VPolytope) -> BoundReport:
    """``vol(K) <= 2^(n-1) (#(int K cap Z^n) + 1)`` for symmetric K."""
    _require_symmetric(K)
    n = K.ambient_dim
    inner = count(K).interior
    return _report("vdcorput", volume(K), Fraction(2 ** (n - 1) * (inner + 1)), interior_points=inner)


def _independent_lattice_points(pts, n):
    chosen = []
    for p in pts:
        if any(p) and rank(chosen + [p]) == len(chosen) + 1:
            chosen.append(p)
            if len(chosen) == n:
                return chosen
    return None


def sym_blichfeldt_exact_check(K: VPolytope, try_all: bool = False, cap: int = 200) -> BoundReport:
    """``#(K cap Z^n) <= vol(K) n! L_n(2) / 2^n`` for symmetric K.

    The intermediate Davenport sum for a parallelepiped spanned by n
    independent lattice points of K is reported and checked to sit between
    the two sides.  By default the lexicographically least independent choice
    is used; ``try_all`` scans up to ``cap`` independent n-subsets and keeps
    the smallest Davenport sum.
    """
    _require_symmetric(K)
    _require_lattice_span(K)
    n = K.ambient_dim
    pts = lattice_points(K)
    lam = len(pts)
    vol = volume(K)
    rhs = vol * symmetric_blichfeldt_constant(n)
    if try_all:
        choices = []
        for sub in combinations([p for p in pts if any(p)], n):
            if rank(list(sub)) == n:
                choices.append(list(sub))
                if len(choices) >= cap:
                    break
    else:
        choices = [_independent_lattice_points(pts, n)]
    totals = [(volume_polynomial(K, ParallelepipedSpec(z)).total, z) for z in choices]
    dav, gens = min(totals, key=lambda t: t[0])
    ratio = Fraction(math.factorial(n)) * vol / lam
    return _report("sym-exact", Fraction(lam), rhs, davenport_sum=dav, generators=gens,
                   chain_holds=lam <= dav <= rhs, ratio=ratio,
                   ratio_root=nth_root_enclosure(ratio, n))


# --- crosspolytope sharpness family --------------------------------------------

@dataclass(frozen=True)
class CrossStats:
    n: int
    l: int
    count: int
    volume: Fraction
    count_enumerated: int
    volume_triangulated: Fraction
    ratio: Fraction  # n! vol / count
    ratio_root: tuple[Fraction, Fraction]

    @property
    def agree(self) -> bool:
        return self.count == self.count_enumerated and self.volume == self.volume_triangulated


def crosspolytope_stats(n: int, l: int) -> CrossStats:
    """Closed-form count and volume of ``C*_{n,l}`` next to enumeration oracles."""
    lam = 2 * (n + l) - 1
    vol = Fraction(2 ** n * l, math.factorial(n))
    body = bodies.cross(n, l)
    ratio = Fraction(math.factorial(n)) * vol / lam
    return CrossStats(n, l, lam, vol, count(body).total, volume(body), ratio, nth_root_enclosure(ratio, n))


# --- Gillet-Soule type products -------------------------------------------------

def _polar_parts(K: VPolytope):
    _require_symmetric(K)
    return polar(K)


def gs_product_exact_check(K: VPolytope) -> BoundReport:
    """``#(K cap Z^n) vol(K*) <= n! kappa_n^2 L_n(2) / 2^n``."""
    Kp = _polar_parts(K)
    _require_lattice_span(K)
    n = K.ambient_dim
    lhs = count(K).total * volume(Kp)
    rhs = ball_volume(n) ** 2 * symmetric_blichfeldt_constant(n)
    return _report("gs-product", lhs, rhs)


def gs_product_lower_check(K: VPolytope) -> BoundReport:
    """``vol(K) vol(K*) / 2^n <= #(K cap Z^n) vol(K*)``.

    The Bourgain-Milman floor ``c^n / n!`` is only reported, as the
    approximate value of ``(n! vol(K) vol(K*))^(1/n)``.
    """
    Kp = _polar_parts(K)
    n = K.ambient_dim
    vp = volume(Kp)
    mahler = volume(K) * vp
    return _report("gs-lower", mahler / 2 ** n, count(K).total * vp,
                   mahler_volume=mahler,
                   bm_constant_approx=float(math.factorial(n) * mahler) ** (1 / n))


def gs_ratio(K: VPolytope) -> Fraction:
    """``#(K cap Z^n) / (#(K* cap Z^n) vol(K))``."""
    Kp = _polar_parts(K)
    return Fraction(count(K).total, count(Kp).total) / volume(K)


def g_value(k: int) -> PiScaled:
    """``4^k / (k! kappa_k^2 L_k(2))``."""
    return PiScaled(4 ** k) / (ball_volume(k) ** 2 * math.factorial(k) * laguerre_at_2(k))


def gs_ratio_chain_check(K: VPolytope) -> BoundReport:
    """``4^k vol(K) / (2^n k! kappa_k^2 L_k) <= #(K cap Z^n) / #(K* cap Z^n)``.

    ``k`` is the dimension of the linear span of the lattice points of K*.
    """
    Kp = _polar_parts(K)
    n = K.ambient_dim
    pts = lattice_points(Kp)
    k = rank(pts) if pts else 0
    lhs = g_value(k) * volume(K) / 2 ** n
    rhs = Fraction(count(K).total, len(pts))
    return _report("gs-ratio-chain", lhs, rhs, k=k)


def mahler_planar_check(K: VPolytope) -> BoundReport:
    """``8 <= vol(K) vol(K*)`` for planar symmetric K."""
    if K.ambient_dim != 2:
        raise HypothesisError("Mahler's planar bound needs a planar body")
    Kp = _polar_parts(K)
    return _report("mahler", Fraction(8), volume(K) * volume(Kp))


# --- monotonicity of g and the recurrence audit -----------------------------------

def g_monotonicity_check(k_max: int) -> list[BoundReport]:
    """Certified checks, for k < k_max, that g is nonincreasing and why.

    Per k four reports: ``g-monotone`` (g(k+1) <= g(k)), ``g-sufficient``
    (the equivalent ratio form), ``kappa-estimate``
    (kappa_k^2/kappa_{k+1}^2 <= (k+2)/(2 pi)) and ``g-elementary``
    ((k+2)/(2 pi) L_k/L_{k+1} <= (k+1)/4).
    """
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    out = []
    for k in range(k_max):
        lk, lk1 = laguerre_at_2(k), laguerre_at_2(k + 1)
        kap = ball_volume(k) ** 2 / ball_volume(k + 1) ** 2
        out.append(_report(f"g-monotone[{k}]", g_value(k + 1), g_value(k), k=k))
        out.append(_report(f"g-sufficient[{k}]", kap * (lk / lk1), Fraction(k + 1, 4), k=k))
        bound = PiScaled(Fraction(k + 2, 2), -1)
        out.append(_report(f"kappa-estimate[{k}]", kap, bound, k=k))
        out.append(_report(f"g-elementary[{k}]", bound * (lk / lk1), Fraction(k + 1, 4), k=k))
    return out


@dataclass(frozen=True)
class RecurrenceRow:
    k: int
    direct: Fraction  # L_{k+1}(2)
    stated: Fraction  # 2 L_k(2) - 2^k (k-1) / (k+1)!
    discrepancy: Fraction  # direct - stated


def laguerre_recurrence_audit(k_max: int) -> list[RecurrenceRow]:
    """Compare ``L_{k+1} = 2 L_k - 2^k (k-1)/(k+1)!`` with direct summation."""
    rows = []
    for k in range(k_max + 1):
        direct = laguerre_at_2(k + 1)
        stated = 2 * laguerre_at_2(k) - Fraction(2 ** k * (k - 1), math.factorial(k + 1))
        rows.append(RecurrenceRow(k, direct, stated, direct - stated))
    return rows


# --- asymptotics ------------------------------------------------------------------

def _szego_ratio(n: int) -> float:
    """Approximation of ``L_n(2) / 2^n`` from Szego's asymptotic for Laguerre values."""
    return math.exp(2 * math.sqrt(2 * n + 1) - 1) / (2 * math.sqrt(math.pi) * (2 * n) ** 0.25 * 2 ** n)


def _gs_crosses(n: int, eps: Fraction) -> bool:
    """Certified ``n! kappa_n^2 L_n(2) / 2^n <= (pi + eps)^n``."""
    left = ball_volume(n) ** 2 * symmetric_blichfeldt_constant(n)
    bits = 64
    while True:
        plo, phi = pi_enclosure(bits)
        llo, lhi = left.enclosure(bits)
        if lhi <= (plo + eps) ** n:
            return True
        if llo > (phi + eps) ** n:
            return False
        bits *= 2


@dataclass(frozen=True)
class AsymptoticRow:
    n: int
    ratio: Fraction  # L_n(2) / 2^n
    ratio_approx: float
    szego_approx: float
    threshold: Fraction  # (2 - eps)^-n
    crosses: bool  # ratio <= threshold
    gs_root_approx: float  # (n! kappa_n^2 L_n(2) / 2^n)^(1/n)
    gs_crosses: bool  # gs quantity <= (pi + eps)^n, certified


@dataclass(frozen=True)
class AsymptoticReport:
    epsilon: Fraction
    rows: list[AsymptoticRow]

    @property
    def first_crossing(self) -> int | None:
        return next((r.n for r in self.rows if r.crosses), None)

    @property
    def first_gs_crossing(self) -> int | None:
        return next((r.n for r in self.rows if r.gs_crosses), None)


def asymptotic_report(n_max: int, epsilon=Fraction(1)) -> AsymptoticReport:
    eps = Fraction(epsilon)
    if not 0 < eps <= 1:
        raise ValueError("epsilon must lie in (0, 1]")
    rows = []
    for n in range(1, n_max + 1):
        ratio = laguerre_at_2(n) / 2 ** n
        threshold = 1 / (2 - eps) ** n
        gs = ball_volume(n) ** 2 * symmetric_blichfeldt_constant(n)
        rows.append(AsymptoticRow(n, ratio, float(ratio), _szego_ratio(n), threshold, ratio <= threshold,
                                  float(gs) ** (1 / n), _gs_crosses(n, eps)))
    return AsymptoticReport(eps, rows)


# --- suites -----------------------------------------------------------------------

SUITES: dict[str, Callable[[VPolytope], BoundReport]] = {
    "blichfeldt": blichfeldt_lower_check,
    "vdcorput": vdcorput_upper_check,
    "sym-exact": sym_blichfeldt_exact_check,
    "gs-product": gs_product_exact_check,
    "gs-lower": gs_product_lower_check,
    "gs-ratio": gs_ratio_chain_check,
    "mahler": mahler_planar_check,
}


def run_suite(K: VPolytope, suite: str = "all") -> tuple[list[BoundReport], list[tuple[str, str]]]:
    """Run one named check or all of them; returns (reports, skipped with reasons).

    With ``all`` checks whose hypotheses fail are skipped; a single named
    check propagates :class:`HypothesisError`.
    """
    if suite != "all":
        if suite not in SUITES:
            raise ValueError(f"unknown suite {suite!r}")
        return [SUITES[suite](K)], []
    reports, skipped = [], []
    for name, fn in SUITES.items():
        try:
            reports.append(fn(K))
        except HypothesisError as exc:
            skipped.append((name, str(exc)))
    return reports, skipped
