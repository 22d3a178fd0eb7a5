"""
The two-variable series as a sum over lattice points, its partial sums P_k^n
and the checks built on them.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import pandas as pd

from plumbroot import lattice
from plumbroot.admissible import check_a3
from plumbroot.basefamily import AdmissibleFamily
from plumbroot.core import Plumbing
from plumbroot.exceptions import A3Violated
from plumbroot.polynomial import QSeries, TwoVarPoly, TwoVarSeries
from plumbroot.root import (
    LatticeContext, argument_bounds, chi, lattice_context, point_term, stabilization_level,
    support_points,
)
from plumbroot.spinc import conjugate
from plumbroot.utils import config_value

logger = logging.getLogger(__name__)


def _series_points(ctx: LatticeContext, F: AdmissibleFamily, N: Fraction):
    """
    (x, chi_k(x), term) for every x with 2 chi_a(x) <= N and nonzero weight.
    In l = 2Mx + a coordinates that region is l^t (-M^{-1}) l <= 4N - a^2.
    """
    radius = 4 * Fraction(N) - ctx.a_square
    if radius < 0:
        return
    bounds = argument_bounds(ctx, (0,) * ctx.s, radius)
    for x, _ in support_points(ctx, F, bounds):
        # 2 chi_a(x) = eps_k(x) - Delta_k
        term = point_term(ctx, F, x)
        if term is None:
            continue
        if term[1] - ctx.delta > N:
            continue
        yield x, chi(ctx, x), term


def two_var_series(ctx: LatticeContext, F: AdmissibleFamily, N) -> TwoVarSeries:
    """
    Every term of the series with q exponent at most Delta_k + N.
    """
    N = Fraction(N)
    poly = TwoVarPoly()
    count = 0
    for _, _, term in _series_points(ctx, F, N):
        poly.add(*term)
        count += 1
    logger.info("series to order %s: %d contributing points, %d terms", N, count, len(poly))
    return TwoVarSeries(poly, ctx.delta, N)


def p_k_n(ctx: LatticeContext, F: AdmissibleFamily, n: int) -> TwoVarPoly:
    """
    Sum of the weighted monomials over S_n = {chi_k <= n}.

    With c = -M^{-1} k / 2 the real minimiser, chi_k(x) <= n reads
    (l + Mu)^t (-M^{-1}) (l + Mu) <= 4(2n - k^2/4) for l = 2Mx + k - Mu.
    """
    poly = TwoVarPoly()
    radius = 4 * (2 * n - ctx.k_square / 4)
    if radius < 0:
        return poly
    center = tuple(-value for value in ctx.mu)
    for x, _ in support_points(ctx, F, argument_bounds(ctx, center, radius)):
        if chi(ctx, x) > n:
            continue
        term = point_term(ctx, F, x)
        if term is not None:
            poly.add(*term)
    return poly


def specialize_t1(series: TwoVarSeries) -> QSeries:
    return QSeries(series.poly.at_t1(), series.delta, series.complete_to)


def level_bound(ctx: LatticeContext, N) -> Optional[int]:
    """
    An integer upper bound for chi_k over the real region 2 chi_a(x) <= N,
    or None when the region is empty.

    chi_k = (2 chi_a(x) - <x,u>)/2, and over that ellipsoid <x,u> is at least
    -u.a/2 - sqrt((N - a^2/4) * (-<u,u>)).
    """
    reach = Fraction(N) - ctx.a_square / 4
    if reach < 0:
        return None
    u = ctx.u
    spread = reach * -ctx.M.pairing(u, u)
    root_up = lattice.floor_root_bound(spread.numerator, spread.denominator) + 1
    highest = (Fraction(N) + Fraction(lattice.dot(u, ctx.a), 2) + root_up) / 2
    return int(highest.__floor__())


@dataclass
class StabilizationReport:
    table: pd.DataFrame
    auto_top: int
    certified_level: int
    scan_top: int
    ok: bool
    unstable: List[Tuple[Fraction, int]] = field(default_factory=list)


def verify_stabilization(ctx: LatticeContext, F: AdmissibleFamily, N, margin: Optional[int] = None) -> StabilizationReport:
    """
    For every bidegree of the order-N truncation, the last level n at which
    the coefficient of P_k^n changes. The report is ok when every last change
    happens at or below the certified level, max(AUTO top, level bound), and
    P_k^n at the certified level and a few levels above agree with the series.
    """
    N = Fraction(N)
    margin = margin if margin is not None else config_value("stabilization", "margin", 2)
    auto_top = stabilization_level(ctx)
    columns = ["q", "t", "coefficient", "last_change"]
    if N < 0:
        return StabilizationReport(pd.DataFrame(columns=columns), auto_top, auto_top, auto_top, True)

    bound = level_bound(ctx, N)
    certified = auto_top if bound is None else max(auto_top, bound)
    scan_top = certified + margin

    by_level: Dict[Tuple[Fraction, int], List[Tuple[int, Fraction]]] = {}
    for _, value, (coef, q_exp, t_exp) in _series_points(ctx, F, N):
        by_level.setdefault((q_exp, t_exp), []).append((value, coef))

    rows = []
    unstable = []
    for (q_exp, t_exp), entries in sorted(by_level.items()):
        entries.sort()
        running = Fraction(0)
        last_change = None
        for level in sorted({value for value, _ in entries}):
            step = sum(coef for value, coef in entries if value == level)
            if step:
                running += step
                last_change = level
        if last_change is None:
            continue
        if last_change > certified:
            unstable.append((q_exp, t_exp))
        rows.append({"q": q_exp, "t": t_exp, "coefficient": running, "last_change": last_change})

    table = pd.DataFrame(rows, columns=columns)
    series = two_var_series(ctx, F, N).poly
    partials_agree = all(
        p_k_n(ctx, F, level).truncated(ctx.delta + N) == series
        for level in (certified, scan_top)
    )
    ok = not unstable and partials_agree
    if not ok:
        logger.warning("stabilization failed to order %s: %d unstable bidegrees, partial sums agree=%s",
                       N, len(unstable), partials_agree)
    return StabilizationReport(table, auto_top, certified, scan_top, ok, unstable)


@dataclass(frozen=True)
class ConjugationResult:
    ok: bool
    series: TwoVarSeries
    conjugate_series: TwoVarSeries
    mismatches: Tuple[Tuple[Fraction, int], ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def conjugation_check(p: Plumbing, k: Sequence[int], F: AdmissibleFamily, N) -> ConjugationResult:
    """
    Z(q, t; k) against Z(q, 1/t; -k), both complete up to q^{Delta_k + N}.
    Requires F_n(-r) = (-1)^n F_n(r) on the checking window.
    """
    window = check_a3(F)
    if not window:
        raise A3Violated(f"family {F.name} fails F_n(-r) = (-1)^n F_n(r)", witness=window.witness)

    ctx = lattice_context(p, k)
    mirrored = lattice_context(p, conjugate(ctx.k))
    N = Fraction(N)
    series = two_var_series(ctx, F, N)
    # same absolute q bound on both sides
    other = two_var_series(mirrored, F, ctx.delta + N - mirrored.delta).invert_t()

    bound = series.q_bound
    left, right = series.poly.truncated(bound), other.poly.truncated(bound)
    mismatches = tuple(sorted(set(left.terms.items()) ^ set(right.terms.items())))
    keys = tuple(sorted({key for key, _ in mismatches}))
    return ConjugationResult(ok=not keys, series=series, conjugate_series=other, mismatches=keys)

