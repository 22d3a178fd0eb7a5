"""
Zhat(q) straight from the principal-value integral, as an independent check
on the lattice construction.

Each vertex contributes (z_v - 1/z_v)^{2 - delta_v}, expanded both around
|z| < 1 and |z| > 1 and averaged; the theta function of -M^{-1} on the coset
a + 2M Z^s supplies the q powers, and the constant term in every z_v is
collected. Nothing here goes through chi_k or the admissible families.
"""
import logging
from fractions import Fraction
from typing import Dict, List, Sequence

from plumbroot import lattice
from plumbroot.core import Plumbing, intersection_matrix, is_negative_definite
from plumbroot.exceptions import NotDeltaParity, NotNegativeDefinite
from plumbroot.polynomial import QSeries

logger = logging.getLogger(__name__)

Laurent = Dict[int, Fraction]


def _multiply(left: Laurent, right: Laurent, low: int, high: int) -> Laurent:
    product: Laurent = {}
    for i, a in left.items():
        for j, b in right.items():
            exponent = i + j
            if low <= exponent <= high:
                product[exponent] = product.get(exponent, 0) + a * b
    return {exponent: coef for exponent, coef in product.items() if coef}


def _power(base: Laurent, times: int, low: int, high: int) -> Laurent:
    result: Laurent = {0: Fraction(1)}
    for _ in range(times):
        result = _multiply(result, base, low, high)
    return result


def vertex_expansion(degree: int, reach: int) -> Laurent:
    """
    Averaged expansion of (z - 1/z)^{2 - degree}, exponents in [-reach, reach].
    """
    if degree <= 2:
        # a genuine Laurent polynomial, both expansions agree
        binomial = {1: Fraction(1), -1: Fraction(-1)}
        full = _power(binomial, 2 - degree, -2, 2)
        return {exponent: coef for exponent, coef in full.items() if abs(exponent) <= reach}

    # 1/(z - 1/z) = -sum_i z^{2i+1} for |z| < 1, = sum_i z^{-(2i+1)} for |z| > 1
    # every factor has exponents of one sign, so truncating factors at reach is exact
    small = {2 * i + 1: Fraction(-1) for i in range((reach + 1) // 2)}
    large = {-(2 * i + 1): Fraction(1) for i in range((reach + 1) // 2)}
    inside = _power(small, degree - 2, -reach, reach)
    outside = _power(large, degree - 2, -reach, reach)

    averaged: Laurent = {}
    for exponent in set(inside) | set(outside):
        value = (inside.get(exponent, 0) + outside.get(exponent, 0)) / 2
        if value:
            averaged[exponent] = value
    return averaged


def zhat_oracle(p: Plumbing, a: Sequence[int], N) -> QSeries:
    """
    Zhat_a(q) up to q^{Delta + N}, Delta = -(a^2 + 3s + sum m)/4, for a in
    delta + 2Z^s.
    """
    M = intersection_matrix(p)
    if not is_negative_definite(M):
        raise NotNegativeDefinite("the intersection matrix is not negative definite", det=M.det)
    if len(a) != p.s or any((entry - degree) % 2 for entry, degree in zip(a, p.degrees)):
        raise NotDeltaParity(f"{list(a)} is not congruent to the degrees {list(p.degrees)} mod 2", a=list(a))

    N = Fraction(N)
    a = tuple(int(entry) for entry in a)
    a_square = lattice.inverse_form(M.adj, M.det, a)
    normalization = -Fraction(3 * p.s + sum(p.weights), 4)
    delta = normalization - a_square / 4

    # -l^t M^{-1} l <= 4N - a^2 bounds every l_v by sqrt((4N - a^2) |m_v|)
    radius = 4 * N - a_square
    terms: Dict[Fraction, Fraction] = {}
    if radius >= 0:
        expansions: List[Laurent] = []
        allowed: List[List[int]] = []
        for degree, weight in zip(p.degrees, p.weights):
            scaled = radius * -weight
            reach = lattice.floor_root_bound(scaled.numerator, scaled.denominator)
            expansion = vertex_expansion(degree, reach)
            expansions.append(expansion)
            # z^{l_v} from the theta function pairs with z^{-l_v} here
            allowed.append(sorted(-exponent for exponent in expansion))

        doubled = tuple(tuple(2 * entry for entry in row) for row in M.matrix)
        hnf = lattice.hermite_basis(doubled)
        count = 0
        for argument in lattice.coset_points(hnf, a, allowed):
            norm = lattice.inverse_form(M.adj, M.det, argument)
            if -norm > radius:
                continue
            coef = Fraction(1)
            for expansion, value in zip(expansions, argument):
                coef *= expansion[-value]
            exponent = normalization - norm / 4
            terms[exponent] = terms.get(exponent, 0) + coef
            count += 1
        logger.info("oracle to order %s: %d theta terms", N, count)

    return QSeries(terms, delta, N)
