"""
F-hat and its two one-sided expansions.

F-hat_n(r) is the average of the coefficients of z^{-r} in the two Laurent
expansions of (z - 1/z)^{2-n}: around |z| < 1 and around |z| > 1.
"""
from fractions import Fraction
from math import comb
from typing import List

from plumbroot.basefamily import AdmissibleFamily, forced_value


def _binomial_term(n: int, r: int) -> int:
    return comb((n + abs(r)) // 2 - 2, n - 3)


def _in_tail(n: int, r: int) -> bool:
    return abs(r) >= n - 2 and (r - n) % 2 == 0


def fhat_value(n: int, r: int) -> Fraction:
    if n <= 2:
        return forced_value(n, r)
    if not _in_tail(n, r):
        return Fraction(0)
    sign = 1 if r > 0 or n % 2 == 0 else -1
    return Fraction(sign * _binomial_term(n, r), 2)


def fhat_plus_value(n: int, r: int) -> Fraction:
    # (sum_i z^{-(2i+1)})^{n-2}: only z^{-r} with r >= n-2
    if n <= 2:
        return forced_value(n, r)
    if r < n - 2 or not _in_tail(n, r):
        return Fraction(0)
    return Fraction(_binomial_term(n, r))


def fhat_minus_value(n: int, r: int) -> Fraction:
    # (-sum_i z^{2i+1})^{n-2}: only z^{-r} with r <= -(n-2)
    if n <= 2:
        return forced_value(n, r)
    if r > -(n - 2) or not _in_tail(n, r):
        return Fraction(0)
    return Fraction((-1) ** n * _binomial_term(n, r))


def _tail_support(n: int, low: int, high: int, negative: bool, positive: bool) -> List[int]:
    found = []
    for r in range(low, high + 1):
        if not _in_tail(n, r):
            continue
        if (r < 0 and negative) or (r > 0 and positive):
            found.append(r)
    return found


class FHat(AdmissibleFamily):

    family_name = "fhat"
    name = "fhat"
    claims_a3 = True

    def evaluate(self, n: int, r: int) -> Fraction:
        return fhat_value(n, r)

    def support(self, n, low, high):
        if n <= 2:
            return super().support(n, low, high)
        return _tail_support(n, low, high, negative=True, positive=True)


class FHatPlus(AdmissibleFamily):

    family_name = "fhat+"
    name = "fhat+"

    def evaluate(self, n: int, r: int) -> Fraction:
        return fhat_plus_value(n, r)

    def support(self, n, low, high):
        if n <= 2:
            return super().support(n, low, high)
        return _tail_support(n, low, high, negative=False, positive=True)


class FHatMinus(AdmissibleFamily):

    family_name = "fhat-"
    name = "fhat-"

    def evaluate(self, n: int, r: int) -> Fraction:
        return fhat_minus_value(n, r)

    def support(self, n, low, high):
        if n <= 2:
            return super().support(n, low, high)
        return _tail_support(n, low, high, negative=True, positive=False)
