"""
Exact Laurent polynomials and truncated series in q (rational exponents)
and t (integer exponents), stored as {exponent: coefficient} dictionaries
with no zero coefficients.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

from plumbroot.utils import format_rational

Bidegree = Tuple[Fraction, int]


class TwoVarPoly:
    """
    Finite sum of c * q^i * t^j. Mutable only through add/merge, which the
    root and series builders use while accumulating.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Dict[Bidegree, Fraction]] = None) -> None:
        self._terms: Dict[Bidegree, Fraction] = {}
        for (q_exp, t_exp), coef in (terms or {}).items():
            self.add(coef, q_exp, t_exp)

    @classmethod
    def monomial(cls, coef, q_exp, t_exp: int = 0) -> "TwoVarPoly":
        poly = cls()
        poly.add(coef, q_exp, t_exp)
        return poly

    def add(self, coef, q_exp, t_exp: int) -> None:
        coef = Fraction(coef)
        if not coef:
            return
        key = (Fraction(q_exp), int(t_exp))
        total = self._terms.get(key, 0) + coef
        if total:
            self._terms[key] = total
        else:
            self._terms.pop(key, None)

    def merge(self, other: "TwoVarPoly") -> None:
        for (q_exp, t_exp), coef in other._terms.items():
            self.add(coef, q_exp, t_exp)

    def copy(self) -> "TwoVarPoly":
        poly = TwoVarPoly()
        poly._terms = dict(self._terms)
        return poly

    @property
    def terms(self) -> Dict[Bidegree, Fraction]:
        return dict(self._terms)

    def items(self) -> List[Tuple[Bidegree, Fraction]]:
        return sorted(self._terms.items())

    def __iter__(self) -> Iterator[Tuple[Bidegree, Fraction]]:
        return iter(self.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, TwoVarPoly):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __add__(self, other: "TwoVarPoly") -> "TwoVarPoly":
        total = self.copy()
        total.merge(other)
        return total

    def __neg__(self) -> "TwoVarPoly":
        return TwoVarPoly({key: -coef for key, coef in self._terms.items()})

    def __sub__(self, other: "TwoVarPoly") -> "TwoVarPoly":
        return self + (-other)

    def coefficient(self, q_exp, t_exp: int) -> Fraction:
        return self._terms.get((Fraction(q_exp), int(t_exp)), Fraction(0))

    def truncated(self, q_bound) -> "TwoVarPoly":
        return TwoVarPoly({key: coef for key, coef in self._terms.items() if key[0] <= q_bound})

    def invert_t(self) -> "TwoVarPoly":
        return TwoVarPoly({(q_exp, -t_exp): coef for (q_exp, t_exp), coef in self._terms.items()})

    def at_t1(self) -> Dict[Fraction, Fraction]:
        collected: Dict[Fraction, Fraction] = {}
        for (q_exp, _), coef in self._terms.items():
            collected[q_exp] = collected.get(q_exp, 0) + coef
        return {q_exp: coef for q_exp, coef in collected.items() if coef}

    def at_one(self) -> Fraction:
        return sum(self._terms.values(), Fraction(0))

    def q_exponents(self) -> List[Fraction]:
        return sorted({q_exp for q_exp, _ in self._terms})

    def serialize(self) -> str:
        return ";".join(f"{q_exp}:{t_exp}:{coef}" for (q_exp, t_exp), coef in self.items())

    def to_json(self) -> List[list]:
        return [[format_rational(q_exp), t_exp, format_rational(coef)] for (q_exp, t_exp), coef in self.items()]

    def render(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for (q_exp, t_exp), coef in self.items():
            factors = []
            if t_exp == 1:
                factors.append("t")
            elif t_exp:
                factors.append(f"t^{t_exp}" if t_exp > 0 else f"t^({t_exp})")
            if q_exp:
                factors.append(f"q^({q_exp})" if q_exp.denominator != 1 or q_exp < 0 else f"q^{q_exp}")
            magnitude = abs(coef)
            if magnitude != 1 or not factors:
                factors.insert(0, str(magnitude))
            body = "*".join(factors)
            if not pieces:
                pieces.append(("-" if coef < 0 else "") + body)
            else:
                pieces.append((" - " if coef < 0 else " + ") + body)
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"TwoVarPoly({self.render()})"


@dataclass
class TwoVarSeries:
    """
    Truncated two-variable series: every term with q exponent at most
    delta + complete_to is present and final.
    """
    poly: TwoVarPoly
    delta: Fraction
    complete_to: Fraction

    @property
    def q_bound(self) -> Fraction:
        return self.delta + self.complete_to

    @property
    def terms(self) -> Dict[Bidegree, Fraction]:
        return self.poly.terms

    def agrees_with(self, other: "TwoVarSeries") -> bool:
        bound = min(self.q_bound, other.q_bound)
        return self.poly.truncated(bound) == other.poly.truncated(bound)

    def invert_t(self) -> "TwoVarSeries":
        return TwoVarSeries(self.poly.invert_t(), self.delta, self.complete_to)

    def to_json(self) -> List[dict]:
        return [{"q": format_rational(q_exp), "t": t_exp, "c": format_rational(coef)} for (q_exp, t_exp), coef in self.poly.items()]


@dataclass
class QSeries:
    terms: Dict[Fraction, Fraction] = field(default_factory=dict)
    delta: Fraction = Fraction(0)
    complete_to: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        self.terms = {Fraction(q_exp): Fraction(coef) for q_exp, coef in self.terms.items() if coef}

    @property
    def q_bound(self) -> Fraction:
        return self.delta + self.complete_to

    def items(self) -> List[Tuple[Fraction, Fraction]]:
        return sorted(self.terms.items())

    def truncated(self, q_bound) -> Dict[Fraction, Fraction]:
        return {q_exp: coef for q_exp, coef in self.terms.items() if q_exp <= q_bound}

    def agrees_with(self, other: "QSeries") -> bool:
        bound = min(self.q_bound, other.q_bound)
        return self.truncated(bound) == other.truncated(bound)

    def to_json(self) -> List[dict]:
        return [{"q": format_rational(q_exp), "c": format_rational(coef)} for q_exp, coef in self.items()]


def qseries_from_pairs(pairs: Iterable[Tuple], delta=0, complete_to=0) -> QSeries:
    collected: Dict[Fraction, Fraction] = {}
    for q_exp, coef in pairs:
        key = Fraction(q_exp)
        collected[key] = collected.get(key, 0) + Fraction(coef)
    return QSeries(collected, Fraction(delta), Fraction(complete_to))
