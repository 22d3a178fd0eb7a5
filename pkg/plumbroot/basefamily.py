"""
This contains the base class every admissible family should inherit from.
A family is an evaluator (n, r) -> exact rational, F_n(r), which is meant to
satisfy F_2 = delta_0 and F_n(r+1) - F_n(r-1) = F_{n-1}(r).
Concrete families live in plumbroot/families and register themselves by name.
"""
import logging
from abc import ABC, abstractmethod
from fractions import Fraction
from typing import Dict, Sequence

logger = logging.getLogger(__name__)

# values forced on every admissible family
FORCED: Dict[int, Dict[int, int]] = {
    0: {-2: 1, 0: -2, 2: 1},
    1: {-1: 1, 1: -1},
    2: {0: 1},
}


def forced_value(n: int, r: int) -> Fraction:
    return Fraction(FORCED[n].get(r, 0))


class AdmissibleFamily(ABC):

    registry: Dict[str, type] = {}
    name: str = "family"
    claims_a3 = False

    def __init_subclass__(cls, **kwargs) -> None:
        super().__init_subclass__(**kwargs)

        family_name = cls.__dict__.get("family_name")
        if family_name:
            logger.debug("Registering family: %s as %r", cls.__name__, family_name)
            AdmissibleFamily.registry[family_name] = cls

    @abstractmethod
    def evaluate(self, n: int, r: int) -> Fraction:
        """
        F_n(r) for n >= 0.
        """
        ...

    def support(self, n: int, low: int, high: int) -> Sequence[int]:
        """
        The r in [low, high] where F_n(r) can be nonzero. Anything returned
        outside the true support is harmless; missing a point is not.
        """
        if n <= 2:
            return [r for r in sorted(FORCED[n]) if low <= r <= high]
        return range(low, high + 1)

    def __call__(self, n: int, r: int) -> Fraction:
        if n < 0:
            raise ValueError(f"family index must be non-negative, got {n}")
        return Fraction(self.evaluate(n, r))

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}({self.name!r})"
