"""
Families built from seed pairs, pointwise averages of families, and plain
evaluator wrappers.
"""
import threading
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from plumbroot.basefamily import AdmissibleFamily, forced_value
from plumbroot.exceptions import SeedsExhausted

Seed = Tuple[Fraction, Fraction]


class SeededFamily(AdmissibleFamily):
    """
    The unique admissible family with F_{n+2}(0) = a_n and F_{n+2}(1) = b_n,
    seeds[n-1] = (a_n, b_n) for n >= 1. Every other value follows from
    F_n(r) = F_n(r-2) + F_{n-1}(r-1) going up and
    F_n(r) = F_n(r+2) - F_{n-1}(r+1) going down.
    """

    family_name = "seeded"

    def __init__(self, seeds: Iterable[Tuple], name: str = "seeded", claims_a3: bool = False) -> None:
        self.seeds: List[Seed] = [(Fraction(a), Fraction(b)) for a, b in seeds]
        self.name = name
        self.claims_a3 = claims_a3
        self._cache: Dict[Tuple[int, int], Fraction] = {}
        self._lock = threading.RLock()

    def _seed(self, n: int) -> Seed:
        if n - 2 > len(self.seeds):
            raise SeedsExhausted(
                f"F_{n} needs seed {n - 2} but only {len(self.seeds)} seeds were given",
                needed=n - 2, available=len(self.seeds),
            )
        return self.seeds[n - 3]

    def evaluate(self, n: int, r: int) -> Fraction:
        if n <= 2:
            return forced_value(n, r)

        cached = self._cache.get((n, r))
        if cached is not None:
            return cached

        with self._lock:
            start, base_value = (0, self._seed(n)[0]) if r % 2 == 0 else (1, self._seed(n)[1])
            value = base_value
            position = start
            # walk from the seed toward r in steps of 2, filling the cache on the way
            while position != r:
                if r > position:
                    position += 2
                    value = value + self.evaluate(n - 1, position - 1)
                else:
                    position -= 2
                    value = value - self.evaluate(n - 1, position + 1)
                self._cache[(n, position)] = value
            self._cache[(n, r)] = value
        return value


class AveragedFamily(AdmissibleFamily):
    """
    Pointwise mean of finitely many families, admissible again because the
    defining relations are linear.
    """

    family_name = "averaged"

    def __init__(self, members: Sequence[AdmissibleFamily], name: Optional[str] = None) -> None:
        if not members:
            raise ValueError("need at least one family to average")
        self.members = list(members)
        self.name = name or "avg(" + ",".join(member.name for member in self.members) + ")"
        self.claims_a3 = all(member.claims_a3 for member in self.members)

    def evaluate(self, n: int, r: int) -> Fraction:
        return sum((member(n, r) for member in self.members), Fraction(0)) / len(self.members)

    def support(self, n, low, high):
        found = set()
        for member in self.members:
            found.update(member.support(n, low, high))
        return sorted(found)


class FunctionFamily(AdmissibleFamily):
    """
    Wraps any evaluator. Nothing is forced, so window checks can catch
    evaluators that break (A1) or (A2).
    """

    family_name = "function"

    def __init__(self, evaluator: Callable[[int, int], Fraction], name: str = "function", claims_a3: bool = False) -> None:
        self.evaluator = evaluator
        self.name = name
        self.claims_a3 = claims_a3

    def evaluate(self, n: int, r: int) -> Fraction:
        return Fraction(self.evaluator(n, r))

    def support(self, n, low, high):
        return range(low, high + 1)
