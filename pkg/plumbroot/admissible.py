"""
Admissible families: the F-hat values, seeded families, window checks of the
defining relations and the lattice weight F_{Gamma,k}.
"""
import json
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from plumbroot.basefamily import AdmissibleFamily
from plumbroot.core import Plumbing, intersection_matrix
from plumbroot.exceptions import MalformedInput
from plumbroot.families.fhat import FHat, FHatMinus, FHatPlus, fhat_minus_value, fhat_plus_value, fhat_value
from plumbroot.families.seeded import AveragedFamily, SeededFamily
from plumbroot.utils import config_value, format_rational, parse_rational

logger = logging.getLogger(__name__)


def f_hat(n: int, r: int) -> Fraction:
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    return fhat_value(n, r)


def f_hat_pm(sign: str, n: int, r: int) -> Fraction:
    """
    Coefficient of z^{-r} in the |z| > 1 expansion (sign "+") or the |z| < 1
    expansion (sign "-") of (z - 1/z)^{2-n}.
    """
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    if sign == "+":
        return fhat_plus_value(n, r)
    if sign == "-":
        return fhat_minus_value(n, r)
    raise ValueError(f"sign must be '+' or '-', got {sign!r}")


def family_from_seeds(seeds: Iterable[Tuple], name: str = "seeded") -> SeededFamily:
    return SeededFamily(seeds, name=name)


def seeds_of(F: AdmissibleFamily, n_max: int) -> List[Tuple[Fraction, Fraction]]:
    """(F_{n+2}(0), F_{n+2}(1)) for n = 1..n_max."""
    return [(F(n + 2, 0), F(n + 2, 1)) for n in range(1, n_max + 1)]


def average_families(families: Sequence[AdmissibleFamily]) -> AveragedFamily:
    return AveragedFamily(families)


def load_seeds(path: str) -> List[Tuple[Fraction, Fraction]]:
    try:
        with open(path, encoding="utf-8") as handle:
            data = json.load(handle)
    except (OSError, json.JSONDecodeError) as e:
        raise MalformedInput(f"cannot read seeds file {path}: {e}") from e

    if not isinstance(data, list) or not all(isinstance(pair, list) and len(pair) == 2 for pair in data):
        raise MalformedInput("seeds file must be a JSON list of [a_n, b_n] pairs")
    return [(parse_rational(a), parse_rational(b)) for a, b in data]


def dump_seeds(seeds: Sequence[Tuple[Fraction, Fraction]]) -> str:
    return json.dumps([[format_rational(a), format_rational(b)] for a, b in seeds])


# ---------------------------------------------------------------------------
# Window checks

@dataclass(frozen=True)
class WindowCheck:
    ok: bool
    rule: Optional[str] = None
    witness: Optional[Tuple[int, int]] = None

    def __bool__(self) -> bool:
        return self.ok


def _window(n_max: Optional[int], r_max: Optional[int]) -> Tuple[int, int]:
    n_max = n_max if n_max is not None else config_value("admissibility", "n_max", 10)
    r_max = r_max if r_max is not None else config_value("admissibility", "r_max", 50)
    if n_max < 1 or r_max < 1:
        raise ValueError("window bounds must be positive")
    return n_max, r_max


def check_admissible(F: AdmissibleFamily, n_max: Optional[int] = None, r_max: Optional[int] = None) -> WindowCheck:
    """
    (A1) on |r| <= r_max and (A2) for 1 <= n <= n_max, |r| <= r_max.
    """
    n_max, r_max = _window(n_max, r_max)

    for r in range(-r_max, r_max + 1):
        if F(2, r) != (1 if r == 0 else 0):
            logger.info("%s fails (A1) at r=%d", F.name, r)
            return WindowCheck(False, "A1", (2, r))

    for n in range(1, n_max + 1):
        for r in range(-r_max, r_max + 1):
            if F(n, r + 1) - F(n, r - 1) != F(n - 1, r):
                logger.info("%s fails (A2) at n=%d r=%d", F.name, n, r)
                return WindowCheck(False, "A2", (n, r))

    return WindowCheck(True)


def check_a3(F: AdmissibleFamily, n_max: Optional[int] = None, r_max: Optional[int] = None) -> WindowCheck:
    """
    F_n(-r) = (-1)^n F_n(r) for 0 <= n <= n_max, |r| <= r_max.
    """
    n_max, r_max = _window(n_max, r_max)
    for n in range(0, n_max + 1):
        for r in range(-r_max, r_max + 1):
            if F(n, -r) != (-1) ** n * F(n, r):
                return WindowCheck(False, "A3", (n, r))
    return WindowCheck(True)


# ---------------------------------------------------------------------------
# Lattice weight

def lattice_argument(p: Plumbing, k: Sequence[int], x: Sequence[int]) -> Tuple[int, ...]:
    """2Mx + k - Mu."""
    M = intersection_matrix(p)
    image = M.apply(x)
    return tuple(2 * value + entry - shift for value, entry, shift in zip(image, k, M.mu))


def weight_from_argument(F: AdmissibleFamily, degrees: Sequence[int], argument: Sequence[int]) -> Fraction:
    total = Fraction(1)
    for degree, value in zip(degrees, argument):
        factor = F(degree, value)
        if not factor:
            return Fraction(0)
        total *= factor
    return total


def f_gamma_k(p: Plumbing, F: AdmissibleFamily, k: Sequence[int], x: Sequence[int]) -> Fraction:
    """
    F_{Gamma,k}(x) = prod_v F_{delta_v}((2Mx + k - Mu)_v).
    """
    return weight_from_argument(F, p.degrees, lattice_argument(p, k, x))


__all__ = [
    "FHat", "FHatPlus", "FHatMinus", "SeededFamily", "AveragedFamily",
    "f_hat", "f_hat_pm", "family_from_seeds", "seeds_of", "average_families",
    "load_seeds", "dump_seeds", "check_admissible", "check_a3", "WindowCheck",
    "lattice_argument", "weight_from_argument", "f_gamma_k",
]
