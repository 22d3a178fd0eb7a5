"""
This contains the base class every verification check should inherit from.
A check takes one fuzz case (a plumbing, a spin^c class, a transported move
sequence) and returns report rows; checks are discovered from plumbroot/checks.
"""
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Tuple

from plumbroot.basefamily import AdmissibleFamily
from plumbroot.core import NeumannMove, Plumbing

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FuzzCase:
    trial: int
    plumbing: Plumbing
    k: Tuple[int, ...]
    moves: Tuple[NeumannMove, ...]
    moved: Plumbing
    moved_k: Tuple[int, ...]
    family: AdmissibleFamily
    order: Fraction

    def describe(self) -> str:
        steps = " ".join(f"{mv.kind.value}@{mv.site}" for mv in self.moves)
        return f"weights={list(self.plumbing.weights)} k={list(self.k)} moves=[{steps}]"


class VerificationCheck(ABC):

    registry: List[type] = []
    check_name = "check"
    is_check = True

    def __init_subclass__(cls, **kwargs) -> None:
        super().__init_subclass__(**kwargs)

        logger.debug("Registering check: %s", cls.__name__)

        if cls.__dict__.get("is_check", True):
            VerificationCheck.registry.append(cls)

    @abstractmethod
    def run(self, case: FuzzCase) -> List[Dict[str, Any]]:
        """
        Rows of (passed, detail) for the case; row() fills in the rest.
        """
        ...

    def row(self, case: FuzzCase, passed: bool, detail: str = "") -> Dict[str, Any]:
        if not passed:
            logger.warning("%s failed on trial %d: %s %s", self.check_name, case.trial, case.describe(), detail)
        return {"trial": case.trial, "check": self.check_name, "passed": bool(passed), "detail": detail}

    def __call__(self, case: FuzzCase) -> List[Dict[str, Any]]:
        return self.run(case)
