"""
This is where the families and the verification checks are discovered, and
where fuzz cases are built and run through the check pipeline.
"""
import importlib
import logging
import pkgutil
import random
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence

import pandas as pd

from plumbroot.admissible import family_from_seeds, load_seeds
from plumbroot.basecheck import FuzzCase, VerificationCheck
from plumbroot.basefamily import AdmissibleFamily
from plumbroot.core import Plumbing, apply_move, random_move, random_plumbing
from plumbroot.exceptions import UnknownFamily
from plumbroot.reports import stack_reports
from plumbroot.spinc import enumerate_spinc, minimal_representative, transport_spinc
from plumbroot.utils import config_value, parse_rational

logger = logging.getLogger(__name__)


def _import_all(package_name: str) -> None:
    pkg = importlib.import_module(package_name)
    for _, name, _ in pkgutil.iter_modules(pkg.__path__):
        logger.debug("Loading module: %s.%s", package_name, name)
        importlib.import_module(f"{pkg.__name__}.{name}")


def load_families() -> None:
    """
    Import every module in plumbroot/families so their classes register.
    """
    _import_all("plumbroot.families")
    logger.debug("Loaded families: %s", sorted(AdmissibleFamily.registry))


def build_family(spec: str) -> AdmissibleFamily:
    """
    "fhat", "fhat+", "fhat-" or "seeds:<path to JSON seed pairs>".
    """
    load_families()
    if spec.startswith("seeds:"):
        path = spec[len("seeds:"):]
        return family_from_seeds(load_seeds(path), name=spec)

    family_cls = AdmissibleFamily.registry.get(spec)
    # seeded/averaged/function families need constructor arguments
    if family_cls is None or spec in ("seeded", "averaged", "function"):
        raise UnknownFamily(f"unknown family {spec!r}", known=["fhat", "fhat+", "fhat-", "seeds:<file>"])
    return family_cls()


def load_checks() -> None:
    _import_all("plumbroot.checks")
    logger.debug("Loaded checks: %s", [check.__name__ for check in VerificationCheck.registry])


def build_pipeline(names: Optional[Sequence[str]] = None) -> List[VerificationCheck]:
    """
    One instance of every registered check, or only those named.
    """
    load_checks()

    pipeline: List[VerificationCheck] = []
    for check in VerificationCheck.registry:
        if names is None or check.check_name in names:
            pipeline.append(check())
    return pipeline


def classes_to_check(p: Plumbing, rng: random.Random) -> List[tuple]:
    """
    Every class when |det M| is at most verify.class_limit, otherwise a
    sample of verify.class_sample classes.
    """
    classes = enumerate_spinc(p)
    if len(classes) <= config_value("verify", "class_limit", 40):
        return classes
    return rng.sample(classes, config_value("verify", "class_sample", 5))


def _pick_class(p: Plumbing, rng: random.Random) -> tuple:
    return minimal_representative(p, rng.choice(enumerate_spinc(p)))


def make_cases(
        base: Optional[Plumbing],
        family: AdmissibleFamily,
        trials: int,
        moves: int,
        seed: int,
        order,
        k: Optional[Sequence[int]] = None,
        s_max: Optional[int] = None,
) -> Iterator[FuzzCase]:
    """
    Deterministic fuzz cases: the given plumbing (or a random one per trial),
    a class from k or drawn at random, and 1..moves random moves with k
    transported along.
    """
    s_max = s_max if s_max is not None else config_value("verify", "s_max", 4)
    order = parse_rational(order) if isinstance(order, str) else Fraction(order)
    for trial in range(trials):
        rng = random.Random(seed * 100003 + trial)
        plumbing = base if base is not None else random_plumbing(rng.randrange(2 ** 31), s_max)
        start = tuple(k) if k is not None else _pick_class(plumbing, rng)

        current, current_k = plumbing, start
        sequence = []
        for _ in range(rng.randint(1, max(moves, 1))):
            mv = random_move(current, rng)
            current_k = transport_spinc(current, mv, current_k)
            current, _ = apply_move(current, mv)
            sequence.append(mv)

        yield FuzzCase(
            trial=trial, plumbing=plumbing, k=start, moves=tuple(sequence),
            moved=current, moved_k=current_k, family=family, order=order,
        )


def run_checks(cases, pipeline: Optional[List[VerificationCheck]] = None) -> pd.DataFrame:
    """
    Run every check on every case and stack the rows into one report.
    """
    pipeline = pipeline if pipeline is not None else build_pipeline()

    frames = []
    for case in cases:
        rows = []
        for check in pipeline:
            logger.info("Running check %s on trial %d", check.check_name, case.trial)
            rows.extend(check(case))
        for index, row in enumerate(rows):
            row["row"] = index
        frames.append(pd.DataFrame(rows, columns=["trial", "check", "passed", "detail", "row"]))

    return stack_reports(frames, key=["trial", "check", "row"])
