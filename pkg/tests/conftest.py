import os
from fractions import Fraction

import pytest

from plumbroot.core import Plumbing, brieskorn_plumbing, read_plumbing, star_plumbing
from plumbroot.families.fhat import FHat
from plumbroot.polynomial import TwoVarPoly

SAMPLES = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "sample_plumbings")


def sample_path(name: str) -> str:
    return os.path.join(SAMPLES, name)


def poly(*terms) -> TwoVarPoly:
    """poly((coef, q_exp, t_exp), ...) with coefficients and q exponents as strings or ints."""
    built = TwoVarPoly()
    for coef, q_exp, t_exp in terms:
        built.add(Fraction(coef), Fraction(q_exp), t_exp)
    return built


@pytest.fixture
def gamma1() -> Plumbing:
    return Plumbing((-1,))


@pytest.fixture
def gamma2() -> Plumbing:
    return Plumbing((-1, -2), frozenset({(0, 1)}))


@pytest.fixture
def gamma_x() -> Plumbing:
    return star_plumbing(-1, [[-7], [-10], [-11], [-3]])


@pytest.fixture
def sigma_2_7_15() -> Plumbing:
    return brieskorn_plumbing(2, 7, 15)


@pytest.fixture
def fhat() -> FHat:
    return FHat()


@pytest.fixture
def sample():
    return lambda name: read_plumbing(sample_path(name))
