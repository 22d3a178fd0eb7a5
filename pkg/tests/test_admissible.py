import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from plumbroot.admissible import (
    average_families, check_a3, check_admissible, dump_seeds, f_gamma_k, f_hat, f_hat_pm, family_from_seeds,
    lattice_argument, load_seeds, seeds_of,
)
from plumbroot.basefamily import AdmissibleFamily, forced_value
from plumbroot.exceptions import MalformedInput, SeedsExhausted
from plumbroot.families.fhat import FHat, FHatMinus, FHatPlus
from plumbroot.families.seeded import FunctionFamily
from plumbroot.oracle import vertex_expansion

from tests.conftest import sample_path

HALF = Fraction(1, 2)


def test_forced_values():
    for family in (FHat(), FHatPlus(), FHatMinus()):
        assert [family(0, r) for r in (-2, -1, 0, 1, 2)] == [1, 0, -2, 0, 1]
        assert [family(1, r) for r in (-1, 0, 1)] == [1, 0, -1]
        assert [family(2, r) for r in (-1, 0, 1)] == [0, 1, 0]


def test_fhat_values():
    assert f_hat(3, 1) == HALF
    assert f_hat(3, -1) == -HALF
    assert f_hat(3, 0) == 0
    assert f_hat(3, 3) == HALF
    assert f_hat(4, 2) == HALF
    assert f_hat(4, -2) == HALF
    assert f_hat(4, 4) == 1
    assert f_hat(4, 0) == 0
    with pytest.raises(ValueError):
        f_hat(-1, 0)


def test_one_sided_expansions():
    assert f_hat_pm("+", 3, 1) == 1
    assert f_hat_pm("+", 3, -1) == 0
    assert f_hat_pm("-", 3, -1) == -1
    assert f_hat_pm("-", 4, -2) == 1
    with pytest.raises(ValueError):
        f_hat_pm("*", 3, 1)


def test_fhat_is_the_average_of_both_expansions():
    averaged = average_families([FHatPlus(), FHatMinus()])
    for n in range(0, 9):
        for r in range(-20, 21):
            assert averaged(n, r) == f_hat(n, r)
    assert not averaged.claims_a3


@pytest.mark.parametrize("family", [FHat(), FHatPlus(), FHatMinus()], ids=repr)
def test_fhat_families_are_admissible(family):
    assert check_admissible(family)


def test_a3_holds_only_for_fhat():
    assert check_a3(FHat())
    for family in (FHatPlus(), FHatMinus()):
        window = check_a3(family)
        assert not window
        assert window.rule == "A3"
        assert window.witness[0] == 3


def test_a3_witness_for_plus():
    assert check_a3(FHatPlus()).witness == (3, -49)


def test_window_catches_broken_families():
    assert check_admissible(FunctionFamily(lambda n, r: 0)).witness == (2, 0)

    def constant_tail(n, r):
        return forced_value(n, r) if n <= 2 else Fraction(1)

    window = check_admissible(FunctionFamily(constant_tail))
    assert (window.rule, window.witness) == ("A2", (3, 0))


def test_seeds_reproduce_fhat():
    seeds = seeds_of(FHat(), 10)
    assert seeds[0] == (0, HALF)
    assert all(pair == (0, 0) for pair in seeds[1:])

    rebuilt = family_from_seeds(seeds)
    for n in range(0, 13):
        for r in range(-50, 51):
            assert rebuilt(n, r) == f_hat(n, r)


def test_seed_files_round_trip(tmp_path):
    seeds = load_seeds(sample_path("fhat_seeds.json"))
    assert seeds == seeds_of(FHat(), 10)

    path = tmp_path / "seeds.json"
    path.write_text(dump_seeds(seeds))
    assert load_seeds(str(path)) == seeds
    assert json.loads(dump_seeds(seeds))[0] == ["0", "1/2"]


def test_bad_seed_files(tmp_path):
    path = tmp_path / "seeds.json"
    path.write_text('{"a": 1}')
    with pytest.raises(MalformedInput):
        load_seeds(str(path))
    with pytest.raises(MalformedInput):
        load_seeds(str(tmp_path / "missing.json"))


def test_seeds_exhausted():
    family = family_from_seeds([(0, 1)])
    assert family(3, 1) == 1
    with pytest.raises(SeedsExhausted):
        family(4, 0)


seed_values = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@settings(max_examples=20, deadline=None)
@given(seeds=st.lists(st.tuples(seed_values, seed_values), min_size=10, max_size=10))
def test_seeded_families_are_admissible(seeds):
    family = family_from_seeds(seeds)
    assert check_admissible(family)
    assert seeds_of(family, 10) == seeds


def test_registry_knows_builtin_families():
    for name in ("fhat", "fhat+", "fhat-", "seeded", "averaged", "function"):
        assert name in AdmissibleFamily.registry
    with pytest.raises(ValueError):
        FHat()(-1, 0)


def test_lattice_weight_two_vertices(gamma2, fhat):
    k = (-1, 0)
    assert lattice_argument(gamma2, k, (0, 0)) == (-1, 1)
    assert f_gamma_k(gamma2, fhat, k, (1, 1)) == 1
    assert f_gamma_k(gamma2, fhat, k, (-2, -1)) == 1
    assert f_gamma_k(gamma2, fhat, k, (-1, 0)) == -1
    assert f_gamma_k(gamma2, fhat, k, (0, 0)) == -1

    support = {
        (x, y) for x in range(-6, 7) for y in range(-6, 7)
        if f_gamma_k(gamma2, fhat, k, (x, y))
    }
    assert support == {(1, 1), (-2, -1), (-1, 0), (0, 0)}


def _expansion(sign, n, reach):
    """Coefficients of (z - 1/z)^{2-n}, one-sided for n > 2, by repeated convolution."""
    if n <= 2:
        exact = {0: {2: 1, 0: -2, -2: 1}, 1: {1: 1, -1: -1}, 2: {0: 1}}[n]
        return {exponent: Fraction(coef) for exponent, coef in exact.items()}
    odd = [2 * i + 1 for i in range((reach + 1) // 2)]
    factor = {-e: Fraction(1) for e in odd} if sign == "+" else {e: Fraction(-1) for e in odd}
    result = {0: Fraction(1)}
    for _ in range(n - 2):
        product = {}
        for left, a in result.items():
            for right, b in factor.items():
                if abs(left + right) <= reach:
                    product[left + right] = product.get(left + right, 0) + a * b
        result = product
    return result


@pytest.mark.parametrize("n", range(0, 8))
def test_fhat_matches_vertex_expansions(n):
    reach = 15
    averaged = vertex_expansion(n, reach)
    plus, minus = _expansion("+", n, reach), _expansion("-", n, reach)
    for r in range(-reach, reach + 1):
        assert f_hat(n, r) == averaged.get(-r, 0)
        assert f_hat_pm("+", n, r) == plus.get(-r, 0)
        assert f_hat_pm("-", n, r) == minus.get(-r, 0)
        assert FHatPlus()(n, r) == plus.get(-r, 0)
        assert FHatMinus()(n, r) == minus.get(-r, 0)
