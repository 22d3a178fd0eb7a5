import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from plumbroot.core import (
    MoveKind, NeumannMove, Plumbing, apply_move, intersection_matrix, random_move, random_plumbing,
)
from plumbroot.exceptions import MoveMismatch, NotCharacteristic, NotDeltaParity
from plumbroot.spinc import (
    a_to_k, canonical_spinc, check_characteristic, chi_minimizers, chi_value, conjugate, d_invariant,
    enumerate_spinc, h1_invariants, k_to_a, minimal_representative, same_spinc, self_conjugate, square,
    transport_a, transport_spinc,
)


def lens(p: int) -> Plumbing:
    return Plumbing((-p,))


def test_characteristic_parity(gamma2):
    assert check_characteristic(gamma2, (-1, 0)) == (-1, 0)
    with pytest.raises(NotCharacteristic):
        check_characteristic(gamma2, (0, 0))
    with pytest.raises(NotCharacteristic):
        check_characteristic(gamma2, (-1,))


def test_k_and_a_conventions(gamma2):
    assert k_to_a(gamma2, (-1, 0)) == (-1, 1)
    assert a_to_k(gamma2, (-1, 1)) == (-1, 0)
    with pytest.raises(NotDeltaParity):
        a_to_k(gamma2, (0, 1))


def test_same_spinc(gamma1):
    assert same_spinc(gamma1, (-1,), (-3,))
    assert same_spinc(gamma1, (-1,), (1,))
    assert not same_spinc(lens(2), (-2,), (0,))


@pytest.mark.parametrize("p", [2, 3, 4, 5])
def test_lens_classes(p):
    classes = enumerate_spinc(lens(p))
    assert len(classes) == p
    assert h1_invariants(lens(p)) == [p]
    for left in classes:
        for right in classes:
            assert same_spinc(lens(p), left, right) == (left == right)


def test_lens_self_conjugate():
    assert [k for k in enumerate_spinc(lens(3)) if self_conjugate(lens(3), k)] == [(3,)]
    assert enumerate_spinc(lens(3)) == [(1,), (3,), (5,)]


def test_conjugate_star_class_count(gamma_x):
    assert len(enumerate_spinc(gamma_x)) == 769
    assert h1_invariants(gamma_x) == [769]


def test_homology_sphere_has_one_class(gamma2, sigma_2_7_15):
    assert enumerate_spinc(gamma2) == [canonical_spinc(gamma2, (-1, 0))]
    assert len(enumerate_spinc(sigma_2_7_15)) == 1
    assert h1_invariants(gamma2) == []


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(min_value=0, max_value=10 ** 6))
def test_canonical_representatives(seed):
    p = random_plumbing(seed, 4)
    classes = enumerate_spinc(p)
    rng = random.Random(seed)
    k = rng.choice(classes)
    shift = intersection_matrix(p).apply([rng.randint(-3, 3) for _ in range(p.s)])
    moved = tuple(entry + 2 * delta for entry, delta in zip(k, shift))
    assert same_spinc(p, k, moved)
    assert canonical_spinc(p, moved) in classes


def test_chi_minimizers(gamma2):
    lowest, minimizers = chi_minimizers(gamma2, (-1, 0))
    assert lowest == 0
    assert minimizers == [(-2, -1), (-1, -1), (-1, 0), (0, 0)]
    assert chi_value(gamma2, (-1, 0), (1, 1)) == 1


def test_minimal_representative(gamma2):
    k = minimal_representative(gamma2, (-1, 0))
    assert k == (1, 0)
    assert same_spinc(gamma2, k, (-1, 0))
    assert chi_minimizers(gamma2, k)[0] == 0


def test_square_and_d_invariant(gamma1, gamma2):
    assert square(gamma2, (-1, 0)) == -2
    assert d_invariant(gamma1, (-1,)) == 0
    assert d_invariant(gamma2, (-1, 0)) == 0
    for p in (2, 3, 4, 5):
        assert d_invariant(lens(p), (-p,)) == Fraction(p - 1, 4)


def test_d_invariant_conjugate_star(gamma_x):
    k = (-5, 5, 8, 9, 1)
    assert d_invariant(gamma_x, k) == Fraction(-570, 769)
    assert d_invariant(gamma_x, conjugate(k)) == Fraction(-570, 769)
    assert not self_conjugate(gamma_x, k)


def test_transport_blowup_of_one_vertex(gamma1, gamma2):
    mv = NeumannMove(MoveKind.B_BLOWUP, 0)
    assert transport_spinc(gamma1, mv, (-1,)) == (-1, 0)
    assert transport_a(gamma1, mv, k_to_a(gamma1, (-1,))) == k_to_a(gamma2, (-1, 0))


def test_transport_rejects_length_mismatch(gamma2):
    with pytest.raises(MoveMismatch):
        transport_spinc(gamma2, NeumannMove(MoveKind.B_BLOWUP, 0), (-1,))


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(min_value=0, max_value=10 ** 6))
def test_transport_preserves_d_and_agrees_across_conventions(seed):
    rng = random.Random(seed)
    p = random_plumbing(seed, 4)
    k = minimal_representative(p, rng.choice(enumerate_spinc(p)))
    for _ in range(3):
        mv = random_move(p, rng)
        moved, _ = apply_move(p, mv)
        moved_k = transport_spinc(p, mv, k)
        check_characteristic(moved, moved_k)
        assert d_invariant(moved, moved_k) == d_invariant(p, k)
        assert same_spinc(moved, moved_k, a_to_k(moved, transport_a(p, mv, k_to_a(p, k))))
        p, k = moved, moved_k


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(min_value=0, max_value=10 ** 6))
def test_self_conjugate_classes_survive_moves(seed):
    rng = random.Random(seed)
    p = random_plumbing(seed, 3)
    before = [k for k in enumerate_spinc(p) if self_conjugate(p, k)]
    moved = p
    for _ in range(rng.randint(1, 3)):
        mv = random_move(moved, rng)
        before = [transport_spinc(moved, mv, k) for k in before]
        moved, _ = apply_move(moved, mv)

    after = [k for k in enumerate_spinc(moved) if self_conjugate(moved, k)]
    assert len(after) == len(before)
    assert all(self_conjugate(moved, k) for k in before)
