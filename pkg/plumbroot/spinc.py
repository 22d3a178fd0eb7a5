"""
Spin^c structures on Y(Gamma) as characteristic vectors modulo 2M Z^s.

Two conventions are supported: k in m + 2Z^s (lattice cohomology) and
a = k - Mu in delta + 2Z^s (Zhat). Canonical representatives are reduced into
the fundamental box of the Hermite basis of 2M.
"""
import itertools
import logging
from fractions import Fraction
from functools import lru_cache
from typing import List, Sequence, Tuple

from plumbroot import lattice
from plumbroot.core import MoveKind, NeumannMove, Plumbing, apply_move, intersection_matrix
from plumbroot.exceptions import MoveMismatch, NotCharacteristic, NotDeltaParity

logger = logging.getLogger(__name__)

SpincRepK = Tuple[int, ...]
SpincRepA = Tuple[int, ...]


def check_characteristic(p: Plumbing, k: Sequence[int]) -> SpincRepK:
    if len(k) != p.s:
        raise NotCharacteristic(f"k has length {len(k)}, plumbing has {p.s} vertices", k=list(k))
    if any((entry - weight) % 2 for entry, weight in zip(k, p.weights)):
        raise NotCharacteristic(f"{list(k)} is not congruent to the weights {list(p.weights)} mod 2", k=list(k))
    return tuple(int(entry) for entry in k)


def check_delta_parity(p: Plumbing, a: Sequence[int]) -> SpincRepA:
    if len(a) != p.s or any((entry - degree) % 2 for entry, degree in zip(a, p.degrees)):
        raise NotDeltaParity(f"{list(a)} is not congruent to the degrees {list(p.degrees)} mod 2", a=list(a))
    return tuple(int(entry) for entry in a)


@lru_cache(maxsize=256)
def spinc_lattice(p: Plumbing) -> lattice.IntMatrix:
    """Hermite basis of 2M Z^s."""
    M = intersection_matrix(p)
    doubled = tuple(tuple(2 * entry for entry in row) for row in M.matrix)
    return lattice.hermite_basis(doubled)


def canonical_spinc(p: Plumbing, k: Sequence[int]) -> SpincRepK:
    k = check_characteristic(p, k)
    return lattice.reduce_mod_lattice(spinc_lattice(p), k)


def enumerate_spinc(p: Plumbing) -> List[SpincRepK]:
    """
    One canonical representative per class, |det M| in total. The box
    0 <= k_i < H_ii holds one vector per class of Z^s / 2MZ^s, and since
    2MZ^s lies in 2Z^s the characteristic ones are those with k = m mod 2.
    """
    hnf = spinc_lattice(p)
    ranges = [range(weight % 2, hnf[i][i], 2) for i, weight in enumerate(p.weights)]
    reps = [tuple(k) for k in itertools.product(*ranges)]
    logger.debug("enumerated %d spin^c classes", len(reps))
    return reps


def same_spinc(p: Plumbing, k1: Sequence[int], k2: Sequence[int]) -> bool:
    k1 = check_characteristic(p, k1)
    k2 = check_characteristic(p, k2)
    half = [(a - b) // 2 for a, b in zip(k1, k2)]
    return intersection_matrix(p).solve(half) is not None


def conjugate(k: Sequence[int]) -> SpincRepK:
    return tuple(-entry for entry in k)


def self_conjugate(p: Plumbing, k: Sequence[int]) -> bool:
    return same_spinc(p, k, conjugate(k))


def k_to_a(p: Plumbing, k: Sequence[int]) -> SpincRepA:
    k = check_characteristic(p, k)
    mu = intersection_matrix(p).mu
    return tuple(entry - shift for entry, shift in zip(k, mu))


def a_to_k(p: Plumbing, a: Sequence[int]) -> SpincRepK:
    a = check_delta_parity(p, a)
    mu = intersection_matrix(p).mu
    return tuple(entry + shift for entry, shift in zip(a, mu))


def _moved_within_class(p: Plumbing, vector: Sequence[int], vertex: int, target: int) -> List[int]:
    """
    Add 2M(c e_vertex) so that coordinate `vertex` (weight -1) becomes target.
    """
    shifted = list(vector)
    c = (shifted[vertex] - target) // 2
    shifted[vertex] -= 2 * c
    for other in p.neighbors(vertex):
        shifted[other] += 2 * c
    return shifted


def transport_spinc(p: Plumbing, mv: NeumannMove, k: Sequence[int]) -> SpincRepK:
    """
    Carry k on p across the move. Blow-ups add (1,-1,-1) (type a) or (-1,1)
    (type b) after prepending a zero; blow-downs first move k within its
    class so the removed coordinate is +1 (type a) or -1 (type b).
    """
    if len(k) != p.s:
        raise MoveMismatch(f"k has length {len(k)} but the move acts on {p.s} vertices", k=list(k))
    k = check_characteristic(p, k)
    _, index_map = apply_move(p, mv)

    if mv.kind == MoveKind.A_BLOWUP:
        i, j = mv.site  # type: ignore[misc]
        moved = [1] + list(k)
        moved[i + 1] -= 1
        moved[j + 1] -= 1
        return tuple(moved)

    if mv.kind == MoveKind.B_BLOWUP:
        moved = [-1] + list(k)
        moved[mv.site + 1] += 1  # type: ignore[operator]
        return tuple(moved)

    vertex = mv.site
    target = 1 if mv.kind == MoveKind.A_BLOWDOWN else -1
    shifted = _moved_within_class(p, k, vertex, target)  # type: ignore[arg-type]
    for other in p.neighbors(vertex):  # type: ignore[arg-type]
        shifted[other] += 1 if mv.kind == MoveKind.A_BLOWDOWN else -1
    return tuple(value for index, value in enumerate(shifted) if index_map.old_to_new[index] is not None)


def transport_a(p: Plumbing, mv: NeumannMove, a: Sequence[int]) -> SpincRepA:
    """
    The same transport in the a-convention: (0, a) for type a,
    (0, a) + (-1, 1) for type b.
    """
    if len(a) != p.s:
        raise MoveMismatch(f"a has length {len(a)} but the move acts on {p.s} vertices", a=list(a))
    a = check_delta_parity(p, a)
    _, index_map = apply_move(p, mv)

    if mv.kind == MoveKind.A_BLOWUP:
        return (0,) + tuple(a)

    if mv.kind == MoveKind.B_BLOWUP:
        moved = [-1] + list(a)
        moved[mv.site + 1] += 1  # type: ignore[operator]
        return tuple(moved)

    vertex = mv.site
    if mv.kind == MoveKind.A_BLOWDOWN:
        shifted = _moved_within_class(p, a, vertex, 0)  # type: ignore[arg-type]
    else:
        shifted = _moved_within_class(p, a, vertex, -1)  # type: ignore[arg-type]
        for other in p.neighbors(vertex):  # type: ignore[arg-type]
            shifted[other] -= 1
    return tuple(value for index, value in enumerate(shifted) if index_map.old_to_new[index] is not None)


def chi_value(p: Plumbing, k: Sequence[int], x: Sequence[int]) -> int:
    M = intersection_matrix(p)
    twice = -(lattice.dot(k, x) + M.pairing(x, x))
    return twice // 2


def chi_minimizers(p: Plumbing, k: Sequence[int]) -> Tuple[int, List[Tuple[int, ...]]]:
    """
    (min chi_k, all minimizers in lexicographic order). Global minimizers are
    weak local minima, so the candidate set holds all of them.
    """
    k = check_characteristic(p, k)
    M = intersection_matrix(p)
    candidates = lattice.weak_local_minima(M.matrix, M.adj, M.det, k)
    values = [(chi_value(p, k, x), x) for x in candidates]
    lowest = min(value for value, _ in values)
    return lowest, [x for value, x in values if value == lowest]


def minimal_representative(p: Plumbing, k: Sequence[int]) -> SpincRepK:
    """
    k + 2My for the lexicographically least minimizer y of chi_k; the result
    has min chi = 0, attained at the origin.
    """
    _, minimizers = chi_minimizers(p, k)
    shift = intersection_matrix(p).apply(minimizers[0])
    return tuple(entry + 2 * delta for entry, delta in zip(k, shift))


def square(p: Plumbing, k: Sequence[int]) -> Fraction:
    """k^2 = k^t M^{-1} k."""
    return intersection_matrix(p).inverse_pairing(k)


def d_invariant(p: Plumbing, k: Sequence[int]) -> Fraction:
    """
    d(-Y, [k]) = -max_{k' in [k]} (k'^2 + s)/4, using max k'^2 = k^2 - 8 min chi_k.
    """
    lowest, _ = chi_minimizers(p, k)
    return -(square(p, k) - 8 * lowest + p.s) / 4


def h1_invariants(p: Plumbing) -> List[int]:
    """Cyclic factors of H_1(Y) = Z^s / M Z^s."""
    return [factor for factor in lattice.smith_invariants(intersection_matrix(p).matrix) if factor > 1]
