"""
Exact integer linear algebra and lattice point enumeration.

Everything here works on plain Python ints. Nothing imports families, roots
or series, so the Zhat oracle can share this module with the main path.
"""
import logging
from fractions import Fraction
from math import isqrt
from typing import Iterator, List, Optional, Sequence, Tuple

from sympy import Matrix
from sympy.matrices.normalforms import hermite_normal_form, smith_normal_form
from sympy.polys.domains import ZZ

logger = logging.getLogger(__name__)

IntMatrix = Tuple[Tuple[int, ...], ...]
IntVector = Tuple[int, ...]


def as_int_matrix(rows: Sequence[Sequence[int]]) -> IntMatrix:
    return tuple(tuple(int(entry) for entry in row) for row in rows)


def determinant(matrix: IntMatrix) -> int:
    if not matrix:
        return 1
    return int(Matrix(matrix).det(method="bareiss"))


def adjugate(matrix: IntMatrix) -> IntMatrix:
    size = len(matrix)
    if size == 1:
        return ((1,),)
    return as_int_matrix(Matrix(matrix).adjugate().tolist())


def leading_minors(matrix: IntMatrix) -> List[int]:
    return [determinant(tuple(row[:size] for row in matrix[:size])) for size in range(1, len(matrix) + 1)]


def mat_vec(matrix: IntMatrix, vector: Sequence[int]) -> IntVector:
    return tuple(sum(a * b for a, b in zip(row, vector)) for row in matrix)


def dot(left: Sequence, right: Sequence):
    return sum(a * b for a, b in zip(left, right))


def quadratic(matrix: IntMatrix, vector: Sequence[int]) -> int:
    return dot(vector, mat_vec(matrix, vector))


def inverse_form(adj: IntMatrix, det: int, left: Sequence[int], right: Optional[Sequence[int]] = None) -> Fraction:
    """
    left^t M^{-1} right, computed as left^t adj(M) right / det(M).
    """
    if right is None:
        right = left
    return Fraction(dot(left, mat_vec(adj, right)), det)


def solve_integral(adj: IntMatrix, det: int, rhs: Sequence[int]) -> Optional[IntVector]:
    """
    The integer solution y of M y = rhs, or None when M^{-1} rhs is not integral.
    """
    numerators = mat_vec(adj, rhs)
    if any(value % det for value in numerators):
        return None
    return tuple(value // det for value in numerators)


# ---------------------------------------------------------------------------
# Hermite basis of a full rank sublattice

def hermite_basis(matrix: IntMatrix) -> IntMatrix:
    """
    Upper triangular column-style Hermite normal form H of a nonsingular
    integer matrix, so that H Z^s = matrix Z^s and H[i][i] > 0.
    """
    hnf = as_int_matrix(hermite_normal_form(Matrix(matrix)).tolist())
    size = len(matrix)
    if len(hnf) != size or any(len(row) != size for row in hnf):
        raise ValueError("matrix is not of full rank")

    for i in range(size):
        if hnf[i][i] <= 0 or any(hnf[i][j] for j in range(i)):
            raise ValueError(f"unexpected Hermite form shape: {hnf}")

    det = determinant(matrix)
    adj = adjugate(matrix)
    diagonal = 1
    for i in range(size):
        diagonal *= hnf[i][i]
    columns = [tuple(row[j] for row in hnf) for j in range(size)]
    if diagonal != abs(det) or any(solve_integral(adj, det, column) is None for column in columns):
        raise ValueError("Hermite form does not span the same lattice")

    return hnf


def reduce_mod_lattice(hnf: IntMatrix, vector: Sequence[int]) -> IntVector:
    """
    The unique v' = v - H c with 0 <= v'_i < H[i][i]. Reduction runs from the
    last coordinate back to the first, which only touches earlier coordinates.
    """
    reduced = list(vector)
    for i in reversed(range(len(reduced))):
        quotient = reduced[i] // hnf[i][i]
        if quotient:
            for row in range(i + 1):
                reduced[row] -= quotient * hnf[row][i]
    return tuple(reduced)


def in_lattice(hnf: IntMatrix, vector: Sequence[int]) -> bool:
    return not any(reduce_mod_lattice(hnf, vector))


def coset_points(
        hnf: IntMatrix,
        offset: Sequence[int],
        allowed: Sequence[Sequence[int]]
) -> Iterator[IntVector]:
    """
    Yield every v in offset + H Z^s with v_i in allowed[i] for all i.

    allowed[i] may be a range (step 1) or any finite collection. The triangular
    shape of H means coordinate i only depends on c_i..c_{s-1}, so the search
    fixes coordinates from the last to the first and prunes by divisibility.
    """
    size = len(offset)
    if size == 0:
        yield ()
        return

    values = [0] * size
    coeffs = [0] * size

    def candidates(i: int) -> Iterator[int]:
        # v_i - offset_i - sum_{j>i} H[i][j] c_j must be divisible by H[i][i]
        shift = offset[i] + sum(hnf[i][j] * coeffs[j] for j in range(i + 1, size))
        step = hnf[i][i]
        options = allowed[i]
        if isinstance(options, range) and options.step == 1:
            if len(options) == 0:
                return
            start = options.start + ((shift - options.start) % step)
            yield from range(start, options.stop, step)
        else:
            for value in options:
                if (value - shift) % step == 0:
                    yield value

    def descend(i: int) -> Iterator[IntVector]:
        for value in candidates(i):
            shift = offset[i] + sum(hnf[i][j] * coeffs[j] for j in range(i + 1, size))
            coeffs[i] = (value - shift) // hnf[i][i]
            values[i] = value
            if i == 0:
                yield tuple(values)
            else:
                yield from descend(i - 1)

    yield from descend(size - 1)


def smith_invariants(matrix: IntMatrix) -> List[int]:
    """
    Invariant factors of a nonsingular integer matrix, up to sign, in
    divisibility order. The torsion group Z^s / M Z^s is their direct sum.
    """
    snf = smith_normal_form(Matrix(matrix), domain=ZZ)
    factors = sorted(abs(int(snf[i, i])) for i in range(len(matrix)))
    return factors


# ---------------------------------------------------------------------------
# Exact integer square root bounds

def floor_root_bound(numerator: int, denominator: int) -> int:
    """
    The largest integer t >= 0 with t^2 * denominator <= numerator, or -1 when
    numerator < 0. denominator must be positive.
    """
    if numerator < 0:
        return -1
    guess = isqrt(numerator // denominator)
    while (guess + 1) * (guess + 1) * denominator <= numerator:
        guess += 1
    while guess > 0 and guess * guess * denominator > numerator:
        guess -= 1
    return guess


def quadratic_interval(a: int, b: int, c: int) -> Optional[Tuple[int, int]]:
    """
    The integers t with a t^2 + b t + c <= 0 for a > 0, as an inclusive pair,
    or None. Bounds come from isqrt of the discriminant and are then tightened
    by direct evaluation so they are exact.
    """
    disc = b * b - 4 * a * c
    if disc < 0:
        return None
    root = isqrt(disc)
    low = (-b - root - 1) // (2 * a)
    high = (-b + root + 1) // (2 * a) + 1

    def inside(t: int) -> bool:
        return a * t * t + b * t + c <= 0

    while low <= high and not inside(low):
        low += 1
    while high >= low and not inside(high):
        high -= 1
    if low > high:
        return None
    return low, high


# ---------------------------------------------------------------------------
# Ellipsoid enumeration

def _schur_levels(form: IntMatrix, lin: Sequence[int]):
    """
    For every depth d, the minimum over real x_{d+1..} of x^t A x - lin.x as a
    quadratic in x_0..x_d, scaled by a positive integer to clear denominators:
    (scale, S, h, c) meaning scale * min = x^t S x - h.x - c.
    """
    size = len(form)
    levels = []
    for depth in range(size):
        fixed = list(range(depth + 1))
        free = list(range(depth + 1, size))
        if free:
            block = tuple(tuple(form[i][j] for j in free) for i in free)
            block_det = determinant(block)
            block_adj = adjugate(block)
        else:
            block_det, block_adj = 1, ()

        # B = block^{-1} = block_adj / block_det; everything is scaled by 4*block_det
        scale = 4 * block_det
        schur = []
        for i in fixed:
            row = []
            for j in fixed:
                correction = 0
                for p_index, p in enumerate(free):
                    for q_index, q in enumerate(free):
                        correction += form[i][p] * block_adj[p_index][q_index] * form[q][j]
                row.append(scale * form[i][j] - 4 * correction)
            schur.append(tuple(row))

        linear = []
        for i in fixed:
            correction = 0
            for p_index, p in enumerate(free):
                for q_index, q in enumerate(free):
                    correction += form[i][p] * block_adj[p_index][q_index] * lin[q]
            linear.append(scale * lin[i] - 4 * correction)

        constant = 0
        for p_index, p in enumerate(free):
            for q_index, q in enumerate(free):
                constant += lin[p] * block_adj[p_index][q_index] * lin[q]

        levels.append((scale, tuple(schur), tuple(linear), constant))
    return levels


def ellipsoid_points(form: IntMatrix, lin: Sequence[int], bound: Fraction) -> Iterator[IntVector]:
    """
    Yield every integer x with x^t A x - lin.x <= bound in lexicographic order,
    for a positive definite integer matrix A.
    """
    size = len(form)
    if size == 0:
        if bound >= 0:
            yield ()
        return

    bound = Fraction(bound)
    levels = _schur_levels(form, lin)
    point = [0] * size

    def descend(depth: int) -> Iterator[IntVector]:
        scale, schur, linear, constant = levels[depth]
        # the quadratic in t = x_depth with x_0..x_{depth-1} fixed, times bound's denominator
        quad = schur[depth][depth]
        cross = 2 * sum(schur[i][depth] * point[i] for i in range(depth)) - linear[depth]
        rest = sum(schur[i][j] * point[i] * point[j] for i in range(depth) for j in range(depth))
        rest -= sum(linear[i] * point[i] for i in range(depth))
        rest -= constant
        den = bound.denominator
        interval = quadratic_interval(quad * den, cross * den, rest * den - scale * bound.numerator)
        if interval is None:
            return
        for value in range(interval[0], interval[1] + 1):
            point[depth] = value
            if depth == size - 1:
                yield tuple(point)
            else:
                yield from descend(depth + 1)
        point[depth] = 0

    yield from descend(0)


def weak_local_minima(matrix: IntMatrix, adj: IntMatrix, det: int, k: Sequence[int]) -> List[IntVector]:
    """
    All x with |(2Mx + k)_i| <= -M_ii for every i, in lexicographic order.

    The images l = 2Mx + k run over the coset k + 2M Z^s, so they are found
    coordinate by coordinate inside the box M_ii <= l_i <= -M_ii through the
    Hermite basis of 2M, and x = M^{-1} (l - k) / 2 is always integral.
    """
    size = len(matrix)
    doubled = tuple(tuple(2 * entry for entry in row) for row in matrix)
    hnf = hermite_basis(doubled)
    box = [range(matrix[i][i], -matrix[i][i] + 1) for i in range(size)]

    found = []
    for image in coset_points(hnf, k, box):
        half = [(value - offset) // 2 for value, offset in zip(image, k)]
        x = solve_integral(adj, det, half)
        if x is None:
            raise ValueError(f"{list(image)} is not in k + 2M Z^s")
        found.append(x)
    found.sort()
    logger.debug("weak local minima: %d candidates", len(found))
    return found
