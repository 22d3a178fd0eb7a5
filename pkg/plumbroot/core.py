"""
Plumbing trees, their intersection matrices and Neumann moves.

Vertices are 0-based and keep file order. Moves that create a vertex put it
at index 0 and shift every old index up by one.
"""
import json
import logging
import random
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from plumbroot import lattice
from plumbroot.exceptions import (
    BadIndex,
    GenerationFailed,
    MalformedInput,
    MoveNotApplicable,
    NotATree,
)
from plumbroot.utils import config_value

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]


def _edge(i: int, j: int) -> Edge:
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class Plumbing:
    weights: Tuple[int, ...]
    edges: FrozenSet[Edge] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        s = len(self.weights)
        if s == 0:
            raise MalformedInput("a plumbing needs at least one vertex")

        normalized = set()
        for edge in self.edges:
            i, j = edge
            if not (0 <= i < s and 0 <= j < s):
                raise BadIndex(f"edge {edge} refers to a vertex outside 0..{s - 1}", edge=list(edge))
            if i == j:
                raise NotATree(f"self-loop at vertex {i}")
            if _edge(i, j) in normalized:
                raise NotATree(f"repeated edge {i}-{j}")
            normalized.add(_edge(i, j))

        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        object.__setattr__(self, "edges", frozenset(normalized))

        if len(normalized) != s - 1 or not self._connected():
            raise NotATree(f"{s} vertices and {len(normalized)} edges do not form a tree")

    def _connected(self) -> bool:
        seen = {0}
        stack = [0]
        while stack:
            vertex = stack.pop()
            for other in self.neighbors(vertex):
                if other not in seen:
                    seen.add(other)
                    stack.append(other)
        return len(seen) == self.s

    @property
    def s(self) -> int:
        return len(self.weights)

    def neighbors(self, vertex: int) -> List[int]:
        found = []
        for i, j in self.edges:
            if i == vertex:
                found.append(j)
            elif j == vertex:
                found.append(i)
        return sorted(found)

    @property
    def degrees(self) -> Tuple[int, ...]:
        counts = [0] * self.s
        for i, j in self.edges:
            counts[i] += 1
            counts[j] += 1
        return tuple(counts)

    def sorted_edges(self) -> List[Edge]:
        return sorted(self.edges)


def degree_vector(p: Plumbing) -> Tuple[int, ...]:
    return p.degrees


@dataclass(frozen=True)
class IntersectionMatrix:
    matrix: lattice.IntMatrix
    det: int
    adj: lattice.IntMatrix

    @property
    def s(self) -> int:
        return len(self.matrix)

    @property
    def inverse(self) -> Tuple[Tuple[Fraction, ...], ...]:
        return tuple(tuple(Fraction(entry, self.det) for entry in row) for row in self.adj)

    @property
    def diagonal(self) -> Tuple[int, ...]:
        return tuple(self.matrix[i][i] for i in range(self.s))

    def apply(self, vector: Sequence[int]) -> Tuple[int, ...]:
        return lattice.mat_vec(self.matrix, vector)

    def pairing(self, left: Sequence[int], right: Sequence[int]) -> int:
        return lattice.dot(left, self.apply(right))

    def inverse_pairing(self, left: Sequence[int], right: Optional[Sequence[int]] = None) -> Fraction:
        return lattice.inverse_form(self.adj, self.det, left, right)

    def solve(self, rhs: Sequence[int]) -> Optional[Tuple[int, ...]]:
        return lattice.solve_integral(self.adj, self.det, rhs)

    @property
    def mu(self) -> Tuple[int, ...]:
        """M u with u = (1, ..., 1), i.e. m + delta."""
        return tuple(sum(row) for row in self.matrix)


def unit_vector(s: int) -> Tuple[int, ...]:
    return (1,) * s


@lru_cache(maxsize=512)
def intersection_matrix(p: Plumbing) -> IntersectionMatrix:
    rows = [[0] * p.s for _ in range(p.s)]
    for i, weight in enumerate(p.weights):
        rows[i][i] = weight
    for i, j in p.edges:
        rows[i][j] = rows[j][i] = 1
    matrix = lattice.as_int_matrix(rows)
    return IntersectionMatrix(matrix=matrix, det=lattice.determinant(matrix), adj=lattice.adjugate(matrix))


def is_negative_definite(M: Union[IntersectionMatrix, Sequence[Sequence[int]]]) -> bool:
    """
    Sylvester's criterion on -M over exact integers.
    """
    matrix = M.matrix if isinstance(M, IntersectionMatrix) else lattice.as_int_matrix(M)
    negated = tuple(tuple(-entry for entry in row) for row in matrix)
    return all(minor > 0 for minor in lattice.leading_minors(negated))


# ---------------------------------------------------------------------------
# File formats

def plumbing_from_dict(data: Any) -> Plumbing:
    if not isinstance(data, dict) or "weights" not in data:
        raise MalformedInput("expected an object with 'weights' and 'edges'")

    weights = data["weights"]
    edges = data.get("edges", [])
    if not isinstance(weights, list) or not all(isinstance(w, int) and not isinstance(w, bool) for w in weights):
        raise MalformedInput("'weights' must be a list of integers")
    if not isinstance(edges, list):
        raise MalformedInput("'edges' must be a list of index pairs")

    pairs = []
    for edge in edges:
        if (not isinstance(edge, list) or len(edge) != 2
                or not all(isinstance(v, int) and not isinstance(v, bool) for v in edge)):
            raise MalformedInput(f"bad edge {edge!r}, expected [i, j]")
        pairs.append((edge[0], edge[1]))

    for i, j in pairs:
        if not (0 <= i < len(weights) and 0 <= j < len(weights)):
            raise BadIndex(f"edge {[i, j]} refers to a vertex outside 0..{len(weights) - 1}", edge=[i, j])
    if len({_edge(i, j) for i, j in pairs if i != j}) != len([1 for i, j in pairs if i != j]):
        raise NotATree("repeated edge")

    return Plumbing(weights=tuple(weights), edges=frozenset(pairs))


def parse_plumbing(text: str) -> Plumbing:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedInput(f"plumbing file is not valid JSON: {e}") from e
    return plumbing_from_dict(data)


def read_plumbing(path: str) -> Plumbing:
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as e:
        raise MalformedInput(f"cannot read {path}: {e}") from e
    return parse_plumbing(text)


def plumbing_to_json(p: Plumbing) -> str:
    return json.dumps({"weights": list(p.weights), "edges": [list(edge) for edge in p.sorted_edges()]})


def format_plumbing_text(p: Plumbing) -> str:
    lines = [f"w({i}): {weight}" for i, weight in enumerate(p.weights)]
    lines += [f"e: {i}-{j}" for i, j in p.sorted_edges()]
    return "\n".join(lines)


def relabel(p: Plumbing, order: Sequence[int]) -> Plumbing:
    """
    The same plumbing with vertex order[i] moved to position i.
    """
    if sorted(order) != list(range(p.s)):
        raise BadIndex(f"{list(order)} is not a permutation of 0..{p.s - 1}")
    position = {old: new for new, old in enumerate(order)}
    return Plumbing(
        weights=tuple(p.weights[old] for old in order),
        edges=frozenset(_edge(position[i], position[j]) for i, j in p.edges),
    )


# ---------------------------------------------------------------------------
# Neumann moves

class MoveKind(str, Enum):
    A_BLOWUP = "A_blowup"
    B_BLOWUP = "B_blowup"
    A_BLOWDOWN = "A_blowdown"
    B_BLOWDOWN = "B_blowdown"

    @property
    def is_blowup(self) -> bool:
        return self in (MoveKind.A_BLOWUP, MoveKind.B_BLOWUP)


@dataclass(frozen=True)
class NeumannMove:
    kind: MoveKind
    site: Union[int, Edge]

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", MoveKind(self.kind))
        if self.kind == MoveKind.A_BLOWUP:
            if not (isinstance(self.site, tuple) and len(self.site) == 2):
                raise MalformedInput("A_blowup needs an edge site (i, j)")
            object.__setattr__(self, "site", _edge(*self.site))
        elif not isinstance(self.site, int):
            raise MalformedInput(f"{self.kind.value} needs a vertex site")


@dataclass(frozen=True)
class IndexMap:
    """
    old_to_new[i] is the new index of old vertex i (None if it was removed).
    """
    old_to_new: Tuple[Optional[int], ...]
    created: Optional[int] = None
    removed: Optional[int] = None

    def compose(self, after: "IndexMap") -> "IndexMap":
        mapped = tuple(None if i is None else after.old_to_new[i] for i in self.old_to_new)
        return IndexMap(old_to_new=mapped, created=after.created, removed=after.removed)


def _shift_map(s: int) -> IndexMap:
    return IndexMap(old_to_new=tuple(range(1, s + 1)), created=0)


def _removal_map(s: int, vertex: int) -> IndexMap:
    return IndexMap(
        old_to_new=tuple(None if i == vertex else (i if i < vertex else i - 1) for i in range(s)),
        removed=vertex,
    )


def apply_move(p: Plumbing, mv: NeumannMove) -> Tuple[Plumbing, IndexMap]:
    kind = mv.kind

    if kind == MoveKind.A_BLOWUP:
        i, j = mv.site  # type: ignore[misc]
        if (i, j) not in p.edges:
            raise MoveNotApplicable(f"{i}-{j} is not an edge", move=kind.value)
        weights = [-1] + list(p.weights)
        weights[i + 1] -= 1
        weights[j + 1] -= 1
        edges = {(a + 1, b + 1) for a, b in p.edges if (a, b) != (i, j)}
        edges |= {(0, i + 1), (0, j + 1)}
        return Plumbing(tuple(weights), frozenset(edges)), _shift_map(p.s)

    if kind == MoveKind.B_BLOWUP:
        i = mv.site
        if not 0 <= i < p.s:  # type: ignore[operator]
            raise BadIndex(f"vertex {i} outside 0..{p.s - 1}")
        weights = [-1] + list(p.weights)
        weights[i + 1] -= 1  # type: ignore[operator]
        edges = {(a + 1, b + 1) for a, b in p.edges} | {(0, i + 1)}  # type: ignore[operator]
        return Plumbing(tuple(weights), frozenset(edges)), _shift_map(p.s)

    vertex = mv.site
    if not 0 <= vertex < p.s:  # type: ignore[operator]
        raise BadIndex(f"vertex {vertex} outside 0..{p.s - 1}")
    neighbors = p.neighbors(vertex)  # type: ignore[arg-type]
    needed = 2 if kind == MoveKind.A_BLOWDOWN else 1
    if p.weights[vertex] != -1 or len(neighbors) != needed:  # type: ignore[index]
        raise MoveNotApplicable(
            f"{kind.value} needs a -1 vertex of degree {needed}, vertex {vertex} has weight "
            f"{p.weights[vertex]} and degree {len(neighbors)}",  # type: ignore[index]
            move=kind.value,
        )

    index_map = _removal_map(p.s, vertex)  # type: ignore[arg-type]
    weights = list(p.weights)
    for other in neighbors:
        weights[other] += 1
    new_weights = tuple(w for index, w in enumerate(weights) if index != vertex)
    edges = set()
    for a, b in p.edges:
        if vertex in (a, b):
            continue
        edges.add(_edge(index_map.old_to_new[a], index_map.old_to_new[b]))  # type: ignore[arg-type]
    if kind == MoveKind.A_BLOWDOWN:
        first, second = (index_map.old_to_new[n] for n in neighbors)
        edges.add(_edge(first, second))  # type: ignore[arg-type]
    return Plumbing(new_weights, frozenset(edges)), index_map


def inverse_move(p: Plumbing, mv: NeumannMove) -> NeumannMove:
    """
    The move that undoes mv applied to p. For blow-ups this is the blow-down
    at the created vertex 0.
    """
    if mv.kind == MoveKind.A_BLOWUP:
        return NeumannMove(MoveKind.A_BLOWDOWN, 0)
    if mv.kind == MoveKind.B_BLOWUP:
        return NeumannMove(MoveKind.B_BLOWDOWN, 0)

    vertex = mv.site
    neighbors = p.neighbors(vertex)  # type: ignore[arg-type]
    mapped = [n if n < vertex else n - 1 for n in neighbors]  # type: ignore[operator]
    if mv.kind == MoveKind.A_BLOWDOWN:
        return NeumannMove(MoveKind.A_BLOWUP, (mapped[0], mapped[1]))
    return NeumannMove(MoveKind.B_BLOWUP, mapped[0])


def applicable_moves(p: Plumbing) -> List[NeumannMove]:
    moves = [NeumannMove(MoveKind.A_BLOWUP, edge) for edge in p.sorted_edges()]
    moves += [NeumannMove(MoveKind.B_BLOWUP, i) for i in range(p.s)]
    degrees = p.degrees
    for i, weight in enumerate(p.weights):
        if weight != -1:
            continue
        if degrees[i] == 2:
            moves.append(NeumannMove(MoveKind.A_BLOWDOWN, i))
        elif degrees[i] == 1:
            moves.append(NeumannMove(MoveKind.B_BLOWDOWN, i))
    return moves


def random_move(p: Plumbing, rng: random.Random) -> NeumannMove:
    return rng.choice(applicable_moves(p))


# ---------------------------------------------------------------------------
# Generators

def random_plumbing(
        seed: int,
        s_max: int,
        weight_range: Optional[Tuple[int, int]] = None,
        retry_budget: Optional[int] = None
) -> Plumbing:
    """
    Deterministic random negative definite tree with at most s_max vertices:
    a random recursive tree shape, then weights resampled uniformly from
    weight_range until the intersection matrix is negative definite.
    """
    if s_max < 1:
        raise MalformedInput("s_max must be at least 1")
    low, high = weight_range or tuple(config_value("generator", "weight_range", [-12, -1]))
    if high > -1:
        raise MalformedInput("weights of a negative definite plumbing are at most -1")
    budget = retry_budget if retry_budget is not None else config_value("generator", "retry_budget", 200)

    rng = random.Random(seed)
    s = rng.randint(1, s_max)
    edges = frozenset(_edge(i, rng.randrange(i)) for i in range(1, s))

    for attempt in range(budget):
        weights = tuple(rng.randint(low, high) for _ in range(s))
        candidate = Plumbing(weights, edges)
        if is_negative_definite(intersection_matrix(candidate)):
            logger.debug("random plumbing seed=%s accepted after %d attempts", seed, attempt + 1)
            return candidate

    raise GenerationFailed(
        f"no negative definite weights found for seed {seed} after {budget} attempts",
        seed=seed, budget=budget,
    )


def continued_fraction(p: int, q: int) -> List[int]:
    """
    [a_1, ..., a_n] with p/q = a_1 - 1/(a_2 - 1/(... - 1/a_n)), all a_i >= 2.
    """
    if not 0 < q < p or gcd(p, q) != 1:
        raise MalformedInput(f"need coprime 0 < q < p, got p={p}, q={q}")
    terms = []
    while q:
        a = -(-p // q)  # ceil
        terms.append(a)
        p, q = q, a * q - p
    return terms


def star_plumbing(center_weight: int, legs: Iterable[Sequence[int]]) -> Plumbing:
    """
    Center at index 0; each leg is a chain of weights listed from the center out.
    """
    weights = [center_weight]
    edges = set()
    for leg in legs:
        previous = 0
        for weight in leg:
            weights.append(weight)
            edges.add(_edge(previous, len(weights) - 1))
            previous = len(weights) - 1
    return Plumbing(tuple(weights), frozenset(edges))


def seifert_plumbing(e: int, pairs: Iterable[Tuple[int, int]]) -> Plumbing:
    return star_plumbing(e, [[-a for a in continued_fraction(p, q)] for p, q in pairs])


def brieskorn_plumbing(p1: int, p2: int, p3: int) -> Plumbing:
    """
    Negative definite star for the integer homology sphere Sigma(p1, p2, p3).
    """
    ps = (p1, p2, p3)
    if min(ps) < 2 or any(gcd(a, b) != 1 for a, b in ((p1, p2), (p1, p3), (p2, p3))):
        raise MalformedInput(f"Brieskorn exponents must be pairwise coprime and >= 2, got {ps}")

    product = p1 * p2 * p3
    qs = [(-pow(product // p, -1, p)) % p for p in ps]
    e = -(1 + sum(q * (product // p) for p, q in zip(ps, qs))) // product
    return seifert_plumbing(e, zip(ps, qs))


def describe(p: Plumbing) -> Dict[str, Any]:
    M = intersection_matrix(p)
    return {"s": p.s, "det": M.det, "negative_definite": is_negative_definite(M)}
