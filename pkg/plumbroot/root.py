"""
The lattice side: chi_k, sublevel sets, their components and the weighted
graded root.

A lattice point x contributes F_{Gamma,k}(x) q^{eps_k(x)} t^{theta_k(x)} to the
vertex of its component. Components are taken with unit-step connectivity,
which agrees with connectivity of the cube complex because chi of a cube is
the max over its corners.
"""
import heapq
import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

import pandas as pd

from plumbroot import lattice
from plumbroot.basefamily import AdmissibleFamily
from plumbroot.core import IntersectionMatrix, Plumbing, intersection_matrix, is_negative_definite
from plumbroot.exceptions import NotNegativeDefinite, NotStabilized
from plumbroot.polynomial import TwoVarPoly
from plumbroot.spinc import check_characteristic, d_invariant, spinc_lattice
from plumbroot.utils import format_rational

logger = logging.getLogger(__name__)

Point = Tuple[int, ...]
AUTO = "auto"


@dataclass(frozen=True)
class LatticeContext:
    plumbing: Plumbing
    M: IntersectionMatrix
    k: Tuple[int, ...]
    a: Tuple[int, ...]
    delta: Fraction
    theta: int

    @property
    def s(self) -> int:
        return self.plumbing.s

    @property
    def u(self) -> Tuple[int, ...]:
        return (1,) * self.s

    @property
    def mu(self) -> Tuple[int, ...]:
        return self.M.mu

    @property
    def degrees(self) -> Tuple[int, ...]:
        return self.plumbing.degrees

    @property
    def form(self) -> lattice.IntMatrix:
        """-M, positive definite."""
        return tuple(tuple(-entry for entry in row) for row in self.M.matrix)

    @property
    def k_square(self) -> Fraction:
        return self.M.inverse_pairing(self.k)

    @property
    def a_square(self) -> Fraction:
        return self.M.inverse_pairing(self.a)

    def pairing_u(self, x: Sequence[int]) -> int:
        """<x, u> = x . (m + delta)."""
        return lattice.dot(x, self.mu)


def lattice_context(p: Plumbing, k: Sequence[int]) -> LatticeContext:
    M = intersection_matrix(p)
    if not is_negative_definite(M):
        raise NotNegativeDefinite("the intersection matrix is not negative definite", det=M.det)
    k = check_characteristic(p, k)
    a = tuple(entry - shift for entry, shift in zip(k, M.mu))

    u = (1,) * p.s
    uu = M.pairing(u, u)
    delta = -(M.inverse_pairing(a) + 3 * p.s + sum(p.weights)) / 4
    twice_theta = lattice.dot(k, u) - uu
    if twice_theta % 2:
        raise ValueError("Theta_k must be an integer for characteristic k")
    return LatticeContext(plumbing=p, M=M, k=k, a=a, delta=delta, theta=twice_theta // 2)


def chi(ctx: LatticeContext, x: Sequence[int]) -> int:
    """chi_k(x) = -(k.x + x^t M x)/2."""
    return -(lattice.dot(ctx.k, x) + ctx.M.pairing(x, x)) // 2


def epsilon_theta(ctx: LatticeContext, x: Sequence[int]) -> Tuple[Fraction, int]:
    shift = ctx.pairing_u(x)
    return ctx.delta + 2 * chi(ctx, x) + shift, ctx.theta + shift


def point_term(ctx: LatticeContext, F: AdmissibleFamily, x: Sequence[int], image: Optional[Sequence[int]] = None):
    """
    (coefficient, q exponent, t exponent) of x, or None when F_{Gamma,k}(x) = 0.
    """
    if image is None:
        image = ctx.M.apply(x)
    coef = Fraction(1)
    for degree, value, offset in zip(ctx.degrees, image, ctx.a):
        factor = F(degree, 2 * value + offset)
        if not factor:
            return None
        coef *= factor
    eps, theta = epsilon_theta(ctx, x)
    return coef, eps, theta


def local_min_candidates(ctx: LatticeContext) -> List[Point]:
    """
    Every x with |(2Mx + k)_i| <= -M_ii, i.e. every weak local minimum of chi_k.
    """
    return lattice.weak_local_minima(ctx.M.matrix, ctx.M.adj, ctx.M.det, ctx.k)


def chi_min(ctx: LatticeContext) -> int:
    return min(chi(ctx, x) for x in local_min_candidates(ctx))


def sublevel_points(ctx: LatticeContext, j: int) -> List[Point]:
    """All lattice points of S_j, lexicographically ordered."""
    return list(lattice.ellipsoid_points(ctx.form, ctx.k, Fraction(2 * j)))


class UnionFind:
    """
    Disjoint sets over lattice points, union by size with path halving.
    """

    def __init__(self) -> None:
        self.parents: Dict[Point, Point] = {}
        self.sizes: Dict[Point, int] = {}

    def add(self, node: Point) -> None:
        if node not in self.parents:
            self.parents[node] = node
            self.sizes[node] = 1

    def __contains__(self, node: Point) -> bool:
        return node in self.parents

    def find(self, node: Point) -> Point:
        parents = self.parents
        while parents[node] != node:
            parents[node] = parents[parents[node]]
            node = parents[node]
        return node

    def union(self, left: Point, right: Point) -> Tuple[Point, Optional[Point]]:
        """(surviving root, absorbed root or None)."""
        left, right = self.find(left), self.find(right)
        if left == right:
            return left, None
        if self.sizes[left] < self.sizes[right]:
            left, right = right, left
        self.parents[right] = left
        self.sizes[left] += self.sizes[right]
        return left, right


def _neighbors(x: Point) -> Iterator[Point]:
    for i in range(len(x)):
        yield x[:i] + (x[i] + 1,) + x[i + 1:]
        yield x[:i] + (x[i] - 1,) + x[i + 1:]


def sublevel_components(ctx: LatticeContext, j: int) -> List[List[Point]]:
    """
    The points of S_j grouped by unit-step connectivity; components and their
    members are in lexicographic order.
    """
    points = sublevel_points(ctx, j)
    groups = UnionFind()
    for x in points:
        groups.add(x)
    for x in points:
        for y in _neighbors(x):
            if y in groups:
                groups.union(x, y)

    collected: Dict[Point, List[Point]] = {}
    for x in points:
        collected.setdefault(groups.find(x), []).append(x)
    return sorted(collected.values(), key=lambda members: members[0])


def birth_levels(ctx: LatticeContext) -> List[int]:
    """
    The levels at which a new component of S_j appears, one entry per birth.

    A component born at level j consists of points at chi = j only, so all of
    them are weak local minima and any neighbour at chi <= j belongs to it. The
    candidates are grouped into equal-chi plateaus and a plateau counts as a
    birth when none of its points sees a lower point or a non-candidate at its
    own level.
    """
    candidates = local_min_candidates(ctx)
    return _births(ctx, {x: chi(ctx, x) for x in candidates})


def _births(ctx: LatticeContext, values: Dict[Point, int]) -> List[int]:
    candidates = sorted(values)
    plateaus = UnionFind()
    for x in candidates:
        plateaus.add(x)

    spoiled = set()
    for x, value in values.items():
        for y in _neighbors(x):
            other = values.get(y)
            if other is None:
                if chi(ctx, y) <= value:
                    spoiled.add(x)
            elif other == value:
                plateaus.union(x, y)
            elif other < value:
                spoiled.add(x)

    births: Dict[Point, bool] = {}
    for x in candidates:
        root = plateaus.find(x)
        births[root] = births.get(root, True) and x not in spoiled
    levels = sorted(values[root] for root, born in births.items() if born)
    logger.debug("%d candidates, births at levels %s", len(candidates), levels)
    return levels


# ---------------------------------------------------------------------------
# Weighted graded roots

class GradingMode(str, Enum):
    CHI = "chi"
    CHI_MIN_ZERO = "chi_min_zero"
    HF_GRADING = "hf"


@dataclass(frozen=True)
class RootVertex:
    id: int
    level: int
    weight: TwoVarPoly
    parent: Optional[int]
    children: Tuple[int, ...]
    hf_grading: Fraction
    least_point: Point


@dataclass(frozen=True)
class WeightedGradedRoot:
    vertices: Tuple[RootVertex, ...]
    chi_min: int
    top: int
    stabilization_level: Optional[int]
    birth_bound: int
    d_invariant: Fraction
    delta: Fraction
    family: str
    grading_mode: GradingMode = GradingMode.CHI
    truncated_below_stabilization: bool = False

    def level(self, level: int) -> List[RootVertex]:
        return [vertex for vertex in self.vertices if vertex.level == level]

    def levels(self) -> List[int]:
        return sorted({vertex.level for vertex in self.vertices})

    def at_hf_grading(self, grading) -> List[RootVertex]:
        grading = Fraction(grading)
        return [vertex for vertex in self.vertices if vertex.hf_grading == grading]

    def vertex(self, vertex_id: int) -> RootVertex:
        return self.vertices[vertex_id]


@dataclass
class _Component:
    least: Point
    weight: TwoVarPoly = field(default_factory=TwoVarPoly)


def _flood(ctx: LatticeContext, F: Optional[AdmissibleFamily], top: Union[int, str]):
    """
    Add lattice points in increasing chi order starting from every weak local
    minimum, merging components as they touch, and yield a snapshot of the
    components after each level: (level, [(root, least point, weight)]),
    plus the union-find so callers can resolve parents and the last birth
    level. Runs up to `top`, and for AUTO until the root is a single stem
    above every birth.
    """
    candidates = local_min_candidates(ctx)
    if not candidates:
        raise NotNegativeDefinite("no local minima, chi_k is not bounded below")

    matrix = ctx.M.matrix
    columns = [tuple(row[i] for row in matrix) for i in range(ctx.s)]
    k = ctx.k
    weights = ctx.plumbing.weights

    images: Dict[Point, Tuple[int, ...]] = {}
    values: Dict[Point, int] = {}
    heap: List[Tuple[int, Point]] = []
    for x in candidates:
        images[x] = ctx.M.apply(x)
        values[x] = chi(ctx, x)
        heapq.heappush(heap, (values[x], x))

    lowest = min(values.values())
    birth_bound = _births(ctx, dict(values))[-1]

    if top != AUTO and top < lowest:  # type: ignore[operator]
        return

    groups = UnionFind()
    components: Dict[Point, _Component] = {}
    level = lowest

    while True:
        while heap and heap[0][0] <= level:
            value, x = heapq.heappop(heap)
            image = images[x]
            groups.add(x)
            component = _Component(least=x)
            if F is not None:
                term = point_term(ctx, F, x, image)
                if term is not None:
                    component.weight.add(*term)
            components[x] = component

            for i in range(ctx.s):
                # chi(x + e_i) - chi(x) = -(k_i + 2(Mx)_i + m_i)/2, and for -e_i with +m_i flipped
                step_up = -(k[i] + 2 * image[i] + weights[i]) // 2
                step_down = (k[i] + 2 * image[i] - weights[i]) // 2
                for sign, step in ((1, step_up), (-1, step_down)):
                    y = x[:i] + (x[i] + sign,) + x[i + 1:]
                    if y in groups:
                        kept, absorbed = groups.union(x, y)
                        if absorbed is not None:
                            survivor = components[kept]
                            gone = components.pop(absorbed)
                            if gone.least < survivor.least:
                                survivor.least = gone.least
                            survivor.weight.merge(gone.weight)
                    elif y not in values:
                        values[y] = value + step
                        images[y] = tuple(entry + sign * column for entry, column in zip(image, columns[i]))
                        heapq.heappush(heap, (values[y], y))

        snapshot = [(root, component.least, component.weight.copy()) for root, component in components.items()]
        snapshot.sort(key=lambda item: item[1])
        yield level, snapshot, groups, birth_bound

        single_stem = level >= birth_bound and len(components) == 1
        if top == AUTO and single_stem:
            return
        if top != AUTO and level >= top:  # type: ignore[operator]
            return
        level += 1


def stabilization_level(ctx: LatticeContext) -> int:
    """
    The AUTO top: the first level that is at least the last birth level and
    where S_j is connected. Above it the root is a single stem.
    """
    last = None
    for level, *_ in _flood(ctx, None, AUTO):
        last = level
    return last  # type: ignore[return-value]


def build_root(ctx: LatticeContext, F: AdmissibleFamily, top: Union[int, str] = AUTO) -> WeightedGradedRoot:
    """
    The weighted graded root up to `top`. The stabilization level is read off
    the same sweep; a root cut before it has stabilization_level None and is
    flagged truncated_below_stabilization.
    """
    d = d_invariant(ctx.plumbing, ctx.k)
    vertex_rows: List[dict] = []
    previous: List[Tuple[int, Point]] = []
    lowest = chi_min(ctx)
    birth_bound = lowest
    stable_from: Optional[int] = None
    last_level = lowest - 1

    for level, snapshot, groups, birth_bound in _flood(ctx, F, top):
        last_level = level
        if stable_from is None and level >= birth_bound and len(snapshot) == 1:
            stable_from = level
        root_to_id: Dict[Point, int] = {}
        for root, least, weight in snapshot:
            vertex_id = len(vertex_rows)
            root_to_id[root] = vertex_id
            vertex_rows.append({
                "id": vertex_id, "level": level, "weight": weight, "parent": None,
                "children": [], "least_point": least,
                "hf_grading": 2 * (level - lowest) + d,
            })
        for child_id, old_root in previous:
            parent_id = root_to_id[groups.find(old_root)]
            vertex_rows[child_id]["parent"] = parent_id
            vertex_rows[parent_id]["children"].append(child_id)
        previous = [(root_to_id[root], root) for root, _, _ in snapshot]

    if top == AUTO:
        top = last_level
    truncated = stable_from is None
    if truncated:
        logger.warning("TruncationBelowStabilization: top %s ends before the root becomes a single stem", top)

    for row in vertex_rows:
        row["children"].sort()
    vertices = tuple(RootVertex(
        id=row["id"], level=row["level"], weight=row["weight"], parent=row["parent"],
        children=tuple(row["children"]), hf_grading=Fraction(row["hf_grading"]), least_point=row["least_point"],
    ) for row in vertex_rows)

    _check_denominators(ctx, vertices)
    logger.info("built root: %d vertices over levels %s..%s, stabilization level %s", len(vertices), lowest, top, stable_from)
    return WeightedGradedRoot(
        vertices=vertices, chi_min=lowest, top=top, stabilization_level=stable_from,  # type: ignore[arg-type]
        birth_bound=birth_bound, d_invariant=d, delta=ctx.delta, family=F.name,
        truncated_below_stabilization=truncated,
    )


def _check_denominators(ctx: LatticeContext, vertices: Sequence[RootVertex]) -> None:
    bound = 4 * abs(ctx.M.det)
    for vertex in vertices:
        for (q_exp, _), _ in vertex.weight.items():
            if bound % q_exp.denominator:
                raise AssertionError(f"q exponent {q_exp} has a denominator not dividing {bound}")


def normalize_root(root: WeightedGradedRoot, mode: Union[GradingMode, str]) -> WeightedGradedRoot:
    mode = GradingMode(mode)
    if mode == GradingMode.HF_GRADING:
        return replace(root, grading_mode=mode)
    if mode == GradingMode.CHI:
        return root

    shift = root.chi_min
    stable = None if root.stabilization_level is None else root.stabilization_level - shift
    vertices = tuple(replace(vertex, level=vertex.level - shift) for vertex in root.vertices)
    return replace(
        root, vertices=vertices, chi_min=0, top=root.top - shift,
        stabilization_level=stable, birth_bound=root.birth_bound - shift,
        grading_mode=mode,
    )


def canonical_code(root: WeightedGradedRoot, relative: bool = False) -> str:
    """
    Bottom-up encoding (level, weight, sorted child codes); equal codes mean
    isomorphic weighted graded roots. relative=True measures levels from the top.
    """
    tops = root.level(root.top)
    if len(tops) != 1:
        raise NotStabilized(f"the top level {root.top} has {len(tops)} vertices", top=root.top)

    codes: Dict[int, str] = {}
    for vertex in sorted(root.vertices, key=lambda item: item.level):
        level = vertex.level - root.top if relative else vertex.level
        children = ",".join(sorted(codes[child] for child in vertex.children))
        codes[vertex.id] = f"({level}|{vertex.weight.serialize()}|{children})"
    return codes[tops[0].id]


@dataclass(frozen=True)
class ModuleRanks:
    ranks: Dict[int, int]
    u_action: Dict[int, Tuple[int, ...]]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(sorted(self.ranks.items()), columns=["level", "rank"])


def module_ranks(root: WeightedGradedRoot) -> ModuleRanks:
    """
    Rank of the Z[U]-module at each level and U on each generator (the sum
    of its children one level down; empty means U v = 0).
    """
    ranks: Dict[int, int] = {}
    for vertex in root.vertices:
        ranks[vertex.level] = ranks.get(vertex.level, 0) + 1
    return ModuleRanks(ranks=ranks, u_action={vertex.id: vertex.children for vertex in root.vertices})


def specialize_root(root: WeightedGradedRoot) -> Dict[int, Fraction]:
    """Vertex weights at q = t = 1."""
    return {vertex.id: vertex.weight.at_one() for vertex in root.vertices}


# ---------------------------------------------------------------------------
# Exports

def _grading_label(root: WeightedGradedRoot, vertex: RootVertex) -> str:
    if root.grading_mode == GradingMode.HF_GRADING:
        return format_rational(vertex.hf_grading)
    return str(vertex.level)


def root_to_json(root: WeightedGradedRoot) -> dict:
    return {
        "d": format_rational(root.d_invariant),
        "chi_min": root.chi_min,
        "stab_level": root.stabilization_level,
        "top": root.top,
        "family": root.family,
        "truncated_below_stabilization": root.truncated_below_stabilization,
        "vertices": [{
            "id": vertex.id,
            "level": vertex.level,
            "hf_grading": format_rational(vertex.hf_grading),
            "parent": vertex.parent,
            "weight": vertex.weight.to_json(),
        } for vertex in root.vertices],
    }


def root_to_dot(root: WeightedGradedRoot) -> str:
    lines = ["digraph weighted_graded_root {", "  rankdir=BT;", '  node [shape=box, fontname="Helvetica"];']
    for level in root.levels():
        members = " ".join(f"v{vertex.id};" for vertex in root.level(level))
        label = _grading_label(root, root.level(level)[0])
        lines.append(f'  {{ rank=same; g{level} [shape=plaintext, label="{label}"]; {members} }}')
    for vertex in root.vertices:
        lines.append(f'  v{vertex.id} [label="{vertex.weight.render()}"];')
    for vertex in root.vertices:
        if vertex.parent is not None:
            lines.append(f"  v{vertex.id} -> v{vertex.parent} [arrowhead=none];")
    levels = root.levels()
    for lower, upper in zip(levels, levels[1:]):
        lines.append(f"  g{lower} -> g{upper} [style=invis];")
    lines.append("}")
    return "\n".join(lines)


def root_to_text(root: WeightedGradedRoot) -> str:
    stable = "not reached" if root.stabilization_level is None else root.stabilization_level
    lines = [f"d = {format_rational(root.d_invariant)}, chi_min = {root.chi_min}, stabilization level = {stable}"]
    for level in reversed(root.levels()):
        members = root.level(level)
        label = _grading_label(root, members[0])
        lines.append(f"[{label}] " + " | ".join(vertex.weight.render() for vertex in members))
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Points with nonzero weight

def support_points(
        ctx: LatticeContext,
        F: AdmissibleFamily,
        bounds: Sequence[Tuple[int, int]]
) -> Iterator[Tuple[Point, Tuple[int, ...]]]:
    """
    Every (x, l) with l = 2Mx + k - Mu, low_v <= l_v <= high_v and l_v in the
    support of F_{delta_v}. Points outside these supports have zero weight.
    """
    allowed = [F.support(degree, low, high) for degree, (low, high) in zip(ctx.degrees, bounds)]
    hnf = spinc_lattice(ctx.plumbing)
    twice_det = 2 * ctx.M.det
    for argument in lattice.coset_points(hnf, ctx.a, allowed):
        difference = [value - offset for value, offset in zip(argument, ctx.a)]
        numerators = lattice.mat_vec(ctx.M.adj, difference)
        yield tuple(value // twice_det for value in numerators), argument


def argument_bounds(ctx: LatticeContext, center: Sequence[int], radius: Fraction) -> List[Tuple[int, int]]:
    """
    Integer boxes for l_v when (l - center)^t (-M^{-1}) (l - center) <= radius:
    |l_v - center_v| <= sqrt(radius * |m_v|).
    """
    bounds = []
    for shift, weight in zip(center, ctx.plumbing.weights):
        scaled = radius * -weight
        width = lattice.floor_root_bound(scaled.numerator, scaled.denominator)
        bounds.append((shift - width, shift + width))
    return bounds
