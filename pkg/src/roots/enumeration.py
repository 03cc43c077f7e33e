"""Root enumeration and ADE decomposition of root systems."""
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Dict, List, Sequence, Set, Tuple

import networkx as nx

from ..errors import InternalCheckError, RootSystemError
from ..lattice import IntLattice
from ..lattice import integer_matrix as im
from ..logging_config import get_logger
from .types import RootType, cartan_rows, dynkin_graph, sort_root_types

logger = get_logger("k3fib.roots")

Vector = Tuple[int, ...]


def _cholesky(gram: Sequence[Sequence[int]]) -> List[List[Fraction]]:
    """Quadratic-form completion q with Q(x) = Σ q_ii (x_i + Σ_{j>i} q_ij x_j)².

    Raises:
        RootSystemError: If the form is not positive definite
    """
    n = len(gram)
    q = [[Fraction(x) for x in row] for row in gram]
    for i in range(n):
        if q[i][i] <= 0:
            raise RootSystemError("root enumeration needs a positive definite lattice")
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    return q


def short_vectors(lattice: IntLattice, bound: int) -> List[Vector]:
    """All nonzero v with v·G·v <= bound; both v and -v are returned.

    Exact Fincke-Pohst enumeration over the rationals.
    """
    n = lattice.rank
    if n == 0:
        return []
    q = _cholesky(lattice.gram)
    found: List[Vector] = []
    x = [0] * n

    def descend(i: int, remaining: Fraction) -> None:
        center = -sum(q[i][j] * x[j] for j in range(i + 1, n))
        radius = isqrt(int(remaining / q[i][i])) + 1
        low = int(center) - radius - 1
        high = int(center) + radius + 1
        for value in range(low, high + 1):
            used = q[i][i] * (value - center) ** 2
            if used > remaining:
                continue
            x[i] = value
            if i == 0:
                if any(x):
                    found.append(tuple(x))
            else:
                descend(i - 1, remaining - used)
        x[i] = 0

    descend(n - 1, Fraction(bound))
    return found


def enumerate_roots(lattice: IntLattice) -> Set[Vector]:
    """All vectors of norm 2 in a positive definite lattice.

    Raises:
        RootSystemError: If the lattice is not positive definite
    """
    roots = {v for v in short_vectors(lattice, 2) if lattice.norm(v) == 2}
    logger.debug(
        "Enumerated roots",
        extra={"extra_data": {"lattice": str(lattice), "roots": len(roots)}}
    )
    return roots


def positive_roots_from_simple(cartan: Sequence[Sequence[int]]) -> List[Vector]:
    """Positive roots of a simply-laced system as coefficient vectors over the simple roots.

    β + αᵢ is a root exactly when (β, αᵢ) = -1.
    """
    n = len(cartan)
    frontier = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    seen = set(frontier)
    ordered = list(frontier)
    while frontier:
        nxt = []
        for beta in frontier:
            pairing = im.vec_mat(beta, cartan)
            for i in range(n):
                if pairing[i] == -1:
                    gamma = tuple(b + (1 if k == i else 0) for k, b in enumerate(beta))
                    if gamma not in seen:
                        seen.add(gamma)
                        ordered.append(gamma)
                        nxt.append(gamma)
        frontier = nxt
    return ordered


@lru_cache(maxsize=None)
def roots_of_type(t: RootType) -> Tuple[Vector, ...]:
    """All roots of t in simple-root coordinates, positive ones first."""
    positive = positive_roots_from_simple(cartan_rows(t))
    return tuple(positive + [tuple(-c for c in v) for v in positive])


def simple_system(roots: Sequence[Sequence[int]]) -> List[Vector]:
    """A simple system for a finite root set.

    Positive roots are those on which the functional with weights 1, N, N², ...
    is positive (N exceeds twice any coordinate, so no root lies on its kernel);
    simple roots are the positive roots that are not a sum of two positive roots.
    """
    roots = [tuple(r) for r in roots]
    if not roots:
        return []
    base = 2 * max(abs(c) for r in roots for c in r) + 1

    def height(v: Vector) -> int:
        return sum(c * base ** i for i, c in enumerate(v))

    positive = sorted((r for r in roots if height(r) > 0), key=height)
    positive_set = set(positive)
    simple = []
    for idx, beta in enumerate(positive):
        decomposable = False
        for alpha in positive[:idx]:
            if tuple(b - a for a, b in zip(alpha, beta)) in positive_set:
                decomposable = True
                break
        if not decomposable:
            simple.append(beta)
    return simple


def identify_component(graph: nx.Graph) -> RootType:
    """ADE type of a connected simply-laced Dynkin graph."""
    n = graph.number_of_nodes()
    degrees = sorted(d for _, d in graph.degree())
    if n == 1 or (degrees[-1] <= 2 and degrees.count(1) == 2):
        candidate = RootType(family="A", rank=n)
    else:
        branch = [v for v, d in graph.degree() if d == 3]
        if len(branch) != 1:
            raise InternalCheckError(f"Dynkin component with degrees {degrees} is not ADE")
        center = branch[0]
        arms = []
        for start in graph.neighbors(center):
            length, prev, cur = 1, center, start
            while True:
                onward = [w for w in graph.neighbors(cur) if w != prev]
                if not onward:
                    break
                prev, cur = cur, onward[0]
                length += 1
            arms.append(length)
        arms.sort()
        if arms[0] == 1 and arms[1] == 1:
            candidate = RootType(family="D", rank=n)
        elif arms[:2] == [1, 2] and arms[2] in (2, 3, 4):
            candidate = RootType(family="E", rank=n)
        else:
            raise InternalCheckError(f"Dynkin component with arms {arms} is not ADE")
    if not nx.is_isomorphic(graph, dynkin_graph(candidate)):
        raise InternalCheckError(f"component does not match the {candidate} diagram")
    return candidate


def ade_components(
    roots: Sequence[Sequence[int]], gram: Sequence[Sequence[int]]
) -> List[Tuple[RootType, List[Vector]]]:
    """Split a root system into irreducible components.

    Args:
        roots: Every root, as coordinate vectors in the basis of gram
        gram: Positive definite Gram matrix the roots are measured with

    Returns:
        (type, simple roots) per component, E before D before A, larger first
    """
    simple = simple_system(roots)
    graph = nx.Graph()
    graph.add_nodes_from(range(len(simple)))
    for i in range(len(simple)):
        for j in range(i + 1, len(simple)):
            pairing = im.bilinear(simple[i], gram, simple[j])
            if pairing == -1:
                graph.add_edge(i, j)
            elif pairing != 0:
                raise InternalCheckError(
                    f"simple roots {i} and {j} pair to {pairing}; the system is not simply laced"
                )
    components = []
    for nodes in nx.connected_components(graph):
        ordered = sorted(nodes)
        component_type = identify_component(graph.subgraph(ordered))
        components.append((component_type, [simple[k] for k in ordered]))
    components.sort(key=lambda item: item[0].sort_key)
    return components


def ade_decompose_roots(
    roots: Sequence[Sequence[int]], gram: Sequence[Sequence[int]]
) -> List[RootType]:
    """Irreducible root types of a root system given by its roots."""
    return [t for t, _ in ade_components(roots, gram)]


def ade_decompose(lattice: IntLattice) -> List[RootType]:
    """Root types of the root sublattice of a positive definite lattice."""
    if lattice.rank == 0:
        return []
    types = ade_decompose_roots(sorted(enumerate_roots(lattice)), lattice.gram)
    return sort_root_types(types)


def root_type_counts(types: Sequence[RootType]) -> Dict[RootType, int]:
    counts: Dict[RootType, int] = {}
    for t in types:
        counts[t] = counts.get(t, 0) + 1
    return counts
