"""ADE root types, Kodaira fiber types and extended Dynkin diagrams."""
import re
from fractions import Fraction
from functools import lru_cache
from typing import List, Literal, Optional, Tuple

import networkx as nx
from pydantic import BaseModel, ConfigDict

from ..errors import RootSystemError
from ..lattice import IntLattice
from ..lattice import integer_matrix as im

Family = Literal["A", "D", "E"]

_FAMILY_ORDER = {"E": 0, "D": 1, "A": 2}


class RootType(BaseModel):
    """Irreducible simply-laced root type such as A8, D16 or E7."""

    model_config = ConfigDict(frozen=True)

    family: Family
    rank: int

    def __init__(self, **data):
        super().__init__(**data)
        if self.family == "A" and self.rank < 1:
            raise RootSystemError(f"A_n needs n >= 1, got A{self.rank}")
        if self.family == "D" and self.rank < 4:
            raise RootSystemError(f"D_n needs n >= 4, got D{self.rank}")
        if self.family == "E" and self.rank not in (6, 7, 8):
            raise RootSystemError(f"E_n needs n in 6, 7, 8, got E{self.rank}")

    @property
    def determinant(self) -> int:
        if self.family == "A":
            return self.rank + 1
        if self.family == "D":
            return 4
        return 9 - self.rank

    @property
    def root_count(self) -> int:
        if self.family == "A":
            return self.rank * (self.rank + 1)
        if self.family == "D":
            return 2 * self.rank * (self.rank - 1)
        return {6: 72, 7: 126, 8: 240}[self.rank]

    @property
    def sort_key(self) -> Tuple[int, int]:
        return _FAMILY_ORDER[self.family], -self.rank

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


def parse_root_type(text: str) -> RootType:
    """Parse "A8", "D16", "E7" (case-insensitive)."""
    match = re.fullmatch(r"\s*([ADEade])\s*(\d+)\s*", text or "")
    if not match:
        raise RootSystemError(f"Cannot parse root type '{text}'; expected e.g. A8, D16, E7")
    return RootType(family=match.group(1).upper(), rank=int(match.group(2)))


def sort_root_types(types) -> List[RootType]:
    """E before D before A, larger ranks first."""
    return sorted(types, key=lambda t: t.sort_key)


def dynkin_edges(t: RootType) -> List[Tuple[int, int]]:
    """Edges of the Dynkin diagram on nodes 0..rank-1.

    A_n is a path; D_n is a path 0..n-2 with node n-1 attached to n-3;
    E_n uses Bourbaki numbering shifted to start at 0.
    """
    n = t.rank
    if t.family == "A":
        return [(i, i + 1) for i in range(n - 1)]
    if t.family == "D":
        return [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    bourbaki = [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)]
    return [(a - 1, b - 1) for a, b in bourbaki if a <= n and b <= n]


def dynkin_graph(t: RootType) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(range(t.rank))
    graph.add_edges_from(dynkin_edges(t))
    return graph


@lru_cache(maxsize=None)
def _cartan_rows(family: str, rank: int) -> Tuple[Tuple[int, ...], ...]:
    t = RootType(family=family, rank=rank)
    gram = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
    for a, b in dynkin_edges(t):
        gram[a][b] = gram[b][a] = -1
    return tuple(tuple(row) for row in gram)


def cartan_gram(t: RootType) -> IntLattice:
    """Positive-definite Cartan matrix of t as a lattice."""
    return IntLattice(gram=_cartan_rows(t.family, t.rank), label=str(t))


def cartan_rows(t: RootType) -> Tuple[Tuple[int, ...], ...]:
    return _cartan_rows(t.family, t.rank)


# --- Kodaira types -----------------------------------------------------------

_FIXED_TAGS = ("II", "III", "IV", "II*", "III*", "IV*")

_FIXED_COMPONENTS = {"II": 1, "III": 2, "IV": 3, "IV*": 7, "III*": 8, "II*": 9}


class KodairaType(BaseModel):
    """Kodaira fiber type; n is set exactly for I_n and I_n*."""

    model_config = ConfigDict(frozen=True)

    tag: Literal["I", "I*", "II", "III", "IV", "II*", "III*", "IV*"]
    n: Optional[int] = None

    def __init__(self, **data):
        super().__init__(**data)
        if self.tag == "I" and (self.n is None or self.n < 1):
            raise RootSystemError(f"I_n needs n >= 1, got {self.n}")
        if self.tag == "I*" and (self.n is None or self.n < 0):
            raise RootSystemError(f"I_n* needs n >= 0, got {self.n}")
        if self.tag in _FIXED_TAGS and self.n is not None:
            raise RootSystemError(f"{self.tag} takes no parameter")

    @property
    def component_count(self) -> int:
        if self.tag == "I":
            return self.n
        if self.tag == "I*":
            return self.n + 5
        return _FIXED_COMPONENTS[self.tag]

    @property
    def is_reducible(self) -> bool:
        return self.component_count > 1

    @property
    def root_type(self) -> Optional[RootType]:
        """Root type of the non-identity components, None for irreducible fibers."""
        if self.tag == "I":
            return RootType(family="A", rank=self.n - 1) if self.n >= 2 else None
        if self.tag == "I*":
            return RootType(family="D", rank=self.n + 4)
        return {
            "III": RootType(family="A", rank=1),
            "IV": RootType(family="A", rank=2),
            "IV*": RootType(family="E", rank=6),
            "III*": RootType(family="E", rank=7),
            "II*": RootType(family="E", rank=8),
        }.get(self.tag)

    def __str__(self) -> str:
        if self.tag == "I":
            return f"I{self.n}"
        if self.tag == "I*":
            return f"I{self.n}*"
        return self.tag


def parse_kodaira(text: str) -> KodairaType:
    """Parse "I16", "I8*", "II*", "III" and friends (case-insensitive)."""
    token = (text or "").strip().upper()
    if token in _FIXED_TAGS:
        return KodairaType(tag=token)
    match = re.fullmatch(r"I(\d+)(\*?)", token)
    if not match:
        raise RootSystemError(
            f"Cannot parse Kodaira type '{text}'; expected I<n>, I<n>*, II, III, IV, II*, III*, IV*"
        )
    n = int(match.group(1))
    return KodairaType(tag="I*" if match.group(2) else "I", n=n)


def kodaira_candidates(t: RootType) -> List[KodairaType]:
    """Fiber types whose non-identity components span t.

    A1 and A2 stay ambiguous: lattice data cannot tell I2 from III or I3 from IV.
    """
    if t.family == "A":
        if t.rank == 1:
            return [KodairaType(tag="I", n=2), KodairaType(tag="III")]
        if t.rank == 2:
            return [KodairaType(tag="I", n=3), KodairaType(tag="IV")]
        return [KodairaType(tag="I", n=t.rank + 1)]
    if t.family == "D":
        return [KodairaType(tag="I*", n=t.rank - 4)]
    return [KodairaType(tag={6: "IV*", 7: "III*", 8: "II*"}[t.rank])]


class AffineDiagram(BaseModel):
    """Extended Dynkin diagram of a reducible fiber in the NS sign convention.

    Node 0 is the extending node. Node order follows the way fiber components
    are conventionally listed, so marks read off in order give the fiber's
    multiplicities.

    Attributes:
        kodaira: Fiber type
        gram: Intersection matrix of the components (-2 on the diagonal)
        marks: Multiplicity of each component in the fiber class
        edges: (i, j, intersection) for intersecting component pairs
    """

    model_config = ConfigDict(frozen=True)

    kodaira: KodairaType
    gram: Tuple[Tuple[int, ...], ...]
    marks: Tuple[int, ...]
    edges: Tuple[Tuple[int, int, int], ...]

    @property
    def size(self) -> int:
        return len(self.marks)

    @property
    def simple_nodes(self) -> List[int]:
        return [i for i, m in enumerate(self.marks) if m == 1]

    def as_graph(self) -> nx.Graph:
        """Weighted graph with node attribute ``mark`` and edge attribute ``weight``."""
        graph = nx.Graph()
        for i, m in enumerate(self.marks):
            graph.add_node(i, mark=m)
        for i, j, w in self.edges:
            graph.add_edge(i, j, weight=w)
        return graph


def _chain(marks: List[int]) -> Tuple[List[int], List[Tuple[int, int, int]]]:
    return list(marks), [(i, i + 1, 1) for i in range(len(marks) - 1)]


@lru_cache(maxsize=None)
def _affine(tag: str, n: Optional[int]) -> AffineDiagram:
    kodaira = KodairaType(tag=tag, n=n)
    if not kodaira.is_reducible:
        raise RootSystemError(f"{kodaira} is irreducible and has no affine diagram")

    if tag in ("I", "III", "IV"):
        size = kodaira.component_count
        marks = [1] * size
        if size == 2:
            edges = [(0, 1, 2)]
        else:
            edges = [(i, (i + 1) % size, 1) for i in range(size)]
    elif tag == "I*":
        chain = n + 1
        marks = [1, 1] + [2] * chain + [1, 1]
        last = 1 + chain
        edges = [(0, 2, 1), (1, 2, 1)]
        edges += [(i, i + 1, 1) for i in range(2, last)]
        edges += [(last, last + 1, 1), (last, last + 2, 1)]
    elif tag == "IV*":
        marks, edges = _chain([1, 2, 3, 2, 1])
        marks += [2, 1]
        edges += [(2, 5, 1), (5, 6, 1)]
    elif tag == "III*":
        marks, edges = _chain([1, 2, 3, 4, 3, 2, 1])
        marks += [2]
        edges += [(3, 7, 1)]
    else:
        marks, edges = _chain([1, 2, 3, 4, 5, 6, 4, 2])
        marks += [3]
        edges += [(5, 8, 1)]

    size = len(marks)
    gram = [[-2 if i == j else 0 for j in range(size)] for i in range(size)]
    for i, j, w in edges:
        gram[i][j] = gram[j][i] = w
    diagram = AffineDiagram(
        kodaira=kodaira,
        gram=tuple(tuple(r) for r in gram),
        marks=tuple(marks),
        edges=tuple(edges),
    )
    if any(im.vec_mat(marks, gram)):
        raise RootSystemError(f"marks of {kodaira} are not in the kernel of its diagram")
    return diagram


def affine_data(k: KodairaType) -> AffineDiagram:
    """Extended Dynkin diagram with fiber multiplicities for a reducible fiber type.

    Raises:
        RootSystemError: For I1 and II
    """
    return _affine(k.tag, k.n)


def contribution(k: KodairaType, component_index: int, zero_index: int = 0) -> Fraction:
    """Local height correction of a section meeting ``component_index``.

    The zero section meets ``zero_index``. The value is the diagonal entry of
    the inverse Cartan matrix of the remaining components, e.g. i(n-i)/n on
    I_n, 3/2 on III*, 4/3 on IV*, 1 or 1 + n/4 on I_n*.

    Raises:
        RootSystemError: If either index is not a simple (mark 1) component
    """
    diagram = affine_data(k)
    for label, idx in (("section", component_index), ("zero section", zero_index)):
        if not 0 <= idx < diagram.size:
            raise RootSystemError(f"{k} has no component {idx}")
        if diagram.marks[idx] != 1:
            raise RootSystemError(
                f"the {label} cannot meet component {idx} of {k}: its multiplicity is "
                f"{diagram.marks[idx]}"
            )
    if component_index == zero_index:
        return Fraction(0)
    keep = [i for i in range(diagram.size) if i != zero_index]
    cartan = [[-diagram.gram[i][j] for j in keep] for i in keep]
    inverse = im.rational_inverse(cartan)
    pos = keep.index(component_index)
    return inverse[pos][pos]
