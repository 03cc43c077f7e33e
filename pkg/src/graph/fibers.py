"""Searching a curve configuration for fibers and decomposing a fiber class."""
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
from networkx.algorithms import isomorphism
from pydantic import BaseModel, ConfigDict

from ..errors import CurveError, InternalCheckError
from ..lattice import integer_matrix as im
from ..logging_config import get_logger
from ..roots import KodairaType, RootType, affine_data
from ..roots.enumeration import identify_component
from .curve_config import CurveConfig, fiber_marks
from .divisors import DivisorClass, class_key, divisor, meet_curve, pairing

logger = get_logger("k3fib.graph")

RANK_BUDGET = 16

_EDGE_MATCH = isomorphism.numerical_edge_match("weight", 1)


class FiberSeed(BaseModel):
    """A set of curves forming a fiber of the given Kodaira type."""

    model_config = ConfigDict(frozen=True)

    kodaira: KodairaType
    support: Tuple[str, ...]
    marks: Tuple[int, ...]
    fiber_class: DivisorClass


class ReducibleFiber(BaseModel):
    """A connected group of curves orthogonal to a fiber class.

    A complete fiber carries its Kodaira type and marks. A partial one lists
    only some components; ``kodaira`` is then the expected type it was matched
    to (None when nothing matched) and ``root_type`` is the type of the listed part.
    """

    model_config = ConfigDict(frozen=True)

    support: Tuple[str, ...]
    complete: bool
    kodaira: Optional[KodairaType] = None
    candidates: Tuple[KodairaType, ...] = ()
    marks: Tuple[int, ...] = ()
    root_type: Optional[RootType] = None

    @property
    def rank(self) -> int:
        return len(self.support) - 1 if self.complete else len(self.support)

    @property
    def label(self) -> str:
        if self.complete:
            return "|".join(str(k) for k in self.candidates)
        if self.kodaira is not None:
            return f"{self.kodaira} (partial)"
        return f"{self.root_type} (partial)"


def curve_graph(config: CurveConfig, names: Optional[Sequence[str]] = None, self_int: Optional[int] = None) -> nx.Graph:
    """Dual graph: one node per curve, an edge weighted by m when two curves meet m > 0 times."""
    chosen = list(names) if names is not None else config.names
    if self_int is not None:
        chosen = [n for n in chosen if config.meet(n, n) == self_int]
    graph = nx.Graph()
    for n in chosen:
        graph.add_node(n, self_int=config.meet(n, n))
    for i, a in enumerate(chosen):
        for b in chosen[i + 1:]:
            m = config.meet(a, b)
            if m > 0:
                graph.add_edge(a, b, weight=m)
    return graph


def _affine_mapping(support_graph: nx.Graph, kodaira: KodairaType) -> Optional[Dict[str, int]]:
    """An isomorphism from a fiber support to the affine diagram of ``kodaira``."""
    pattern = affine_data(kodaira).as_graph()
    matcher = isomorphism.GraphMatcher(support_graph, pattern, edge_match=_EDGE_MATCH)
    return next(matcher.isomorphisms_iter(), None)


def find_fibers(config: CurveConfig, kodaira: KodairaType) -> List[FiberSeed]:
    """Every set of -2 curves whose dual graph is the extended diagram of ``kodaira``.

    The match is an induced subgraph isomorphism with intersection numbers as
    edge weights; results are deduplicated by fiber class and sorted by support.

    Raises:
        RootSystemError: For irreducible Kodaira types
    """
    diagram = affine_data(kodaira)
    pattern = diagram.as_graph()
    graph = curve_graph(config, self_int=-2)
    position = config.index
    matcher = isomorphism.GraphMatcher(graph, pattern, edge_match=_EDGE_MATCH)
    found: Dict[Tuple[int, ...], FiberSeed] = {}
    supports = set()
    for mapping in matcher.subgraph_isomorphisms_iter():
        support_key = frozenset(mapping)
        if support_key in supports:
            continue
        supports.add(support_key)
        by_node = {node: curve for curve, node in mapping.items()}
        support = tuple(by_node[i] for i in range(diagram.size))
        fiber = divisor(config, zip(support, diagram.marks))
        if pairing(config, fiber, fiber) != 0:
            raise InternalCheckError(f"fiber {fiber} of type {kodaira} has nonzero square")
        key = class_key(config, fiber)
        if key not in found:
            found[key] = FiberSeed(kodaira=kodaira, support=support, marks=diagram.marks, fiber_class=fiber)
    seeds = sorted(found.values(), key=lambda s: sorted(position[c] for c in s.support))
    logger.debug(
        "Fiber search finished",
        extra={"extra_data": {"config": config.name, "kodaira": str(kodaira), "found": len(seeds)}}
    )
    return seeds


def fiber_class_of(config: CurveConfig, support: Sequence[str], marks: Optional[Sequence[int]] = None) -> DivisorClass:
    """Class of a fiber given its components (marks computed when omitted).

    Raises:
        CurveError: If the curves do not form a fiber
    """
    if marks is None:
        marks = fiber_marks(config, support)
        if marks is None:
            raise CurveError(f"curves {', '.join(support)} do not form a fiber")
    fiber = divisor(config, zip(support, marks))
    if pairing(config, fiber, fiber) != 0:
        raise CurveError(f"{fiber} has self-intersection {pairing(config, fiber, fiber)}, not 0")
    return fiber


def sections_of(config: CurveConfig, fiber: DivisorClass) -> List[str]:
    """Curves meeting the fiber class once, in listed order."""
    return [n for n in config.names if meet_curve(config, fiber, n) == 1]


def _complete_candidates(component: nx.Graph) -> List[KodairaType]:
    size = component.number_of_nodes()
    guesses = [KodairaType(tag="I", n=size)]
    if size >= 5:
        guesses.append(KodairaType(tag="I*", n=size - 5))
    guesses += {2: [KodairaType(tag="III")], 3: [KodairaType(tag="IV")],
                7: [KodairaType(tag="IV*")], 8: [KodairaType(tag="III*")],
                9: [KodairaType(tag="II*")]}.get(size, [])
    return [k for k in guesses if _affine_mapping(component, k) is not None]


def _embeds(partial: nx.Graph, kodaira: KodairaType) -> bool:
    pattern = affine_data(kodaira).as_graph()
    matcher = isomorphism.GraphMatcher(pattern, partial, edge_match=_EDGE_MATCH)
    return matcher.subgraph_is_isomorphic()


def fiber_decomposition(
    config: CurveConfig, fiber: DivisorClass, expected: Optional[Sequence[KodairaType]] = None
) -> List[ReducibleFiber]:
    """Group the listed curves orthogonal to a fiber class into reducible fibers.

    A connected group with a semidefinite Gram matrix is a complete fiber and
    gets its Kodaira type (two types when I2/III or I3/IV share a graph, unless
    ``expected`` decides). A definite group is part of a fiber whose other
    components are not listed; it is matched by subgraph embedding to one of
    the ``expected`` types left over by the complete fibers.

    Raises:
        CurveError: If the orthogonal curves exceed the rank budget or do not form fibers
    """
    orthogonal = [n for n in config.names if config.meet(n, n) == -2 and meet_curve(config, fiber, n) == 0]
    graph = curve_graph(config, orthogonal)
    position = config.index
    groups = sorted(
        (sorted(c, key=position.get) for c in nx.connected_components(graph)),
        key=lambda c: position[c[0]],
    )
    pool = list(expected or [])
    complete: List[ReducibleFiber] = []
    partial_groups: List[List[str]] = []
    for group in groups:
        gram = [[config.meet(a, b) for b in group] for a in group]
        positive, negative = im.signature(gram)
        if positive:
            raise CurveError(f"curves {', '.join(group)} orthogonal to {fiber} are not fiber components")
        if negative == len(group):
            partial_groups.append(group)
            continue
        marks = fiber_marks(config, group)
        if marks is None:
            raise CurveError(f"curves {', '.join(group)} orthogonal to {fiber} do not form a fiber")
        component = graph.subgraph(group)
        candidates = _complete_candidates(component)
        if not candidates:
            raise InternalCheckError(f"fiber {', '.join(group)} matches no Kodaira type")
        chosen = next((k for k in candidates if k in pool), None)
        if chosen is not None:
            pool.remove(chosen)
            candidates = [chosen]
        complete.append(ReducibleFiber(
            support=tuple(group), complete=True, kodaira=candidates[0] if len(candidates) == 1 else None,
            candidates=tuple(candidates), marks=tuple(marks),
        ))

    partial: List[ReducibleFiber] = []
    for group in partial_groups:
        component = graph.subgraph(group)
        root_type = identify_component(component)
        match = next((k for k in pool if k.is_reducible and _embeds(component, k)), None)
        if match is not None:
            pool.remove(match)
        partial.append(ReducibleFiber(
            support=tuple(group), complete=False, kodaira=match,
            candidates=(match,) if match is not None else (),
            root_type=root_type,
        ))

    fibers = complete + partial
    total = sum(f.rank for f in fibers)
    if total > RANK_BUDGET:
        raise CurveError(f"reducible fibers of {fiber} have total rank {total}, more than {RANK_BUDGET}")
    return fibers
