"""Elliptic fibrations from primitive embeddings of a root lattice T0 into Niemeier lattices.

For a K3 surface whose transcendental data is captured by T0, each primitive
embedding T0 ⊂ N into a Niemeier lattice gives a frame W = T0^⊥. The root part
of W gives the reducible fibers; the rest gives the Mordell-Weil group.
"""
import multiprocessing
from collections import deque
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict

from ..errors import EmbeddingError, InternalCheckError, UniquenessViolation
from ..lattice import FiniteAbelianGroup, Sublattice, quotient_group, saturation, smith_form
from ..lattice import integer_matrix as im
from ..logging_config import LoggerAdapter, get_logger
from ..niemeier import NiemeierRealization, NiemeierSpec, catalog, get_spec, realize
from ..roots import (
    KodairaType,
    RootType,
    ade_components,
    cartan_rows,
    dynkin_edges,
    kodaira_candidates,
    parse_root_type,
    roots_of_type,
)

logger = get_logger("k3fib.nishiyama")

Vector = Tuple[int, ...]

SUPPORTED_T0 = ("A8", "D8", "E8")


class EmbeddingSpec(BaseModel):
    """A root-lattice embedding of T0 into one component of a Niemeier lattice.

    Root images are in simple-root coordinates of the whole Niemeier root lattice.
    """

    model_config = ConfigDict(frozen=True)

    t0: RootType
    target: NiemeierSpec
    component_index: int
    root_images: Tuple[Vector, ...]

    @property
    def component(self) -> RootType:
        return self.target.components[self.component_index]


class Frame(BaseModel):
    """Orthogonal complement W of an embedded T0 and the fibration data read off it."""

    model_config = ConfigDict(frozen=True)

    embedding: EmbeddingSpec
    w: Sublattice
    root_part: Tuple[RootType, ...]
    fibers: Tuple[Tuple[KodairaType, ...], ...]
    mw_rank: int
    mw_torsion: FiniteAbelianGroup

    @property
    def invariants(self) -> Tuple:
        return (
            abs(self.w.as_lattice().determinant),
            tuple(str(t) for t in self.root_part),
            self.mw_torsion.invariant_factors,
        )


class ClassificationRow(BaseModel):
    """One elliptic fibration: the Niemeier lattice, the embedding target and the frame data."""

    model_config = ConfigDict(frozen=True)

    niemeier: str
    target: RootType
    root_part: Tuple[RootType, ...]
    fibers: Tuple[Tuple[KodairaType, ...], ...]
    mw_rank: int
    mw_torsion: FiniteAbelianGroup

    @property
    def key(self) -> Tuple:
        return (self.niemeier, str(self.target), tuple(str(t) for t in self.root_part),
                self.mw_torsion.invariant_factors)


def _admits_primitive(t0: RootType, component: RootType) -> bool:
    name = str(t0)
    if name == "A8":
        return (component.family == "A" and component.rank >= 8) or (
            component.family == "D" and component.rank >= 9
        )
    if name == "D8":
        return component.family == "D" and component.rank >= 8
    if name == "E8":
        return component.family == "E" and component.rank == 8
    raise EmbeddingError(
        f"Unsupported T0: {name}. Available: {', '.join(SUPPORTED_T0)}"
    )


def admissible_targets(t0: RootType) -> List[Tuple[NiemeierSpec, int]]:
    """(Niemeier lattice, component index) pairs admitting a primitive embedding of t0.

    Only the first of several equal components is listed, since the glue
    permutes equal components.

    Raises:
        EmbeddingError: For T0 other than A8, D8, E8
    """
    _admits_primitive(t0, t0)
    pairs = []
    for spec in catalog():
        seen = set()
        for index, component in enumerate(spec.components):
            if component in seen:
                continue
            seen.add(component)
            if _admits_primitive(t0, component):
                pairs.append((spec, index))
    return pairs


def _search_order(t: RootType) -> List[int]:
    adjacency: Dict[int, List[int]] = {i: [] for i in range(t.rank)}
    for a, b in dynkin_edges(t):
        adjacency[a].append(b)
        adjacency[b].append(a)
    order, queue, seen = [], deque([0]), {0}
    while queue:
        node = queue.popleft()
        order.append(node)
        for nb in sorted(adjacency[node]):
            if nb not in seen:
                seen.add(nb)
                queue.append(nb)
    return order


def _component_embeddings(t0: RootType, component: RootType):
    """Yield root tuples in component coordinates whose Gram is the Cartan matrix of t0."""
    cartan = cartan_rows(component)
    target = cartan_rows(t0)
    roots = sorted(roots_of_type(component))
    order = _search_order(t0)
    images: Dict[int, Vector] = {order[0]: roots[0]}

    def pairing(u: Vector, v: Vector) -> int:
        return im.bilinear(u, cartan, v)

    def extend(depth: int):
        if depth == len(order):
            yield tuple(images[i] for i in range(t0.rank))
            return
        node = order[depth]
        placed = order[:depth]
        for r in roots:
            if all(pairing(r, images[p]) == target[node][p] for p in placed):
                images[node] = r
                yield from extend(depth + 1)
                del images[node]

    yield from extend(1)


def _is_primitive_in(realization: NiemeierRealization, rows: Sequence[Vector]) -> bool:
    coords = [[int(c) for c in realization.to_lattice_coordinates(r)] for r in rows]
    return all(d == 1 for d in smith_form(coords).diagonal)


def _lift(spec: NiemeierSpec, component_index: int, local: Vector) -> Vector:
    start = spec.component_offsets()[component_index]
    full = [0] * spec.rank
    full[start:start + len(local)] = local
    return tuple(full)


def find_embedding(
    t0: RootType, target: NiemeierSpec, component_index: int, sample: int = 1
) -> EmbeddingSpec:
    """Find a primitive embedding of t0 into one root component of target.

    The first root is fixed (the Weyl group acts transitively on roots) and the
    rest are found by backtracking with Cartan-row pruning, keeping only images
    whose span is primitive in N.

    Args:
        t0: Root type to embed
        target: Niemeier lattice
        component_index: Component receiving the embedding
        sample: Number of primitive embeddings whose frames are compared

    Raises:
        EmbeddingError: If no primitive embedding exists
        UniquenessViolation: If sampled embeddings give frames with different invariants
    """
    if not _admits_primitive(t0, target.components[component_index]):
        raise EmbeddingError(
            f"{t0} does not embed primitively into component {component_index} "
            f"({target.components[component_index]}) of {target.name}"
        )
    realization = realize(target)
    component = target.components[component_index]
    found: List[EmbeddingSpec] = []
    tried = 0
    for local_images in _component_embeddings(t0, component):
        tried += 1
        images = tuple(_lift(target, component_index, r) for r in local_images)
        if not _is_primitive_in(realization, images):
            continue
        found.append(EmbeddingSpec(t0=t0, target=target, component_index=component_index,
                                   root_images=images))
        if len(found) >= sample:
            break
    logger.debug(
        "Embedding search finished",
        extra={"extra_data": {"t0": str(t0), "niemeier": target.name, "component": str(component),
                              "candidates_tried": tried, "primitive_found": len(found)}}
    )
    if not found:
        raise EmbeddingError(f"no primitive embedding of {t0} into {component} of {target.name}")
    if len(found) > 1:
        frames = [frame(e) for e in found]
        if len({f.invariants for f in frames}) > 1:
            raise UniquenessViolation(
                f"primitive embeddings of {t0} into {component} of {target.name} have "
                f"non-isometric complements",
                complements=[{"det": f.invariants[0], "roots": list(f.invariants[1]),
                              "torsion": list(f.invariants[2])} for f in frames],
            )
    return found[0]


def frame(embedding: EmbeddingSpec) -> Frame:
    """Compute W = T0^⊥ in N with its root part, Mordell-Weil rank and torsion.

    Raises:
        InternalCheckError: If |det W| differs from |det T0|
    """
    spec = embedding.target
    realization = realize(spec)
    gram_n = realization.lattice.gram
    t_rows = [[int(c) for c in realization.to_lattice_coordinates(r)] for r in embedding.root_images]
    pairing = im.mat_mul(gram_n, im.transpose(t_rows))
    kernel = im.left_kernel(pairing)
    w = Sublattice(ambient=realization.lattice, basis=kernel)

    root_gram = realization.root_gram
    w_roots: List[Vector] = []
    for index, component in enumerate(spec.components):
        for local in roots_of_type(component):
            r = _lift(spec, index, local)
            if index == embedding.component_index and any(
                im.bilinear(r, root_gram, t) for t in embedding.root_images
            ):
                continue
            w_roots.append(r)
    components = ade_components(w_roots, root_gram) if w_roots else []
    root_part = tuple(t for t, _ in components)
    root_rank = sum(t.rank for t in root_part)

    if components:
        simple = [r for _, simple_roots in components for r in simple_roots]
        simple_n = [[int(c) for c in realization.to_lattice_coordinates(r)] for r in simple]
        w_root = Sublattice(ambient=realization.lattice, basis=simple_n)
        torsion = quotient_group(saturation(realization.lattice, w_root), w_root)
    else:
        torsion = FiniteAbelianGroup()

    w_det = abs(w.as_lattice().determinant)
    if w_det != embedding.t0.determinant:
        raise InternalCheckError(
            f"frame of {embedding.t0} in {spec.name} has |det| {w_det}, expected {embedding.t0.determinant}"
        )
    return Frame(
        embedding=embedding,
        w=w,
        root_part=root_part,
        fibers=tuple(tuple(kodaira_candidates(t)) for t in root_part),
        mw_rank=w.rank - root_rank,
        mw_torsion=torsion,
    )


def _classify_target(args: Tuple[str, str, int, int]) -> ClassificationRow:
    t0_name, spec_name, component_index, sample = args
    t0 = parse_root_type(t0_name)
    spec = get_spec(spec_name)
    log = LoggerAdapter(logger, {"extra_data": {"t0": t0_name, "niemeier": spec_name,
                                                "component": component_index}})
    embedding = find_embedding(t0, spec, component_index, sample=sample)
    result = frame(embedding)
    log.info("Computed frame", extra={"extra_data": {
        "root_part": [str(t) for t in result.root_part],
        "mw_rank": result.mw_rank,
        "torsion": list(result.mw_torsion.invariant_factors),
    }})
    return ClassificationRow(
        niemeier=spec.name,
        target=embedding.component,
        root_part=result.root_part,
        fibers=result.fibers,
        mw_rank=result.mw_rank,
        mw_torsion=result.mw_torsion,
    )


def classify(t0: RootType, workers: int = 1, sample: int = 1) -> List[ClassificationRow]:
    """One row per admissible embedding target, in catalog order.

    Args:
        t0: A8, D8 or E8
        workers: Worker processes; 1 computes in-process
        sample: Embeddings compared per target for the uniqueness check

    Raises:
        EmbeddingError: For unsupported T0
    """
    jobs = [(str(t0), spec.name, index, sample) for spec, index in admissible_targets(t0)]
    logger.info("Classifying fibrations", extra={"extra_data": {"t0": str(t0), "targets": len(jobs),
                                                               "workers": workers}})
    if workers > 1 and len(jobs) > 1:
        with multiprocessing.Pool(min(workers, len(jobs))) as pool:
            rows = pool.map(_classify_target, jobs)
    else:
        rows = [_classify_target(job) for job in jobs]

    unique: List[ClassificationRow] = []
    seen = set()
    for row in rows:
        if row.key not in seen:
            seen.add(row.key)
            unique.append(row)
    return unique


def frame_for(t0: RootType, niemeier: str, component: Optional[RootType] = None) -> Frame:
    """Frame of the admissible target in a named Niemeier lattice.

    Raises:
        EmbeddingError: If the lattice has no admissible (matching) component
    """
    for spec, index in admissible_targets(t0):
        if spec.name == niemeier and (component is None or spec.components[index] == component):
            return frame(find_embedding(t0, spec, index))
    raise EmbeddingError(f"{niemeier} has no admissible component for {t0}")
