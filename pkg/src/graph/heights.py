"""Néron-Tate heights of sections from intersection data."""
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from networkx.algorithms import isomorphism
from pydantic import BaseModel, ConfigDict

from ..errors import CurveError
from ..logging_config import get_logger
from ..roots import KodairaType, affine_data, contribution
from .curve_config import CurveConfig
from .divisors import DivisorClass, meet_curve
from .fibers import _EDGE_MATCH, ReducibleFiber, _affine_mapping, curve_graph, fiber_decomposition

logger = get_logger("k3fib.graph")


class HeightReport(BaseModel):
    """h(P) = 2χ + 2(P·O) − Σ contributions, with every term kept."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    section: str
    zero: str
    euler_term: int
    pairing_term: int
    contributions: Tuple[Tuple[str, Fraction], ...]
    value: Fraction

    @property
    def is_torsion(self) -> bool:
        return self.value == 0


def _met_components(config: CurveConfig, curve: str, support: Sequence[str]) -> List[str]:
    return [c for c in support if config.meet(curve, c) > 0]


def _complete_nodes(config: CurveConfig, fiber: ReducibleFiber, curves: Sequence[str]) -> Tuple[KodairaType, List[int]]:
    kodaira = fiber.kodaira or fiber.candidates[0]
    graph = curve_graph(config, fiber.support)
    mapping = _affine_mapping(graph, kodaira)
    nodes = []
    for curve in curves:
        met = _met_components(config, curve, fiber.support)
        if len(met) != 1:
            raise CurveError(f"{curve} does not meet exactly one component of the {kodaira} fiber")
        nodes.append(mapping[met[0]])
    return kodaira, nodes


def _partial_nodes(config: CurveConfig, fiber: ReducibleFiber, curves: Sequence[str]) -> Tuple[KodairaType, List[int]]:
    """Place curves on the expected diagram, using unlisted components where needed.

    A curve meeting no listed component must meet the unique unlisted simple
    component; with several candidates the contribution is undetermined.
    """
    if fiber.kodaira is None:
        raise CurveError(
            f"the partial {fiber.root_type} fiber {', '.join(fiber.support)} has no expected Kodaira type"
        )
    diagram = affine_data(fiber.kodaira)
    partial = curve_graph(config, fiber.support)
    matcher = isomorphism.GraphMatcher(diagram.as_graph(), partial, edge_match=_EDGE_MATCH)
    problem = None
    for embedding in matcher.subgraph_isomorphisms_iter():
        node_of = {curve: node for node, curve in embedding.items()}
        virtual_simple = [n for n in diagram.simple_nodes if n not in embedding]
        nodes = []
        for curve in curves:
            met = _met_components(config, curve, fiber.support)
            if met:
                nodes.append(node_of[met[0]])
            elif len(virtual_simple) == 1:
                nodes.append(virtual_simple[0])
            else:
                problem = (
                    f"{curve} meets an unlisted component of the {fiber.kodaira} fiber and "
                    f"{len(virtual_simple)} unlisted simple components are possible"
                )
                break
        else:
            if all(diagram.marks[n] == 1 for n in nodes):
                return fiber.kodaira, nodes
            problem = f"sections cannot meet the listed components of the {fiber.kodaira} fiber"
    raise CurveError(problem or f"cannot place sections on the {fiber.kodaira} fiber")


def height(
    config: CurveConfig,
    fiber: DivisorClass,
    section: str,
    zero: str,
    expected: Optional[Sequence[KodairaType]] = None,
) -> HeightReport:
    """Height of ``section`` relative to ``zero`` in the fibration with fiber class ``fiber``.

    Args:
        config: Curve configuration
        fiber: Fiber class
        section: Section whose height is computed
        zero: Zero section
        expected: Kodaira types used to complete partially listed fibers

    Raises:
        CurveError: If either curve is not a section or a contribution is undetermined
    """
    for label, curve in (("section", section), ("zero section", zero)):
        if curve not in config.index:
            raise CurveError(f"Unknown curve: {curve}. Available: {', '.join(config.names)}")
        degree = meet_curve(config, fiber, curve)
        if degree != 1:
            raise CurveError(f"{label} {curve} meets the fiber {degree} times, not once")

    euler_term = 4 if config.surface == "k3" else 2
    pairing_term = 2 * config.meet(section, zero)
    contributions: List[Tuple[str, Fraction]] = []
    for f in fiber_decomposition(config, fiber, expected):
        if f.complete:
            kodaira, (p_node, o_node) = _complete_nodes(config, f, (section, zero))
        else:
            if not _met_components(config, section, f.support) and not _met_components(config, zero, f.support) \
                    and f.kodaira is None:
                continue
            kodaira, (p_node, o_node) = _partial_nodes(config, f, (section, zero))
        value = contribution(kodaira, p_node, o_node)
        if value:
            contributions.append((f.label, value))

    total = Fraction(euler_term + pairing_term) - sum((c for _, c in contributions), Fraction(0))
    report = HeightReport(
        section=section, zero=zero, euler_term=euler_term, pairing_term=pairing_term,
        contributions=tuple(contributions), value=total,
    )
    logger.debug(
        "Computed height",
        extra={"extra_data": {"config": config.name, "section": section, "zero": zero, "height": str(total)}}
    )
    return report


def is_torsion_section(
    config: CurveConfig, fiber: DivisorClass, section: str, zero: str,
    expected: Optional[Sequence[KodairaType]] = None,
) -> bool:
    return height(config, fiber, section, zero, expected).is_torsion


def height_table(
    config: CurveConfig, fiber: DivisorClass, sections: Sequence[str], zero: str,
    expected: Optional[Sequence[KodairaType]] = None,
) -> Dict[str, Optional[HeightReport]]:
    """Heights of several sections; undetermined ones map to None."""
    table: Dict[str, Optional[HeightReport]] = {}
    for s in sections:
        try:
            table[s] = height(config, fiber, s, zero, expected)
        except CurveError as e:
            logger.warning(
                "Height undetermined",
                extra={"extra_data": {"config": config.name, "section": s, "zero": zero, "reason": str(e)}}
            )
            table[s] = None
    return table
