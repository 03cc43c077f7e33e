"""How elliptic fibrations on a K3 double cover relate to the cover involution.

With a smooth branch locus the cover involution τ either moves a fibration
(type 3), preserves it while acting nontrivially on its base (type 1), or
preserves every fiber, which only the fibration induced from the rational
surface does (type 2).
"""
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict

from ..errors import ConfigError, CurveError
from ..logging_config import get_logger
from ..roots import KodairaType, parse_kodaira
from .curve_config import CurveConfig, Permutation, extend_config
from .divisors import DivisorClass, apply_action, class_key, curve_class, divisor, meet_curve, pairing
from .fibers import ReducibleFiber, fiber_class_of, fiber_decomposition, sections_of
from .heights import HeightReport, height_table

logger = get_logger("k3fib.graph")

COVER_INVOLUTION = "tau"


def _tau(config: CurveConfig, tau: str) -> Permutation:
    if not config.smooth_branch:
        raise CurveError(f"{config.name or 'configuration'} is not a double cover with smooth branch locus")
    if tau not in config.generators:
        raise ConfigError(
            f"Unknown action: {tau}. Available: {', '.join(config.action_names) or 'none'}"
        )
    return config.generators[tau]


def induced_fiber(config: CurveConfig) -> DivisorClass:
    """Fiber class of the fibration pulled back from the rational surface."""
    return fiber_class_of(config, config.reference_fiber())


def fibration_type(config: CurveConfig, fiber: DivisorClass, tau: str = COVER_INVOLUTION,
                   basis: Optional[Sequence[str]] = None) -> int:
    """1, 2 or 3 by the action of the cover involution on the fibration.

    Classes are compared through their pairings with ``basis``, any curves
    spanning NS over Q (the NS basis when omitted).

    Raises:
        CurveError: If the configuration has no smooth branch locus
    """
    involution = _tau(config, tau)
    key = class_key(config, fiber, basis)
    if class_key(config, apply_action(config, involution, fiber), basis) != key:
        return 3
    if key == class_key(config, induced_fiber(config), basis):
        return 2
    return 1


class ImageClassification(BaseModel):
    """What a curve on the cover maps to on the rational surface.

    Attributes:
        curve: Curve on the cover
        invariant: Whether τ maps the curve to itself
        m: 1 for an invariant curve, otherwise C·τ(C)
        kind: ``fiber component``, ``section`` or ``m-section`` such as ``2-section``
    """

    model_config = ConfigDict(frozen=True)

    curve: str
    invariant: bool
    m: int
    kind: str


def classify_image(config: CurveConfig, curve: str, tau: str = COVER_INVOLUTION) -> ImageClassification:
    """Image of a smooth rational curve under the quotient by τ.

    A τ-invariant curve maps onto a section. Otherwise C and τ(C) map to the
    same curve, which meets the fibers of the rational surface C·τ(C) times;
    disjoint swapped pairs are fiber components.

    Raises:
        CurveError: If the configuration has no smooth branch locus or the curve is unknown
    """
    involution = _tau(config, tau)
    if curve not in config.index:
        raise CurveError(f"Unknown curve: {curve}. Available: {', '.join(config.names)}")
    c = curve_class(config, curve)
    image = apply_action(config, involution, c)
    invariant = class_key(config, image) == class_key(config, c)
    m = 1 if invariant else pairing(config, c, image)
    return ImageClassification(curve=curve, invariant=invariant, m=m, kind=curve_role(m))


def curve_role(degree: int) -> str:
    """Name of a curve meeting fibers ``degree`` times."""
    if degree == 0:
        return "fiber component"
    if degree == 1:
        return "section"
    return f"{degree}-section"


class FieldDegreeReport(BaseModel):
    """Upper bounds for the field of definition of a fibration and of its Mordell-Weil group.

    Attributes:
        group_order: Order of the group generated by the actions
        fibration_bound: Index of the stabilizer of (fiber class, zero section)
        mw_bound: Index of the pointwise stabilizer of the sections
        moved_by: Per generator, whether it moves (fibration, sections)
    """

    model_config = ConfigDict(frozen=True)

    group_order: int
    fibration_bound: int
    mw_bound: int
    moved_by: Dict[str, Tuple[bool, bool]]


def field_degree_bounds(
    config: CurveConfig,
    fiber: DivisorClass,
    zero: str,
    sections: Optional[Sequence[str]] = None,
    generators: Optional[Sequence[str]] = None,
) -> FieldDegreeReport:
    """Bounds from the Galois action modelled by the configuration's actions.

    Sections default to every curve meeting the fiber once.

    Raises:
        ConfigError: If a generator is unknown or does not preserve intersections
    """
    names = list(generators) if generators is not None else config.action_names
    real = config.real_names
    for g in names:
        mapping = config.generators.get(g)
        if mapping is not None and any(
            config.meet(mapping[a], mapping[b]) != config.meet(a, b) for a in real for b in real
        ):
            raise ConfigError(f"action {g} does not preserve intersections")
    group = config.group(names)
    section_names = list(sections) if sections is not None else sections_of(config, fiber)

    fiber_key = class_key(config, fiber)
    zero_class = curve_class(config, zero)
    zero_key = class_key(config, zero_class)
    section_classes = [(curve_class(config, s), class_key(config, curve_class(config, s))) for s in section_names]

    def fixes_fibration(g: Permutation) -> bool:
        return (class_key(config, apply_action(config, g, fiber)) == fiber_key
                and class_key(config, apply_action(config, g, zero_class)) == zero_key)

    def fixes_sections(g: Permutation) -> bool:
        return class_key(config, apply_action(config, g, fiber)) == fiber_key and all(
            class_key(config, apply_action(config, g, c)) == k for c, k in section_classes
        )

    stabilizer = [g for g in group if fixes_fibration(g)]
    pointwise = [g for g in group if fixes_sections(g)]
    moved_by = {
        g: (not fixes_fibration(config.generators[g]), not fixes_sections(config.generators[g]))
        for g in names
    }
    return FieldDegreeReport(
        group_order=len(group),
        fibration_bound=len(group) // len(stabilizer),
        mw_bound=len(group) // len(pointwise),
        moved_by=moved_by,
    )


class RecordSpec(BaseModel):
    """Curated fibration on a configuration with the values it is expected to reproduce.

    Attributes:
        name: Short record name, e.g. ``ii*+i3*``
        config: Dataset the record lives on
        fiber: Components of one fiber with their multiplicities
        zero: Zero section used for heights and bounds
        kodaira: Reducible fiber types of the fibration
        expected_type: τ-type of the fibration
        mw_bound: Expected Mordell-Weil field-degree bound
        printed_mw_bound: Bound in the printed listing where it differs from ``mw_bound``
        sections: Sections listed for the fibration
        extra_lines: Configuration lines applied before use
        note: Free text, e.g. a correction of a printed listing
    """

    model_config = ConfigDict(frozen=True)

    name: str
    config: str
    fiber: Tuple[Tuple[str, int], ...]
    zero: str
    kodaira: Tuple[str, ...]
    expected_type: int
    mw_bound: int
    printed_mw_bound: Optional[int] = None
    sections: Tuple[str, ...] = ()
    extra_lines: Tuple[str, ...] = ()
    note: Optional[str] = None

    @property
    def kodaira_types(self) -> List[KodairaType]:
        return [parse_kodaira(k) for k in self.kodaira]


class FibrationRecord(BaseModel):
    """A record evaluated on its configuration."""

    model_config = ConfigDict(frozen=True)

    spec: RecordSpec
    fiber_class: DivisorClass
    reducible_fibers: Tuple[ReducibleFiber, ...]
    sections: Tuple[str, ...]
    fibration_type: int
    bounds: FieldDegreeReport
    heights: Dict[str, Optional[HeightReport]]

    @property
    def matches_expected(self) -> bool:
        return (self.fibration_type == self.spec.expected_type
                and self.bounds.mw_bound == self.spec.mw_bound)


def record_config(config: CurveConfig, spec: RecordSpec) -> CurveConfig:
    return extend_config(config, spec.extra_lines)


def build_record(config: CurveConfig, spec: RecordSpec) -> FibrationRecord:
    """Evaluate a record: fiber class, reducible fibers, sections, τ-type, bounds and heights.

    Raises:
        CurveError: If the listed fiber is not a fiber class
    """
    working = record_config(config, spec)
    fiber = divisor(working, spec.fiber)
    support = [n for n, _ in spec.fiber]
    marks = [m for _, m in spec.fiber]
    fiber_class_of(working, support, marks)
    expected = spec.kodaira_types
    fibers = fiber_decomposition(working, fiber, expected)
    sections = sections_of(working, fiber)
    tau_type = fibration_type(working, fiber)
    bounds = field_degree_bounds(working, fiber, spec.zero)
    listed = [s for s in spec.sections if s != spec.zero and meet_curve(working, fiber, s) == 1]
    heights = height_table(working, fiber, listed, spec.zero, expected) if meet_curve(working, fiber, spec.zero) == 1 else {}
    record = FibrationRecord(
        spec=spec, fiber_class=fiber, reducible_fibers=tuple(fibers), sections=tuple(sections),
        fibration_type=tau_type, bounds=bounds, heights=heights,
    )
    log_extra = {"record": spec.name, "config": spec.config, "type": tau_type,
                 "mw_bound": bounds.mw_bound}
    if record.matches_expected:
        logger.debug("Record reproduced", extra={"extra_data": log_extra})
    else:
        logger.warning("Record differs from expected values", extra={"extra_data": {
            **log_extra, "expected_type": spec.expected_type, "expected_mw_bound": spec.mw_bound}})
    return record


def classify_curves(config: CurveConfig, fiber: DivisorClass) -> Dict[str, str]:
    """Role of every curve relative to a fibration."""
    return {n: curve_role(meet_curve(config, fiber, n)) for n in config.names}
