"""Curve configurations on K3 double covers and rational elliptic surfaces."""
from .contraction import (
    DERIVED_CONTRACTIONS,
    ContractionOutcome,
    contract_to_minimal,
    replay_contraction,
    terminal_model,
)
from .cover import double_cover_config, lift_name
from .curve_config import (
    ConfigReport,
    CurveConfig,
    extend_config,
    fiber_marks,
    format_config,
    load_config,
    parse_config,
    validate_config,
)
from .divisors import (
    DivisorClass,
    NSLattice,
    apply_action,
    class_key,
    curve_class,
    divisor,
    index_in_ns,
    ns_lattice,
    pairing,
)
from .fibers import FiberSeed, ReducibleFiber, curve_graph, fiber_class_of, fiber_decomposition, find_fibers, sections_of
from .fibration_types import (
    FibrationRecord,
    FieldDegreeReport,
    ImageClassification,
    RecordSpec,
    build_record,
    classify_curves,
    classify_image,
    field_degree_bounds,
    fibration_type,
    induced_fiber,
)
from .heights import HeightReport, height, height_table, is_torsion_section

__all__ = [
    "DERIVED_CONTRACTIONS",
    "ConfigReport",
    "ContractionOutcome",
    "CurveConfig",
    "DivisorClass",
    "FiberSeed",
    "FibrationRecord",
    "FieldDegreeReport",
    "HeightReport",
    "ImageClassification",
    "NSLattice",
    "RecordSpec",
    "ReducibleFiber",
    "apply_action",
    "build_record",
    "class_key",
    "classify_curves",
    "classify_image",
    "contract_to_minimal",
    "curve_class",
    "curve_graph",
    "divisor",
    "double_cover_config",
    "extend_config",
    "fiber_class_of",
    "fiber_decomposition",
    "fiber_marks",
    "fibration_type",
    "field_degree_bounds",
    "find_fibers",
    "format_config",
    "height",
    "height_table",
    "index_in_ns",
    "induced_fiber",
    "is_torsion_section",
    "lift_name",
    "load_config",
    "ns_lattice",
    "pairing",
    "parse_config",
    "replay_contraction",
    "sections_of",
    "terminal_model",
    "validate_config",
]
