"""Catalog of the 24 Niemeier lattices."""
from .catalog import (
    LEECH,
    NiemeierSpec,
    catalog,
    catalog_index,
    class_weight,
    get_spec,
    glue_code,
    golay_generators,
    hexacode_generators,
    root_type_name,
)
from .realize import NiemeierRealization, NiemeierReport, check_glue, glue_group, realize, verify

__all__ = [
    "LEECH",
    "NiemeierRealization",
    "NiemeierReport",
    "NiemeierSpec",
    "catalog",
    "catalog_index",
    "check_glue",
    "class_weight",
    "get_spec",
    "glue_code",
    "glue_group",
    "golay_generators",
    "hexacode_generators",
    "realize",
    "root_type_name",
    "verify",
]
