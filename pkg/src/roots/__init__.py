"""ADE root systems, Kodaira fiber types and height corrections."""
from .enumeration import (
    ade_components,
    ade_decompose,
    ade_decompose_roots,
    enumerate_roots,
    positive_roots_from_simple,
    roots_of_type,
    short_vectors,
    simple_system,
)
from .types import (
    AffineDiagram,
    KodairaType,
    RootType,
    affine_data,
    cartan_gram,
    cartan_rows,
    contribution,
    dynkin_edges,
    dynkin_graph,
    kodaira_candidates,
    parse_kodaira,
    parse_root_type,
    sort_root_types,
)

__all__ = [
    "AffineDiagram",
    "KodairaType",
    "RootType",
    "ade_components",
    "ade_decompose",
    "ade_decompose_roots",
    "affine_data",
    "cartan_gram",
    "cartan_rows",
    "contribution",
    "dynkin_edges",
    "dynkin_graph",
    "enumerate_roots",
    "kodaira_candidates",
    "parse_kodaira",
    "parse_root_type",
    "positive_roots_from_simple",
    "roots_of_type",
    "short_vectors",
    "simple_system",
    "sort_root_types",
]
