"""Classification of elliptic fibrations through Niemeier frames."""
from .classifier import (
    SUPPORTED_T0,
    ClassificationRow,
    EmbeddingSpec,
    Frame,
    admissible_targets,
    classify,
    find_embedding,
    frame,
    frame_for,
)

__all__ = [
    "SUPPORTED_T0",
    "ClassificationRow",
    "EmbeddingSpec",
    "Frame",
    "admissible_targets",
    "classify",
    "find_embedding",
    "frame",
    "frame_for",
]
