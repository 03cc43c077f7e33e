"""Embedded curve configurations.

Rational surfaces ship as ``r*.cfg`` files; their K3 double covers ``x*`` are
derived on load. Extra ``.cfg`` files are picked up from ``K3FIB_DATASETS_DIR``.
"""
from importlib import resources
from pathlib import Path
from typing import Dict, List

from ...config import config as app_config
from ...errors import ConfigError
from ...logging_config import get_logger
from ..cover import double_cover_config
from ..curve_config import CurveConfig, format_config, load_config
from .records import RECORDS, get_record, records_for

logger = get_logger("k3fib.graph")

COVERS = {"x2": "r2", "x3": "r3", "x4": "r4", "x9": "r9"}

_LOADED: Dict[str, CurveConfig] = {}


def _embedded() -> Dict[str, str]:
    return {
        entry.name[:-4]: entry.read_text(encoding="utf-8")
        for entry in resources.files(__name__).iterdir()
        if entry.name.endswith(".cfg")
    }


def _external() -> Dict[str, Path]:
    directory = app_config.K3FIB_DATASETS_DIR
    if not directory:
        return {}
    root = Path(directory)
    if not root.is_dir():
        logger.warning("Datasets directory not found", extra={"extra_data": {"path": directory}})
        return {}
    return {p.stem: p for p in sorted(root.glob("*.cfg"))}


def list_datasets() -> List[str]:
    """Names of every configuration: embedded, derived covers and external files."""
    names = set(_embedded()) | set(COVERS) | set(_external())
    return sorted(names)


def load_dataset(name: str) -> CurveConfig:
    """Load and validate a configuration by name (case-insensitive).

    Raises:
        ConfigError: For unknown names or invalid data
    """
    key = name.lower()
    if key in _LOADED:
        return _LOADED[key]
    embedded = _embedded()
    external = _external()
    if key in COVERS:
        result = double_cover_config(load_dataset(COVERS[key]))
        result = load_config(format_config(result), name=key)
    elif key in external:
        result = load_config(external[key].read_text(encoding="utf-8"), name=key)
    elif key in embedded:
        result = load_config(embedded[key], name=key)
    else:
        raise ConfigError(f"Unknown dataset: {name}. Available: {', '.join(list_datasets())}")
    _LOADED[key] = result
    logger.debug("Loaded dataset", extra={"extra_data": {"name": key, "curves": len(result.curves)}})
    return result


def load_config_source(source: str) -> CurveConfig:
    """A dataset name or a path to a configuration file."""
    path = Path(source)
    if path.suffix == ".cfg" or path.is_file():
        if not path.is_file():
            raise ConfigError(f"configuration file {source} not found")
        return load_config(path.read_text(encoding="utf-8"), name=path.stem)
    return load_dataset(source)


def dump_dataset(name: str) -> str:
    return format_config(load_dataset(name))


__all__ = [
    "COVERS",
    "RECORDS",
    "dump_dataset",
    "get_record",
    "list_datasets",
    "load_config_source",
    "load_dataset",
    "records_for",
]
