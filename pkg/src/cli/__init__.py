"""Command-line interface."""
from .main import build_parser, dump_dataset, main, run

__all__ = ["build_parser", "dump_dataset", "main", "run"]
