"""Configuration management for the k3fib toolkit."""
import os
from pathlib import Path
from typing import List, Optional

from dotenv import load_dotenv

# Load environment variables from .env file
env_path = Path(__file__).parent.parent / ".env"
load_dotenv(dotenv_path=env_path)


def _flag(name: str, default: str) -> bool:
    return os.getenv(name, default).lower() in ("true", "1", "yes")


class Config:
    """Application configuration."""

    # Output
    K3FIB_FORMAT: str = os.getenv("K3FIB_FORMAT", "md").lower()
    OUTPUT_FORMATS: tuple = ("csv", "md")

    # Classification
    K3FIB_WORKERS: int = int(os.getenv("K3FIB_WORKERS", "1"))
    K3FIB_EMBEDDING_SAMPLE: int = int(os.getenv("K3FIB_EMBEDDING_SAMPLE", "1"))

    # Weierstrass arithmetic
    K3FIB_TORSION_BOUND: int = int(os.getenv("K3FIB_TORSION_BOUND", "12"))

    # Extra directory searched for curve configuration files
    K3FIB_DATASETS_DIR: Optional[str] = os.getenv("K3FIB_DATASETS_DIR") or None

    # Logging Configuration
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "WARNING")
    LOG_TO_FILE: bool = _flag("LOG_TO_FILE", "False")
    LOG_TO_CONSOLE: bool = _flag("LOG_TO_CONSOLE", "True")
    LOG_DIR: str = os.getenv("LOG_DIR", "logs")

    @classmethod
    def validate(cls) -> List[str]:
        """Validate configuration values.

        Returns:
            List of problems; empty when the configuration is usable
        """
        problems = []
        if cls.K3FIB_FORMAT not in cls.OUTPUT_FORMATS:
            problems.append(
                f"K3FIB_FORMAT must be one of {', '.join(cls.OUTPUT_FORMATS)}, got '{cls.K3FIB_FORMAT}'"
            )
        if cls.K3FIB_WORKERS < 1:
            problems.append(f"K3FIB_WORKERS must be positive, got {cls.K3FIB_WORKERS}")
        if cls.K3FIB_EMBEDDING_SAMPLE < 1:
            problems.append(f"K3FIB_EMBEDDING_SAMPLE must be positive, got {cls.K3FIB_EMBEDDING_SAMPLE}")
        if cls.K3FIB_TORSION_BOUND < 1:
            problems.append(f"K3FIB_TORSION_BOUND must be positive, got {cls.K3FIB_TORSION_BOUND}")
        return problems

    @classmethod
    def get_output_format(cls) -> str:
        """Get the default table format, falling back to markdown."""
        if cls.K3FIB_FORMAT in cls.OUTPUT_FORMATS:
            return cls.K3FIB_FORMAT
        return "md"

    @classmethod
    def get_worker_count(cls) -> int:
        """Get the number of worker processes used by classify."""
        return max(1, cls.K3FIB_WORKERS)

    @classmethod
    def get_embedding_sample(cls) -> int:
        """Get how many primitive embeddings to compare per target."""
        return max(1, cls.K3FIB_EMBEDDING_SAMPLE)

    @classmethod
    def get_torsion_bound(cls) -> int:
        """Get the default search bound for torsion orders."""
        return max(1, cls.K3FIB_TORSION_BOUND)


config = Config()
