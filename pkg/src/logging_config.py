"""Structured logging configuration for the k3fib toolkit."""
import json
import logging
import sys
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, Optional

ROOT_LOGGER = "k3fib"


class StructuredFormatter(logging.Formatter):
    """Custom formatter for structured JSON logging."""

    def format(self, record: logging.LogRecord) -> str:
        """Format log record as structured JSON."""
        log_data = {
            "timestamp": datetime.now(timezone.utc).isoformat().replace("+00:00", "Z"),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
            "module": record.module,
            "function": record.funcName,
            "line": record.lineno,
        }

        if record.exc_info:
            log_data["exception"] = self.formatException(record.exc_info)

        if hasattr(record, "extra_data"):
            log_data["data"] = record.extra_data

        return json.dumps(log_data, default=str)


class ColoredConsoleFormatter(logging.Formatter):
    """Custom formatter for colored console output."""

    # ANSI color codes
    COLORS = {
        'DEBUG': '\033[36m',      # Cyan
        'INFO': '\033[32m',       # Green
        'WARNING': '\033[33m',    # Yellow
        'ERROR': '\033[31m',      # Red
        'CRITICAL': '\033[35m',   # Magenta
    }
    RESET = '\033[0m'
    BOLD = '\033[1m'

    def __init__(self, use_color: bool = True):
        super().__init__()
        self.use_color = use_color

    def _paint(self, text: str, color: str) -> str:
        if not self.use_color:
            return text
        return f"{color}{text}{self.RESET}"

    def format(self, record: logging.LogRecord) -> str:
        """Format log record with colors for console."""
        color = self.COLORS.get(record.levelname, self.RESET)
        timestamp = datetime.fromtimestamp(record.created).strftime('%Y-%m-%d %H:%M:%S')

        log_parts = [
            self._paint(f"[{record.levelname}]", color + self.BOLD),
            timestamp,
            self._paint(record.name, color),
            f"- {record.getMessage()}",
        ]

        if record.levelno >= logging.ERROR:
            log_parts.append(f"({record.filename}:{record.lineno})")

        if hasattr(record, "extra_data"):
            log_parts.append(f"\n  └─ Data: {json.dumps(record.extra_data, indent=2, default=str)}")

        if record.exc_info:
            exc_text = self.formatException(record.exc_info)
            log_parts.append(f"\n  └─ Exception:\n{exc_text}")

        return " ".join(log_parts)


def setup_logging(
    log_level: str = "WARNING",
    log_to_file: bool = False,
    log_to_console: bool = True,
    log_dir: Optional[str] = None,
) -> logging.Logger:
    """
    Setup structured logging for the toolkit.

    Console output goes to stderr so that tables on stdout stay diffable.

    Args:
        log_level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        log_to_file: Whether to write JSON logs under log_dir
        log_to_console: Whether to log to stderr
        log_dir: Directory for log files (default: ./logs)

    Returns:
        Configured logger instance
    """
    logger = logging.getLogger(ROOT_LOGGER)
    logger.setLevel(getattr(logging, log_level.upper(), logging.WARNING))
    logger.handlers.clear()
    logger.propagate = False

    if log_to_console:
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setLevel(logging.DEBUG)
        console_handler.setFormatter(ColoredConsoleFormatter(use_color=sys.stderr.isatty()))
        logger.addHandler(console_handler)

    if log_to_file:
        logs_dir = Path(log_dir or "logs")
        logs_dir.mkdir(parents=True, exist_ok=True)

        log_filename = f"k3fib_{datetime.now().strftime('%Y%m%d')}.log"
        file_handler = logging.FileHandler(logs_dir / log_filename)
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(StructuredFormatter())
        logger.addHandler(file_handler)

        latest_handler = logging.FileHandler(logs_dir / "latest.log", mode='w')
        latest_handler.setLevel(logging.DEBUG)
        latest_handler.setFormatter(StructuredFormatter())
        logger.addHandler(latest_handler)

    return logger


def get_logger(name: str = ROOT_LOGGER) -> logging.Logger:
    """
    Get a logger instance.

    Args:
        name: Logger name, conventionally "k3fib.<area>"

    Returns:
        Logger instance
    """
    return logging.getLogger(name)


class LoggerAdapter(logging.LoggerAdapter):
    """Logger adapter that merges its context into every record's extra_data."""

    def process(self, msg: str, kwargs: Dict[str, Any]) -> tuple:
        """Process log message with extra context."""
        extra = kwargs.get("extra", {})
        context = (self.extra or {}).get("extra_data", {})
        if "extra_data" in extra:
            extra["extra_data"] = {**context, **extra["extra_data"]}
        elif context:
            extra["extra_data"] = dict(context)

        kwargs["extra"] = extra
        return msg, kwargs
