import json
import logging

from src.config import Config
from src.logging_config import StructuredFormatter, get_logger


class TestConfig:
    def test_defaults_are_valid(self):
        assert Config.validate() == []

    def test_problems_listed(self, monkeypatch):
        monkeypatch.setattr(Config, "K3FIB_WORKERS", 0)
        monkeypatch.setattr(Config, "K3FIB_TORSION_BOUND", -1)
        problems = Config.validate()
        assert problems == [
            "K3FIB_WORKERS must be positive, got 0",
            "K3FIB_TORSION_BOUND must be positive, got -1",
        ]

    def test_getters_clamp(self, monkeypatch):
        monkeypatch.setattr(Config, "K3FIB_WORKERS", 0)
        monkeypatch.setattr(Config, "K3FIB_FORMAT", "xml")
        assert Config.get_worker_count() == 1
        assert Config.get_output_format() == "md"


class TestStructuredLogging:
    def test_extra_data_is_serialized(self):
        record = logging.LogRecord("k3fib.graph", logging.INFO, __file__, 1, "Loaded dataset", None, None)
        record.extra_data = {"name": "x9", "curves": 21}
        payload = json.loads(StructuredFormatter().format(record))
        assert payload["message"] == "Loaded dataset"
        assert payload["logger"] == "k3fib.graph"
        assert payload["data"] == {"name": "x9", "curves": 21}

    def test_logger_names(self):
        assert get_logger("k3fib.graph").name == "k3fib.graph"
