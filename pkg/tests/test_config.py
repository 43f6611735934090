"""Unit tests for configuration loading."""

import logging
from pathlib import Path

from quiver_tilt.config import Config, LoggingConfig, configure_logging

REPO_CONFIG = Path(__file__).resolve().parent.parent / "config.yaml"


class TestConfig:
    """Tests for Config."""

    def test_defaults(self):
        """Test the built-in defaults."""
        config = Config()
        assert config.field.name == "F101"
        assert config.field.build().characteristic == 101
        assert config.resolution.max_len is None
        assert config.tilting.radical_method == "auto"
        assert config.repro.fields == ["F101", "Q"]

    def test_from_yaml(self, tmp_path):
        """Test that YAML values override the defaults section by section."""
        path = tmp_path / "config.yaml"
        path.write_text("field:\n  name: Q\ntilting:\n  search_depth: 0\n")
        config = Config.from_yaml(path)
        assert config.field.build().characteristic == 0
        assert config.tilting.search_depth == 0
        assert config.tilting.l_margin == 1

    def test_missing_file_gives_defaults(self, tmp_path):
        """Test that a missing file falls back to the defaults."""
        assert Config.from_yaml(tmp_path / "absent.yaml") == Config()

    def test_empty_file(self, tmp_path):
        """Test that an empty YAML file is accepted."""
        path = tmp_path / "empty.yaml"
        path.write_text("")
        assert Config.from_yaml(path) == Config()

    def test_shipped_config(self):
        """Test that the repository config.yaml loads."""
        config = Config.from_yaml(REPO_CONFIG)
        assert config.tilting.search_max_objects == 40
        assert config.repro.hereditary_samples == 20

    def test_get(self):
        """Test dot-notation lookups."""
        config = Config()
        assert config.get("random.seed") == 0
        assert config.get("tilting.search_depth") == 2
        assert config.get("random.seed.extra", "x") == "x"
        assert config.get("missing.key", 7) == 7


class TestLogging:
    """Tests for configure_logging."""

    def test_level_is_applied(self):
        """Test that the configured level reaches the root logger."""
        configure_logging(LoggingConfig(level="debug"))
        assert logging.getLogger().level == logging.DEBUG
        configure_logging(LoggingConfig(level="WARNING"))
        assert logging.getLogger().level == logging.WARNING
