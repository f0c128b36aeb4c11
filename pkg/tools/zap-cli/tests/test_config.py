"""
Tests for SolverConfig.
"""

import pytest
from pydantic import ValidationError

from zap_cli.models import SolverConfig
from zap_engine import SolverOptions


class TestSolverConfig:
    """Tests for field validation and conversion."""

    def test_defaults_match_engine(self):
        """Test the default config converts to the engine defaults."""
        assert SolverConfig().to_options() == SolverOptions()

    @pytest.mark.parametrize(
        "field, value",
        [
            ("relevance", -1),
            ("branch", "vsids"),
            ("seed", -3),
            ("enum_threshold", 0),
            ("expansion_cap", 0),
            ("max_branches", 0),
        ],
    )
    def test_invalid_values(self, field, value):
        """Test out-of-range values are rejected."""
        with pytest.raises(ValidationError):
            SolverConfig(**{field: value})

    def test_unknown_key(self):
        """Test misspelled settings are not silently ignored."""
        with pytest.raises(ValidationError):
            SolverConfig(relevence=2)

    def test_merged_skips_none(self):
        """Test None overrides keep the current value."""
        config = SolverConfig(relevance=2, seed=5).merged(relevance=None, seed=9, branch="first")
        assert (config.relevance, config.seed, config.branch) == (2, 9, "first")

    def test_merged_validates(self):
        """Test overrides go through validation."""
        with pytest.raises(ValidationError):
            SolverConfig().merged(relevance=-2)

    def test_to_options(self):
        """Test every field reaches SolverOptions."""
        options = SolverConfig(relevance=1, branch="first", seed=4, max_branches=50).to_options()
        assert options.relevance == 1
        assert options.branch == "first"
        assert options.seed == 4
        assert options.max_branches == 50


class TestSolverConfigYaml:
    """Tests for loading configuration files."""

    def test_solver_section(self, tmp_path):
        """Test settings under a top-level solver key."""
        path = tmp_path / "solver.yaml"
        path.write_text("solver:\n  relevance: 2\n  branch: first\n  expansion_cap: 500\n")
        config = SolverConfig.from_yaml(path)
        assert (config.relevance, config.branch, config.expansion_cap) == (2, "first", 500)

    def test_flat_mapping(self, tmp_path):
        """Test settings at the top level."""
        path = tmp_path / "flat.yaml"
        path.write_text("seed: 11\n")
        assert SolverConfig.from_yaml(path).seed == 11

    def test_empty_file(self, tmp_path):
        """Test an empty file gives the defaults."""
        path = tmp_path / "empty.yaml"
        path.write_text("")
        assert SolverConfig.from_yaml(path) == SolverConfig()

    def test_not_a_mapping(self, tmp_path):
        """Test a YAML list is rejected."""
        path = tmp_path / "list.yaml"
        path.write_text("- 1\n- 2\n")
        with pytest.raises(ValueError, match="Expected a mapping"):
            SolverConfig.from_yaml(path)
