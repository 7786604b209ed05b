"""
Tests for engine settings and their precedence
"""

import json

import pytest
from pydantic import ValidationError

from ColombeauEngine.config import Settings, load_settings


class TestSettings:
    """Tests for defaults and validation"""

    def test_defaults(self):
        """Test the documented defaults"""
        config = Settings()
        assert (config.k_min, config.k_max, config.m_max) == (4, 48, 12)
        assert config.v_cut == 12.0
        assert config.max_derivative_order == 6
        assert config.max_norm_order == 20
        assert config.support_budget == 24
        assert config.metric_truncation == 20
        assert config.seed == 7

    def test_grid_base(self):
        """Test the grid base must exceed 1"""
        with pytest.raises(ValidationError):
            Settings(grid_base=1.0)

    def test_grid_length(self):
        """Test the grid needs at least 8 points"""
        with pytest.raises(ValidationError):
            Settings(k_min=4, k_max=10)
        assert Settings(k_min=4, k_max=11).k_max == 11

    def test_positive_budgets(self):
        """Test budgets must be positive"""
        with pytest.raises(ValidationError):
            Settings(support_budget=0)

    def test_frozen(self):
        """Test settings cannot be mutated in place"""
        config = Settings()
        with pytest.raises(ValidationError):
            config.seed = 1

    def test_with_overrides(self):
        """Test None overrides are ignored"""
        config = Settings().with_overrides(k_max=28, seed=None)
        assert config.k_max == 28
        assert config.seed == 7


class TestLoadSettings:
    """Tests for flags > environment > file > defaults"""

    def test_file_values(self, tmp_path):
        """Test a config file replaces defaults"""
        path = tmp_path / "colombeau.json"
        path.write_text(json.dumps({"k_max": 30, "seed": 5}))
        config = load_settings(path)
        assert config.k_max == 30
        assert config.seed == 5

    def test_flags_beat_file(self, tmp_path):
        """Test overrides beat the config file"""
        path = tmp_path / "colombeau.json"
        path.write_text(json.dumps({"seed": 5}))
        assert load_settings(path, {"seed": 9}).seed == 9

    def test_environment_beats_file(self, tmp_path, monkeypatch):
        """Test an environment variable beats the config file but not a flag"""
        monkeypatch.setenv("COLOMBEAU_SEED", "21")
        path = tmp_path / "colombeau.json"
        path.write_text(json.dumps({"seed": 5, "k_max": 30}))
        config = load_settings(path)
        assert config.seed == 21
        assert config.k_max == 30
        assert load_settings(path, {"seed": 9}).seed == 9

    def test_no_sources(self):
        """Test no file and no flags give the defaults"""
        assert load_settings() == Settings()
