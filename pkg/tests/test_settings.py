"""Tests for settings loaded from the environment and cylcrit.yaml."""

import pytest
from pydantic import ValidationError

from cylcrit.settings import CertifierSettings, ProbeSettings, SearchSettings, Settings


@pytest.fixture
def clean_dir(tmp_path, monkeypatch):
    """Run in a directory without cylcrit.yaml."""
    monkeypatch.chdir(tmp_path)
    return tmp_path


class TestDecayGridSettings:
    """Test validation of the decay grid settings."""

    def test_defaults(self):
        """Test the default log grid."""
        grid = ProbeSettings()
        assert grid.t_min < grid.t_max
        assert grid.scales >= 3

    def test_too_few_scales_from_env(self, clean_dir, monkeypatch):
        """Test that a two-point grid fails when the settings load."""
        monkeypatch.setenv("CYLCRIT_PROBE__SCALES", "2")
        with pytest.raises(ValidationError, match="3 scales"):
            Settings()

    def test_reversed_grid(self):
        """Test that t_min must be below t_max."""
        with pytest.raises(ValidationError, match="t_min must be smaller"):
            ProbeSettings(t_min=1e-2, t_max=1e-4)

    @pytest.mark.parametrize("field", ["t_min", "t_max"])
    def test_non_positive_scale(self, field):
        """Test that grid ends must be positive."""
        with pytest.raises(ValidationError, match="must be positive"):
            ProbeSettings(**{field: 0.0})

    def test_no_directions(self):
        """Test that at least one direction is required."""
        with pytest.raises(ValidationError):
            ProbeSettings(directions=0)


class TestOtherGroups:
    """Test validation of the certifier and search groups."""

    def test_refine_fraction_range(self):
        """Test that the refinement fraction lies in [0, 1)."""
        assert CertifierSettings(refine_fraction=0.0).refine_fraction == 0.0
        with pytest.raises(ValidationError, match="refine_fraction"):
            CertifierSettings(refine_fraction=1.0)

    def test_polish_iterations(self):
        """Test that the polish needs at least one iteration."""
        with pytest.raises(ValidationError):
            SearchSettings(polish_iterations=0)

    def test_yaml_file(self, clean_dir):
        """Test that cylcrit.yaml in the working directory is read."""
        (clean_dir / "cylcrit.yaml").write_text("probe:\n  scales: 12\nseed: 7\n", encoding="utf-8")
        loaded = Settings()
        assert loaded.probe.scales == 12
        assert loaded.seed == 7
