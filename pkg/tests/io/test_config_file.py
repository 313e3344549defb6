"""Tests for the configuration file format."""

import json

import numpy as np
import pytest

from cylcrit.canon import build_C6, build_O6
from cylcrit.io import (
    ConfigParseError,
    dump_config,
    format_float,
    from_configuration,
    load_config,
    parse_config,
    save_config,
    to_configuration,
)
from tests._harness.geometry import random_configuration


def config_text(lines, parallel_pairs=(), schema_version="1") -> str:
    return json.dumps({"schema_version": schema_version, "lines": lines, "parallel_pairs": list(parallel_pairs)})


class TestRoundTrip:
    """Test that files survive a parse and dump unchanged."""

    @pytest.mark.parametrize("builder", [build_O6, build_C6])
    def test_canonical_configurations(self, builder, tmp_path):
        """Test save, load and save again for the canonical configurations."""
        path = tmp_path / "cfg.json"
        text = save_config(builder(), path)
        again = save_config(load_config(path), tmp_path / "again.json")
        assert again == text

    def test_dump_is_stable(self):
        """Test dump(parse(dump(c))) == dump(c) byte for byte on random lines."""
        cfg = random_configuration(np.random.default_rng(81))
        text = dump_config(from_configuration(cfg))
        assert dump_config(parse_config(text)) == text

    def test_values_survive(self):
        """Test that touch points and directions are reproduced exactly."""
        cfg = random_configuration(np.random.default_rng(82))
        back = to_configuration(parse_config(dump_config(from_configuration(cfg))))
        assert np.array_equal(back.points(), cfg.points())
        assert np.array_equal(back.directions(), cfg.directions())
        assert back.labels == cfg.labels

    def test_parallel_pairs_survive(self):
        """Test that O6's parallel pairs are written and read back."""
        back = to_configuration(parse_config(dump_config(from_configuration(build_O6()))))
        assert back.parallel_pairs == build_O6().parallel_pairs

    def test_seventeen_digits(self):
        """Test the float format."""
        assert format_float(0.1) == "0.10000000000000001"
        assert float(format_float(1 / 3)) == 1 / 3


class TestParseErrors:
    """Test error locations."""

    def test_invalid_json(self):
        """Test that JSON syntax errors report line and column."""
        with pytest.raises(ConfigParseError) as e:
            parse_config('{\n  "lines": [,]\n}')
        assert e.value.location == "2:13"

    def test_missing_field(self):
        """Test that a missing direction reports its field path."""
        with pytest.raises(ConfigParseError) as e:
            parse_config(config_text([{"label": "a", "point": [1, 0, 0]}]))
        assert e.value.location == "lines.0.direction"

    def test_unknown_field(self):
        """Test that unknown keys are rejected."""
        with pytest.raises(ConfigParseError):
            parse_config(config_text([{"label": "a", "point": [1, 0, 0], "direction": [0, 0, 1], "radius": 1}]))

    def test_duplicate_labels(self):
        """Test that labels must be unique."""
        line = {"label": "a", "point": [1, 0, 0], "direction": [0, 0, 1]}
        with pytest.raises(ConfigParseError, match="unique"):
            parse_config(config_text([line, line]))

    def test_unknown_parallel_pair(self):
        """Test that parallel pairs must name known lines."""
        line = {"label": "a", "point": [1, 0, 0], "direction": [0, 0, 1]}
        with pytest.raises(ConfigParseError, match="unknown line"):
            parse_config(config_text([line], parallel_pairs=[["a", "b"]]))

    def test_schema_version(self):
        """Test that other schema versions are refused."""
        with pytest.raises(ConfigParseError) as e:
            parse_config(config_text([], schema_version="2"))
        assert e.value.location == "schema_version"

    def test_integers_are_floats(self):
        """Test that integer coordinates are accepted."""
        config = parse_config(config_text([{"label": "a", "point": [1, 0, 0], "direction": [0, 0, 1]}]))
        assert config.lines[0].point == (1.0, 0.0, 0.0)


class TestGeometryErrors:
    """Test lines that parse but are not tangent lines."""

    def test_not_tangent(self):
        """Test that a direction not orthogonal to the touch point is reported with its line."""
        text = config_text(
            [
                {"label": "a", "point": [1, 0, 0], "direction": [0, 0, 1]},
                {"label": "b", "point": [1, 0, 0], "direction": [1, 0, 0]},
            ]
        )
        with pytest.raises(ConfigParseError) as e:
            to_configuration(parse_config(text))
        assert e.value.location == "lines.1"

    def test_not_unit(self):
        """Test that a touch point off the unit sphere is rejected."""
        text = config_text([{"label": "a", "point": [2, 0, 0], "direction": [0, 0, 1]}])
        with pytest.raises(ConfigParseError) as e:
            to_configuration(parse_config(text))
        assert e.value.location == "lines.0"

    def test_small_unit_error_is_tolerated(self):
        """Test that rounding at the 1e-14 level is accepted."""
        text = config_text([{"label": "a", "point": [1 + 1e-14, 0, 0], "direction": [0, 0, 1]}])
        assert len(to_configuration(parse_config(text))) == 1
