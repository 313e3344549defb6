"""Tests for run reports."""

import json

import pytest

from cylcrit.io import Report, input_digest, read_reports, write_report


@pytest.fixture
def report():
    return Report(command="distances", seed=0, budget=10, precision="double", results={"value": 1.0})


def test_jsonl_appends(report, tmp_path):
    """Test that two writes to a .jsonl file give two lines."""
    path = tmp_path / "runs" / "out.jsonl"
    write_report(report, path)
    write_report(report.model_copy(update={"command": "chirality"}), path)
    lines = path.read_text(encoding="utf-8").splitlines()
    assert len(lines) == 2
    assert json.loads(lines[1])["command"] == "chirality"
    assert [r.command for r in read_reports(path)] == ["distances", "chirality"]


def test_json_is_replaced(report, tmp_path):
    """Test that a .json file holds only the latest report and no temporary file remains."""
    path = tmp_path / "out.json"
    write_report(report, path)
    write_report(report.model_copy(update={"seed": 7}), path)
    reports = read_reports(path)
    assert len(reports) == 1
    assert reports[0].seed == 7
    assert not (tmp_path / "out.json.tmp").exists()


def test_round_trip_fields(report, tmp_path):
    """Test that every field is read back."""
    path = tmp_path / "out.json"
    write_report(report, path)
    assert read_reports(path)[0] == report


def test_input_digest():
    """Test the SHA-256 digest of the input text."""
    assert input_digest("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
    assert input_digest("a") != input_digest("b")
