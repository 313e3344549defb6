"""Tests for cylcrit."""
