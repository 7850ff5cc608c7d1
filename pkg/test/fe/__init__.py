"""Tests for mixedmag.fe."""
