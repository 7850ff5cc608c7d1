"""Tests for mixedmag.material."""
