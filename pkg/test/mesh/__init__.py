"""Tests for mixedmag.mesh."""
