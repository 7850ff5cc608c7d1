"""Tests for mixedmag.solver."""
