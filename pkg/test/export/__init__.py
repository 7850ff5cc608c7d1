"""Tests for mixedmag.export."""
