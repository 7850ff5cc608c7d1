"""Tests for mixedmag.loader."""
