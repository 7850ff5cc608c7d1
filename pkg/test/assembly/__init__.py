"""Tests for mixedmag.assembly."""
