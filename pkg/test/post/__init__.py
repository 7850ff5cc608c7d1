"""Tests for mixedmag.post."""
