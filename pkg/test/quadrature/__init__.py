"""Tests for mixedmag.quadrature."""
