"""Knot Mosaic Engine Package."""

__version__ = "0.1.0"
