"""Knot mosaic CLI package."""
