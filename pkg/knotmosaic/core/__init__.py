"""Core settings for the knot mosaic engine."""
