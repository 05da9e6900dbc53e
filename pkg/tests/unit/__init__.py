"""Unit Tests Package."""
