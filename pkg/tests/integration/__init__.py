"""Integration Tests Package."""
