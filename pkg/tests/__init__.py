"""Test Package."""
