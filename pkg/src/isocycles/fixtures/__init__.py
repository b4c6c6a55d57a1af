"""Bundled example systems (JSON)."""
