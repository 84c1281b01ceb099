"""Reflectrace: checking the trace decomposition of Coxeter groups with exact arithmetic."""

__version__ = "0.1.0"
