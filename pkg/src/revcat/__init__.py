"""Reversible pattern matching and join inverse rig categories, at finite scale."""

__version__ = "0.1.0"
