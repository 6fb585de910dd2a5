"""Rational homotopy of spaces of long embeddings via graph complexes."""

__version__ = "0.1.0"
