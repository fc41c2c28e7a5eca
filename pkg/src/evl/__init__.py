"""Annotation-enrichment engine for subtitled educational video."""

__version__ = "0.1.0"
