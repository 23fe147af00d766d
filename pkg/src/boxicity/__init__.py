"""Toolkit for building, composing and verifying box representations of graphs."""

__version__ = "0.1.0"
