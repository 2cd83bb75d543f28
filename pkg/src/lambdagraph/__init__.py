"""Verification toolkit for λ-graph systems, symbolic matrix systems and their finite-group extensions."""

__version__ = "0.1.0"
