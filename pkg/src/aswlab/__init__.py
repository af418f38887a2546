"""Exact desk-scale computations around fundamental groups of affine curves in characteristic p."""

__version__ = "0.1.0"
