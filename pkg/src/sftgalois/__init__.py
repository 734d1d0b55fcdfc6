"""Galois theory for irreducible shifts of finite type."""

__version__ = "0.1.0"
