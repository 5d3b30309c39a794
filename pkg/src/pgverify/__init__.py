"""Exact verification of the algebraic structures of Poisson geometry."""
__version__ = "0.1.0"
