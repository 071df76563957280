"""Exact-arithmetic toolkit for 0/1 polytope families, faces, and affine maps."""

__version__ = "0.1.0"
