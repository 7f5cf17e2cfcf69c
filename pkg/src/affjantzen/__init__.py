"""Exact affine Jantzen filtration toolkit at the critical level."""

__version__ = "0.1.0"
