"""Exact exterior algebra over Q(sqrt 3) for PSU(3)-structures on 8-manifolds."""

__version__ = "0.1.0"
