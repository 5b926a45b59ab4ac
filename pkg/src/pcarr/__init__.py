"""Arrangements of pseudocircles: enumeration, properties, circle realizations."""

__version__ = "0.1.0"
