"""Shipped fixtures and certificates."""
