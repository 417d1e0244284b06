"""Shipped resolution data and zeta bundles."""
