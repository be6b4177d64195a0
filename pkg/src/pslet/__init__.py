"""Shifted-l large-order expansion for radial Dirac and Klein-Gordon bound states."""

__version__ = "0.1.0"
