"""Exact detection and certification of transcendental solutions of linear
differential operators over Q(x)."""

__version__ = "0.1.0"
