"""Exact verification of twisted-product representation theory over finite fields."""

__version__ = "0.1.0"
