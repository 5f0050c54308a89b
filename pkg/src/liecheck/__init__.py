"""Exact verification of Kostant-Brylinski and cyclic-module identities for small simple Lie algebras."""

__version__ = "0.1.0"
