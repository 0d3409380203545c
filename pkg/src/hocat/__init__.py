"""Finite models of higher categories: simplicial sets, nerves, Segal spaces,
simplicial categories, localizations and Hall algebras."""

__version__ = "0.1.0"
