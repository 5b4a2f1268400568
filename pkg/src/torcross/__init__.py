"""Exact representation theory and homological invariants of twisted crossed
products over tori and of twisted graded Hecke algebras."""

__version__ = "0.1.0"
