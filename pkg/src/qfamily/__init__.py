"""Quandle G-families, handlebody-knot diagrams, colorings and cocycle invariants."""

__version__ = "0.1.0"
