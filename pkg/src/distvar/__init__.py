"""Distortion varieties: sparse polynomial algebra, Groebner bases,
scroll geometry, two-view camera models, and a radial-distortion
minimal solver."""

__version__ = "0.1.0"
