"""locus: desk-scale computations with localities, fusion systems, and friends."""

__version__ = "0.1.0"
