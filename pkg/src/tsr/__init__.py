"""Torsion subcomplex reduction toolkit.

Exact computations for discrete groups acting on cell complexes with
small finite stabilizers: extraction and reduction of torsion
subcomplexes, Poincare series of the stabilizer cohomology above the
virtual cohomological dimension, Bredon homology over complex
representation rings, equivariant K-homology, and orbifold cohomology
dimension counts.
"""

__version__ = "0.1.0"
