"""Exact computer algebra for multiplicative Hom-Lie algebras.

The package models the Hom-associative algebra of leaf-weighted planar
binary trees, its Hom-Hopf structure (coproduct, counit, weakened
antipode), the quotient that yields the free Hom-associative algebra on
one generator, universal enveloping algebras of Hom-Lie algebras given
by structure constants, and group-like elements with the exponential
map.  All arithmetic is exact over the rationals.
"""

__version__ = "0.1.0"
