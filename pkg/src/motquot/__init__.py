"""Exact classes of linear quotient varieties in the Grothendieck ring.

The package computes, certifies and cross-checks the class [V/G] for a
finite abelian group G acting linearly on a vector space V over a small
number field, together with the specialization and counting oracles that
keep the symbolic computation honest.
"""

__version__ = "0.1.0"
