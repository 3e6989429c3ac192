"""Exact coinvariant algebras of modular Z/p representations."""

__version__ = "0.1.0"

from .ff import PrimeField
from .poly import Poly, PolyRing, grevlex_cmp
from .rep import RepSpec, get_rep
from .groebner import (GroebnerBasis, QuotientBasis, ideal_equal,
                       normal_form, reduced_gb, standard_monomials)
from .hilbert import HilbertIdealResult, hilbert_ideal, invariants_in_degree

__all__ = [
    "PrimeField", "Poly", "PolyRing", "grevlex_cmp", "RepSpec", "get_rep",
    "GroebnerBasis", "QuotientBasis", "ideal_equal", "normal_form",
    "reduced_gb", "standard_monomials", "HilbertIdealResult",
    "hilbert_ideal", "invariants_in_degree",
]
