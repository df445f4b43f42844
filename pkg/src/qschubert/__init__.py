"""Exact quantum Schubert calculus for S_n: quotient ring, toy potential and Lax pair."""
from .exact_algebra import Polynomial, RationalFunction, Var
from .permutations import Permutation, all_permutations, longest_element, parse_permutation
from .quotient_ring import QuantumRing, QuotientElement, quantum_ring
from .schubert import classical_schubert, quantum_double_schubert, quantum_schubert

__all__ = [
    "Permutation",
    "Polynomial",
    "QuantumRing",
    "QuotientElement",
    "RationalFunction",
    "Var",
    "all_permutations",
    "classical_schubert",
    "longest_element",
    "parse_permutation",
    "quantum_double_schubert",
    "quantum_ring",
    "quantum_schubert",
]
