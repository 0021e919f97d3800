"""Exact symmetry hierarchy and conservation laws of the (3+1)-D heat equation."""
from .exact import Polynomial
from .jet import U, DiffFunction, normal_form, normalize, residual, total_derivative
from .symmetry import RECURSION_OPERATORS, apply_word, formula_N, independent_count
from .liealg import GENERATORS, PointVectorField, commutator
from .conslaw import T_BASE, ConservedVector, generate_evolutionary, multiplier

__all__ = [
    "Polynomial",
    "U",
    "DiffFunction",
    "normal_form",
    "normalize",
    "residual",
    "total_derivative",
    "RECURSION_OPERATORS",
    "apply_word",
    "formula_N",
    "independent_count",
    "GENERATORS",
    "PointVectorField",
    "commutator",
    "T_BASE",
    "ConservedVector",
    "generate_evolutionary",
    "multiplier",
]
