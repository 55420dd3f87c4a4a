"""Balanced weighted simplicial complexes and the divisor classes they define on M_0,n."""

from .balance_solver import (
    BalanceVerdict,
    BudgetExceeded,
    decide_balanceable,
    is_minimal,
    minimal_generator,
)
from .complex_core import Complex, ComplexError, Simplex, WeightedComplex, is_balanced
from .cox_poly import CoxElement, LaurentElement, clear_denominators, cox_multiply, is_invariant, laurent_of
from .exact_arith import QQ, FieldSpec, Scalar
from .graph_catalog import GraphShape, classify_graph, enumerate_minimal_graphs, is_irreducible_degree_two
from .hypertree import Hypertree, check_axioms, enumerate_hypertrees, hypertree_degree
from .picard import CurveClass, DivisorClass, boundary_binomial_class, divisor_class_of, pair

__all__ = [
    "BalanceVerdict", "BudgetExceeded", "decide_balanceable", "is_minimal", "minimal_generator",
    "Complex", "ComplexError", "Simplex", "WeightedComplex", "is_balanced",
    "CoxElement", "LaurentElement", "clear_denominators", "cox_multiply", "is_invariant", "laurent_of",
    "QQ", "FieldSpec", "Scalar",
    "GraphShape", "classify_graph", "enumerate_minimal_graphs", "is_irreducible_degree_two",
    "Hypertree", "check_axioms", "enumerate_hypertrees", "hypertree_degree",
    "CurveClass", "DivisorClass", "boundary_binomial_class", "divisor_class_of", "pair",
]
