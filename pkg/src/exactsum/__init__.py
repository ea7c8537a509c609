"""Exact evaluation of convergent infinite sums of rational terms.

Evaluates sum_{n>=1} Q(n)/P(n) (plain or alternating sign) exactly via
partial fractions and digamma/polygamma identities, returning both a
closed-form symbolic value and an arbitrary-precision numeric value, each
independently verifiable by quadrature and tail-bracketed partial sums.
"""

from .closedform import SymbolicValue, assemble, psi_closed, render, to_numeric
from .engine import SumResult, evaluate, sum_alternating, sum_plain, telescope
from .errors import (
    ConstraintViolated,
    DegreeTooHigh,
    DuplicateShift,
    ExactSumError,
    ExpressionSyntaxError,
    InsufficientTerms,
    NegativeIntegerShift,
    NonLinearFactor,
    NotApplicable,
    OrderTooLarge,
    ParametersEqual,
    PoleArgument,
)
from .oracle import (
    Bracket,
    partial_sum_bracket,
    quad_alternating,
    quad_general,
    quad_square,
    quad_two_param,
)
from .parser import ast_to_spec, parse_expression
from .partfrac import PartialFractions, SumSpec, decompose, recombine
from .polygamma import (
    PrecisionPolicy,
    constant,
    digamma,
    polygamma,
    zeta_int,
)
from .polys import (
    FactorList,
    Polynomial,
    RationalFunction,
    factor_linear,
    poly_gcd,
    rf_normalize,
)

__all__ = [
    "Bracket",
    "ConstraintViolated",
    "DegreeTooHigh",
    "DuplicateShift",
    "ExactSumError",
    "ExpressionSyntaxError",
    "FactorList",
    "InsufficientTerms",
    "NegativeIntegerShift",
    "NonLinearFactor",
    "NotApplicable",
    "OrderTooLarge",
    "ParametersEqual",
    "PartialFractions",
    "PoleArgument",
    "Polynomial",
    "PrecisionPolicy",
    "RationalFunction",
    "SumResult",
    "SumSpec",
    "SymbolicValue",
    "assemble",
    "ast_to_spec",
    "constant",
    "decompose",
    "digamma",
    "evaluate",
    "factor_linear",
    "parse_expression",
    "partial_sum_bracket",
    "poly_gcd",
    "polygamma",
    "psi_closed",
    "quad_alternating",
    "quad_general",
    "quad_square",
    "quad_two_param",
    "recombine",
    "render",
    "rf_normalize",
    "sum_alternating",
    "sum_plain",
    "telescope",
    "to_numeric",
    "zeta_int",
]

__version__ = "0.1.0"
