"""Exact graded series algebra for U(g), g = {P_mu, D}, and its tensor powers."""

from .scalars import GaussianRational, I, as_scalar, format_scalar, parse_rational, parse_scalar
from .series import AlgebraError, GradeMismatch, LegAlgebra, NonTerminatingSeries, OrderMismatch, Series
from .uea import (
    Config,
    UAlgebra,
    antipode,
    conjugate,
    coproduct,
    counit,
    eval_momentum,
    extend_to_triple,
    mu,
)

__all__ = [
    "AlgebraError",
    "Config",
    "GaussianRational",
    "GradeMismatch",
    "I",
    "LegAlgebra",
    "NonTerminatingSeries",
    "OrderMismatch",
    "Series",
    "UAlgebra",
    "antipode",
    "as_scalar",
    "conjugate",
    "coproduct",
    "counit",
    "eval_momentum",
    "extend_to_triple",
    "format_scalar",
    "mu",
    "parse_rational",
    "parse_scalar",
]
