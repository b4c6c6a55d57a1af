"""Exact polynomial arithmetic, resultants and real-root isolation."""

from .polynomials import (
    Poly1,
    Poly2,
    RationalFn,
    Scalar,
    as_scalar,
    exact_divide,
    poly_gcd,
    substitute_rational,
)
from .resultant import resultant, univariate_resultant
from .roots import IsolatedRoot, count_real_roots, isolate_real_roots, real_roots, squarefree

__all__ = [
    "IsolatedRoot",
    "Poly1",
    "Poly2",
    "RationalFn",
    "Scalar",
    "as_scalar",
    "count_real_roots",
    "exact_divide",
    "isolate_real_roots",
    "poly_gcd",
    "real_roots",
    "resultant",
    "squarefree",
    "substitute_rational",
    "univariate_resultant",
]
