"""Exact q-Fibonacci polynomial toolkit.

Laurent polynomial arithmetic over the integers, the quadratic extension
ring carrying the Binet roots, q-Fibonacci/Lucas sequence generators,
(q-)fibonomial coefficients, fraction-free polynomial determinants, and a
verification harness that checks a catalog of identities and conjectures
as exact zero residuals.
"""

from .poly import (
    Poly,
    NotDivisible,
    ParseError,
    PoleAtZero,
    exact_div,
    monomial,
    parse,
    ZERO,
    ONE,
    X,
    S,
    Q,
    Z,
)

__version__ = "0.1.0"
