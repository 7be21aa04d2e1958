"""Exact evaluation and certified sign classification of x(n) = z(n) - (r(n)+1) m(n)."""

from .core import (
    DomainError,
    EvalRow,
    PowerOfTwoFacts,
    eval_row,
    isqrt,
    m_of,
    r_of,
    x_of,
    z_at_power,
    z_of,
)

__version__ = "0.1.0"
