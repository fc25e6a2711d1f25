"""Special functions used by the closed-form spinors.

Generalized Laguerre polynomials are evaluated by their three-term
recurrence; the terminating confluent hypergeometric series is kept as an
independent representation for cross-checks.
"""
from __future__ import annotations

import math

__all__ = [
    "log_gamma",
    "log_factorial",
    "laguerre",
    "laguerre_derivative",
    "laguerre_derivative_ratio_form",
    "hyp1f1_terminating",
    "laguerre_from_hyp1f1",
]


def log_gamma(x: float) -> float:
    """ln Gamma(x) for x > 0."""
    if not x > 0:
        raise ValueError(f"log_gamma requires x > 0, got {x}")
    return math.lgamma(x)


def log_factorial(n: int) -> float:
    return math.lgamma(n + 1.0)


def laguerre(n: int, alpha: float, x: float) -> float:
    """Generalized Laguerre polynomial L_n^alpha(x), alpha > -1.

    Negative ``n`` returns 0 (the L_{-1} = 0 convention used by the
    derivative identity).
    """
    if not alpha > -1:
        raise ValueError(f"laguerre requires alpha > -1, got {alpha}")
    if n < 0:
        return 0.0
    prev, cur = 0.0, 1.0
    for k in range(1, n + 1):
        prev, cur = cur, ((2 * k - 1 + alpha - x) * cur - (k - 1 + alpha) * prev) / k
    return cur


def laguerre_derivative(n: int, alpha: float, x: float) -> float:
    """d/dx L_n^alpha(x) = -L_{n-1}^{alpha+1}(x)."""
    return -laguerre(n - 1, alpha + 1.0, x)


def laguerre_derivative_ratio_form(n: int, alpha: float, x: float) -> float:
    """The same derivative as (n L_n^alpha - (n+alpha) L_{n-1}^alpha) / x, x != 0."""
    if x == 0:
        raise ZeroDivisionError("ratio form of the Laguerre derivative is undefined at x = 0")
    return (n * laguerre(n, alpha, x) - (n + alpha) * laguerre(n - 1, alpha, x)) / x


def hyp1f1_terminating(n: int, gamma: float, s: float) -> float:
    r"""Terminating Kummer series 1F1(-n; gamma; s).

    .. math:: \sum_{j=0}^{n} (-1)^j \binom{n}{j}
              \frac{\Gamma(\gamma)}{\Gamma(\gamma+j)} s^j
    """
    if not gamma > 0:
        raise ValueError(f"hyp1f1_terminating requires gamma > 0, got {gamma}")
    if n < 0:
        raise ValueError("n must be non-negative")
    total = 0.0
    for j in range(n + 1):
        ratio = math.exp(math.lgamma(gamma) - math.lgamma(gamma + j))
        total += (-1) ** j * math.comb(n, j) * ratio * s**j
    return total


def laguerre_from_hyp1f1(n: int, alpha: float, x: float) -> float:
    """L_n^alpha(x) = Gamma(n+alpha+1) / (n! Gamma(alpha+1)) * 1F1(-n; alpha+1; x)."""
    pref = math.exp(math.lgamma(n + alpha + 1.0) - log_factorial(n) - math.lgamma(alpha + 1.0))
    return pref * hyp1f1_terminating(n, alpha + 1.0, x)
