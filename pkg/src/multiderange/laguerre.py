"""Simple Laguerre polynomials and the exponential moment functional.

The degree-a Laguerre polynomial used here is

    L_a(x) = sum over alpha of (-1)^alpha * C(a, alpha) * x^alpha / alpha!

and the moment functional maps a polynomial p to the integral of
e^(-x) * p(x) over [0, infinity), which equals sum(coeff[m] * m!) because
the m-th exponential moment is m!.  Everything stays in exact rational
arithmetic; no quadrature is involved.

The Laguerre system is orthonormal under this functional, which is what
collapses derangement counts of multisets into single moments of Laguerre
products.
"""
from __future__ import annotations

import math
from fractions import Fraction

from .polys import Poly, scaled_integers

try:
    from gmpy2 import mpz as _mpz
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    _mpz = int

# Append-only cache of L_a by degree.  Racing inserts are benign: every
# writer stores the same immutable tuple for a given key.
_cache: dict[int, Poly] = {}


def laguerre(a: int) -> Poly:
    """The degree-a simple Laguerre polynomial, cached per process."""
    if a < 0:
        raise ValueError("degree must be nonnegative")
    cached = _cache.get(a)
    if cached is not None:
        return cached
    coeffs = tuple(
        Fraction((-1) ** alpha * math.comb(a, alpha), math.factorial(alpha))
        for alpha in range(a + 1)
    )
    _cache[a] = coeffs
    return coeffs


def exp_moment(p: Poly) -> Fraction:
    """Apply the exponential moment functional: sum of coeff[m] * m!.

    The factorial is carried as a running product rather than a table;
    moments of degree-40000 polynomials stay within ordinary memory.
    """
    if not p:
        return Fraction(0)
    nums, den = scaled_integers(p)
    total = _mpz(0)
    fact = _mpz(1)
    for m, c in enumerate(nums):
        if m:
            fact *= m
        if c:
            total += fact * c
    return Fraction(int(total), den)
