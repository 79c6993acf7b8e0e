"""Dense univariate polynomial arithmetic with exact rational coefficients.

A polynomial is a tuple of Fractions; index m holds the coefficient of x^m.
The zero polynomial is the empty tuple, and a nonzero polynomial never ends
in a stored zero (normalized leading coefficient), so equal polynomials are
equal tuples.

Multiplication always runs over scaled integers: both operands are cleared
of denominators, the integer coefficient lists are convolved, and the result
is divided back out.  Small convolutions use the schoolbook loop; large ones
pack each operand into a single big integer (Kronecker substitution) so the
whole convolution becomes one big-integer product, which gmpy2 evaluates in
softly linear time.  Both paths are exact and produce identical tuples.

Products of many factors are evaluated over a balanced tree: pairing factors
of similar degree keeps intermediate degrees (and coefficient sizes) small,
which is what makes thousand-fold products of fixed-degree factors feasible.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

try:
    from gmpy2 import mpz as _mpz
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    _mpz = int

Poly = tuple[Fraction, ...]

ZERO: tuple[Fraction, ...] = ()
ONE: tuple[Fraction, ...] = (Fraction(1),)

# Below this many coefficient pairs the schoolbook loop beats the packing
# overhead of Kronecker substitution.
_KRONECKER_CUTOFF = 1024


def poly(coeffs: Iterable[Fraction | int]) -> tuple[Fraction, ...]:
    """Build a normalized polynomial from ascending coefficients."""
    out = [Fraction(c) for c in coeffs]
    while out and not out[-1]:
        out.pop()
    return tuple(out)


def constant(c: Fraction | int) -> tuple[Fraction, ...]:
    return poly([c])


def degree(p: Sequence[Fraction]) -> int:
    """Degree of p; the zero polynomial has degree -1."""
    return len(p) - 1


def add(p: Sequence[Fraction], q: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Coefficientwise sum, normalized."""
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] += c
    while out and not out[-1]:
        out.pop()
    return tuple(out)


def mul(p: Sequence[Fraction], q: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Exact convolution product."""
    if not p or not q:
        return ZERO
    pnums, pden = scaled_integers(p)
    qnums, qden = scaled_integers(q)
    conv = _convolve(pnums, qnums)
    den = pden * qden
    return tuple(Fraction(c, den) for c in conv)


def product(factors: Sequence[Sequence[Fraction]]) -> tuple[Fraction, ...]:
    """Product of all factors over a balanced pairing tree; [] gives 1."""
    items = [tuple(f) for f in factors]
    if not items:
        return ONE
    while len(items) > 1:
        paired = [mul(items[i], items[i + 1]) for i in range(0, len(items) - 1, 2)]
        if len(items) % 2:
            paired.append(items[-1])
        items = paired
    return items[0]


def power(p: Sequence[Fraction], e: int) -> tuple[Fraction, ...]:
    """p**e by repeated squaring; p**0 = 1."""
    if e < 0:
        raise ValueError("negative exponent")
    result = ONE
    base = tuple(p)
    while e:
        if e & 1:
            result = mul(result, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return result


def scaled_integers(p: Sequence[Fraction]) -> tuple[list[int], int]:
    """Clear denominators: return (integer coefficients, common denominator).

    The polynomial equals sum(nums[m] * x^m) / den exactly.
    """
    den = 1
    for c in p:
        den = den * c.denominator // math.gcd(den, c.denominator)
    return [c.numerator * (den // c.denominator) for c in p], den


def _convolve(a: list[int], b: list[int]) -> list[int]:
    if len(a) * len(b) < _KRONECKER_CUTOFF or min(len(a), len(b)) < 4:
        return _convolve_schoolbook(a, b)
    return _convolve_kronecker(a, b)


def _convolve_schoolbook(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            if bj:
                out[i + j] += ai * bj
    return out


def _convolve_kronecker(a: list[int], b: list[int]) -> list[int]:
    """Convolution via packing into big integers.

    Each operand is split into nonnegative and negative parts, every part is
    packed into one integer with fixed-width slots, and the four cross
    products are recombined.  Slot width is chosen so no convolution entry
    of |a| * |b| can overflow its slot, hence byte slicing recovers the
    coefficients exactly.
    """
    max_a = max(abs(c) for c in a)
    max_b = max(abs(c) for c in b)
    if max_a == 0 or max_b == 0:
        return [0] * (len(a) + len(b) - 1)
    bound = min(len(a), len(b)) * max_a * max_b
    width = (bound.bit_length() + 8) // 8 + 1  # bytes per slot, with headroom

    def split(coeffs: list[int]) -> tuple[int, int]:
        pos = bytearray(width * len(coeffs))
        neg = bytearray(width * len(coeffs))
        for i, c in enumerate(coeffs):
            if c > 0:
                pos[i * width:(i + 1) * width] = c.to_bytes(width, "little")
            elif c < 0:
                neg[i * width:(i + 1) * width] = (-c).to_bytes(width, "little")
        return int.from_bytes(pos, "little"), int.from_bytes(neg, "little")

    a_pos, a_neg = split(a)
    b_pos, b_neg = split(b)
    ap, an, bp, bn = _mpz(a_pos), _mpz(a_neg), _mpz(b_pos), _mpz(b_neg)
    plus = int(ap * bp + an * bn)
    minus = int(ap * bn + an * bp)

    n_out = len(a) + len(b) - 1
    total = width * (n_out + 1)
    plus_bytes = plus.to_bytes(total, "little")
    minus_bytes = minus.to_bytes(total, "little")
    return [
        int.from_bytes(plus_bytes[k * width:(k + 1) * width], "little")
        - int.from_bytes(minus_bytes[k * width:(k + 1) * width], "little")
        for k in range(n_out)
    ]
