"""Decimal text conversion for integers of unbounded size.

CPython caps int <-> str conversion (sys.get_int_max_str_digits, default
4300) to guard against quadratic blowup; counts in this package routinely
exceed that.  GMP converts subquadratically and without a cap, so all
decimal serialization and parsing funnels through these two helpers.
"""
from __future__ import annotations

try:
    from gmpy2 import mpz as _mpz

    def to_decimal(n: int) -> str:
        return _mpz(n).digits(10)

    def from_decimal(text: str) -> int:
        return int(_mpz(text.strip(), 10))

except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    import sys

    sys.set_int_max_str_digits(0)  # 0 disables the conversion cap

    def to_decimal(n: int) -> str:
        return str(n)

    def from_decimal(text: str) -> int:
        return int(text.strip())
