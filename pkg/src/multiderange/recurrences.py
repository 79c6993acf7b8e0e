"""Guessing, verifying, and applying linear recurrences with polynomial
coefficients.

A recurrence of order r is sum over j of p_j(n) * s(n+j) = 0 with integer
polynomial coefficients p_0 .. p_r, p_r not identically zero.  Guessing
fits such a recurrence to an exact term prefix by linear algebra over the
integers: candidate (order, degree) pairs are tried in increasing
order+degree, the homogeneous system over all usable shifts is solved
exactly, and a candidate is accepted only when the system is overdetermined
by a fixed margin and a nontrivial nullspace vector annihilates every
available term.  No floating point is involved anywhere, so a returned
recurrence can only fail beyond the data it was fitted on, never on it.

Guessed recurrences are empirical: they are verified, never certified.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

import numpy as np

from .bigint import from_decimal, to_decimal
from .counting import uniform_fixed_k_prefix, uniform_fixed_n_prefix
from .errors import (
    HoldoutMismatch,
    InsufficientData,
    LeadingCoefficientZero,
    NonIntegralStep,
    RecurrenceNotFound,
)
from .sequences import SequenceSlice

# Equations beyond unknowns required before a fit may be accepted.
GUESS_MARGIN = 10

# Default search caps; generous for uniform-family sequences while keeping
# exhausted searches affordable.
DEFAULT_MAX_ORDER = 12
DEFAULT_MAX_DEGREE = 12

# Fixed modulus for the cheap rank prescreen (rank over a prime field never
# exceeds rank over the rationals, so full modular rank certifies a trivial
# nullspace).  2^31 - 1 is prime and its squares fit comfortably in int64.
_PRESCREEN_PRIME = (1 << 31) - 1

# Systems with at least this many unknowns route through the multi-prime
# solver; smaller ones go straight to fraction-free elimination.
_MODULAR_MIN_COLUMNS = 30

# Prime counts per reconstruction round: ~9 digits of coefficient height per
# prime, so the schedule covers heights up to roughly 3700 digits before
# falling back to direct elimination.
_MODULAR_ROUNDS = (8, 8, 16, 32, 64, 128, 144)

_UNDECIDED = object()


@dataclass(frozen=True)
class Recurrence:
    """Normalized annihilator: coefficient content 1, positive leading sign.

    coeff_polys[j] holds p_j as ascending integer coefficients with no
    trailing zeros; the empty tuple is the zero polynomial.
    """

    coeff_polys: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return len(self.coeff_polys) - 1

    def coefficient(self, j: int, n: int) -> int:
        """p_j evaluated at n."""
        value = 0
        for c in reversed(self.coeff_polys[j]):
            value = value * n + c
        return value


@dataclass(frozen=True)
class VerificationReport:
    checked: int
    failures: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def guess_recurrence(
    s: SequenceSlice, max_order: int, max_degree: int
) -> Recurrence:
    """Fit the first acceptable recurrence in the (order, degree) search.

    Candidates are scanned by increasing order+degree, then increasing
    order, so low-order fits win.  Each candidate needs
    (order+1)*(degree+1) + order + GUESS_MARGIN terms; if no candidate has
    that much data, InsufficientData reports the smallest workable count.
    Raises RecurrenceNotFound when the whole grid is exhausted.
    """
    if max_order < 1 or max_degree < 0:
        raise ValueError("search caps must allow order >= 1, degree >= 0")
    length = len(s.terms)
    candidates = sorted(
        (
            (r, d)
            for r in range(1, max_order + 1)
            for d in range(max_degree + 1)
        ),
        key=lambda rd: (rd[0] + rd[1], rd[0]),
    )
    feasible = [
        (r, d) for r, d in candidates if length >= _terms_needed(r, d)
    ]
    if not feasible:
        raise InsufficientData(
            min(_terms_needed(r, d) for r, d in candidates), length
        )
    terms_mod = [t % _PRESCREEN_PRIME for t in s.terms]
    for r, d in feasible:
        if _prescreen_full_rank(terms_mod, s.offset, r, d):
            continue
        vector = _fit_candidate(s, r, d)
        if vector is not None:
            return _vector_to_recurrence(vector, r, d)
    raise RecurrenceNotFound(max_order, max_degree)


def verify_recurrence(rec: Recurrence, s: SequenceSlice) -> VerificationReport:
    """Check the recurrence residual at every applicable shift of s."""
    r = rec.order
    if len(s.terms) < r + 1:
        raise ValueError(f"need at least {r + 1} terms to check an order-{r} recurrence")
    failures = []
    checked = 0
    for n in range(s.offset, s.end - r):
        residual = sum(
            rec.coefficient(j, n) * s.terms[n - s.offset + j] for j in range(r + 1)
        )
        checked += 1
        if residual:
            failures.append(n)
    return VerificationReport(checked, tuple(failures))


def extend_sequence(rec: Recurrence, init: SequenceSlice, upto: int) -> SequenceSlice:
    """Iterate the recurrence to produce terms through absolute index upto.

    Every step divides by the leading coefficient; the division must be
    exact over the integers, and a zero leading value is a singular point
    the caller must seed past.
    """
    r = rec.order
    if len(init.terms) < r:
        raise ValueError(f"need at least {r} initial terms, got {len(init.terms)}")
    terms = list(init.terms)
    offset = init.offset
    while offset + len(terms) <= upto:
        n = offset + len(terms) - r
        lead = rec.coefficient(r, n)
        if lead == 0:
            raise LeadingCoefficientZero(n)
        acc = 0
        for j in range(r):
            acc += rec.coefficient(j, n) * terms[n - offset + j]
        quotient, remainder = divmod(-acc, lead)
        if remainder:
            raise NonIntegralStep(n)
        terms.append(quotient)
    return SequenceSlice(offset, tuple(terms))


def guess_and_extend_uniform(
    direction: str,
    fixed_value: int,
    seed_count: int,
    upto: int,
    *,
    max_order: int = DEFAULT_MAX_ORDER,
    max_degree: int = DEFAULT_MAX_DEGREE,
    holdout: int = GUESS_MARGIN,
) -> tuple[SequenceSlice, Recurrence]:
    """Seed with direct counts, guess, check held-out terms, then extend.

    direction "fixed_k" runs over the number of symbols n with multiplicity
    fixed_value; "fixed_n" runs over the multiplicity k with fixed_value
    symbols.  The last `holdout` seed terms (at least 10) are withheld from
    the guesser and then checked exactly; a miss raises HoldoutMismatch
    rather than returning a fit that already failed once.
    """
    if direction == "fixed_k":
        terms = uniform_fixed_k_prefix(fixed_value, seed_count)
    elif direction == "fixed_n":
        terms = uniform_fixed_n_prefix(fixed_value, seed_count)
    else:
        raise ValueError(f"direction must be 'fixed_k' or 'fixed_n', got {direction!r}")
    holdout = max(holdout, GUESS_MARGIN)
    if upto < seed_count:
        raise ValueError("upto must reach past the seed terms")
    seed = SequenceSlice(0, tuple(terms))
    shown = SequenceSlice(0, tuple(terms[:-holdout]))
    rec = guess_recurrence(shown, max_order, max_degree)
    report = verify_recurrence(rec, seed)
    if not report.ok:
        raise HoldoutMismatch(report.failures[0])
    return extend_sequence(rec, seed, upto), rec


# -- serialization ----------------------------------------------------------

def recurrence_to_json(rec: Recurrence, variable: str = "n") -> str:
    document = {
        "order": rec.order,
        "variable": variable,
        "coeff_polys": [[to_decimal(c) for c in pj] for pj in rec.coeff_polys],
    }
    return json.dumps(document, sort_keys=True)


def recurrence_from_json(text: str) -> Recurrence:
    document = json.loads(text)
    polys = tuple(
        tuple(from_decimal(c) for c in pj) for pj in document["coeff_polys"]
    )
    if len(polys) != document["order"] + 1:
        raise ValueError("order field disagrees with coefficient count")
    return Recurrence(polys)


def format_recurrence(rec: Recurrence, variable: str = "n", name: str = "s") -> str:
    """Human-readable rendering, highest shift first, e.g. 's(n+1) - s(n) = 0'."""
    parts: list[str] = []
    for j in range(rec.order, -1, -1):
        pj = rec.coeff_polys[j]
        if not pj:
            continue
        shift = f"{name}({variable}+{j})" if j else f"{name}({variable})"
        text, negative = _poly_text(pj, variable)
        sign = "-" if negative else "+"
        if not parts:
            parts.append(f"-{text}{shift}" if negative else f"{text}{shift}")
        else:
            parts.append(f"{sign} {text}{shift}")
    return " ".join(parts) + " = 0" if parts else "0 = 0"


def _poly_text(pj: tuple[int, ...], variable: str) -> tuple[str, bool]:
    """Render a coefficient polynomial as a multiplier prefix.

    Returns (text, leading_is_negative); text is empty for +-1 constants and
    parenthesized for genuine polynomials, with the overall sign pulled out
    only in the constant case.
    """
    if len(pj) == 1:
        c = pj[0]
        return ("" if abs(c) == 1 else f"{abs(c)}*", c < 0)
    negative = all(c <= 0 for c in pj)
    if negative:
        pj = tuple(-c for c in pj)
    monomials = []
    for e in range(len(pj) - 1, -1, -1):
        c = pj[e]
        if not c:
            continue
        if e == 0:
            body = f"{abs(c)}"
        else:
            var = variable if e == 1 else f"{variable}^{e}"
            body = var if abs(c) == 1 else f"{abs(c)}*{var}"
        if not monomials:
            monomials.append(body if c > 0 else f"-{body}")
        else:
            monomials.append(f"+ {body}" if c > 0 else f"- {body}")
    return f"({' '.join(monomials)})*", negative


# -- fitting internals ------------------------------------------------------

def _terms_needed(r: int, d: int) -> int:
    return (r + 1) * (d + 1) + r + GUESS_MARGIN


def _fit_candidate(s: SequenceSlice, r: int, d: int) -> list[int] | None:
    """Exact nullspace vector of the full (r, d) system, or None.

    Large systems first try the multi-prime route: solve mod a fixed
    sequence of word-size primes, combine by CRT, reconstruct rational
    coefficients, and accept only after an exact integer check of every
    row.  Small systems (and any undecided large one) take the direct
    fraction-free elimination route.
    """
    if (r + 1) * (d + 1) >= _MODULAR_MIN_COLUMNS:
        result = _fit_modular(s, r, d)
        if result is not _UNDECIDED:
            return result
    return _fit_elimination(s, r, d)


def _fit_elimination(s: SequenceSlice, r: int, d: int) -> list[int] | None:
    """Fraction-free elimination on the smallest-term rows, then exact
    residual checks on the rest.

    With a one-dimensional subset nullspace a failed residual certifies
    the full system has no solution; with a larger one the remaining
    constraints are solved exactly in the subset-nullspace coordinates.
    """
    rows = _build_rows(s, r, d)
    n_cols = (r + 1) * (d + 1)
    subset = rows[: n_cols + GUESS_MARGIN]
    basis = _nullspace_basis(subset, n_cols)
    if not basis:
        return None
    rest = rows[len(subset):]
    if len(basis) == 1:
        vector = basis[0]
        return vector if _annihilates(rows, vector) else None
    if rest:
        reduced = [[_dot(row, b) for b in basis] for row in rest]
        combinations = _nullspace_basis(reduced, len(basis))
        if not combinations:
            return None
        candidates = [_combine(basis, combo) for combo in combinations]
    else:
        candidates = basis
    candidates = [c for c in candidates if _annihilates(rows, c)]
    return _prefer_leading(candidates, d + 1) if candidates else None


def _build_rows(s: SequenceSlice, r: int, d: int) -> list[list[int]]:
    """One row per usable shift n: entries n^e * s(n+j), e fast, j slow."""
    rows = []
    terms = s.terms
    for i in range(len(terms) - r):
        n = s.offset + i
        powers = [1]
        for _ in range(d):
            powers.append(powers[-1] * n)
        rows.append([powers[e] * terms[i + j] for j in range(r + 1) for e in range(d + 1)])
    return rows


def _modp_matrix(terms_mod: list[int], offset: int, r: int, d: int, p: int) -> "np.ndarray":
    """The full candidate system reduced mod p, as an int64 array.

    Entries stay below p < 2^31, so every product formed during modular
    elimination fits in int64 with room to spare.
    """
    n_rows = len(terms_mod) - r
    t = np.array(terms_mod, dtype=np.int64)
    shifts = np.stack([t[j:j + n_rows] for j in range(r + 1)], axis=1)
    n_values = np.arange(offset, offset + n_rows, dtype=np.int64) % p
    powers = np.empty((n_rows, d + 1), dtype=np.int64)
    powers[:, 0] = 1
    for e in range(1, d + 1):
        powers[:, e] = powers[:, e - 1] * n_values % p
    return (shifts[:, :, None] * powers[:, None, :] % p).reshape(n_rows, -1)


def _prescreen_full_rank(terms_mod: list[int], offset: int, r: int, d: int) -> bool:
    """True when the candidate system is certifiably unsolvable.

    Full column rank mod p implies full rank over the rationals, so the
    expensive exact stage can be skipped.  A deficient modular rank proves
    nothing and simply lets the exact stage decide.
    """
    matrix = _modp_matrix(terms_mod, offset, r, d, _PRESCREEN_PRIME)
    pivots = _rref_mod_p(matrix, _PRESCREEN_PRIME)
    return len(pivots) == matrix.shape[1]


def _rref_mod_p(m: "np.ndarray", p: int) -> list[int]:
    """In-place reduced row echelon form mod p; returns the pivot columns."""
    n_rows, n_cols = m.shape
    rank = 0
    pivot_cols: list[int] = []
    for col in range(n_cols):
        below = m[rank:, col]
        nonzero = np.flatnonzero(below)
        if nonzero.size == 0:
            continue
        pivot_row = rank + int(nonzero[0])
        if pivot_row != rank:
            m[[rank, pivot_row]] = m[[pivot_row, rank]]
        inverse = pow(int(m[rank, col]), p - 2, p)
        m[rank, col:] = m[rank, col:] * inverse % p
        factors = m[:, col].copy()
        factors[rank] = 0
        hit = np.flatnonzero(factors)
        if hit.size:
            m[hit, col:] = (m[hit, col:] - factors[hit, None] * m[rank, col:]) % p
        pivot_cols.append(col)
        rank += 1
        if rank == n_rows:
            break
    return pivot_cols


# -- multi-prime fitting ------------------------------------------------------

def _fit_modular(s: SequenceSlice, r: int, d: int):
    """Candidate vector by CRT over word-size primes, or None, or _UNDECIDED.

    Per prime the system is brought to reduced row echelon form over a
    prime field in vectorized int64; a full-rank prime certifies there is
    no rational solution at all.  Otherwise the canonical nullspace basis
    (one vector per free column, that coordinate set to 1) is combined
    across primes by CRT and rationally reconstructed, and a reconstruction
    is accepted only once it annihilates every row over the integers.
    Anything irregular (disagreeing pivot structure, excessive nullity,
    reconstruction never settling) returns _UNDECIDED so the caller can run
    direct elimination instead.
    """
    primes = _prime_stream()
    combined: list[list[int]] | None = None
    modulus = 1
    pivot_shape: tuple[int, ...] | None = None
    bad_primes = 0
    rows: list[list[int]] | None = None

    for round_size in _MODULAR_ROUNDS:
        added = 0
        while added < round_size:
            p = next(primes)
            solution = _solve_mod_p(s, r, d, p)
            if solution is None:
                return None  # full rank mod p: certified trivial nullspace
            pivots, basis = solution
            if len(basis) > 8:
                return _UNDECIDED
            if pivot_shape is None:
                pivot_shape = pivots
            if pivots != pivot_shape:
                bad_primes += 1
                if bad_primes > 16:
                    return _UNDECIDED
                continue
            if combined is None:
                combined = [list(vector) for vector in basis]
                modulus = p
            else:
                merged = [
                    _crt_merge(old, modulus, new, p)[0]
                    for old, new in zip(combined, basis)
                ]
                combined = merged
                modulus *= p
            added += 1
        verified = []
        for vector in combined:
            candidate = _reconstruct_vector(vector, modulus)
            if candidate is None:
                continue
            if rows is None:
                rows = _build_rows(s, r, d)
            if _annihilates(rows, candidate):
                verified.append(candidate)
        if verified:
            return _prefer_leading(verified, d + 1)
    return _UNDECIDED


def _solve_mod_p(s: SequenceSlice, r: int, d: int, p: int):
    """Canonical nullspace basis mod p, or None for a full-rank system.

    Returns (pivot_columns, basis) where basis holds one vector per free
    column in ascending order, with that free coordinate set to 1 and the
    other free coordinates 0 - the reduction mod p of the unique rational
    RREF nullspace basis whenever p preserves the pivot structure.
    """
    terms_mod = [t % p for t in s.terms]
    matrix = _modp_matrix(terms_mod, s.offset, r, d, p)
    n_cols = matrix.shape[1]
    pivot_cols = _rref_mod_p(matrix, p)
    if len(pivot_cols) == n_cols:
        return None
    free_cols = [c for c in range(n_cols) if c not in pivot_cols]
    basis = []
    for free in free_cols:
        vector = [0] * n_cols
        vector[free] = 1
        for k, col in enumerate(pivot_cols):
            vector[col] = int(-matrix[k, free]) % p
        basis.append(vector)
    return (tuple(pivot_cols), basis)


def _crt_merge(
    combined: list[int], modulus: int, vector: list[int], p: int
) -> tuple[list[int], int]:
    inverse = pow(modulus % p, p - 2, p)
    merged = [
        (c + modulus * ((v - c) * inverse % p)) for c, v in zip(combined, vector)
    ]
    new_modulus = modulus * p
    return [v % new_modulus for v in merged], new_modulus


def _reconstruct_vector(combined: list[int], modulus: int) -> list[int] | None:
    """Rational reconstruction of every coordinate, cleared to coprime ints."""
    fractions = []
    for value in combined:
        fraction = _rational_reconstruct(value, modulus)
        if fraction is None:
            return None
        fractions.append(fraction)
    return _clear_to_coprime(fractions)


def _rational_reconstruct(value: int, modulus: int) -> Fraction | None:
    """Unique fraction a/b with a, b bounded by sqrt(modulus/2), if any."""
    bound = isqrt(modulus // 2)
    r0, r1 = modulus, value % modulus
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or gcd(r1, abs(s1)) != 1:
        return None
    return Fraction(r1, s1)


def _clear_to_coprime(values: list[Fraction]) -> list[int]:
    common = 1
    for v in values:
        common = common * v.denominator // gcd(common, v.denominator)
    ints = [int(v * common) for v in values]
    content = 0
    for v in ints:
        content = gcd(content, v)
    return [v // content for v in ints] if content else ints


def _prime_stream():
    """Deterministic descending stream of 31-bit primes."""
    n = _PRESCREEN_PRIME
    while n > 1 << 30:
        if _is_prime(n):
            yield n
        n -= 2
    raise RuntimeError("prime stream exhausted")


def _is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond 64-bit inputs."""
    if n < 2:
        return False
    for small in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % small == 0:
            return n == small
    d = n - 1
    twos = (d & -d).bit_length() - 1
    d >>= twos
    for base in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(base, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(twos - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _nullspace_basis(rows: list[list[int]], n_cols: int) -> list[list[int]]:
    """Exact nullspace basis, one coprime integer vector per free column.

    Forward elimination is fraction-free (Bareiss), so every intermediate
    entry is an integer (a minor of the input); back-substitution runs over
    Fractions and each vector is cleared of denominators and content.
    """
    m = [row[:] for row in rows]
    n_rows = len(m)
    pivot_cols: list[int] = []
    previous = 1
    rank = 0
    for col in range(n_cols):
        pivot_row = next((i for i in range(rank, n_rows) if m[i][col]), None)
        if pivot_row is None:
            continue
        m[rank], m[pivot_row] = m[pivot_row], m[rank]
        pivot = m[rank][col]
        for i in range(rank + 1, n_rows):
            factor = m[i][col]
            row_i = m[i]
            row_p = m[rank]
            if factor:
                for c in range(col + 1, n_cols):
                    row_i[c] = (pivot * row_i[c] - factor * row_p[c]) // previous
            elif pivot != previous:
                for c in range(col + 1, n_cols):
                    row_i[c] = pivot * row_i[c] // previous
            row_i[col] = 0
        pivot_cols.append(col)
        previous = pivot
        rank += 1
        if rank == n_rows:
            break
    free_cols = [c for c in range(n_cols) if c not in pivot_cols]
    return [_back_substitute(m, pivot_cols, n_cols, f) for f in free_cols]


def _dot(row: list[int], vector: list[int]) -> int:
    return sum(a * b for a, b in zip(row, vector) if b)


def _annihilates(rows: list[list[int]], vector: list[int]) -> bool:
    return all(_dot(row, vector) == 0 for row in rows)


def _combine(basis: list[list[int]], weights: list[int]) -> list[int]:
    n = len(basis[0])
    out = [0] * n
    for w, vec in zip(weights, basis):
        if w:
            for i in range(n):
                out[i] += w * vec[i]
    content = 0
    for v in out:
        content = gcd(content, v)
    return [v // content for v in out] if content else out


def _prefer_leading(candidates: list[list[int]], leading_width: int) -> list[int]:
    """First vector whose top coefficient block is nonzero (usable order)."""
    for vector in candidates:
        if any(vector[-leading_width:]):
            return vector
    return candidates[0]


def _back_substitute(
    m: list[list[int]], pivot_cols: list[int], n_cols: int, free_col: int
) -> list[int]:
    x: list[Fraction] = [Fraction(0)] * n_cols
    x[free_col] = Fraction(1)
    for k in range(len(pivot_cols) - 1, -1, -1):
        col = pivot_cols[k]
        row = m[k]
        acc = Fraction(0)
        for c in range(col + 1, n_cols):
            if x[c]:
                acc += row[c] * x[c]
        x[col] = -acc / row[col]
    return _clear_to_coprime(x)


def _vector_to_recurrence(vector: list[int], r: int, d: int) -> Recurrence:
    width = d + 1
    polys = []
    for j in range(r + 1):
        coeffs = vector[j * width:(j + 1) * width]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        polys.append(tuple(coeffs))
    while len(polys) > 1 and not polys[-1]:
        polys.pop()
    leading = polys[-1]
    if leading and leading[-1] < 0:
        polys = [tuple(-c for c in pj) for pj in polys]
    return Recurrence(tuple(polys))
