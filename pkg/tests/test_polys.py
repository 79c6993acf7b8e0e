from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from multiderange import polys
from multiderange.polys import ONE, ZERO, add, degree, mul, poly, power, product

X_MINUS = poly([1, -1])  # 1 - x
X_PLUS = poly([1, 1])  # 1 + x


def naive_mul(p, q):
    """Schoolbook reference product straight over Fractions."""
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    while out and not out[-1]:
        out.pop()
    return tuple(out)


small_fractions = st.fractions(
    min_value=-20, max_value=20, max_denominator=12
)
small_polys = st.lists(small_fractions, max_size=7).map(poly)


class TestBasics:
    def test_add_cancellation(self):
        assert add(X_MINUS, poly([0, 1])) == ONE

    def test_add_identity(self):
        p = poly([3, Fraction(1, 2), 7])
        assert add(ZERO, p) == p

    def test_add_doubling(self):
        assert add(X_MINUS, X_MINUS) == poly([2, -2])

    def test_mul_square(self):
        assert mul(X_MINUS, X_MINUS) == poly([1, -2, 1])

    def test_mul_annihilator(self):
        assert mul(poly([5, 1, 3]), ZERO) == ZERO

    def test_mul_difference_of_squares(self):
        assert mul(X_PLUS, X_MINUS) == poly([1, 0, -1])

    def test_empty_product(self):
        assert product([]) == ONE

    def test_product_pair(self):
        assert product([X_MINUS, X_MINUS]) == poly([1, -2, 1])

    def test_power_zero(self):
        assert power(X_MINUS, 0) == ONE
        assert power(ZERO, 0) == ONE

    def test_power_square(self):
        assert power(X_MINUS, 2) == poly([1, -2, 1])

    def test_poly_strips_trailing_zeros(self):
        assert poly([1, 2, 0, 0]) == poly([1, 2])
        assert poly([0, 0]) == ZERO


class TestProperties:
    @given(small_polys, small_polys)
    def test_add_commutes(self, p, q):
        assert add(p, q) == add(q, p)

    @given(small_polys, small_polys)
    def test_mul_commutes(self, p, q):
        assert mul(p, q) == mul(q, p)

    @given(small_polys, small_polys, small_polys)
    def test_add_associates(self, p, q, r):
        assert add(add(p, q), r) == add(p, add(q, r))

    @given(small_polys, small_polys, small_polys)
    def test_mul_associates(self, p, q, r):
        assert mul(mul(p, q), r) == mul(p, mul(q, r))

    @given(small_polys, small_polys, small_polys)
    def test_distributive(self, p, q, r):
        assert mul(p, add(q, r)) == add(mul(p, q), mul(p, r))

    @given(small_polys, small_polys)
    def test_degree_adds(self, p, q):
        if p and q:
            assert degree(mul(p, q)) == degree(p) + degree(q)

    @given(small_polys, small_polys)
    def test_mul_matches_naive(self, p, q):
        assert mul(p, q) == naive_mul(p, q)

    @given(small_polys, st.integers(min_value=0, max_value=8))
    def test_power_matches_product(self, p, e):
        assert power(p, e) == product([p] * e)

    @given(small_polys, small_polys)
    def test_results_are_normalized(self, p, q):
        for result in (add(p, q), mul(p, q)):
            assert not result or result[-1] != 0


class TestConvolutionPaths:
    """The packed big-integer convolution must agree with schoolbook exactly."""

    @given(
        st.lists(st.integers(min_value=-(10**12), max_value=10**12), min_size=4, max_size=40),
        st.lists(st.integers(min_value=-(10**12), max_value=10**12), min_size=4, max_size=40),
    )
    def test_kronecker_equals_schoolbook(self, a, b):
        assert polys._convolve_kronecker(a, b) == polys._convolve_schoolbook(a, b)

    def test_large_product_crosses_cutoff(self):
        p = poly([Fraction(i - 20, 7) for i in range(40)] + [1])
        q = poly([Fraction((-1) ** i * i, 3) for i in range(40)] + [1])
        assert mul(p, q) == naive_mul(p, q)

    def test_scaled_integers_roundtrip(self):
        p = poly([Fraction(1, 6), Fraction(-2, 15), 3])
        nums, den = polys.scaled_integers(p)
        assert [Fraction(n, den) for n in nums] == list(p)
