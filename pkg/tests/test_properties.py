"""Property tests of the series ring against naive Fraction arithmetic."""

from fractions import Fraction

from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from isingfw.series_core import KSeries, compose, exp_series, log_series, pow_rational, revert

N = 8
rat = st.fractions(min_value=-20, max_value=20, max_denominator=12)
coeffs = st.lists(rat, min_size=N, max_size=N)


def ser(cs, val=0):
    return KSeries([mpq(c.numerator, c.denominator) for c in cs], val, N + val, "t")


def fr(s, n=N):
    return [Fraction(int(s[e].numerator), int(s[e].denominator)) for e in range(n)]


def naive_mul(a, b):
    return [sum(a[i] * b[n - i] for i in range(n + 1)) for n in range(N)]


@settings(max_examples=60, deadline=None)
@given(coeffs, coeffs)
def test_product_is_convolution(a, b):
    assert fr(ser(a) * ser(b)) == naive_mul(a, b)


@settings(max_examples=60, deadline=None)
@given(coeffs, rat)
def test_inverse(a, c0):
    a = [Fraction(1) + abs(c0)] + a[1:]
    inv = ser(a).inverse()
    assert fr(inv * ser(a)) == [1] + [0] * (N - 1)


@settings(max_examples=40, deadline=None)
@given(coeffs, st.integers(-6, 6), st.integers(1, 5))
def test_pow_laws(a, p, q):
    s = ser([Fraction(1)] + a[1:])
    alpha = mpq(p, q)
    r = pow_rational(s, alpha)
    # r^q = s^p
    lhs, rhs = r ** q, (s ** p if p >= 0 else s.inverse() ** -p)
    assert lhs.first_difference(rhs, N) is None


@settings(max_examples=40, deadline=None)
@given(coeffs)
def test_exp_log_inverse(a):
    s = ser([Fraction(1)] + a[1:])
    assert exp_series(log_series(s)).first_difference(s, N) is None


@settings(max_examples=40, deadline=None)
@given(coeffs)
def test_revert_composes_to_identity(a):
    lead = a[0] if a[0] else Fraction(1)
    g = ser([lead] + a[1:N - 1], val=1)
    ident = KSeries.monomial(1, 1, "t")
    assert compose(g, revert(g)).first_difference(ident, N) is None
    assert compose(revert(g), g).first_difference(ident, N) is None
