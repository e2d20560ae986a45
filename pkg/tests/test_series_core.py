"""Series ring: construction, arithmetic, analytic operations, kernels and errors.

Oracles are sympy series expansions and naive Fraction arithmetic.
"""

import random
from fractions import Fraction

import pytest
import sympy as sp
from gmpy2 import mpq

from isingfw.errors import (CompositionDomain, DivisionByUnknownSeries, FractionalExponent,
                            LogOfNonUnit, NonMonicBase, ParityViolation, VariableMismatch)
from isingfw.series_core import (COMPILED_KERNEL, EXACT, PY_KERNEL, KSeries, LamPoly, Q, compose,
                                 convolve, d_dt, derive, exp_series, log_series, parse_rational,
                                 pow_rational, qstr, revert, sigma_log_derivative, sqrt_series)

X = sp.Symbol("x")


def sym_coeffs(expr, n):
    """First n Taylor coefficients at 0 as Fractions (sympy oracle)."""
    ser = sp.series(expr, X, 0, n).removeO()
    return [Fraction(str(sp.nsimplify(ser.coeff(X, i)))) for i in range(n)]


def ks(coeffs, order=None, var="t", val=0):
    return KSeries([Q(c) for c in coeffs], val, len(coeffs) + val if order is None else order, var)


def as_fracs(s, n):
    return [Fraction(int(s[e].numerator), int(s[e].denominator)) for e in range(n)]


# -- construction ----------------------------------------------------------------


def test_coercion_accepts_exact_types_only():
    assert Q("3/4") == mpq(3, 4)
    assert Q(Fraction(-1, 6)) == mpq(-1, 6)
    assert Q(5) == 5
    with pytest.raises(TypeError):
        Q(0.5)


def test_qstr_and_parse_roundtrip():
    for v in (mpq(0), mpq(7), mpq(-3, 8), mpq(22, 7)):
        assert parse_rational(qstr(v)) == v
    assert qstr(mpq(6, 3)) == "2"


def test_normalisation_strips_leading_and_trailing_zeros():
    s = KSeries([0, 0, 1, 2, 0], 0, 10, "k")
    assert s.val == 2 and s.coeffs == (1, 2) and s.order == 10
    z = KSeries([0, 0], 3, 8, "k")
    assert not z.coeffs and z.val == 8


def test_truncation_drops_terms_at_or_above_order():
    s = KSeries([1, 1, 1, 1], 0, 2, "k")
    assert s.coeffs == (1, 1) and s.order == 2
    assert s.truncate(1).coeffs == (1,)


def test_getitem_below_valuation_is_zero():
    s = ks([1, 2, 3])
    assert s[1] == 2
    assert s[-1] == 0


def test_variable_mismatch():
    with pytest.raises(VariableMismatch):
        ks([1, 1], var="t") + ks([1, 1], var="k")


# -- arithmetic --------------------------------------------------------------------


def test_product_matches_naive_convolution():
    rng = random.Random(3)
    for _ in range(50):
        a = [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(8)]
        b = [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(8)]
        naive = [sum(a[i] * b[n - i] for i in range(n + 1)) for n in range(8)]
        p = ks(a) * ks(b)
        assert p.order == 8
        assert as_fracs(p, 8) == naive


def test_order_bookkeeping_of_product():
    a = KSeries([1, 1], 0, 5, "t")
    b = KSeries([1], 2, 6, "t")
    p = a * b
    assert p.order == min(0 + 6, 2 + 5)


def test_exact_series_stay_exact():
    a = KSeries([1, 1], 0, EXACT, "t")
    assert (a * a).coeffs == (1, 2, 1) and (a * a).order == EXACT
    assert a.is_exact()


def test_inverse_against_sympy():
    f = 1 + 3 * X - X**2 / 2 + X**3
    s = ks([1, 3, mpq(-1, 2), 1], order=12)
    inv = s.inverse()
    assert as_fracs(inv, 12) == sym_coeffs(1 / f, 12)


def test_laurent_division():
    a = KSeries([1, 1], 1, 10, "t")
    b = KSeries([2, 1], 2, 10, "t")
    q = a / b
    assert q.val == -1
    assert (q * b).first_difference(a, 8) is None


def test_division_by_unknown_series():
    with pytest.raises(DivisionByUnknownSeries):
        ks([1]) / KSeries([], 0, 4, "t")


# -- analytic operations ---------------------------------------------------------------


def test_pow_rational_against_sympy():
    s = ks([1, 2, mpq(1, 3)], order=10)
    for alpha in (mpq(1, 2), mpq(-1, 4), mpq(5, 3), mpq(-2)):
        got = pow_rational(s, alpha)
        oracle = sym_coeffs((1 + 2 * X + X**2 / 3) ** sp.Rational(int(alpha.numerator), int(alpha.denominator)), 10)
        assert as_fracs(got, 10) == oracle


def test_sqrt_squares_back():
    s = ks([1, -1], order=15)
    r = sqrt_series(s)
    assert (r * r).first_difference(s, 15) is None


def test_pow_errors():
    with pytest.raises(NonMonicBase):
        pow_rational(ks([2, 1], order=5), mpq(1, 2))
    with pytest.raises(FractionalExponent):
        pow_rational(KSeries([1, 1], 1, 6, "t"), mpq(1, 2))


def test_log_exp_against_sympy():
    s = ks([1, mpq(1, 2), -3], order=10)
    assert as_fracs(log_series(s), 10) == sym_coeffs(sp.log(1 + X / 2 - 3 * X**2), 10)
    e = exp_series(KSeries([1, 2], 1, 10, "t"))
    assert as_fracs(e, 10) == sym_coeffs(sp.exp(X + 2 * X**2), 10)
    with pytest.raises(LogOfNonUnit):
        log_series(ks([2, 1], order=4))


def test_compose_against_sympy():
    f = ks([1, 1, 1, 1, 1, 1, 1, 1], order=8)
    g = KSeries([1, 1], 1, 8, "t")
    got = compose(f, g)
    inner = X + X**2
    assert as_fracs(got, 8) == sym_coeffs(sum(inner**i for i in range(8)), 8)
    with pytest.raises(CompositionDomain):
        compose(f, ks([1, 1], order=8))


def test_revert_against_known_inverse():
    # x/(1-x) has inverse x/(1+x)
    g = KSeries([1] * 12, 1, 13, "t")
    r = revert(g)
    oracle = [0] + [(-1) ** (i - 1) for i in range(1, 13)]
    assert as_fracs(r, 13) == oracle


def test_derive_in_t_on_k_series_and_parity():
    t2 = KSeries([1], 4, 20, "k")  # t^2 in k
    assert d_dt(t2)[2] == 2
    with pytest.raises(ParityViolation):
        derive(KSeries([1], 3, 20, "k"), wrt="t")
    half = derive(KSeries([1], 3, 20, "k"), wrt="t", half_integer=True)
    assert half[1] == mpq(3, 2)


def test_sigma_log_derivative_of_power():
    # t(t-1) d/dt log (1-t)^a = a t
    one_m = pow_rational(ks([1, -1], order=12), mpq(3, 7))
    s = sigma_log_derivative(one_m, half_integer=False)
    assert s[1] == mpq(3, 7)
    assert all(s[e] == 0 for e in range(2, 11))


# -- lambda polynomials ---------------------------------------------------------------


def test_lampoly_arithmetic_and_substitution():
    lam = LamPoly.lam()
    p = 1 + 2 * lam + lam * lam
    assert p.degree() == 2
    assert p(mpq(1, 2)) == mpq(9, 4)
    q = p(LamPoly((0, -1)))  # lambda -> -lambda
    assert q.c == (1, -2, 1)
    assert (p - p) == LamPoly()
    with pytest.raises(ZeroDivisionError):
        p / lam


def test_series_with_lampoly_coefficients():
    lam = LamPoly.lam()
    s = KSeries([1, lam], 0, 5, "t")
    sq = s * s
    assert sq[1] == 2 * lam and sq[2] == lam * lam


# -- kernels --------------------------------------------------------------------------


def test_python_kernel_matches_naive():
    a = [mpq(i + 1, i + 2) for i in range(20)]
    b = [mpq(-i, 3) for i in range(20)]
    got = convolve(a, b, 20, kernel=PY_KERNEL)
    assert got == [sum(a[i] * b[n - i] for i in range(n + 1)) for n in range(20)]


@pytest.mark.skipif(COMPILED_KERNEL is None, reason="compiled kernel not built")
def test_compiled_kernel_matches_python():
    rng = random.Random(11)
    for n in (1, 5, 40, 120):
        a = [mpq(rng.randint(-10**9, 10**9), rng.randint(1, 10**6)) for _ in range(n)]
        b = [mpq(rng.randint(-10**9, 10**9), rng.randint(1, 10**6)) for _ in range(n)]
        assert convolve(a, b, n, kernel=COMPILED_KERNEL) == convolve(a, b, n, kernel=PY_KERNEL)
