"""Hypergeometric and elliptic series, gamma ratios, algebraic solutions and B-series."""

import pytest
import sympy as sp
from gmpy2 import mpq

from isingfw.errors import IndeterminateGammaRatio, PochhammerPole
from isingfw.series_core import EXACT, KSeries, compose, d_dt, pow_rational
from isingfw.special_functions import (B1, B1_class1, B1_class1_direct_sum, B1_class4,
                                       B1_class4_direct_sum, B2_scaled, POLE, algebraic_A,
                                       algebraic_h0, check_h0_product_form, contiguous_check,
                                       e_tilde, elliptic_pair, gamma_ratio, hyp2f1, k_tilde, landen_x,
                                       op_class1, op_class4, sigma_seed)


def rf(a, n):
    return sp.rf(a, n)


def sym_hyp(a, b, c, n):
    """Term formula oracle via sympy rising factorials."""
    return [mpq(str(rf(a, i) * rf(b, i) / (rf(c, i) * sp.factorial(i)))) for i in range(n)]


@pytest.mark.parametrize("abc", [(sp.Rational(1, 2), sp.Rational(1, 2), 1), (sp.Rational(5, 2), sp.Rational(5, 2), 6),
                                 (sp.Rational(-1, 3), sp.Rational(7, 4), sp.Rational(3, 2))])
def test_hyp2f1_against_term_formula(abc):
    a, b, c = abc
    s = hyp2f1(mpq(str(a)), mpq(str(b)), mpq(str(c)), 15)
    assert [s[i] for i in range(15)] == sym_hyp(a, b, c, 15)


def test_hyp2f1_recurrence_ratio():
    a, b, c = mpq(3, 2), mpq(-5, 3), mpq(7, 4)
    s = hyp2f1(a, b, c, 20)
    for n in range(19):
        assert s[n + 1] / s[n] == (a + n) * (b + n) / ((c + n) * (n + 1))


def test_hyp2f1_terminates_and_poles():
    s = hyp2f1(-3, mpq(1, 2), 1, 20)
    assert s.order == EXACT and len(s.coeffs) == 4
    with pytest.raises(PochhammerPole):
        hyp2f1(mpq(1, 2), mpq(1, 2), -2, 10)
    # a terminating upper parameter ahead of the pole is fine
    assert hyp2f1(-1, 1, -3, 10).coeffs == (1, mpq(1, 3))


def test_elliptic_series_heads():
    K, E = k_tilde(5), e_tilde(5)
    assert [K[i] for i in range(3)] == [1, mpq(1, 4), mpq(9, 64)]
    assert [E[i] for i in range(3)] == [1, mpq(-1, 4), mpq(-3, 64)]
    assert d_dt(K)[0] == mpq(1, 4)


def test_elliptic_pair_k_and_landen():
    K, E = elliptic_pair("k", 10)
    assert K[0] == E[0] == 1 and K[2] == mpq(1, 4)
    KL, _ = elliptic_pair("landen", 10)
    oracle = compose(k_tilde(10, "x"), landen_x(10))
    assert KL.first_difference(oracle, 10) is None
    assert [KL[i] for i in range(2)] == [1, 1]


def test_landen_x_expansion():
    x = landen_x(8)
    assert [x[i] for i in range(8)] == [0, 4, -8, 12, -16, 20, -24, 28]


def test_gamma_ratio_examples():
    assert gamma_ratio(mpq(3, 2), 1) == mpq(2, 3)
    assert gamma_ratio(1, 3) == mpq(1, 6)
    assert gamma_ratio(0, 1) is POLE
    assert gamma_ratio(mpq(1, 2), -2) == mpq(-1, 2) * mpq(-3, 2)
    assert gamma_ratio(2, -3) == 0
    with pytest.raises(IndeterminateGammaRatio):
        gamma_ratio(-1, -1)


def test_binomial_prefactor_oracle():
    s = pow_rational(KSeries([1, 0, -1], 0, 12, "k"), mpq(-1, 8))
    for n in range(6):
        oracle = mpq(str(sp.binomial(sp.Rational(-1, 8), n))) * (-1) ** n
        assert s[2 * n] == oracle


def test_algebraic_h0_23():
    h = algebraic_h0(2, 3, 6)
    assert [h[i] for i in range(5)] == [mpq(-11, 8), mpq(1, 4), mpq(5, 64), mpq(5, 128), mpq(25, 1024)]
    for M, N in ((1, 2), (1, 4), (3, 4), (2, 5)):
        assert algebraic_h0(M, N, 3)[0] == mpq(M * M - 3 * N * N + 1, 16)
        check_h0_product_form(M, N, 10)


def test_algebraic_A_and_seeds():
    A = algebraic_A(5, 8)
    assert A[0] == A[1] == 0 and A[2] == mpq(5, 64) and A[3] == mpq(5, 128)
    s = sigma_seed(5, 4, 5, "t")
    assert [s[i] for i in range(3)] == [mpq(5, 8), mpq(-5, 16), mpq(-5, 64)]
    s1 = sigma_seed(5, 1, 5, "t")
    assert s1[0] == mpq(-5, 8)


def test_b1_is_hypergeometric_and_class_forms():
    b = B1(0, 5, 10)
    assert b.first_difference(hyp2f1(mpq(5, 2), mpq(5, 2), 6, 10), 10) is None
    for N in (3, 5, 7, 9):
        c4, c1 = B1_class4(N, 12), B1_class1(N, 12)
        assert [c4[i] for i in range(3)] == [1, mpq(N - 1, 4), mpq(N**3 + 2 * N**2 - 2 * N - 2, 32 * (N + 1))]
        assert [c1[i] for i in range(3)] == [1, mpq(N + 1, 4), mpq(N**3 + 8 * N**2 + 20 * N + 12, 32 * (N + 3))]
        assert c4.first_difference(B1_class4_direct_sum(N, 12), 12) is None
        assert c1.first_difference(B1_class1_direct_sum(N, 12), 12) is None
        r4, r1 = op_class4(c4, N), op_class1(c1, N)
        assert not r4.coeffs and not r1.coeffs


def test_b2_normalisation():
    for M, N in ((2, 3), (1, 2), (0, 5)):
        assert B2_scaled(M, N, 5)[0] == 1


def test_contiguous_relation():
    for N in (3, 5, 8):
        contiguous_check(N, 15)


def test_binomial_sqrt():
    from isingfw.special_functions import sqrt_one_minus_t
    s = sqrt_one_minus_t(10, "t")
    for n in range(10):
        assert s[n] == mpq(str(sp.binomial(sp.Rational(1, 2), n))) * (-1) ** n
