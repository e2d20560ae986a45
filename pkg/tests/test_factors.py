"""Two- and four-factor decompositions, closed forms, additivity and the alpha law."""

import pytest
import sympy as sp
from gmpy2 import mpq

from isingfw import reference_data as ref
from isingfw.errors import IdentityMismatch, ParityDomain
from isingfw.factors import (CLOSED_FORM_PAIRS, TABLE1_ROWS, alpha_MN, check_additivity,
                             check_cf1f2, check_four_product, check_product, closed_form_gtilde,
                             closed_form_two_factors, decompose, four_factor_pairing, four_factors,
                             four_sigma_from_h, h_from_four_sigma, sigma_of_correlation, table1_row,
                             two_factors, wilf_cross_check)
from isingfw.series_core import KSeries, sigma_log_derivative

PAIRS = ref.TWO_FACTOR_PAIRS


@pytest.mark.parametrize("M,N", PAIRS)
def test_two_factor_structure(M, N):
    dec = two_factors(M, N, 24)
    assert dec.gplus[0] == dec.gminus[0] == 1
    assert dec.gplus[N + 1] > 0 and dec.gminus[N + 1] == -dec.gplus[N + 1]
    assert check_product(dec)
    check_cf1f2(dec)
    # the odd block is shared with opposite signs, the even one is common
    half_diff = (dec.gplus - dec.gminus).scale(mpq(1, 2))
    assert all(e >= N + 1 for e, _ in half_diff.items())


def test_block_heads_from_printed_examples():
    d12 = two_factors(1, 2, 12)
    assert d12.gplus[3] == mpq(1, 16) and d12.gplus[5] == mpq(3, 64)
    d23 = two_factors(2, 3, 14)
    assert d23.gplus[4] == mpq(5, 128)
    # even block heads: k^8 for (1,2), k^10 for (2,3)
    assert (d12.gplus + d12.gminus).scale(mpq(1, 2))[8] == mpq(3, 2**14)
    assert (d23.gplus + d23.gminus).scale(mpq(1, 2))[10] == mpq(7, 2**17)


@pytest.mark.parametrize("M,N", PAIRS)
def test_odd_block_follows_3f2(M, N):
    dec = two_factors(M, N, 2 * (N + 4) + N + 2)
    odd = [(dec.gplus[N + 1 + 2 * j] - dec.gminus[N + 1 + 2 * j]) / 2 for j in range(N + 4)]
    a = [sp.Rational(N + 1, 2), sp.Rational(N + M + 2, 2), sp.Rational(N - M + 2, 2)]
    b = [sp.Integer(N + 1), sp.Rational(N + 3, 2)]
    term = [sp.rf(a[0], j) * sp.rf(a[1], j) * sp.rf(a[2], j) / (sp.rf(b[0], j) * sp.rf(b[1], j) * sp.factorial(j))
            for j in range(N + 4)]
    c = odd[0]
    assert [odd[j] for j in range(N + 4)] == [c * mpq(str(v)) for v in term]


def test_sigma_label_convention():
    # sigma+ is the log-derivative of g+; its k^(N+1) coefficient is negative
    dec = two_factors(2, 3, 12)
    assert dec.sigmaplus.first_difference(sigma_log_derivative(dec.gplus), 12) is None
    assert dec.sigmaplus[4] == mpq(-5, 64) and dec.sigmaminus[4] == mpq(5, 64)


def test_closed_forms_and_label_anomalies():
    for M, N in CLOSED_FORM_PAIRS:
        a, b = closed_form_two_factors(M, N, 16)
        dec = two_factors(M, N, 16)
        if (M, N) == (2, 3):
            a, b = b, a  # printed labels swapped
        if (M, N) == (1, 2):
            b = -b  # overall sign of the printed g-(1,2)
        assert a.first_difference(dec.gplus, 16) is None
        assert b.first_difference(dec.gminus, 16) is None
    with pytest.raises(ValueError):
        closed_form_two_factors(5, 6, 8)


def test_wilf_factors_match_up_to_power_prefactor():
    fit = wilf_cross_check(2, 3, 12)
    assert set(fit) == {"plus", "minus"}


def test_parity_domain():
    with pytest.raises((ParityDomain, ValueError)):
        two_factors(2, 4, 10)
    with pytest.raises((ParityDomain, ValueError)):
        four_factors(4, 10)


@pytest.mark.parametrize("N", [1, 3, 5, 7, 9])
def test_four_factor_normalisation(N):
    ff = four_factors(N, 20)
    for i in range(4):
        assert ff.gtilde[i][0] == 1
        sign = -1 if i < 2 else 1
        assert (ff.g[i].texp, ff.g[i].omtexp) == (sign * mpq(N, 8), -sign * mpq(N, 16))
    check_four_product(ff)


def test_four_factor_heads():
    ff5 = four_factors(5, 12)
    g1 = ff5.gtilde[0].squeeze(2, "t")
    assert g1[1] == 0 and g1[2] == mpq(5, 128) and g1[3] == mpq(45, 1024)
    s1 = ff5.sigma[0].squeeze(2, "t")
    assert [s1[i] for i in range(4)] == [mpq(5, 8), mpq(-5, 16), mpq(-5, 64), mpq(-55, 1024)]
    s3 = four_factors(7, 8).sigma[2].squeeze(2, "t")
    assert [s3[i] for i in range(3)] == [mpq(-7, 8), mpq(7, 16), mpq(7, 64)]


def test_four_closed_forms():
    for N in (5, 7):
        c = closed_form_gtilde(N, 14)
        ff = four_factors(N, 14)
        for i in range(4):
            assert c[i].first_difference(ff.gtilde[i], 14) is None


def test_h_sigma_shift():
    ff = four_factors(5, 10)
    h = h_from_four_sigma(ff.sigma[0], 5)
    assert h[0] == mpq(-1, 8)
    assert four_sigma_from_h(h, 5).first_difference(ff.sigma[0], 10) is None


@pytest.mark.parametrize("N", [3, 5, 7, 9])
def test_additivity(N):
    rep = check_additivity(N, 30)
    assert rep["total"]
    a, b = four_factor_pairing(N)[0]
    assert rep["pairs"] == f"sigma+ = sigma{a + 1} + sigma{b + 1}"


def test_additivity_n1_boundary():
    assert check_additivity(1, 12)["total"]


def test_decompose():
    a = KSeries([1, 2], 0, 5, "t")
    assert not decompose("diff", a, a).coeffs
    assert decompose("sum", a, a)[1] == 4
    with pytest.raises(ValueError):
        decompose("prod", a, a)


def test_sigma_of_correlation_is_sum():
    dec = two_factors(2, 3, 20)
    assert sigma_of_correlation(2, 3, 20).first_difference(dec.sigma, 20) is None
    # sigma(2,3) has only even blocks
    assert all(e % 2 == 0 for e, _ in dec.sigma.items())


def test_alpha_law_and_table():
    assert alpha_MN(1, 2) == mpq(1, 16)
    assert alpha_MN(2, 3) == mpq(5, 128)
    for M, N in TABLE1_ROWS:
        row = table1_row(M, N)
        assert row["law_odd"] and row["law_even"]
        assert (row["odd"], row["even"]) == ref.TABLE1[(M, N)]
    row = table1_row(1, 2)
    assert row["even"] == mpq(3, 2) * mpq(1, 16) ** 2


def test_mismatch_carries_exponent():
    err = IdentityMismatch("x", 7)
    assert err.exponent == 7
