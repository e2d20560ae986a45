"""Forrester-Witte symbols, determinants, correlations and determinant identities.

Oracles: sympy Matrix.det, brute-force cofactor expansion and the spec examples.
"""

import random

import pytest
import sympy as sp
from gmpy2 import mpq

from isingfw.errors import IdentityMismatch, ParityDomain
from isingfw.factors import two_factors
from isingfw.fw_toeplitz import (FWParams, LatticePoint, cdef_params, check_branch_agreement,
                                 check_cdef_alternate, check_ff, check_group_relation,
                                 correlation_CMN, correlation_t, det, det_bareiss, det_cofactor,
                                 fw_determinant, fw_matrix, fw_symbol, toeplitz, wilf_factorize,
                                 wilf_product)
from isingfw.series_core import EXACT, KSeries
from isingfw.special_functions import k_tilde


def rand_matrix(rng, n):
    return [[mpq(rng.randint(-7, 7), rng.randint(1, 4)) for _ in range(n)] for _ in range(n)]


def sympy_det(m):
    return mpq(str(sp.Matrix([[sp.Rational(str(v)) for v in row] for row in m]).det()))


def test_determinants_against_sympy():
    rng = random.Random(5)
    for n in range(0, 8):
        m = rand_matrix(rng, n)
        ref = sympy_det(m) if n else mpq(1)
        assert det_cofactor(m) == ref
        assert det_bareiss(m) == ref
        assert det(m) == ref


def test_bareiss_with_zero_pivot():
    m = [[mpq(0), mpq(1), mpq(2)], [mpq(1), mpq(0), mpq(3)], [mpq(4), mpq(5), mpq(6)]]
    assert det_bareiss(m) == sympy_det(m)


def test_determinant_is_alternating():
    rng = random.Random(9)
    m = rand_matrix(rng, 4)
    swapped = [m[1], m[0], m[2], m[3]]
    assert det_cofactor(swapped) == -det_cofactor(m)


def test_series_determinant_bareiss_matches_cofactor():
    p = FWParams(3, 0, mpq(-1, 2), mpq(-1, 2))
    mat = fw_matrix(p, 12)
    assert det_bareiss(mat).first_difference(det_cofactor(mat), 12) is None


def test_symbol_examples():
    p = FWParams(1, 0, mpq(-1, 2), mpq(-1, 2))
    a0 = fw_symbol(0, p, 12)
    assert a0.first_difference(k_tilde(6).stretch(2, "k"), 12) is None
    q = FWParams(3, 0, mpq(-3, 2), mpq(-3, 2))
    for m in range(1, 3):
        assert fw_symbol(m, q, 10).first_difference(fw_symbol(-m, q, 10), 10) is None
    one = fw_symbol(0, FWParams(1, 0, 0, 0), 10)
    assert one.coeffs == (1,)
    assert check_branch_agreement(FWParams(2, 0, mpq(1, 2), mpq(-3, 2)))


def test_fw_determinant_examples():
    assert fw_determinant(FWParams(0, 0, 0, 0), 10).coeffs == (1,)
    p = FWParams(1, 0, mpq(-1, 2), mpq(-1, 2))
    assert fw_determinant(p, 12).first_difference(k_tilde(6).stretch(2, "k"), 12) is None
    p2 = FWParams(2, 0, mpq(-1, 2), mpq(-1, 2))
    a = {m: fw_symbol(m, p2, 12) for m in (-1, 0, 1)}
    brute = (a[0] * a[0] - a[1] * a[-1]).truncate(12)
    assert fw_determinant(p2, 12).first_difference(brute, 12) is None


def test_params_validation():
    with pytest.raises(ParityDomain):
        FWParams(2, mpq(1, 2), 0, 0)
    with pytest.raises(ValueError):
        FWParams(-1, 0, 0, 0)
    with pytest.raises(ValueError):
        LatticePoint(3, 2)


@pytest.mark.parametrize("M,N", [(1, 2), (1, 4), (3, 4), (2, 3), (2, 5), (4, 5), (0, 5)])
def test_correlation_normalised(M, N):
    C = correlation_CMN(M, N, 10)
    assert C[0] == 1 and C.is_even()
    assert correlation_t(M, N, 5).first_difference(C.squeeze(2, "t"), 5) is None


def test_correlation_outside_domain():
    with pytest.raises(ParityDomain):
        correlation_CMN(1, 1, 8)


def test_correlation_is_product_of_factors():
    from isingfw.factors import check_product
    for M, N in ((1, 2), (2, 3)):
        assert check_product(two_factors(M, N, 20))


def test_wilf_small_sizes():
    a = {0: mpq(3), 1: mpq(2), -1: mpq(2), 2: mpq(5), -2: mpq(5)}
    m, p = wilf_factorize(a, 2)
    assert (m, p) == (mpq(1), mpq(5))
    rng = random.Random(17)
    for size in range(2, 6):
        vals = {j: mpq(rng.randint(-5, 5), rng.randint(1, 3)) for j in range(size + 1)}
        sym = {**vals, **{-j: v for j, v in vals.items()}}
        assert wilf_product(sym, size) == sympy_det(toeplitz(sym, size))


def test_wilf_on_series_symbols():
    p = FWParams(3, 0, mpq(-1, 2), mpq(-1, 2))
    syms = {m: fw_symbol(m, p, 12) for m in range(-4, 5)}
    full = det_cofactor(toeplitz(syms, 3))
    assert wilf_product(syms, 3, "cofactor").first_difference(full, 12) is None


def test_cdef_alternate_and_ff():
    check_cdef_alternate(1, 2, 16)
    check_cdef_alternate(2, 3, 16)
    assert check_ff(1, 2, 16)["holds"]
    assert check_ff(2, 3, 16)["holds"]
    with pytest.raises(ParityDomain):
        check_ff(1, 3, 8)


@pytest.mark.parametrize("which,M,N", [("G2-", 1, 2), ("G2+", 1, 4), ("G3+", 2, 3), ("G3-", 2, 5)])
def test_group_relations(which, M, N):
    assert check_group_relation(M, N, which, 16)["holds"]


def test_group_relation_wrong_pair_fails():
    with pytest.raises((IdentityMismatch, ValueError, ParityDomain)):
        check_group_relation(2, 3, "G2-", 12)


def test_cdef_params_shape():
    p = cdef_params(2, 3)
    assert (p.Ntilde, p.eta, p.p, p.pprime) == (3, 0, mpq(-1, 2), mpq(-1, 2))


def test_exact_symbols_for_terminating_parameters():
    s = fw_symbol(0, FWParams(2, 0, 1, 1), 10)
    assert s.order in (10, EXACT)
    assert isinstance(s, KSeries)
