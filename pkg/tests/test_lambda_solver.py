"""One-parameter families: seeds, resonances, B-series and the selected lambdas."""

import pytest
from gmpy2 import mpq

from isingfw import reference_data as ref
from isingfw.errors import ParityDomain
from isingfw.factors import alpha_MN, four_factors, two_factors
from isingfw.lambda_solver import (class4_pair_product, degree_bound_holds, extract_Bn_and_match,
                                   four_factor_lambdas, h0_family_value, lambda_constraints,
                                   seed_coefficients, selected_lambda, solve_family,
                                   twofactor_family_matches_factor)
from isingfw.pvi_ode import EquationId, OkamotoParams, check_residual
from isingfw.series_core import LamPoly
from isingfw.special_functions import B1_class1, B1_class4, algebraic_h0


def lambda_only(s):
    return s.map_coeffs(lambda c: LamPoly((0,) + tuple(c.c[1:])) if isinstance(c, LamPoly) else 0)


def test_class4_seed_matches_algebraic_h0():
    assert class4_pair_product(OkamotoParams.two_factor(2, 3)) == [mpq(-11, 8), mpq(1, 4), mpq(5, 64)]
    for M, N in ((1, 2), (2, 3), (3, 4), (2, 5)):
        a = class4_pair_product(OkamotoParams.two_factor(M, N))
        h0 = algebraic_h0(M, N, 3)
        assert a == [h0[0], h0[1], h0[2]]


def test_four_factor_seed_heads():
    assert seed_coefficients("fourfactor_case4", 0, 5)[0] == mpq(-1, 8)
    assert seed_coefficients("fourfactor_case1", 0, 5)[0] == mpq(-11, 8)
    with pytest.raises(ParityDomain):
        seed_coefficients("fourfactor_case1", 0, 4)
    with pytest.raises(ParityDomain):
        seed_coefficients("twofactor_class4", 1, 3)


@pytest.mark.parametrize("N,seed", sorted(ref.LAMBDA_FAMILY))
def test_formal_families_match_fixtures(N, seed):
    fam = solve_family(EquationId.make("FOUR_SIGMA", N), seed, "formal", 14)
    printed = ref.family_series(N, seed)
    assert lambda_only(fam.coefficients).first_difference(printed, printed.order) is None
    assert degree_bound_holds(fam)
    b1 = (B1_class4 if seed == "algebraic_plus" else B1_class1)(N, 4)
    assert fam.Bn[0].first_difference(b1, min(4, fam.Bn[0].order)) is None


def test_family_resonance_exponents():
    plus = solve_family(EquationId.make("FOUR_SIGMA", 5), "algebraic_plus", "formal", 10)
    minus = solve_family(EquationId.make("FOUR_SIGMA", 5), "algebraic_minus", "formal", 10)
    assert (plus.resonance_exponent, minus.resonance_exponent) == (3, 4)
    assert plus.lambda_degree(3) == 1 and plus.lambda_degree(6) == 2


def test_numeric_family_equals_formal_at_value():
    eq = EquationId.make("FOUR_SIGMA", 7)
    formal = solve_family(eq, "algebraic_plus", "formal", 12)
    v = mpq(3, 11)
    numeric = solve_family(eq, "algebraic_plus", "numeric", 12, value=v)
    assert formal.at(v).first_difference(numeric.coefficients, 12) is None
    assert check_residual(eq, numeric.coefficients).vanishes
    with pytest.raises(ValueError):
        numeric.at(v)
    with pytest.raises(ValueError):
        solve_family(eq, "algebraic_plus", "numeric", 12)


def test_small_n_rejected():
    with pytest.raises(ParityDomain):
        solve_family(EquationId.make("FOUR_SIGMA", 3), "algebraic_plus", "formal", 8)
    with pytest.raises(ParityDomain):
        lambda_constraints(4, 10)


def test_twofactor_b_series():
    fam = solve_family(EquationId.make("TWOFACTOR", 2, 3), "zero", "formal", 20)
    bs = extract_Bn_and_match(fam, 2)
    assert bs[0][0] == 1 and bs[1][0] * 2 == 1
    assert degree_bound_holds(fam)


def test_selected_lambdas():
    assert selected_lambda(1, 2) == (mpq(3, 32), mpq(-3, 32))
    assert selected_lambda(2, 3) == (mpq(5, 64), mpq(-5, 64))
    l1, l2, l3, l4 = four_factor_lambdas(5)
    assert (abs(l1), abs(l3)) == ref.LAMBDA_PRINTED[5]
    assert l2 == -l1 and l4 == -l3
    l1, _, l3, _ = four_factor_lambdas(7)
    assert (abs(l1), abs(l3)) == ref.LAMBDA_PRINTED[7]
    for M, N in ((1, 2), (2, 3), (3, 4)):
        assert selected_lambda(M, N)[0] == mpq(N + 1, 2) * alpha_MN(M, N)


def test_selected_lambda_is_read_from_factors():
    # independent read-off: the k^(N+1) coefficient of the determinant sigma
    d = two_factors(2, 3, 6)
    assert d.sigmaminus[4] == mpq(5, 64)
    ff = four_factors(5, 12)
    assert ff.sigma[0][6] - mpq(5, 8) * mpq(-1, 16) == mpq(-15, 1024)


def test_family_reproduces_factors():
    assert twofactor_family_matches_factor(2, 3, 14)
    assert twofactor_family_matches_factor(1, 2, 12)
    assert h0_family_value(2, 3, 12)
    assert h0_family_value(1, 4, 12)


@pytest.mark.parametrize("N", [5, 7])
def test_lambda_constraints(N):
    rep = lambda_constraints(N, 24)
    assert rep["other_ratio_fails"] and rep["same_sign_pair_fails"]
    assert rep["four_term_checked_order_t"] >= 10
