"""Equation registry, residuals, transforms, Tracy-Widom relations and ring identities.

Polynomial identities are checked against sympy substitution; residuals use
the determinant factors, which are built independently of the equations.
"""

import pytest
import sympy as sp
from gmpy2 import mpq

from isingfw import reference_data as ref
from isingfw.errors import IdentityMismatch, TruncationUnderflow
from isingfw.factors import four_factors, two_factors
from isingfw.pvi_ode import (EQUATION_NAMES, CosgroveCoeffs, EquationId, OkamotoParams,
                             check_residual, differential_identities, eqnm_as_sdi, four_sigma_shift,
                             polynomial, require_residual, residual, same_polynomial, transforms,
                             tw_relations, unique_series_N9)
from isingfw.series_core import EXACT, KSeries
from isingfw.special_functions import sqrt_one_minus_t


def test_equation_id_parse_and_str():
    eq = EquationId.parse("TWOFACTOR(2,3)")
    assert str(eq) == "TWOFACTOR(2,3)"
    assert EquationId.parse("EQNM", M=1, N=2) == EquationId.make("EQNM", 1, 2)
    assert EquationId.parse("FOUR_SIGMA", N=5).param_dict() == {"N": 5}
    assert EquationId.make("EQNM", M=4, N=5).params == (4, 5)
    assert set(EQUATION_NAMES) >= {"EQNM", "SDI", "OKAMOTO_H", "DELTA3_4F"}


@pytest.mark.parametrize("text", ["NOPE(1,2)", "EQNM(1)", "eqnm(1,2)", "EQNM"])
def test_equation_id_rejects(text):
    with pytest.raises(ValueError):
        EquationId.parse(text)


def test_zero_solves_twofactor():
    for M, N in ((1, 2), (2, 3), (3, 4)):
        z = KSeries((), 0, 30, "k")
        assert check_residual(EquationId.make("TWOFACTOR", M, N), z).vanishes


def test_algebraic_seed_solves_four_sigma():
    for N in (5, 7):
        seed = sqrt_one_minus_t(25).scale(mpq(N, 8))
        rep = require_residual(EquationId.make("FOUR_SIGMA", N), seed)
        assert rep.checked_order >= 20
        assert check_residual(EquationId.make("FOUR_SIGMA", N), seed.scale(-1)).vanishes
        assert not check_residual(EquationId.make("FOUR_SIGMA", N), seed.scale(2)).vanishes


@pytest.mark.parametrize("MN", [(1, 2), (2, 3), (1, 4), (2, 5)])
def test_factor_sigmas_solve_sigma_form(MN):
    M, N = MN
    d = two_factors(M, N, 24)
    s = (d.sigmaplus + d.sigmaminus).squeeze(2, "t")
    rep = require_residual(EquationId.make("EQNM", M, N), s, min_order=10)
    assert rep.vanishes
    assert check_residual(EquationId.make("EQNMODD", M, N), s).vanishes
    assert not check_residual(EquationId.make("EQNM", M, N + 2), s).vanishes


@pytest.mark.parametrize("MN", [(2, 3), (2, 5)])
def test_delta_equations_on_factors(MN):
    M, N = MN
    d = two_factors(M, N, 24)
    delta = (d.sigmaplus - d.sigmaminus).squeeze(2, "t")
    for name in ("DELTA3", "DELTA2"):
        assert check_residual(EquationId.make(name, M, N), delta).vanishes
    for s in (d.sigmaplus, d.sigmaminus):
        assert check_residual(EquationId.make("TWOFACTOR", M, N), s.squeeze(2, "t")).vanishes


def test_four_factor_sigmas_solve_four_sigma():
    ff = four_factors(5, 30)
    for s in ff.sigma:
        assert check_residual(EquationId.make("FOUR_SIGMA", 5), s).vanishes


def test_nonzero_residual_and_underflow():
    s = KSeries([1, 1], 0, 10, "t")
    with pytest.raises(IdentityMismatch):
        require_residual(EquationId.make("EQNM", 2, 3), s)
    with pytest.raises(TruncationUnderflow):
        residual(EquationId.make("EQNM", 2, 3), KSeries([1], 0, 1, "t"))
    with pytest.raises(TruncationUnderflow):
        check_residual(EquationId.make("TWOFACTOR", 2, 3), KSeries((), 0, 6, "k"), min_order=50)


def test_eqnm_is_a_master_form():
    for M, N in ((1, 2), (2, 3), (3, 4), (0, 5), (2, 4)):
        assert same_polynomial(EquationId.make("EQNM", M, N), EquationId.sdi(eqnm_as_sdi(M, N)))
    assert not same_polynomial(EquationId.make("EQNM", 2, 3), EquationId.sdi(eqnm_as_sdi(2, 5)))


def test_master_form_shift_against_substitution():
    t, y = sp.symbols("t y")
    c = CosgroveCoeffs(mpq(1, 3), -2, mpq(5, 4), 7, mpq(-1, 2), 3)
    A, B = mpq(2, 5), mpq(-3, 7)
    P = polynomial(EquationId.sdi(c))
    Ps = polynomial(EquationId.sdi(c.shifted(A, B)))
    sA, sB = sp.Rational(2, 5), sp.Rational(-3, 7)
    y1, y2 = sp.symbols("y1 y2")
    # y = Y + A + B t: y' = Y' + B, y'' = Y''
    sub = P.subs({y: y + sA + sB * t, y1: y1 + sB}, simultaneous=True)
    assert sp.expand(sub - Ps) == 0


def test_four_sigma_is_shifted_four_h():
    t, y, y1 = sp.symbols("t y y1")
    for N in (3, 5, 7):
        A, B = four_sigma_shift(N)
        H = polynomial(EquationId.make("FOUR_H", N))
        S = polynomial(EquationId.make("FOUR_SIGMA", N))
        a, b = sp.Rational(int(A.numerator), int(A.denominator)), sp.Rational(int(B.numerator), int(B.denominator))
        # h = sigma + A + B t
        assert sp.expand(H.subs({y: y + a + b * t, y1: y1 + b}, simultaneous=True) - S) == 0


def test_okamoto_images_share_master_coeffs():
    p = OkamotoParams.two_factor(2, 3)
    imgs = p.images()
    assert p in imgs
    assert len(set(q.master_coeffs() for q in imgs)) == 1
    for M, N in ((1, 2), (2, 3), (4, 5)):
        assert OkamotoParams.two_factor(M, N).master_coeffs().c7 == -mpq(M * M + N * N + 1, 4)
    assert OkamotoParams.four_factor(5).as_tuple() == (mpq(3, 2), 1, mpq(-1, 2), 0)


def test_transforms():
    f = KSeries([1, 2], 0, EXACT, "t")
    g = transforms("affine_shift", f, (mpq(1, 2), 3))
    assert g.coeffs == (mpq(3, 2), 5)
    s = transforms("sigma_from_h", KSeries((), 0, EXACT, "t"), 5)
    assert s.coeffs == (mpq(24, 32), mpq(1, 16))
    with pytest.raises(ValueError):
        transforms("nope", f, ())


def test_tracy_widom_relations():
    d = two_factors(2, 3, 24)
    sig, dl = d.sigmaplus + d.sigmaminus, d.sigmaplus - d.sigmaminus
    assert tw_relations("two_factor", {"sigma": sig, "delta": dl})["checked_order"] >= 20
    st, dt = sig.squeeze(2, "t"), dl.squeeze(2, "t")
    assert tw_relations("sigma_from_delta", {"sigma": st, "delta": dt, "M": 2, "N": 3})
    with pytest.raises(IdentityMismatch):
        tw_relations("two_factor", {"sigma": sig, "delta": dl.scale(2)})
    ff = four_factors(5, 30)
    for a, b in ((0, 2), (1, 3)):
        s = ff.sigma[a] + ff.sigma[b]
        dd = ff.sigma[a] - ff.sigma[b]
        assert tw_relations("four_factor", {"sigma": s, "delta": dd, "N": 5})
    with pytest.raises(IdentityMismatch):
        tw_relations("four_factor", {"sigma": ff.sigma[0] + ff.sigma[3],
                                     "delta": ff.sigma[0] - ff.sigma[3], "N": 5})


def test_differential_identities():
    t = sp.Symbol("t")
    assert differential_identities("r3_r2", 3, M=2, delta=1 + t + t**2 / 2)["holds"]
    assert differential_identities("r3_r2_4f", 5, delta=t + 3 * t**3)["holds"]
    for seed in range(5):
        for kind in ("r3_r2_4f", "kw_covariance_P", "kw_covariance_calP"):
            assert differential_identities(kind, 7, seed=seed)["holds"]
    with pytest.raises(IdentityMismatch):
        differential_identities("r3_r2_4f_alt", 5, delta=t + 3 * t**3)
    with pytest.raises(ValueError):
        differential_identities("nope", 5)


def test_n9_series_match_fixtures():
    delta = unique_series_N9("delta", 6)
    assert {e: delta[e] for e in range(6)} == ref.DELTA_0_9
    sp9 = unique_series_N9("sigma_plus", 9)
    assert {e: sp9[e] for e in range(5, 9)} == ref.SIGMA_PLUS_0_9
    assert all(sp9[e] == 0 for e in range(5))
    with pytest.raises(ValueError):
        unique_series_N9("other", 4)
