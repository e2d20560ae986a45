"""Two-factor and four-factor decompositions of the correlations.

Both decompositions are built from half-size Toeplitz determinants with
explicit prefactors.  Independent closed forms in the elliptic integrals are
kept alongside as fixtures for the cases that have them.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from gmpy2 import mpq

from .errors import IdentityMismatch, NormalizationFailure, ParityDomain
from .fw_toeplitz import (
    FWParams,
    LatticePoint,
    _compose_u,
    _w_power_prefactor,
    cdef_params,
    correlation_CMN,
    fw_determinant,
    wilf_factorize,
    fw_symbol,
)
from .series_core import KSeries, Q, pow_rational, sigma_log_derivative
from .special_functions import elliptic_pair

HALF = mpq(1, 2)


def _one_minus_t_pow(alpha, order, var="k"):
    k = KSeries.monomial(1, 1, var)
    return pow_rational((1 - k * k).truncate(order + 2), Q(alpha)).truncate(order)


def _divide_monomial(s, e):
    """s / k^e, requiring that nothing below k^e survives."""
    low = [x for x, c in s.items() if x < e and c]
    if low:
        raise NormalizationFailure(f"k^{low[0]} survives division by k^{e}")
    return s.shift(-e)


# -- two factors ---------------------------------------------------------------

@dataclass(frozen=True)
class FactorDecomposition:
    M: int
    N: int
    order: int
    gplus: KSeries
    gminus: KSeries
    f1: KSeries
    f2: KSeries
    rho1: KSeries
    rho2: KSeries
    sigmaplus: KSeries
    sigmaminus: KSeries
    checks: dict = field(default_factory=dict, compare=False)

    @property
    def sigma(self):
        return self.sigmaplus + self.sigmaminus

    @property
    def delta(self):
        return self.sigmaplus - self.sigmaminus


def _check_two(M, N):
    pt = LatticePoint(M, N)
    if not pt.two_factor:
        raise ParityDomain(f"(M,N)=({M},{N}) needs M+N odd")
    return pt


def determinant_pair(M, N, order):
    """The two prefactored Landen determinants, in the order they are listed.

    Returned as k-series below ``order``; no sign labelling is applied.
    """
    _check_two(M, N)
    half = mpq(M - N, 2)
    if N % 2 == 0:
        pa = FWParams(N // 2, N // 2, half, HALF)
        pb = FWParams(N // 2, N // 2, half, -HALF)
        sa = (-1) ** (N // 2)
        two = mpq(N * (N - 2), 4)
        wexp = -(N * N) // 4  # k^{-N^2/8} in w
        a1 = mpq(2 * M * N + M * M - N * N, 8)
    else:
        pa = FWParams((N - 1) // 2, (N + 1) // 2, half, HALF)
        pb = FWParams((N + 1) // 2, (N - 1) // 2, half, -HALF)
        sa = 1
        two = mpq((N - 1) ** 2, 4)
        wexp = -(N * N - 1) // 4
        a1 = mpq(2 * M * N + M * M - N * N - 2, 8)
    sgn = (-1) ** ((N + 2) // 4)
    ow = 2 * order
    extra = -wexp + 2
    out = []
    for p, s, e in ((pa, sa, mpq(N - M, 4)), (pb, 1, mpq(M - N, 4))):
        d = _compose_u(fw_determinant(p, ow + extra, "u"), ow + extra)
        pref = _w_power_prefactor(wexp, a1 + e, ow + extra,
                                  one_minus_k_exp=mpq((M - N) ** 2, 8) - e, sign=s * sgn)
        g = (pref * d).truncate(ow).scale(mpq(2) ** int(two))
        if not g.is_even():
            raise NormalizationFailure(f"factor of C({M},{N}) has odd powers of sqrt(k)")
        out.append(g.squeeze(2, "k"))
    return tuple(out)


def _label(M, N, ga, gb):
    """Order the pair as (g+, g-): g+ carries the positive k^{N+1} coefficient."""
    c = ga[N + 1]
    if not c or c != -gb[N + 1]:
        raise NormalizationFailure(f"k^{N+1} coefficients of C({M},{N}) factors are not opposite")
    return (ga, gb) if c > 0 else (gb, ga)


def _split_blocks(gp, gm, N, order):
    """f1, f2 from g+ = 1 + k^{N+1} f1 + k^{2N+4} f2 and its partner."""
    f1 = _divide_monomial(((gp - gm) / 2), N + 1)
    f2 = _divide_monomial(((gp + gm) / 2 - 1), 2 * N + 4)
    return f1, f2


def two_factors(M, N, order):
    """g+, g- and their sigma functions for C(M,N), as k-series below ``order``."""
    _check_two(M, N)
    ga, gb = determinant_pair(M, N, order)
    for g in (ga, gb):
        if g[0] != 1:
            raise NormalizationFailure(f"factor of C({M},{N}) starts with {g[0]}")
    gp, gm = _label(M, N, ga, gb)
    f1, f2 = _split_blocks(gp, gm, N, order)
    sp = sigma_log_derivative(gp).truncate(order)
    sm = sigma_log_derivative(gm).truncate(order)
    rho1 = _divide_monomial((sp - sm) / 2, N + 1)
    rho2 = _divide_monomial((sp + sm) / 2, 2 * N + 2)
    dec = FactorDecomposition(M, N, order, gp, gm, f1, f2, rho1, rho2, sp, sm)
    dec.checks["Cf1f2"] = check_cf1f2(dec)
    return dec


def check_cf1f2(dec: FactorDecomposition):
    """C = (1-t)^{1/4} (-t^{N+1} f1^2 + (1 + t^{N+2} f2)^2)."""
    M, N, order = dec.M, dec.N, dec.order
    C = correlation_CMN(M, N, order)
    tn1 = KSeries.monomial(2 * N + 2)
    tn2 = KSeries.monomial(2 * N + 4)
    inner = -tn1 * dec.f1 * dec.f1 + (1 + tn2 * dec.f2) ** 2
    rhs = (_one_minus_t_pow(mpq(1, 4), order) * inner).truncate(order)
    e = C.first_difference(rhs, order)
    if e is not None:
        raise IdentityMismatch(f"C({M},{N}) block form fails at k^{e}", e)
    return True


def check_product(dec: FactorDecomposition):
    """(1-t)^{-1/4} C = g+ g-."""
    C = correlation_CMN(dec.M, dec.N, dec.order)
    lhs = (_one_minus_t_pow(mpq(-1, 4), dec.order) * C).truncate(dec.order)
    e = lhs.first_difference(dec.gplus * dec.gminus, dec.order)
    if e is not None:
        raise IdentityMismatch(f"product identity for C({dec.M},{dec.N}) fails at k^{e}", e)
    return True


def _fit_power_ratio(r, order):
    """Write r = c (1+k)^a (1-k)^b, returning (c, a, b) or None."""
    if not r.coeffs or r.val != 0:
        return None
    c = r[0]
    u = r.scale(1 / c)
    # log-derivative a/(1+k) - b/(1-k) = (a-b) - (a+b) k + ...
    ld = (u.diff() / u).truncate(order - 1)
    a = (ld[0] - ld[1]) / 2
    b = -(ld[0] + ld[1]) / 2
    k = KSeries.monomial(1)
    model = (pow_rational((1 + k).truncate(order), a) * pow_rational((1 - k).truncate(order), b)).scale(c)
    return (c, a, b) if model.agrees(r, order) else None


def wilf_cross_check(M, N, order, dec=None):
    """Each Wilf factor of the correlation determinant is a factor g times c(1+k)^a(1-k)^b.

    Returns the fitted (c, a, b) for the plus and minus matches.
    """
    dec = dec or two_factors(M, N, order)
    params = cdef_params(M, N)
    syms = {j: fw_symbol(j, params, order) for j in range(-N, N + 1)}
    w1, w2 = wilf_factorize(syms, N)
    found = {}
    for name, g in (("plus", dec.gplus), ("minus", dec.gminus)):
        for w in (w1, w2):
            if not w.coeffs or w.val != 0:
                continue
            fit = _fit_power_ratio((w / g).truncate(order), order)
            if fit is not None:
                found[name] = fit
                break
        else:
            raise IdentityMismatch(f"no Wilf factor of C({M},{N}) matches g_{name}")
    return found


# -- closed forms in the elliptic integrals ------------------------------------

def _poly(*cs):
    return KSeries(list(cs), 0)


def _two_factor_closed(M, N, s, K, E, k, order):
    """Closed forms of g+ (s=1) and g- (s=-1); None when not tabulated."""
    k2 = k * k
    one_t = 1 - k2
    pm = pow_rational((1 + s * k).truncate(order + 8), HALF)
    pre = _one_minus_t_pow(mpq(-1, 8), order + 8)
    if (M, N) == (1, 2):
        body = E - (1 - s * k) * K
        return pre * pm * body, 1
    if (M, N) == (1, 4):
        body = ((k2 - 3 * s * k + 1) * E * E + 2 * (1 - s * k) * (k2 + s * k - 1) * E * K
                + (1 - s * k) * one_t * K * K)
        return (pre * pm * body).scale(mpq(-4, 3)), 4
    if (M, N) == (3, 4):
        body = ((_poly(1, 15 * s, -16, 15 * s, 1)) * E * E
                - 2 * (1 - s * k) * _poly(1, 13 * s, -2, s, 3) * E * K
                - one_t * (1 - s * k) * _poly(-1, -10 * s, 3) * K * K)
        return (pre * pm * body).scale(mpq(4, 45)), 4
    if (M, N) == (2, 3):
        if s > 0:
            body = 3 * E * E + (k2 - 5) * E * K - 2 * (k2 - 1) * K * K
            return (pre * _one_minus_t_pow(HALF, order + 8) * body).scale(mpq(-2, 3)), 2
        body = (k2 + 1) * E + (k2 - 1) * K
        return (pre * body).scale(mpq(2, 3)), 2
    if (M, N) == (2, 5):
        if s > 0:
            body = (_poly(7, 0, -22, 0, 7) * E ** 3 - 5 * one_t ** 3 * K ** 3
                    - (11 * k2 - 17) * one_t ** 2 * E * K * K
                    - one_t * _poly(19, 0, -33, 0, 2) * E * E * K)
            return (pre * body).scale(mpq(-16, 45)), 6
        body = (_poly(2, 0, 13, 0, 2) * E * E + _poly(-4, 0, -15, 0, 7) * E * K
                + 2 * (1 + 2 * k2) * one_t * K * K)
        return (pre * _one_minus_t_pow(HALF, order + 8) * body).scale(mpq(-16, 45)), 6
    if (M, N) == (4, 5):
        if s > 0:
            body = (_poly(2, 0, 111, 0, -34, 0, 111, 0, 2) * E * E
                    - one_t * _poly(4, 0, 179, 0, -34, 0, 43) * K * E
                    - 2 * one_t ** 2 * _poly(-1, 0, -34, 0, 11) * K * K)
            return (pre * body).scale(mpq(16, 1575)), 6
        body = (_poly(25, 0, -825, 0, -825, 0, 25) * E ** 3
                + 3 * _poly(-23, 0, 631, 0, 121, 0, -219, 0, 2) * E * E * K
                + 3 * one_t * _poly(21, 0, -459, 0, -121, 0, 47) * E * K * K
                + one_t ** 2 * _poly(-19, 0, 334, 0, 69) * K ** 3)
        return (_one_minus_t_pow(mpq(3, 8), order + 8) * body).scale(mpq(16, 4725)), 6
    return None


CLOSED_FORM_PAIRS = ((1, 2), (1, 4), (3, 4), (2, 3), (2, 5), (4, 5))


def closed_form_two_factors(M, N, order):
    """(g+, g-) from the elliptic closed forms, as k-series below ``order``."""
    if (M, N) not in CLOSED_FORM_PAIRS:
        raise ValueError(f"no closed form tabulated for C({M},{N})")
    work = order + 8
    K, E = elliptic_pair("k", work)
    k = KSeries.monomial(1)
    out = []
    for s in (1, -1):
        g, shift = _two_factor_closed(M, N, s, K, E, k, order)
        out.append(_divide_monomial(g.truncate(work), shift).truncate(order))
    return tuple(out)


# -- four factors --------------------------------------------------------------

@dataclass(frozen=True)
class PuiseuxFactor:
    """t^texp (1-t)^omtexp * unit, with ``unit`` an even k-series equal to 1 + O(t^2)."""

    texp: mpq
    omtexp: mpq
    unit: KSeries

    def sigma(self):
        t = KSeries.monomial(2)
        return self.texp * (t - 1) + self.omtexp * t + sigma_log_derivative(self.unit)


@dataclass(frozen=True)
class FourFactorSet:
    N: int
    order: int
    g: tuple
    gtilde: tuple
    sigma: tuple
    h: tuple

    @property
    def sigma_total(self):
        return self.sigma[0] + self.sigma[1] + self.sigma[2] + self.sigma[3]


def four_factor_params(N):
    """Rows (params, (1-k^2) exponent, k exponent, power of two, extra sign)."""
    if N % 2 == 0 or N < 1:
        raise ParityDomain("four factors need N odd")
    if N % 4 == 1:
        a = (N - 1) // 4
        lo, hi = mpq((N + 1) ** 2, 16), mpq((N + 1) * (N - 3), 16)
        t1, t2 = (N - 1) * (N - 3) // 8, (N * N - 1) // 8
        return [
            (FWParams(a, a, HALF, -HALF), mpq(-1, 16), lo, t1, 1),
            (FWParams(a, a, HALF, HALF), mpq(3, 16), lo, t1, (-1) ** ((N - 1) // 4)),
            (FWParams(a, a + 1, -HALF, HALF), mpq(-1, 16), hi, t2, 1),
            (FWParams(a + 1, a, -HALF, -HALF), mpq(3, 16), hi, t2, 1),
        ]
    a = (N + 1) // 4
    lo, hi = mpq((N - 1) * (N + 3), 16), mpq((N - 1) ** 2, 16)
    t1, t2 = (N - 1) * (N - 3) // 8, (N * N - 1) // 8
    return [
        (FWParams(a - 1, a, HALF, HALF), mpq(3, 16), lo, t1, 1),
        (FWParams(a, a - 1, HALF, -HALF), mpq(-1, 16), lo, t1, 1),
        (FWParams(a, a, -HALF, -HALF), mpq(3, 16), hi, t2, (-1) ** ((N + 1) // 4)),
        (FWParams(a, a, -HALF, HALF), mpq(-1, 16), hi, t2, 1),
    ]


def four_factors(N, order):
    """The four normalized factors of (1-t)^{-1/4} C(0,N), below k^order."""
    S = (-1) ** ((N + 4) // 8)
    gs, gts, sig, hs = [], [], [], []
    for i, (p, alpha, kexp, two, sg) in enumerate(four_factor_params(N)):
        d = fw_determinant(p, order + 2 * N)
        v = d.val
        lead = d[v] * mpq(2) ** two * S * sg
        if lead != 1:
            raise NormalizationFailure(f"factor {i + 1} of C(0,{N}) has leading coefficient {lead}")
        unit = d.shift(-v).scale(1 / d[v])
        sign = -1 if i < 2 else 1
        if v - kexp != mpq(sign * N, 4):
            raise NormalizationFailure(f"factor {i + 1} of C(0,{N}) has k-exponent {v - kexp}")
        if not unit.is_even():
            raise NormalizationFailure(f"factor {i + 1} of C(0,{N}) has odd powers of k")
        gt = (unit * _one_minus_t_pow(alpha + sign * mpq(N, 16), order + 2 * N)).truncate(order)
        g = PuiseuxFactor(mpq(sign * N, 8), mpq(-sign * N, 16), gt)
        s = g.sigma().truncate(order)
        gs.append(g)
        gts.append(gt)
        sig.append(s)
        hs.append(h_from_four_sigma(s, N))
    return FourFactorSet(N, order, tuple(gs), tuple(gts), tuple(sig), tuple(hs))


def h_from_four_sigma(sigma, N):
    """h_i = sigma_i - t/16 - (N^2-1)/32."""
    t = KSeries.monomial(2, 1, sigma.var)
    return sigma - t / 16 - mpq(N * N - 1, 32)


def four_sigma_from_h(h, N):
    t = KSeries.monomial(2, 1, h.var)
    return h + t / 16 + mpq(N * N - 1, 32)


def check_four_product(ff: FourFactorSet):
    """g~1 g~2 g~3 g~4 = (1-t)^{-1/4} C(0,N); the t and (1-t) powers cancel."""
    N, order = ff.N, ff.order
    C = correlation_CMN(0, N, order)
    lhs = (_one_minus_t_pow(mpq(-1, 4), order) * C).truncate(order)
    prod = ff.gtilde[0] * ff.gtilde[1] * ff.gtilde[2] * ff.gtilde[3]
    e = lhs.first_difference(prod, order)
    if e is not None:
        raise IdentityMismatch(f"four-factor product for C(0,{N}) fails at k^{e}", e)
    return True


def _four_closed(N, i, K, E, t):
    if N == 5:
        if i == 1:
            return mpq(2, 3), mpq(-3, 8), 1, (2 * t - 1) * E - (t - 1) * K
        if i == 2:
            return mpq(2, 3), mpq(-1, 8), 1, (t + 1) * E + (t - 1) * K
        if i == 3:
            return mpq(-8, 3), mpq(1, 4), 2, (t - 2) * E - 2 * (t - 1) * K
        return mpq(-8, 3), HALF, 2, 3 * E * E + 2 * (t - 2) * E * K - (t - 1) * K * K
    if N == 7:
        if i == 1:
            return mpq(8, 15), mpq(-1, 4), 2, 2 * (t * t - t + 1) * E - (t - 2) * (t - 1) * K
        if i == 2:
            return (mpq(8, 45), mpq(-1, 2), 2,
                    (4 * t * t + 11 * t - 11) * E * E + 8 * (t - 2) * (t - 1) * E * K
                    - 5 * (1 - t) ** 2 * K * K)
        if i == 3:
            return (mpq(64, 45), mpq(5, 8), 4,
                    (4 * t * t - 19 * t + 4) * E * E - 2 * (8 * t * t - 15 * t + 4) * E * K
                    + (7 * t - 4) * (t - 1) * K * K)
        return (mpq(-64, 45), mpq(3, 8), 4,
                (11 * t * t - 11 * t - 4) * E * E + 2 * (t - 1) * (3 * t * t - 7 * t - 4) * E * K
                - (t - 1) ** 2 * (3 * t + 4) * K * K)
    raise ValueError(f"no closed form tabulated for C(0,{N})")


def closed_form_gtilde(N, order):
    """The normalized four factors of C(0,N), N in {5,7}, from elliptic closed forms."""
    work = order + 10
    K, E = elliptic_pair("k", work)
    t = KSeries.monomial(2)
    out = []
    for i in range(1, 5):
        c, om, tpow, body = _four_closed(N, i, K, E, t)
        g = (body * _one_minus_t_pow(om, work)).truncate(work).scale(c)
        out.append(_divide_monomial(g, 2 * tpow).truncate(order))
    return tuple(out)


# -- additivity ----------------------------------------------------------------

def decompose(kind, a, b):
    """Sum or difference of two sigma functions."""
    if kind == "sum":
        return a + b
    if kind == "diff":
        return a - b
    raise ValueError(f"unknown kind {kind!r}")


def sigma_of_correlation(M, N, order):
    """t(t-1) d ln C/dt - t/4 as a k-series."""
    C = correlation_CMN(M, N, order + 2)
    t = KSeries.monomial(2)
    return (sigma_log_derivative(C) - t / 4).truncate(order)


def four_factor_pairing(N):
    """Which sum of two four-factor sigmas is sigma+ (g+ has the positive k^{N+1} term).

    sigma+ = sigma1 + sigma3 when N = 1 mod 4 and sigma2 + sigma4 when N = 3 mod 4.
    """
    return ((0, 2), (1, 3)) if N % 4 == 1 else ((1, 3), (0, 2))


def check_additivity(N, order, ff=None, dec=None):
    """sigma(0,N) is the sum of the four sigma_i, and sigma+- split into pairs of them."""
    ff = ff or four_factors(N, order)
    report = {"N": N, "order": order}
    sig = sigma_of_correlation(0, N, order)
    _agree("sigma = sum sigma_i", sig, ff.sigma_total, order)
    report["total"] = True
    if N >= 3:
        dec = dec or two_factors(0, N, order)
        (a, b), (c, d) = four_factor_pairing(N)
        _agree(f"sigma+ = sigma{a + 1} + sigma{b + 1}", dec.sigmaplus, ff.sigma[a] + ff.sigma[b], order)
        _agree(f"sigma- = sigma{c + 1} + sigma{d + 1}", dec.sigmaminus, ff.sigma[c] + ff.sigma[d], order)
        report["pairs"] = f"sigma+ = sigma{a + 1} + sigma{b + 1}"
    return report


def _agree(name, a, b, order):
    e = a.first_difference(b, order)
    if e is not None:
        raise IdentityMismatch(f"{name}: first difference at k^{e}", e, a[e] - b[e])


# -- selected lambda -------------------------------------------------------------

def alpha_MN(M, N):
    """The coefficient law behind the k^{N+1} terms of sigma+-."""
    _check_two(M, N)
    from math import factorial as f
    return mpq(f(N + M) * f(N - M),
               2 ** (2 * N) * f(N + 1) * f((N + M - 1) // 2) * f((N - M - 1) // 2))


TABLE1_ROWS = ((1, 2), (1, 4), (3, 4), (1, 6), (3, 6), (5, 6), (2, 3), (2, 5), (4, 5), (2, 7), (4, 7))


def table1_row(M, N, dec=None):
    """Leading coefficients of the two sigma blocks with the predicted law.

    ``odd`` is the k^{N+1} coefficient of sigma- (the negative of the one in
    sigma+), ``even`` the leading coefficient of rho2.
    """
    dec = dec or two_factors(M, N, 2 * N + 4)
    a = alpha_MN(M, N)
    c1 = dec.sigmaminus[N + 1]
    c2 = dec.rho2[0]
    half = mpq(N + 1, 2)
    return {"M": M, "N": N, "alpha": a, "odd": c1, "even": c2,
            "law_odd": c1 == half * a and dec.sigmaplus[N + 1] == -c1,
            "law_even": c2 == half * a * a}
