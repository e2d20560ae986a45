"""The acceptance suite: thirteen exact checks against printed fixtures and identities.

Each criterion is a function returning a list of detail strings; it raises on
the first failed comparison.  ``run`` wraps them into one pass/fail line each.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass

from gmpy2 import mpq

from . import reference_data as ref
from .errors import IdentityMismatch, IsingSeriesError
from .series_core import (KSeries, compose, exp_series, log_series, pow_rational, revert,
                          sigma_log_derivative)


@dataclass(frozen=True)
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float

    def line(self):
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] criterion {self.number:2d} {self.title}: {self.detail} ({self.seconds:.1f}s)"


def _fail(msg, e=None):
    raise IdentityMismatch(msg, e)


def _match_dict(name, series, printed, upto=None):
    """Every printed coefficient (below ``upto``) equals the computed one."""
    n = 0
    for e, v in sorted(printed.items()):
        if upto is not None and e >= upto:
            continue
        if e >= series.order:
            _fail(f"{name}: computed series stops below exponent {e}", e)
        if series[e] != v:
            _fail(f"{name}: exponent {e} computed {series[e]}, printed {v}", e)
        n += 1
    return n


def _zero_residual(eq, f, min_order):
    from .pvi_ode import require_residual

    rep = require_residual(eq, f, min_order)
    return rep.checked_order


# -- 1: two-factor g+- ---------------------------------------------------------------


def crit_two_factor_g():
    from .factors import two_factors

    out = []
    for M, N in ref.TWO_FACTOR_PAIRS:
        ext = ref.printed_extent(ref.G_TWO, M, N)
        dec = two_factors(M, N, ext)
        n = _match_dict(f"g+({M},{N})", dec.gplus, ref.two_factor_series(ref.G_TWO, M, N, 1), ext)
        n += _match_dict(f"g-({M},{N})", dec.gminus, ref.two_factor_series(ref.G_TWO, M, N, -1), ext)
        out.append(f"({M},{N}) {n} coeffs to k^{ext - 1}")
    return out


# -- 2: two-factor sigma+- -----------------------------------------------------------


def crit_two_factor_sigma():
    """The printed sigma+ is our sigma- (positive k^{N+1} term) for M > 0."""
    from .factors import two_factors

    out = []
    for M, N in ref.TWO_FACTOR_PAIRS:
        ext = ref.printed_extent(ref.SIGMA_TWO, M, N)
        dec = two_factors(M, N, ext)
        n = _match_dict(f"sigma-({M},{N})", dec.sigmaminus, ref.two_factor_series(ref.SIGMA_TWO, M, N, 1), ext)
        n += _match_dict(f"sigma+({M},{N})", dec.sigmaplus, ref.two_factor_series(ref.SIGMA_TWO, M, N, -1), ext)
        out.append(f"({M},{N}) {n}")
    return ["labels swapped"] + out


# -- 3: leading-coefficient table -----------------------------------------------------


def crit_table1():
    from .factors import TABLE1_ROWS, table1_row

    if set(TABLE1_ROWS) != set(ref.TABLE1):
        _fail("table rows differ from the fixture")
    for M, N in TABLE1_ROWS:
        row = table1_row(M, N)
        odd, even = ref.TABLE1[(M, N)]
        if row["odd"] != odd or row["even"] != even:
            _fail(f"row ({M},{N}): computed {row['odd']}, {row['even']}; printed {odd}, {even}")
        if row["alpha"] != ref.TABLE1_ALPHA[(M, N)]:
            _fail(f"row ({M},{N}): alpha {row['alpha']} vs {ref.TABLE1_ALPHA[(M, N)]}")
        if not (row["law_odd"] and row["law_even"]):
            _fail(f"row ({M},{N}) breaks the alpha law")
    return [f"{len(TABLE1_ROWS)} rows, odd and even columns and alpha law"]


# -- 4: ODE residuals ----------------------------------------------------------------


def crit_residuals():
    from .factors import four_factors, two_factors
    from .pvi_ode import EquationId

    low = []
    for M, N in ref.TWO_FACTOR_PAIRS:
        dec = two_factors(M, N, 42)
        eq = EquationId.make("TWOFACTOR", M, N)
        low.append(min(_zero_residual(eq, dec.sigmaplus, 40), _zero_residual(eq, dec.sigmaminus, 40)))
        _zero_residual(EquationId.make("EQNMODD", M, N), dec.sigma, 40)
    four = []
    for N in (5, 7):
        ff = four_factors(N, 42)
        eq = EquationId.make("FOUR_SIGMA", N)
        four.append(min(_zero_residual(eq, s, 40) for s in ff.sigma))
        _zero_residual(EquationId.make("EQNM_M0", N), ff.sigma_total, 40)
    return [f"TWOFACTOR and EQNMODD to k^{min(low)}", f"FOUR_SIGMA and EQNM_M0 to k^{min(four)}"]


# -- 5: Landen reduction --------------------------------------------------------------


def crit_landen():
    from .landen import h_from_sigma, verify_reduction
    from .factors import two_factors
    from .pvi_ode import EquationId, check_residual

    rep = verify_reduction(2, 3, 15)
    # our sigma+ maps to the printed h- and vice versa (sigma labels swapped)
    _match_dict("h from sigma+(2,3)", rep["h_plus"], dict(enumerate(ref.H_23["minus"])))
    _match_dict("h from sigma-(2,3)", rep["h_minus"], dict(enumerate(ref.H_23["plus"])))
    for M, N in ((1, 4), (3, 4)):
        verify_reduction(M, N, 15)
    # the rewritten map is not equivalent
    alt = h_from_sigma(two_factors(2, 3, 20).sigmaplus, 2, 3, 20, alt=True)
    if check_residual(EquationId.make("OKAMOTO_H", 2, 3), alt).vanishes:
        _fail("the alternative Landen map unexpectedly solves the Okamoto form")
    return ["h+-(2,3) printed terms match (labels swapped)", "OKAMOTO_H zero to x^15",
            "h0 for (2,3),(1,4),(3,4)"]


# -- 6: four factors -----------------------------------------------------------------


def sigma_from_gtilde(gt, g):
    """sigma_i from a normalized factor g~_i and the Puiseux prefactor of g_i."""
    t = KSeries.monomial(1, 1, gt.var)
    return (sigma_log_derivative(gt, half_integer=False)
            + (t - 1).scale(g.texp) + t.scale(g.omtexp)).truncate(gt.order)


def crit_four_factor():
    from .factors import check_additivity, four_factors, two_factors
    from .lambda_solver import four_factor_lambdas, solve_family
    from .pvi_ode import EquationId

    out = []
    errata_seen = set()
    for N in (5, 7):
        ff = four_factors(N, 42)
        for i in range(4):
            st = ff.sigma[i].squeeze(2, "t")
            gt = ff.gtilde[i].squeeze(2, "t")
            _match_dict(f"sigma{i + 1}(0,{N})", st, ref.corrected("sigma", N, i))
            _match_dict(f"g~{i + 1}(0,{N})", gt, ref.corrected("gtilde", N, i))
            # printed g~ and printed sigma disagree with each other exactly at the errata
            from_printed = sigma_from_gtilde(ref.as_series(ref.GTILDE_FOUR[N][i]), ff.g[i])
            for e, v in ref.SIGMA_FOUR[N][i].items():
                if e >= from_printed.order:
                    continue
                bad_sigma = ("sigma", N, i, e) in ref.ERRATA
                bad_g = ("gtilde", N, i, e) in ref.ERRATA
                if (from_printed[e] != v) != (bad_sigma or bad_g):
                    _fail(f"printed g~{i + 1}(0,{N}) and sigma{i + 1}(0,{N}) at t^{e} break the errata list", e)
                for tab, bad in (("sigma", bad_sigma), ("gtilde", bad_g)):
                    if bad:
                        errata_seen.add((tab, N, i, e))
                        if (st if tab == "sigma" else gt)[e] != ref.ERRATA[(tab, N, i, e)][1]:
                            _fail(f"erratum {tab} {N} {i} {e}: computed value differs from the correction", e)
        check_additivity(N, 40, ff=ff, dec=two_factors(0, N, 40))
        lams = four_factor_lambdas(N)
        pl1, pl3 = ref.LAMBDA_PRINTED[N]
        if (abs(lams[0]), abs(lams[2])) != (pl1, pl3) or lams[1] != -lams[0] or lams[3] != -lams[2]:
            _fail(f"selected lambdas for N={N}: {lams}")
        # signs as read off the printed sigma series at the resonance
        for i, r in ((0, (N + 1) // 2), (2, (N + 3) // 2)):
            seed = mpq((1 if i == 0 else -1) * N, 8) * _sqrt_coeff(r)
            if ref.SIGMA_FOUR[N][i][r] - seed != lams[i]:
                _fail(f"lambda{i + 1}({N}) disagrees with the printed sigma{i + 1}")
        for i in range(4):
            seed = "algebraic_plus" if i < 2 else "algebraic_minus"
            fam = solve_family(EquationId.make("FOUR_SIGMA", N), seed, "numeric", 15, value=lams[i])
            e = fam.coefficients.first_difference(ff.sigma[i].squeeze(2, "t"), 15)
            if e is not None:
                _fail(f"numeric family {i + 1} for N={N} differs from the factor sigma at t^{e}", e)
        out.append(f"N={N}: lambdas {lams[0]}, {lams[2]}")
    if errata_seen != set(ref.ERRATA):
        _fail(f"errata not all exercised: {sorted(set(ref.ERRATA) - errata_seen)}")
    return out + [f"{len(ref.ERRATA)} printed misprints confirmed by the g~/sigma cross relation",
                  "additivity to k^40, numeric families to k^30"]


def _sqrt_coeff(n):
    """Coefficient of t^n in sqrt(1-t)."""
    from .special_functions import sqrt_one_minus_t

    return sqrt_one_minus_t(n + 1, "t")[n]


# -- 7: B-series ---------------------------------------------------------------------


def crit_bseries():
    from .lambda_solver import extract_Bn_and_match, solve_family
    from .pvi_ode import EquationId
    from .special_functions import B1_class1, B1_class4, op_class1, op_class4

    out = []
    for M, N in ((2, 3), (0, 5), (0, 7)):
        order = max(N + 1 + 42, 2 * (N + 1) + 32)
        fam = solve_family(EquationId.make("TWOFACTOR", M, N), "zero", "formal", order)
        b1, b2 = extract_Bn_and_match(fam, 2)
        if b1.order < 21 or b2.order < 16:
            _fail(f"B-series for ({M},{N}) known only to t^{b1.order}, t^{b2.order}")
        out.append(f"({M},{N}) B1 to t^{b1.order - 1}, B2 to t^{b2.order - 1}")
    for N in (5, 7):
        for name, f, op, head in (("class4", B1_class4, op_class4, ref.b1_class4_head),
                                  ("class1", B1_class1, op_class1, ref.b1_class1_head)):
            b = f(N, 24)
            r = op(b, N)
            if r.coeffs and r.val < 21:
                _fail(f"B1 {name}(N={N}) fails its operator at t^{r.val}", r.val)
            if r.order < 21:
                _fail(f"B1 {name}(N={N}) checked only to t^{r.order}")
            _match_dict(f"B1 {name}(N={N})", b, dict(enumerate(head(N))))
    return out + ["class-4/class-1 operators zero to t^20 for N=5,7"]


# -- 8: lambda constraints -------------------------------------------------------------


def crit_lambda_constraints():
    from .lambda_solver import lambda_constraints

    out = []
    for N in (5, 7):
        rep = lambda_constraints(N, 30)
        if rep["order_k"] < 30:
            _fail(f"lambda constraints for N={N} checked only to k^{rep['order_k']}")
        out.append(f"N={N} to k^{rep['order_k']}")
    return out + ["ratio 1/(4(N+1)), B condition, sign pairing"]


# -- 9: Tracy-Widom relations ----------------------------------------------------------


def crit_tracy_widom():
    from .factors import four_factors, two_factors
    from .pvi_ode import EquationId, differential_identities, tw_relations

    for M, N in ref.TWO_FACTOR_PAIRS:
        dec = two_factors(M, N, 34)
        tw_relations("two_factor", {"sigma": dec.sigma, "delta": dec.delta})
    dec = two_factors(2, 3, 40)
    tw_relations("sigma_from_delta", {"sigma": dec.sigma, "delta": dec.delta, "M": 2, "N": 3})
    for name in ("DELTA3", "DELTA2"):
        _zero_residual(EquationId.make(name, 2, 3), dec.delta, 30)
    for N in (5, 7):
        ff = four_factors(N, 36)
        for a, b in ((0, 2), (1, 3)):
            s, d = ff.sigma[a] + ff.sigma[b], ff.sigma[a] - ff.sigma[b]
            tw_relations("four_factor", {"sigma": s, "delta": d, "N": N})
            for name in ("DELTA3_4F", "DELTA2_4F"):
                _zero_residual(EquationId.make(name, N), d, 30)
    n = 0
    for N in (5, 7, 9):
        for seed in range(3):
            differential_identities("r3_r2", N, M=2, seed=seed)
            differential_identities("r3_r2_4f", N, seed=seed)
            n += 2
        differential_identities("kw_covariance_P", N)
        differential_identities("kw_covariance_calP", N)
        n += 2
        try:
            differential_identities("r3_r2_4f_alt", N, seed=0)
        except IdentityMismatch:
            pass
        else:
            _fail("the printed R2 multiplier unexpectedly works")
    return ["two-factor relation for six pairs", "delta ODEs for (2,3), N=5,7",
            f"{n} differential-polynomial checks"]


# -- 10: FW determinants -------------------------------------------------------------


def crit_fw_determinants():
    from .factors import check_product, four_factors, two_factors
    from .fw_toeplitz import check_ff, det_cofactor, toeplitz, wilf_product

    for M, N in ref.TWO_FACTOR_PAIRS:
        check_product(two_factors(M, N, 20))
    for M, N in ((1, 2), (3, 4), (2, 3), (2, 5)):
        check_ff(M, N, 32)
    # the prefactored determinant formulas against the printed factors, to k^12
    for M, N in ref.TWO_FACTOR_PAIRS:
        dec = two_factors(M, N, 12)
        ext = min(12, ref.printed_extent(ref.G_TWO, M, N))
        _match_dict(f"g+({M},{N})", dec.gplus, ref.two_factor_series(ref.G_TWO, M, N, 1), ext)
        _match_dict(f"g-({M},{N})", dec.gminus, ref.two_factor_series(ref.G_TWO, M, N, -1), ext)
    for N in (5, 7):
        ff = four_factors(N, 12)
        for i in range(4):
            _match_dict(f"g~{i + 1}(0,{N})", ff.gtilde[i].squeeze(2, "t"), ref.GTILDE_FOUR[N][i], 6)
    rng = random.Random(20240)
    cases = 0
    for size in range(2, 6):
        for _ in range(25):
            a = {m: mpq(rng.randint(-9, 9), rng.randint(1, 5)) for m in range(size + 1)}
            sym = {**a, **{-m: v for m, v in a.items()}}
            full = det_cofactor(toeplitz(sym, size))
            if wilf_product(sym, size, "cofactor") != full or wilf_product(sym, size, "bareiss") != full:
                _fail(f"Wilf product differs from the full determinant for size {size}")
            cases += 1
    return ["(1-t)^{1/4} g+ g- to k^20", "ff1/ff2 to w^32", "factor formulas to k^12",
            f"Wilf products, {cases} cases"]


# -- 11: N = 9 ---------------------------------------------------------------------


def crit_n9():
    from .pvi_ode import unique_series_N9

    d = unique_series_N9("delta", 6)
    s = unique_series_N9("sigma_plus", 9)
    _match_dict("delta(0,9)", d, ref.DELTA_0_9)
    _match_dict("sigma+(0,9)", s, ref.SIGMA_PLUS_0_9)
    return ["delta to t^5, sigma+ to t^8"]


# -- 12: quartic -------------------------------------------------------------------


def crit_quartic():
    from .landen import modular_quartic_check

    modular_quartic_check()
    return ["exact in u, A(-1) = 1"]


# -- 13: property suites ---------------------------------------------------------------


def _rand_q(rng, lo=-6, hi=6):
    return mpq(rng.randint(lo, hi), rng.randint(1, 4))


def _rand_series(rng, order=7, val=0, unit=False, var="t"):
    c = [_rand_q(rng) for _ in range(order - val)]
    if unit:
        c[0] = mpq(1)
    return KSeries(c, val, order, var)


def _same(x, y):
    """Equal as far as both are known."""
    return x.first_difference(y, min(x.order, y.order)) is None


def property_ring(rng):
    a, b, c = (_rand_series(rng) for _ in range(3))
    if not (_same(a + b, b + a) and _same(a * b, b * a)):
        _fail("commutativity")
    if not (_same((a + b) + c, a + (b + c)) and _same((a * b) * c, a * (b * c))):
        _fail("associativity")
    if not _same(a * (b + c), a * b + a * c):
        _fail("distributivity")
    if (a - a).coeffs or a * 1 != a or a + 0 != a:
        _fail("identities")
    if a.coeffs:
        q = (a * b) / a
        if not _same(q, b):
            _fail("division")


def property_pow_compose_revert(rng):
    f = _rand_series(rng, unit=True)
    p, q = mpq(rng.randint(-5, 5), rng.randint(1, 4)), mpq(rng.randint(-5, 5), rng.randint(1, 4))
    lhs = pow_rational(f, p) * pow_rational(f, q)
    if lhs.first_difference(pow_rational(f, p + q), lhs.order) is not None:
        _fail("f^p f^q = f^(p+q)")
    if q != 0:
        back = pow_rational(pow_rational(f, q), 1 / q)
        if back.first_difference(f, back.order) is not None:
            _fail("(f^q)^(1/q) = f")
    g = _rand_series(rng, order=8, val=1)
    if g[1] == 0:
        g = g + KSeries.monomial(1, 1, "t")
    gi = revert(g, "t")
    for x, y in ((compose(g, gi), KSeries.monomial(1, 1, "t")), (compose(gi, g), KSeries.monomial(1, 1, "t"))):
        if x.first_difference(y, x.order) is not None:
            _fail("revert round trip")
    h = _rand_series(rng, order=6)
    k = _rand_series(rng, order=8, val=1)
    m = _rand_series(rng, order=8, val=1)
    left, right = compose(compose(h, k), m), compose(h, compose(k, m))
    o = min(left.order, right.order)
    if left.first_difference(right, o) is not None:
        _fail("composition is not associative")


def property_log_derivative(rng):
    f = _rand_series(rng, unit=True)
    g = _rand_series(rng, unit=True)
    lhs = sigma_log_derivative(f * g, half_integer=False)
    rhs = sigma_log_derivative(f, half_integer=False) + sigma_log_derivative(g, half_integer=False)
    if lhs.first_difference(rhs, min(lhs.order, rhs.order)) is not None:
        _fail("sigma of a product is the sum")
    lf = log_series(f * g)
    if lf.first_difference(log_series(f) + log_series(g), lf.order) is not None:
        _fail("log of a product")
    e = exp_series(log_series(f))
    if e.first_difference(f, e.order) is not None:
        _fail("exp(log f) = f")


PROPERTY_SUITES = (("ring axioms", property_ring), ("pow/compose/revert", property_pow_compose_revert),
                   ("log-derivative", property_log_derivative))


def crit_properties(cases=1000, seed=1):
    out = []
    for name, fn in PROPERTY_SUITES:
        rng = random.Random(f"{seed}:{name}")
        for _ in range(cases):
            fn(rng)
        out.append(f"{name} x{cases}")
    return out


CRITERIA = (
    (1, "two-factor g+- expansions", crit_two_factor_g),
    (2, "two-factor sigma+- expansions", crit_two_factor_sigma),
    (3, "leading-coefficient table", crit_table1),
    (4, "ODE residuals", crit_residuals),
    (5, "Landen reduction", crit_landen),
    (6, "four-factor suite", crit_four_factor),
    (7, "B-series", crit_bseries),
    (8, "lambda constraints", crit_lambda_constraints),
    (9, "Tracy-Widom relations", crit_tracy_widom),
    (10, "FW determinants", crit_fw_determinants),
    (11, "N=9 uniqueness series", crit_n9),
    (12, "quartic modular identity", crit_quartic),
    (13, "series property suites", crit_properties),
)


def run_criterion(number):
    for n, title, fn in CRITERIA:
        if n == number:
            t0 = time.perf_counter()
            try:
                detail = "; ".join(fn())
                ok = True
            except (IsingSeriesError, ValueError, ArithmeticError) as exc:
                detail = f"{type(exc).__name__}: {exc}"
                ok = False
            return CriterionResult(n, title, ok, detail, time.perf_counter() - t0)
    raise ValueError(f"no criterion {number}")


def run(numbers=None, emit=print):
    results = []
    for n, _, _ in CRITERIA:
        if numbers is None or n in numbers:
            r = run_criterion(n)
            if emit is not None:
                emit(r.line())
            results.append(r)
    return results
