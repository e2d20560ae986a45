"""Order-by-order analytic solutions with a free resonance coefficient.

The unknown series ``y = seed + sum c_m v**m`` is fixed one coefficient at a
time: past the seed the residual coefficient at ``v**m`` is affine in ``c_m``
with nothing lower, which is checked at every step.  At the resonance the
linear coefficient vanishes, the remaining constant must vanish too, and the
free value (a rational, or the formal lambda) is injected there.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from gmpy2 import mpq

from .errors import IdentityMismatch, NotAResonance, ParityDomain, UnexpectedDegeneracy
from .series_core import EXACT, KSeries, LamPoly, Q
from .special_functions import (
    B1,
    B1_class1,
    B1_class4,
    B2_scaled,
    algebraic_h0,
    sqrt_one_minus_t,
)
from .pvi_ode import EquationId, OkamotoParams, residual

LAM = LamPoly.lam()


@dataclass(frozen=True)
class LambdaFamily:
    equation: EquationId
    seed: str
    variable: str
    resonance_exponent: int
    resonance_order: mpq
    coefficients: KSeries
    base: KSeries
    lambda_mode: str
    lambda_value: object = None
    Bn: tuple = field(default=(), compare=False)

    @property
    def order(self):
        return self.coefficients.order

    def at(self, value):
        """Evaluate a formal family at a rational lambda."""
        if self.lambda_mode != "formal":
            raise ValueError("family is already numeric")
        v = Q(value)
        return self.coefficients.map_coeffs(lambda c: c(v) if isinstance(c, LamPoly) else c)

    def substitute(self, poly):
        """Replace lambda by a polynomial in lambda (e.g. lambda/(4(N+1)))."""
        return self.coefficients.map_coeffs(lambda c: c(poly) if isinstance(c, LamPoly) else c)

    def lambda_degree(self, e):
        c = self.coefficients[e]
        return c.degree() if isinstance(c, LamPoly) else (0 if c else -1)


# -- seeds ---------------------------------------------------------------------------


def class4_pair_product(params: OkamotoParams):
    """a0, a1, a2 of the class-4 analytic solutions from the pair sums of n_i."""
    n1, n2, n3, n4 = params.as_tuple()
    S = n1 + n2 + n3 + n4
    a0 = (-n1 * n2 - n3 * n4 - (n1 + n2) * (n3 + n4)) / 2
    a1 = ((n1 + n2) * n3 * n4 + (n3 + n4) * n1 * n2) / S
    num = (n1 + n2) * (n1 + n3) * (n1 + n4) * (n2 + n3) * (n2 + n4) * (n3 + n4)
    a2 = num / (S * S * (S + 1) * (S - 1))
    return [a0, a1, a2]


def seed_coefficients(family, M, N):
    """Leading coefficients of the analytic solutions at the origin."""
    if family == "twofactor_class4":
        if (M + N) % 2 == 0:
            raise ParityDomain("class-4 two-factor seeds need M+N odd")
        return class4_pair_product(OkamotoParams.two_factor(M, N))
    if M != 0 or N % 2 == 0:
        raise ParityDomain("four-factor seeds need M = 0 and N odd")
    if family == "fourfactor_case1":
        return [-mpq(N * N + 4 * N - 1, 32), mpq(N - 1, 16), mpq(N, 64), mpq(N, 128)]
    if family == "fourfactor_case4":
        return [-mpq(N * N - 4 * N - 1, 32), -mpq(N + 1, 16), -mpq(N, 64), -mpq(N, 128)]
    raise ValueError(f"unknown seed family {family!r}")


def _seed_series(eq: EquationId, seed, order):
    """(base series in the equation's variable, exponent of the free coefficient, t-order)."""
    name = eq.name
    p = eq.param_dict()
    if name == "TWOFACTOR":
        M, N = int(p["M"]), int(p["N"])
        if seed not in ("class4", "zero"):
            raise ValueError("TWOFACTOR families grow from sigma = 0")
        return KSeries((), 0, EXACT, "k"), N + 1, mpq(N + 1, 2), "k"
    if name == "OKAMOTO_H":
        M, N = int(p["M"]), int(p["N"])
        if seed != "class4":
            raise ValueError("OKAMOTO_H families use the class-4 seed")
        base = KSeries(seed_coefficients("twofactor_class4", M, N), 0, EXACT, "x")
        return base, N + 1, mpq(N + 1), "x"
    if name in ("FOUR_SIGMA", "FOUR_H"):
        N = int(p["N"])
        plus = seed in ("algebraic_plus", "class4")
        minus = seed in ("algebraic_minus", "class1")
        if not (plus or minus):
            raise ValueError(f"unknown seed {seed!r} for {name}")
        sq = sqrt_one_minus_t(order + 2)
        base = sq.scale(mpq(N if plus else -N, 8))
        if name == "FOUR_H":
            t = KSeries.monomial(1, 1, "t")
            base = base - t / 16 - mpq(N * N - 1, 32)
        r = (N + 1) // 2 if plus else (N + 3) // 2
        return base.truncate(order + 2), r, mpq(r), "t"
    raise ValueError(f"no lambda family for {name}")


def _start_exponent(eq, base, res):
    if eq.name == "TWOFACTOR":
        return res
    if eq.name == "OKAMOTO_H":
        return len(base.coeffs)
    if eq.param_dict()["N"] < 5:
        # for N <= 3 lambda reaches the linear part of the recursion
        raise ParityDomain("four-factor families need N >= 5")
    return min(res, 3)


def solve_family(equation: EquationId, seed, lambda_mode="formal", order=20, value=None,
                 prefix=None):
    """Solve ``equation`` below ``var**order`` from ``seed``.

    ``lambda_mode`` is ``'formal'`` (lambda kept as an indeterminate) or
    ``'numeric'`` with ``value`` the rational injected at the resonance.
    """
    base, res, res_t, var = _seed_series(equation, seed, order)
    if lambda_mode == "formal":
        free = LAM
    elif lambda_mode == "numeric":
        if value is None:
            raise ValueError("numeric mode needs a value")
        free = Q(value)
    else:
        raise ValueError(f"unknown lambda mode {lambda_mode!r}")

    # below ``start`` the recursion is not linear; those exponents belong to the seed
    start = _start_exponent(equation, base, res)
    corr = {}
    pad = 10
    formal = lambda_mode == "formal"

    def trial(m, a):
        d = dict(corr)
        if a is not None:
            d[m] = a
        o = m + 1 + pad
        c = KSeries.from_dict(d, o, var)
        return (base + c).truncate(o) if base.is_exact() else base.truncate(o) + c

    for m in range(start, order):
        # the residual at var^m is affine in c_m with no lower terms (shift 0)
        r0 = residual(equation, trial(m, None))
        r1 = residual(equation, trial(m, 1))
        if r0.order <= m:
            raise UnexpectedDegeneracy(f"{equation}: residual known only below {var}^{r0.order}")
        below = [e for e, _ in r0.items() if e < m] + [e for e, _ in (r1 - r0).items() if e < m]
        if below:
            raise UnexpectedDegeneracy(f"{equation}: {var}^{m} feeds the residual at {var}^{min(below)}")
        lin = r1[m] - r0[m]
        const = r0[m]
        if isinstance(lin, LamPoly):
            if not lin.is_constant():
                raise UnexpectedDegeneracy(f"{equation}: linear coefficient at {var}^{m} depends on lambda")
            lin = lin.constant()
        if m == res:
            if lin:
                raise NotAResonance(f"{equation}: {var}^{m} was expected to be free, linear coefficient {lin}")
            if const:
                raise NotAResonance(f"{equation}: consistency fails at {var}^{m}: {const}")
            corr[m] = free
            continue
        if not lin:
            raise UnexpectedDegeneracy(f"{equation}: linear coefficient vanishes at {var}^{m}")
        if m < start + 2:
            r2 = residual(equation, trial(m, 2))
            if r2[m] - 2 * r1[m] + r0[m]:
                raise UnexpectedDegeneracy(f"{equation}: c_{m} enters quadratically at {var}^{m}")
        c = -const / lin
        if c:
            corr[m] = c
    c = KSeries.from_dict(corr, order, var) if corr else KSeries((), 0, order, var)
    total = (base + c).truncate(order) if base.is_exact() else base.truncate(order) + c
    if formal:
        total = total.map_coeffs(lambda v: v if isinstance(v, LamPoly) else LamPoly((v,)))
    check = residual(equation, total)
    if check.coeffs:
        raise IdentityMismatch(f"{equation}: family fails at {var}^{check.val}", check.val)
    fam = LambdaFamily(equation, seed, var, res, res_t, total, base.truncate(order), lambda_mode,
                       None if formal else Q(value))
    if formal:
        object.__setattr__(fam, "Bn", tuple(_bn(fam, n) for n in range(1, _max_degree(fam) + 1)))
    return fam


def _max_degree(fam):
    return max((fam.lambda_degree(e) for e, _ in fam.coefficients.items()), default=0)


def _lambda_part(s, n):
    def pick(c):
        if isinstance(c, LamPoly):
            return c[n]
        return c if n == 0 else mpq(0)

    return s.map_coeffs(pick)


def _bn(fam, n):
    """Coefficient of lambda**n divided by var**(n r); a t-series."""
    part = _lambda_part(fam.coefficients, n)
    if n == 0:
        return part
    e = n * fam.resonance_exponent
    low = [x for x, _ in part.items() if x < e]
    if low:
        raise IdentityMismatch(f"lambda^{n} part starts at {fam.variable}^{low[0]}, before {e}", low[0])
    b = part.shift(-e)
    if fam.variable == "k":
        b = b.squeeze(2, "t")
    return b


def degree_bound_holds(fam):
    """deg_lambda of the var^m coefficient is at most floor(m / r)."""
    r = fam.resonance_exponent
    return all(fam.lambda_degree(e) <= e // r for e, _ in fam.coefficients.items())


# -- B_n checks ------------------------------------------------------------------------


def _compare(name, a, b, order):
    e = a.first_difference(b, order)
    if e is not None:
        raise IdentityMismatch(f"{name}: first difference at t^{e}", e)


def extract_Bn_and_match(fam: LambdaFamily, n_max):
    """The B_n of a formal family, checked against the closed forms where they exist."""
    if fam.lambda_mode != "formal":
        raise ValueError("B_n extraction needs a formal family")
    bs = [_bn(fam, n) for n in range(1, n_max + 1)]
    name = fam.equation.name
    p = fam.equation.param_dict()
    if name == "TWOFACTOR":
        M, N = int(p["M"]), int(p["N"])
        half = mpq(N + 1, 2)
        for n, b in enumerate(bs, 1):
            if b.order > 0 and b[0] * half ** (n - 1) != 1:
                raise IdentityMismatch(f"B_{n} normalisation: constant term {b[0]}", 0)
        o1 = bs[0].order
        _compare("B_1 against the hypergeometric form", bs[0], B1(M, N, o1), o1)
        if n_max >= 2:
            o2 = bs[1].order
            _compare("((N+1)/2) B_2 against its closed form", bs[1].scale(half), B2_scaled(M, N, o2), o2)
    elif name in ("FOUR_SIGMA", "FOUR_H"):
        N = int(p["N"])
        plus = fam.seed in ("algebraic_plus", "class4")
        ref = B1_class4 if plus else B1_class1
        o1 = bs[0].order
        _compare("B_1 against its closed form", bs[0], ref(N, o1), o1)
    return bs


# -- selected values -----------------------------------------------------------------


def selected_lambda(M, N):
    """Free coefficients realised by the determinant factors.

    M > 0: (lam, -lam) with lam = ((N+1)/2) alpha_{M,N} the k^{N+1} coefficient
    of the sigma that starts positive, and -lam that of its partner.
    M = 0: (lambda_1, lambda_3), read off the four factors; lambda_2 = -lambda_1,
    lambda_4 = -lambda_3.  Both laws (|lambda_1| = ((N+1)/2) alpha_{0,N},
    lambda_3 = lambda_1/(4(N+1))) are verified on the way.
    """
    from .factors import alpha_MN, two_factors

    half = mpq(N + 1, 2)
    law = half * alpha_MN(M, N)
    if M > 0:
        dec = two_factors(M, N, N + 2)
        lam = dec.sigmaminus[N + 1]
        if lam != law or dec.sigmaplus[N + 1] != -law:
            raise IdentityMismatch(f"k^{N + 1} coefficients of sigma+-({M},{N}) break the alpha law", N + 1)
        return lam, -lam
    lams = four_factor_lambdas(N)
    l1, l2, l3, l4 = lams
    if abs(l1) != law or l2 != -l1 or l4 != -l3 or l3 != l1 / (4 * (N + 1)):
        raise IdentityMismatch(f"selected lambdas of C(0,{N}) break the expected relations")
    return l1, l3


def four_factor_lambdas(N):
    """lambda_1..lambda_4: factor sigma minus algebraic seed, at the resonance."""
    from .factors import four_factors

    ff = four_factors(N, N + 6)
    out = []
    for i, s in enumerate(ff.sigma):
        r = (N + 1) // 2 if i < 2 else (N + 3) // 2
        sign = 1 if i < 2 else -1
        st = s.squeeze(2, "t")
        seed = sqrt_one_minus_t(r + 1).scale(mpq(sign * N, 8))
        d = (st - seed).truncate(r + 1)
        low = [e for e, _ in d.items() if e < r]
        if low:
            raise IdentityMismatch(f"sigma_{i + 1}(0,{N}) departs from its seed before t^{r}", low[0])
        out.append(d[r])
    return tuple(out)


def _family_pair(N, order_t):
    f1 = solve_family(EquationId.make("FOUR_SIGMA", N), "algebraic_plus", "formal", order_t)
    f3 = solve_family(EquationId.make("FOUR_SIGMA", N), "algebraic_minus", "formal", order_t)
    return f1, f3


def lambda_constraints(N, order):
    """The relations tying lambda_1..lambda_4 to lambda, with formal lambda.

    ``order`` is in k; the families are built in t below t^(order/2).
    """
    if N % 2 == 0:
        raise ParityDomain("four factors need N odd")
    T = order // 2
    f1, f3 = _family_pair(N, T)
    mu = LamPoly((0, mpq(1, 4 * (N + 1))))
    report = {"N": N, "order_k": 2 * T}

    # sigma1(lam) + sigma3(lam/(4(N+1))) solves the two-factor equation identically in lam
    s13 = f1.coefficients + f3.substitute(mu)
    r = residual(EquationId.make("TWOFACTOR", 0, N), s13)
    if r.coeffs:
        raise IdentityMismatch(f"sigma1 + sigma3 fails TWOFACTOR(0,{N}) at t^{r.val}", r.val)
    report["twofactor_checked_order_t"] = r.order
    report["lambda_degree"] = max(c.degree() for c in s13.coeffs if isinstance(c, LamPoly))

    # a different ratio breaks it
    wrong = f1.coefficients + f3.substitute(LamPoly((0, mpq(1, 2 * (N + 1)))))
    rw = residual(EquationId.make("TWOFACTOR", 0, N), wrong)
    report["other_ratio_fails"] = bool(rw.coeffs)

    # the four-term sum with (lam, -lam, mu lam, -mu lam) solves the M = 0 equation
    neg = LamPoly((0, -1))
    mu_neg = LamPoly((0, -mpq(1, 4 * (N + 1))))
    four = f1.coefficients + f1.substitute(neg) + f3.substitute(mu) + f3.substitute(mu_neg)
    r4 = residual(EquationId.make("EQNM_M0", N), four)
    if r4.coeffs:
        raise IdentityMismatch(f"four-term sum fails EQNM_M0({N}) at t^{r4.val}", r4.val)
    report["four_term_checked_order_t"] = r4.order
    same = f1.coefficients + f1.coefficients + f3.substitute(mu) + f3.substitute(mu_neg)
    report["same_sign_pair_fails"] = bool(residual(EquationId.make("EQNM_M0", N), same).coeffs)

    # B-series condition: B1^(4) + t B1^(1) / (4(N+1)) = B1, from the families and closed forms
    b4, b1 = f1.Bn[0], f3.Bn[0]
    o = min(b4.order, b1.order + 1)
    t = KSeries.monomial(1, 1, "t")
    lhs = (b4 + (t * b1).scale(mpq(1, 4 * (N + 1)))).truncate(o)
    _compare("lambda_1 B1^(4) + lambda_3 t B1^(1) = lambda B1", lhs, B1(0, N, o), o)
    oc = 20
    lc = (B1_class4(N, oc) + (t * B1_class1(N, oc)).scale(mpq(1, 4 * (N + 1)))).truncate(oc)
    _compare("closed forms of the B-series condition", lc, B1(0, N, oc), oc)
    report["b_condition_order_t"] = o
    if not (report["other_ratio_fails"] and report["same_sign_pair_fails"]):
        raise IdentityMismatch("the lambda relations are not forced by the equations")
    return report


def twofactor_family_matches_factor(M, N, order):
    """At the selected value the TWOFACTOR family is the sigma of the positive factor."""
    from .factors import two_factors

    lam, _ = selected_lambda(M, N)
    fam = solve_family(EquationId.make("TWOFACTOR", M, N), "class4", "numeric", order, value=lam)
    dec = two_factors(M, N, order)
    e = fam.coefficients.first_difference(dec.sigmaminus, order)
    return e is None


def h0_family_value(M, N, order):
    """The class-4 Okamoto family through the algebraic h0 reproduces it."""
    h0 = algebraic_h0(M, N, order)
    fam = solve_family(EquationId.make("OKAMOTO_H", M, N), "class4", "numeric", order, value=h0[N + 1])
    return fam.coefficients.agrees(h0, order)
