"""Toeplitz determinants with hypergeometric symbols (the xi = 0 family).

Entries are series in the modulus ``u`` of the determinant (``k`` for the
correlations, the Landen modulus after composition).  The symbol with index
``m`` carries ``u**|eta - m|``; the two branches of the definition meet at
``m = eta``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from gmpy2 import mpq

from .errors import (
    IdentityMismatch,
    IndeterminateGammaRatio,
    ParityDomain,
    SymmetryViolation,
    TruncationUnderflow,
)
from .series_core import EXACT, KSeries, Q, compose, pow_rational
from .special_functions import POLE, gamma_ratio, hyp2f1, rgamma_int


@dataclass(frozen=True)
class FWParams:
    Ntilde: int
    eta: mpq
    p: mpq
    pprime: mpq

    def __post_init__(self):
        object.__setattr__(self, "eta", Q(self.eta))
        object.__setattr__(self, "p", Q(self.p))
        object.__setattr__(self, "pprime", Q(self.pprime))
        if self.Ntilde < 0:
            raise ValueError("matrix size must be nonnegative")
        if self.eta.denominator != 1:
            raise ParityDomain(f"eta = {self.eta} gives non-integer powers of the modulus")

    def label(self):
        return f"D({self.Ntilde}, {self.eta}, {self.p}, {self.pprime})"


@dataclass(frozen=True)
class LatticePoint:
    M: int
    N: int

    def __post_init__(self):
        if not 0 <= self.M <= self.N:
            raise ValueError("need 0 <= M <= N")

    @property
    def two_factor(self):
        return (self.M + self.N) % 2 == 1

    @property
    def four_factor(self):
        return self.M == 0 and self.N % 2 == 1


def _coefficient(branch_top, n, hyp_a):
    # Gamma(1+q) / (Gamma(1+n) Gamma(1+q-n)) for the branch parameter q
    r = gamma_ratio(1 + branch_top, -n)
    if r is POLE:
        raise IndeterminateGammaRatio(f"Gamma(1+{branch_top}) is infinite")
    return r * rgamma_int(n)


def fw_symbol(m, params: FWParams, order, var="k"):
    """Matrix element A_m as a series in the modulus, known below ``order``."""
    eta, p, pp = params.eta, params.p, params.pprime
    n = int(eta) - m
    t_order = max(1, (order - abs(n) + 1) // 2 + 1)
    if n >= 0:
        c = _coefficient(pp, n, None)
        F = hyp2f1(-p, -pp + n, 1 + n, t_order, "t")
    else:
        n = -n
        c = _coefficient(p, n, None)
        F = hyp2f1(-pp, -p + n, 1 + n, t_order, "t")
    if not c:
        return KSeries((), 0, EXACT if F.is_exact() else order, var)
    s = F.stretch(2, var).shift(n).scale(c)
    return s.truncate(order)


def check_branch_agreement(params: FWParams, order=12):
    """Both branch formulas must give the same A_eta."""
    p, pp = params.p, params.pprime
    t_order = order // 2 + 1
    a = hyp2f1(-p, -pp, 1, t_order).scale(_coefficient(pp, 0, None))
    b = hyp2f1(-pp, -p, 1, t_order).scale(_coefficient(p, 0, None))
    return a.agrees(b)


# -- determinants over a commutative ring ------------------------------------

def _is_exact_zero(x):
    if isinstance(x, KSeries):
        return x.is_zero() and x.is_exact()
    return not x


def det_cofactor(mat):
    """Laplace expansion along rows with memoized minors (no division)."""
    n = len(mat)
    if n == 0:
        return 1

    @lru_cache(maxsize=None)
    def minor(row, cols):
        if row == n:
            return 1
        total = None
        sign = 1
        for j in range(n):
            if not cols >> j & 1:
                continue
            a = mat[row][j]
            if not _is_exact_zero(a):
                term = a * minor(row + 1, cols & ~(1 << j))
                if sign < 0:
                    term = -term
                total = term if total is None else total + term
            sign = -sign
        return 0 if total is None else total

    return minor(0, (1 << n) - 1)


def det_bareiss(mat):
    """Fraction-free elimination; falls back to cofactors on a non-unit pivot."""
    n = len(mat)
    if n == 0:
        return 1
    A = [list(r) for r in mat]
    prev = 1
    sign = 1
    for k in range(n - 1):
        piv = None
        for i in range(k, n):
            if _unit(A[i][k]):
                piv = i
                break
        if piv is None:
            return det_cofactor(mat)
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = A[i][j] * A[k][k] - A[i][k] * A[k][j]
                A[i][j] = num / prev if not (isinstance(prev, int) and prev == 1) else num
            A[i][k] = 0
        prev = A[k][k]
    d = A[n - 1][n - 1]
    return -d if sign < 0 else d


def _unit(x):
    if isinstance(x, KSeries):
        return bool(x.coeffs) and x.val == 0
    return bool(x)


def det(mat, method="auto"):
    n = len(mat)
    if method == "cofactor" or (method == "auto" and n <= 6):
        return det_cofactor(mat)
    return det_bareiss(mat)


def toeplitz(symbols, size):
    """Matrix [a_{j-k}] from a mapping or callable m -> a_m."""
    get = symbols if callable(symbols) else symbols.__getitem__
    return [[get(j - k) for k in range(size)] for j in range(size)]


def fw_matrix(params: FWParams, order, var="k"):
    n = params.Ntilde
    syms = {m: fw_symbol(m, params, order, var) for m in range(-(n - 1), n)} if n else {}
    return toeplitz(syms, n)


def fw_determinant(params: FWParams, order, var="k", method="auto"):
    """det[A_{j-k}] for j, k < Ntilde, certified below ``order``."""
    n = params.Ntilde
    if n == 0:
        return KSeries.const(1, var)
    probe = [fw_symbol(m, params, 1 + abs(int(params.eta) - m), var) for m in range(-(n - 1), n)]
    minval = min((s.val for s in probe if s.coeffs), default=0)
    slack = n * max(0, -minval) + n
    mat = fw_matrix(params, order + slack, var)
    d = det(mat, method)
    if not isinstance(d, KSeries):
        d = KSeries.const(d, var)
    if d.order < order:
        raise TruncationUnderflow(f"determinant known only below {d.order}, {order} requested")
    return d.truncate(order)


# -- Wilf splitting of symmetric Toeplitz determinants ------------------------

def _symmetric_getter(symbols, size):
    get = symbols if callable(symbols) else symbols.__getitem__
    if not callable(symbols) and hasattr(symbols, "keys"):
        for m in range(1, size):
            if m in symbols and -m in symbols:
                a, b = symbols[m], symbols[-m]
                same = a.agrees(b) if isinstance(a, KSeries) else a == b
                if not same:
                    raise SymmetryViolation(f"a_{m} != a_{-m}")
    return lambda m: get(abs(m)) if not callable(symbols) and hasattr(symbols, "keys") and m not in symbols else get(m)


def wilf_factorize(symbols, size, method="auto"):
    """Two determinants whose product (times 1/2 for odd size) is the full one."""
    a = _symmetric_getter(symbols, size)
    m = size // 2
    if size % 2 == 0:
        minus = [[a(i - j) - a(i + j - 1) for j in range(1, m + 1)] for i in range(1, m + 1)]
        plus = [[a(i - j) + a(i + j - 1) for j in range(1, m + 1)] for i in range(1, m + 1)]
        return det(minus, method), det(plus, method)
    minus = [[a(i - j) - a(i + j) for j in range(1, m + 1)] for i in range(1, m + 1)]
    plus = [[a(i - j) + a(i + j - 2) for j in range(1, m + 2)] for i in range(1, m + 2)]
    return det(minus, method), det(plus, method)


def wilf_product(symbols, size, method="auto"):
    f1, f2 = wilf_factorize(symbols, size, method)
    prod = f1 * f2
    return prod * mpq(1, 2) if size % 2 else prod


# -- correlations --------------------------------------------------------------

def cdef_params(M, N):
    return FWParams(N, 0, mpq(M - N, 2), mpq(M - N, 2))


def correlation_CMN(M, N, order):
    """C(M,N) as an even k-series below ``order``."""
    pt = LatticePoint(M, N)
    if not pt.two_factor and not pt.four_factor:
        raise ParityDomain(f"(M,N)=({M},{N}) has no factorization in scope")
    D = fw_determinant(cdef_params(M, N), order)
    k = KSeries.monomial(1)
    pref = pow_rational((1 - k * k).truncate(order), mpq((N - M) ** 2 + 1, 4))
    return (pref * D).truncate(order)


def correlation_t(M, N, order_t):
    return correlation_CMN(M, N, 2 * order_t).squeeze(2, "t")


# -- Landen composition --------------------------------------------------------

def w_var():
    return KSeries.monomial(1, 1, "w")


def k_landen_w(order):
    """k_L = 2w/(1+w^2) with w^2 = k, as a w-series."""
    w = w_var()
    return (2 * w / (1 + w * w).truncate(order)).truncate(order)


def in_w(series_k):
    """A k-series rewritten in w = sqrt(k)."""
    return series_k.stretch(2, "w")


def _compose_u(d, order_w):
    kl = k_landen_w(order_w + 1)
    return compose(d.with_var("w"), kl).truncate(order_w)


def _w_power_prefactor(exp_w, one_plus_k_exp, order_w, one_minus_k_exp=0, sign=1, two_exp=0):
    """sign * 2^two_exp * w^exp_w * (1+k)^a * (1-k)^b as a w-series (k = w^2)."""
    w = w_var()
    kk = w * w
    out = KSeries.monomial(exp_w, 1, "w")
    if one_plus_k_exp:
        out = out * pow_rational((1 + kk).truncate(order_w + abs(exp_w) + 2), Q(one_plus_k_exp))
    if one_minus_k_exp:
        out = out * pow_rational((1 - kk).truncate(order_w + abs(exp_w) + 2), Q(one_minus_k_exp))
    scale = Q(sign) * (mpq(2) ** int(two_exp) if Q(two_exp) >= 0 else 1 / mpq(2) ** int(-Q(two_exp)))
    return out.scale(scale)


def _require(identity, lhs, rhs, order):
    e = lhs.first_difference(rhs, order)
    if e is not None:
        raise IdentityMismatch(f"{identity}: first difference at exponent {e}", e, lhs[e] - rhs[e])
    return {"identity": identity, "order": order, "holds": True}


def check_cdef_alternate(M, N, order=16):
    """D(N,0,(M-N)/2,(M-N)/2) = (1-k^2)^{MN} D(N,0,-(M+N)/2,-(M+N)/2)."""
    lhs = fw_determinant(cdef_params(M, N), order)
    rhs_d = fw_determinant(FWParams(N, 0, mpq(-(M + N), 2), mpq(-(M + N), 2)), order)
    k = KSeries.monomial(1)
    rhs = rhs_d * ((1 - k * k) ** (M * N)).truncate(order)
    return _require(f"alternate parameters ({M},{N})", lhs, rhs, order)


def check_ff(M, N, order_w=32):
    """The Landen splitting of D(N,0,(M-N)/2,(M-N)/2) into two half-size determinants."""
    half = mpq(M - N, 2)
    if N % 2 == 0 and M % 2 == 1:
        p1 = FWParams(N // 2, N // 2, half, mpq(1, 2))
        p2 = FWParams(N // 2, N // 2, half, mpq(-1, 2))
        sign = (-1) ** (N // 2)
        two = mpq(N * (N - 2), 2)
        w_exp = -(N * N) // 2  # k^{-N^2/4}
        a = mpq(N * (2 * M - N), 2)
        name = f"ff1({M},{N})"
    elif N % 2 == 1 and M % 2 == 0:
        p1 = FWParams((N - 1) // 2, (N + 1) // 2, half, mpq(1, 2))
        p2 = FWParams((N + 1) // 2, (N - 1) // 2, half, mpq(-1, 2))
        sign = 1
        two = mpq((N - 1) ** 2, 2)
        w_exp = -(N * N - 1) // 2
        a = mpq(2 * M * N - N * N - 1, 2)
        name = f"ff2({M},{N})"
    else:
        raise ParityDomain("the Landen splitting needs M+N odd")
    lhs = in_w(fw_determinant(cdef_params(M, N), (order_w + 1) // 2 + 1)).truncate(order_w)
    extra = -w_exp
    d1 = _compose_u(fw_determinant(p1, order_w + extra, "u"), order_w + extra)
    d2 = _compose_u(fw_determinant(p2, order_w + extra, "u"), order_w + extra)
    pref = _w_power_prefactor(w_exp, a, order_w + extra, sign=sign, two_exp=two)
    rhs = (pref * d1 * d2).truncate(order_w)
    return _require(name, lhs, rhs, order_w)


def check_group_relation(M, N, which, order=16):
    """Pairwise (1-k^2)-power relations between equivalent parameter sets."""
    half, alt = mpq(M - N, 2), mpq(-(M + N), 2)
    k = KSeries.monomial(1)
    onek = (1 - k * k).truncate(order + 2)
    if which == "G2-":
        lhs = fw_determinant(FWParams(N // 2, N // 2, half, mpq(-1, 2)), order)
        rhs = fw_determinant(FWParams(N // 2, N // 2, alt, mpq(1, 2)), order)
        fac = pow_rational(onek, mpq(N * (M - 1), 4)).scale((-1) ** (N // 2))
    elif which == "G2+":
        lhs = fw_determinant(FWParams(N // 2, N // 2, half, mpq(1, 2)), order)
        rhs = fw_determinant(FWParams(N // 2, N // 2, alt, mpq(-1, 2)), order)
        fac = pow_rational(onek, mpq(N * (M + 1), 4)).scale((-1) ** (N // 2))
    elif which == "G3+":
        lhs = fw_determinant(FWParams((N - 1) // 2, (N + 1) // 2, half, mpq(1, 2)), order)
        rhs = fw_determinant(FWParams((N - 1) // 2, (N + 1) // 2, alt, mpq(1, 2)), order)
        fac = pow_rational(onek, mpq(M * (N - 1), 4))
    elif which == "G3-":
        lhs = fw_determinant(FWParams((N + 1) // 2, (N - 1) // 2, half, mpq(-1, 2)), order)
        rhs = fw_determinant(FWParams((N + 1) // 2, (N - 1) // 2, alt, mpq(-1, 2)), order)
        fac = pow_rational(onek, mpq(M * (N + 1), 4))
    else:
        raise ValueError(which)
    return _require(f"{which}({M},{N})", lhs, (fac * rhs).truncate(order), order)
