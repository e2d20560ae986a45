"""Closed-form series: hypergeometric functions, elliptic integrals, algebraic seeds.

Every object here is returned as a plain truncated series; square roots go
through :func:`~isingfw.series_core.pow_rational`.
"""

from __future__ import annotations

from dataclasses import dataclass

from gmpy2 import mpq

from .errors import IndeterminateGammaRatio, ParityDomain, PochhammerPole
from .series_core import (
    EXACT,
    KSeries,
    Q,
    compose,
    pow_rational,
    revert,
    t_of,
)


@dataclass(frozen=True)
class Hyp2F1Params:
    a: mpq
    b: mpq
    c: mpq

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, Q(getattr(self, name)))


def _nonpos_int(x):
    return x.denominator == 1 and x <= 0


def hyp2f1(a, b, c, order, var="t"):
    """Gauss series sum (a)_n (b)_n / ((c)_n n!) var^n below ``order``.

    A nonpositive integer upper parameter terminates the series; the result is
    then an exact polynomial.
    """
    a, b, c = Q(a), Q(b), Q(c)
    if order < 1:
        raise ValueError("order must be at least 1")
    stop = None
    for u in (a, b):
        if _nonpos_int(u):
            stop = int(-u) if stop is None else min(stop, int(-u))
    if _nonpos_int(c) and (stop is None or stop >= -c + 1):
        raise PochhammerPole(f"lower parameter {c} meets a pole")
    n_terms = order if stop is None else min(order, stop + 1)
    out = [mpq(1)]
    for n in range(n_terms - 1):
        out.append(out[-1] * (a + n) * (b + n) / ((c + n) * (n + 1)))
    result_order = EXACT if stop is not None and stop + 1 <= order else order
    return KSeries(out, 0, result_order, var)


def hyp2f1_p(p: Hyp2F1Params, var="t", order=20):
    return hyp2f1(p.a, p.b, p.c, order, var)


def k_tilde(order, var="t"):
    """(2/pi) K as a series in t = k^2."""
    return hyp2f1(mpq(1, 2), mpq(1, 2), 1, order, var)


def e_tilde(order, var="t"):
    """(2/pi) E as a series in t = k^2."""
    return hyp2f1(mpq(1, 2), mpq(-1, 2), 1, order, var)


def landen_x(order):
    """x(k) = 4k/(1+k)^2 as a k-series below ``order``."""
    k = KSeries.monomial(1)
    return 4 * k / ((1 + k) ** 2).truncate(order)


def elliptic_pair(arg="k", order=20):
    """(K~, E~) as k-series (``arg='k'``) or with the Landen modulus (``arg='landen'``).

    ``order`` is in powers of k.  ``arg='t'`` returns t-series of t-order ``order``.
    """
    if arg == "t":
        return k_tilde(order), e_tilde(order)
    if arg == "k":
        n = (order + 1) // 2
        return k_tilde(n).stretch(2, "k").truncate(order), e_tilde(n).stretch(2, "k").truncate(order)
    if arg == "landen":
        x = landen_x(order)
        kx, ex = k_tilde(order, "x"), e_tilde(order, "x")
        return compose(kx.with_var("k"), x), compose(ex.with_var("k"), x)
    raise ValueError(f"unknown argument {arg!r}")


class _Pole:
    """Marker for an infinite gamma ratio."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "POLE"


POLE = _Pole()


def gamma_ratio(a, n):
    """Gamma(a) / Gamma(a + n) for integer n, exactly.

    Returns 0 when only Gamma(a + n) is infinite and :data:`POLE` when only
    Gamma(a) is.
    """
    a = Q(a)
    n = int(n)
    a_pole = _nonpos_int(a)
    b_pole = _nonpos_int(a + n)
    if a_pole and b_pole:
        raise IndeterminateGammaRatio(f"Gamma({a})/Gamma({a + n}): both at poles")
    if a_pole:
        return POLE
    if b_pole:
        return mpq(0)
    r = mpq(1)
    if n >= 0:
        for i in range(n):
            r *= a + i
        return 1 / r
    for i in range(1, -n + 1):
        r *= a - i
    return r


def rgamma_int(n):
    """1 / Gamma(1 + n) for integer n (zero for negative n)."""
    if n < 0:
        return mpq(0)
    r = mpq(1)
    for i in range(2, n + 1):
        r *= i
    return 1 / r


def landen_r(order):
    """(1 - sqrt(1-x)) / (1 + sqrt(1-x)) as an x-series; equals k(x)."""
    return revert(landen_x(order + 1), "x").truncate(order)


def algebraic_h0(M, N, order):
    """The algebraic solution h0(x) attached to sigma = 0."""
    if (M + N) % 2 == 0:
        raise ParityDomain("h0 is defined for M+N odd")
    x = KSeries.monomial(1, 1, "x")
    r = landen_r(order)
    h0 = mpq(M * M - 3 * N * N + 1, 16) - mpq(M * M - N * N + 1, 16) * x - mpq(M * M - N * N, 16) * x * r
    return h0.truncate(order)


def h0_from_H0(M, N, order):
    """x(x-1) d log H0/dx computed from the product form of H0."""
    x = KSeries.monomial(1, 1, "x")
    one_minus_x = (1 - x).truncate(order + 2)
    s = pow_rational(one_minus_x, mpq(1, 2))
    ds = s.diff()
    e1 = -mpq(M * M - 3 * N * N + 1, 16)
    e2 = mpq(3 * M * M - N * N - 1, 16)
    e3 = -mpq(M * M + N * N, 16)
    dlog = e1 * (-ds) / (1 - s) + e2 * ds / (1 + s) + e3 * (-1) / one_minus_x
    return (x * (x - 1) * dlog).truncate(order)


def check_h0_product_form(M, N, order=20):
    return algebraic_h0(M, N, order).agrees(h0_from_H0(M, N, order), order)


def algebraic_A(N, order):
    """A(t;N) = (N/8)(1 - t/2 - sqrt(1-t)) as a t-series."""
    t = KSeries.monomial(1, 1, "t")
    sq = pow_rational((1 - t).truncate(order), mpq(1, 2))
    return (mpq(N, 8) * (1 - t / 2 - sq)).truncate(order)


def sigma_seed(N, case, order, var="t"):
    """Algebraic sigma seeds: +(N/8)sqrt(1-t) (case 4) and -(N/8)sqrt(1-t) (case 1)."""
    t = KSeries.monomial(1, 1, "t")
    sq = pow_rational((1 - t).truncate(order), mpq(1, 2))
    sign = {4: 1, 1: -1}[case]
    s = sq.scale(mpq(sign * N, 8))
    return s.stretch(2, "k") if var == "k" else s


def sqrt_one_minus_t(order, var="t"):
    t = KSeries.monomial(1, 1, "t")
    s = pow_rational((1 - t).truncate(order), mpq(1, 2))
    return s.stretch(2, "k") if var == "k" else s


# -- B-series closed forms ---------------------------------------------------

def _check_two_factor(M, N):
    if (M + N) % 2 == 0 or not 0 <= M <= N:
        raise ParityDomain(f"(M,N)=({M},{N}) is not a two-factor point")


def _check_four_factor(M, N):
    if M != 0 or N % 2 == 0 or N < 1:
        raise ParityDomain("class forms need M = 0 and N odd")


def B1(M, N, order):
    _check_two_factor(M, N) if M else _check_four_factor(M, N)
    return hyp2f1(mpq(N + M, 2), mpq(N - M, 2), N + 1, order)


def B2_scaled(M, N, order):
    """((N+1)/2) B_2 from the hypergeometric closed form."""
    _check_two_factor(M, N) if M else _check_four_factor(M, N)
    t = KSeries.monomial(1, 1, "t")
    F1 = hyp2f1(mpq(N + M, 2), mpq(N - M, 2), N + 1, order)
    F2 = hyp2f1(mpq(N + M + 2, 2), mpq(N - M + 2, 2), N + 2, order)
    return (mpq(N * N - M * M, 4 * (N + 1)) * t * (t - 1) * F2 * F2
            + (N + 1) * F1 * F1 + N * (t - 1) * F1 * F2)


def B1_class4(N, order):
    """B_1^{(4)} from B_1 and its derivative."""
    _check_four_factor(0, N)
    t = KSeries.monomial(1, 1, "t")
    b = B1(0, N, order + 1)
    sq = sqrt_one_minus_t(order + 1)
    return ((2 * t * sq * b.diff() + N * (1 + sq) * b) / (2 * N)).truncate(order)


def B1_class1(N, order):
    """B_1^{(1)} from B_1 and its derivative."""
    _check_four_factor(0, N)
    t = KSeries.monomial(1, 1, "t")
    b = B1(0, N, order + 2)
    sq = sqrt_one_minus_t(order + 2)
    inner = 2 * t * sq * b.diff() - N * (1 - sq) * b
    return (inner.shift(-1) * mpq(-2 * (N + 1), N)).truncate(order)


def hypfactor_A(N, order):
    return hyp2f1(mpq(N, 2), mpq(N, 2), N + 1, order)


def hypfactor_B(N, order):
    return sqrt_one_minus_t(order) * hyp2f1(mpq(N, 2), mpq(N, 2) + 1, N + 1, order)


def B1_class4_direct_sum(N, order):
    return ((hypfactor_A(N, order) + hypfactor_B(N, order)) / 2).truncate(order)


def B1_class1_direct_sum(N, order):
    d = hypfactor_A(N, order + 1) - hypfactor_B(N, order + 1)
    return (d.shift(-1) * (2 * (N + 1))).truncate(order)


def B_closed_form(kind, M, N, order):
    if kind == "B1":
        return B1(M, N, order)
    if kind == "B2":
        return B2_scaled(M, N, order) / mpq(N + 1, 2)
    if kind == "B1_class4":
        if M != 0:
            raise ParityDomain("class forms need M = 0")
        return B1_class4(N, order)
    if kind == "B1_class1":
        if M != 0:
            raise ParityDomain("class forms need M = 0")
        return B1_class1(N, order)
    raise ValueError(f"unknown kind {kind!r}")


def op_class4(f, N):
    """Second-order operator annihilating B_1^{(4)}."""
    t = t_of(f)
    sq = sqrt_one_minus_t(f.order + 2)
    d1 = f.diff()
    d2 = d1.diff()
    return (4 * t * t * (1 - t) * (1 - t) * d2 + 2 * t * (t - 1) * ((2 * N + 1) * t - 2 * N) * d1
            + N * ((t - 1) * ((N - 1) * t + 2) - (t - 2) * sq) * f)


def op_class1(f, N):
    """Second-order operator annihilating B_1^{(1)}."""
    t = t_of(f)
    sq = sqrt_one_minus_t(f.order + 2)
    d1 = f.diff()
    d2 = d1.diff()
    return (4 * t * t * (1 - t) * (1 - t) * d2 + 2 * t * (t - 1) * ((2 * N + 5) * t - 2 * N - 4) * d1
            + ((t - 1) * ((N + 1) * (N + 2) * t - 2 * N) + N * (t - 2) * sq) * f)


def op_hypfactor_A(f, N):
    """t(1-t) times the operator with solution hypfactor_A."""
    t = t_of(f)
    d1 = f.diff()
    return t * (1 - t) * d1.diff() + (N + 1) * (1 - t) * d1 - mpq(N * N, 4) * f


def op_hypfactor_B(f, N):
    """4 t (1-t)^2 times the operator with solution hypfactor_B."""
    t = t_of(f)
    d1 = f.diff()
    return (4 * t * (1 - t) ** 2 * d1.diff() + 4 * (N + 1) * (1 - t) ** 2 * d1
            + (N * N * (t - 1) - (t - 2)) * f)


def contiguous_check(N, order):
    """dF/dt = N^2/(4(N+1)) 2F1(N/2+1, N/2+1; N+2) for F = 2F1(N/2, N/2; N+1)."""
    lhs = hypfactor_A(N, order + 1).diff()
    rhs = hyp2f1(mpq(N, 2) + 1, mpq(N, 2) + 1, N + 2, order) * mpq(N * N, 4 * (N + 1))
    return lhs.agrees(rhs, order)
