"""Landen change of variables x = 4k/(1+k)^2 and the reduction to Okamoto form.

In the k variable sqrt(1-x) = (1-k)/(1+k) is rational, so every map is
assembled as a k-series and reverted to x once at the end.
"""

from __future__ import annotations

from dataclasses import dataclass

from gmpy2 import mpq

from .errors import IdentityMismatch, ParityDomain, TruncationUnderflow
from .series_core import KSeries, compose, revert
from .special_functions import algebraic_h0, landen_x
from .pvi_ode import EquationId, OkamotoParams, check_residual


@dataclass(frozen=True)
class LandenMap:
    x_of_k: KSeries
    k_of_x: KSeries
    sqrt1mx: KSeries

    @property
    def order(self):
        return self.x_of_k.order


def build_landen(order):
    """x(k), its reversion k(x) and sqrt(1-x) = (1-k)/(1+k), below k^order / x^order."""
    if order < 3:
        raise ValueError("order must be at least 3")
    k = KSeries.monomial(1, 1, "k")
    x = landen_x(order)
    kx = revert(x, "x").truncate(order)
    sq = ((1 - k) / (1 + k).truncate(order)).truncate(order)
    if compose(x, kx).first_difference(KSeries.monomial(1, 1, "x"), order) is not None:
        raise IdentityMismatch("x(k(x)) is not x")
    if (sq * sq).first_difference(1 - x, order) is not None:
        raise IdentityMismatch("sqrt(1-x)^2 is not 1-x")
    return LandenMap(x, kx, sq)


def _h_shift(M, N, order, alt=False):
    """h - 2 sigma/(1+k)^2 as a k-series.

    (M^2-3N^2+1)/16 - ((M^2-N^2+1) k + (M^2-N^2) k^2)/(4(1+k)^2); with ``alt``
    the rewritten form -(3M^2-N^2+3)/16 + (M^2-N^2+1)/(4(1+k)), which differs
    from it by -x k/16 and does not solve the Okamoto equation.
    """
    k = KSeries.monomial(1, 1, "k")
    a = M * M - N * N
    inv = (1 + k).truncate(order + 1).inverse(order)
    if alt:
        return (-mpq(3 * M * M - N * N + 3, 16) + mpq(a + 1, 4) * inv).truncate(order)
    return (mpq(M * M - 3 * N * N + 1, 16) - ((a + 1) * k + a * k * k) * inv * inv / 4).truncate(order)


def _as_k(sigma):
    if sigma.var == "k":
        return sigma
    if sigma.var == "t":
        return sigma.stretch(2, "k")
    raise ValueError(f"sigma must be a k- or t-series, got {sigma.var}")


def h_from_sigma(sigma, M, N, order=None, alt=False):
    """h(x) of the Okamoto form from a solution sigma of the two-factor equation.

    With t = k^2, x = 4k/(1+k)^2 and (1-sqrt(1-x))/(1+sqrt(1-x)) = k:
    h = (x/(2k)) sigma + (M^2-3N^2+1)/16 - (M^2-N^2+1) x/16 - (M^2-N^2) x k/16.
    """
    s = _as_k(sigma)
    if order is None:
        order = s.order
    order = min(order, s.order)
    if order < 1:
        raise TruncationUnderflow("sigma carries no coefficients")
    k = KSeries.monomial(1, 1, "k")
    inv = (1 + k).truncate(order + 1).inverse(order)
    hk = (2 * s.truncate(order) * inv * inv + _h_shift(M, N, order, alt)).truncate(order)
    lm = build_landen(max(order, 3))
    return compose(hk, lm.k_of_x).truncate(order)


def sigma_from_h(h, M, N, order=None):
    """Inverse of h_from_sigma: a k-series sigma."""
    if h.var != "x":
        raise ValueError("h must be an x-series")
    if order is None:
        order = h.order
    order = min(order, h.order)
    lm = build_landen(max(order, 3))
    hk = compose(h.truncate(order), lm.x_of_k).truncate(order)
    k = KSeries.monomial(1, 1, "k")
    one_k2 = ((1 + k) ** 2).truncate(order)
    return (one_k2 * (hk - _h_shift(M, N, order)) / 2).truncate(order)


def verify_reduction(M, N, order):
    """Map sigma+- and sigma = 0 to x and check the Okamoto residual to x^order."""
    from .factors import two_factors

    if (M + N) % 2 == 0:
        raise ParityDomain("the reduction needs M+N odd")
    eq = EquationId.make("OKAMOTO_H", M, N)
    slack = 6
    dec = two_factors(M, N, order + slack)
    out = {"M": M, "N": N, "equation": str(eq)}
    zero = KSeries((), 0, order + slack, "k")
    for name, s in (("plus", dec.sigmaplus), ("minus", dec.sigmaminus), ("zero", zero)):
        h = h_from_sigma(s, M, N, order + slack)
        rep = check_residual(eq, h, order)
        if not rep.vanishes:
            raise IdentityMismatch(f"h from sigma {name}({M},{N}) fails {eq} at x^{rep.first_nonzero}",
                                   rep.first_nonzero)
        back = sigma_from_h(h, M, N)
        if back.first_difference(s, min(back.order, order)) is not None:
            raise IdentityMismatch(f"round trip of sigma {name}({M},{N}) fails")
        out[f"h_{name}"] = h.truncate(order)
        out[f"checked_order_{name}"] = rep.checked_order
    h0 = algebraic_h0(M, N, order)
    if out["h_zero"].first_difference(h0, order) is not None:
        raise IdentityMismatch(f"sigma = 0 does not map to the algebraic h0 for ({M},{N})")
    c7 = OkamotoParams.two_factor(M, N).master_coeffs().c7
    if c7 != -mpq(M * M + N * N + 1, 4):
        raise IdentityMismatch(f"c7 = {c7} for ({M},{N})")
    out["c7"] = c7
    return out


# -- quartic modular identity ---------------------------------------------------------


def quartic_polynomial(t, s):
    """The symmetric polynomial relating t and its image under the quartic map."""
    return (t**4 * s**4 - 4 * t**3 * s**3 * (t + s)
            + 2 * (t**2 * s**2 + 1) * (3 * t**2 - 376 * t * s + 3 * s**2)
            - 4 * (t * s + 1) * (t + s) * (t**2 + 645 * t * s + s**2)
            + t**4 + s**4 - 752 * t * s * (t**2 + s**2) + 13348 * t**2 * s**2
            - 4 * (t + s) + 1)


def hauptmodul_A(t):
    return 27 * t**2 * (1 - t) ** 2 / (4 * (t**2 - t + 1) ** 3)


def modular_quartic_check():
    """t = u^4 and ((u+1)/(u-1))^4 satisfy the quartic relation identically in u."""
    import sympy as sp

    u, t, s = sp.symbols("u t s")
    P = quartic_polynomial(t, s)
    image = ((u + 1) / (u - 1)) ** 4
    on_curve = sp.expand(sp.numer(sp.together(P.subs({t: u**4, s: image}, simultaneous=True))))
    if on_curve != 0:
        raise IdentityMismatch("the quartic relation fails on the parametrisation")
    if sp.expand(P - P.subs({t: s, s: t}, simultaneous=True)) != 0:
        raise IdentityMismatch("the quartic relation is not symmetric")
    A = hauptmodul_A(t)
    at_minus_one = A.subs(t, -1)
    if at_minus_one != 1:
        raise IdentityMismatch(f"A(-1) = {at_minus_one}")
    # A is invariant under the anharmonic group generated by t -> 1-t and t -> 1/t
    for img in (1 - t, 1 / t):
        if sp.cancel(A.subs(t, img) - A) != 0:
            raise IdentityMismatch(f"A is not invariant under t -> {img}")
    return {"quartic_on_parametrisation": True, "symmetric": True, "A_at_minus_one": str(at_minus_one),
            "A_anharmonic_invariant": True}
