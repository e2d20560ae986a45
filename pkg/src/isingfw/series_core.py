"""Exact truncated Laurent series over the rationals.

A :class:`KSeries` stores ``coeffs[i]`` as the coefficient of ``var**(val + i)``
and knows every coefficient below ``order``.  Polynomials carry
``order = EXACT`` (infinite).  The default variable is the modulus ``k``;
series in ``t = k**2`` and in the Landen variables ``x``, ``w`` use the
same class with a different ``var`` tag, and operands must share it.

Coefficients are :class:`gmpy2.mpq` or :class:`LamPoly` (polynomials in the
formal parameter lambda).  Multiplication of rational series goes through
an integer convolution kernel, compiled when available.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from numbers import Integral

import gmpy2
from gmpy2 import mpq, mpz

from .errors import (
    CompositionDomain,
    DivisionByUnknownSeries,
    FractionalExponent,
    LogOfNonUnit,
    NonMonicBase,
    ParityViolation,
    VariableMismatch,
)

try:
    from . import _kernels as _kern

    KERNEL = "compiled"
except ImportError:  # pragma: no cover - depends on the build
    from . import _kernels_py as _kern

    KERNEL = "python"

from . import _kernels_py as PY_KERNEL

COMPILED_KERNEL = _kern if KERNEL == "compiled" else None
KERNELS = {"python": PY_KERNEL, "compiled": COMPILED_KERNEL}

EXACT = math.inf

_ZERO = mpq(0)
_ONE = mpq(1)


def Q(x) -> mpq:
    """Coerce ``x`` (int, str ``"p/q"``, Fraction, mpq, mpz) to an exact rational."""
    if type(x) is type(_ZERO):
        return x
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        return mpq(Fraction(x).numerator, Fraction(x).denominator)
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted")
    return mpq(x)


def to_fraction(x) -> Fraction:
    x = Q(x)
    return Fraction(int(x.numerator), int(x.denominator))


def qstr(x) -> str:
    """Render a rational as ``n/d`` (``n`` when the denominator is 1)."""
    x = Q(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class LamPoly:
    """Univariate polynomial in lambda with rational coefficients."""

    __slots__ = ("c",)

    def __init__(self, coeffs=()):
        c = [Q(v) for v in coeffs]
        while c and not c[-1]:
            c.pop()
        self.c = tuple(c)

    @classmethod
    def lam(cls, scale=1):
        return cls((0, scale))

    def degree(self):
        return len(self.c) - 1

    def __getitem__(self, i):
        return self.c[i] if 0 <= i < len(self.c) else _ZERO

    def __bool__(self):
        return bool(self.c)

    def is_constant(self):
        return len(self.c) <= 1

    def constant(self):
        return self[0]

    def _wrap(self, o):
        if isinstance(o, LamPoly):
            return o
        if isinstance(o, (int, mpq, type(mpz(0)), Fraction)):
            return LamPoly((o,))
        return None

    def __add__(self, o):
        o = self._wrap(o)
        if o is None:
            return NotImplemented
        n = max(len(self.c), len(o.c))
        return LamPoly([self[i] + o[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return LamPoly([-v for v in self.c])

    def __sub__(self, o):
        o = self._wrap(o)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if isinstance(o, LamPoly):
            if not self.c or not o.c:
                return LamPoly()
            out = [_ZERO] * (len(self.c) + len(o.c) - 1)
            for i, a in enumerate(self.c):
                if a:
                    for j, b in enumerate(o.c):
                        out[i + j] += a * b
            return LamPoly(out)
        o = self._wrap(o)
        if o is None:
            return NotImplemented
        s = o[0]
        return LamPoly([v * s for v in self.c])

    __rmul__ = __mul__

    def __truediv__(self, o):
        if isinstance(o, LamPoly):
            if not o.is_constant() or not o:
                raise ZeroDivisionError("division by a non-constant lambda polynomial")
            o = o[0]
        s = Q(o)
        return LamPoly([v / s for v in self.c])

    def __eq__(self, o):
        w = self._wrap(o)
        if w is None:
            return NotImplemented
        return self.c == w.c

    def __hash__(self):
        return hash(self.c)

    def __call__(self, value):
        """Evaluate at a rational value, or substitute another LamPoly."""
        acc = _ZERO if not isinstance(value, LamPoly) else LamPoly()
        for v in reversed(self.c):
            acc = acc * value + v
        return acc

    def __repr__(self):
        if not self.c:
            return "0"
        terms = []
        for i, v in enumerate(self.c):
            if v:
                terms.append(qstr(v) + ("" if i == 0 else "*lam" if i == 1 else f"*lam^{i}"))
        return " + ".join(terms)


def _is_rational(c):
    return type(c) is type(_ZERO)


def _coerce_coeff(c):
    if isinstance(c, LamPoly):
        return c
    return Q(c)


def _generic_convolve(a, b, n):
    out = []
    la, lb = len(a), len(b)
    for i in range(min(n, la + lb - 1)):
        lo = max(0, i - lb + 1)
        hi = min(i, la - 1)
        acc = a[lo] * b[i - lo]
        for j in range(lo + 1, hi + 1):
            acc = acc + a[j] * b[i - j]
        out.append(acc)
    return out


def _scaled_ints(coeffs):
    den = reduce(gmpy2.lcm, (c.denominator for c in coeffs), mpz(1))
    return [int(c.numerator * (den // c.denominator)) for c in coeffs], den


def convolve(a, b, n, kernel=None):
    """First ``n`` coefficients of the product of two coefficient lists."""
    if not a or not b or n <= 0:
        return []
    if all(map(_is_rational, a)) and all(map(_is_rational, b)):
        k = kernel or _kern
        ia, da = _scaled_ints(a)
        ib, db = (ia, da) if a is b else _scaled_ints(b)
        d = da * db
        return [mpq(v, d) for v in k.int_convolve(ia, ib, n)]
    return _generic_convolve(a, b, n)


def _finite(n):
    return n != EXACT


class KSeries:
    """Truncated Laurent series ``sum c_i var**(val+i) + O(var**order)``."""

    __slots__ = ("val", "coeffs", "order", "var")

    def __init__(self, coeffs=(), val=0, order=EXACT, var="k"):
        c = [_coerce_coeff(v) for v in coeffs]
        if _finite(order):
            order = int(order)
            keep = max(0, order - val)
            if len(c) > keep:
                del c[keep:]
        i = 0
        while i < len(c) and not c[i]:
            i += 1
        val += i
        c = c[i:]
        while c and not c[-1]:
            c.pop()
        if not c:
            val = order if _finite(order) else 0
        self.val = val
        self.coeffs = tuple(c)
        self.order = order
        self.var = var

    @classmethod
    def _raw(cls, coeffs, val, order, var):
        # trusted fast constructor: coefficients already coerced
        s = object.__new__(cls)
        c = list(coeffs)
        if _finite(order) and len(c) > order - val:
            del c[max(0, order - val):]
        i = 0
        while i < len(c) and not c[i]:
            i += 1
        val += i
        del c[:i]
        while c and not c[-1]:
            c.pop()
        if not c:
            val = order if _finite(order) else 0
        s.val, s.coeffs, s.order, s.var = val, tuple(c), order, var
        return s

    # -- construction helpers -------------------------------------------------
    @classmethod
    def const(cls, c, var="k", order=EXACT):
        return cls([c], 0, order, var)

    @classmethod
    def monomial(cls, exponent, c=1, var="k", order=EXACT):
        return cls([c], exponent, order, var)

    @classmethod
    def from_dict(cls, d, order=EXACT, var="k"):
        if not d:
            return cls((), 0, order, var)
        lo, hi = min(d), max(d)
        return cls([d.get(e, 0) for e in range(lo, hi + 1)], lo, order, var)

    # -- inspection -----------------------------------------------------------
    @property
    def valuation(self):
        return self.val

    def is_zero(self):
        return not self.coeffs

    def is_exact(self):
        return not _finite(self.order)

    def __getitem__(self, e):
        if _finite(self.order) and e >= self.order:
            raise IndexError(f"coefficient of {self.var}^{e} is beyond order {self.order}")
        i = e - self.val
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return _ZERO

    def items(self):
        for i, c in enumerate(self.coeffs):
            if c:
                yield self.val + i, c

    def to_dict(self):
        return dict(self.items())

    def lead(self):
        if not self.coeffs:
            raise DivisionByUnknownSeries("series is zero to its known order")
        return self.coeffs[0]

    def __repr__(self):
        terms = []
        for e, c in list(self.items())[:8]:
            terms.append(f"({c})*{self.var}^{e}")
        tail = f"O({self.var}^{self.order})" if _finite(self.order) else ""
        if len(self.coeffs) > 8:
            terms.append("...")
        return "KSeries(" + " + ".join(terms + ([tail] if tail else [])) + ")"

    # -- truncation -----------------------------------------------------------
    def truncate(self, order):
        if _finite(self.order) and order > self.order:
            order = self.order
        return KSeries._raw(self.coeffs, self.val, order, self.var)

    def with_var(self, var):
        return KSeries._raw(self.coeffs, self.val, self.order, var)

    # -- ring operations ------------------------------------------------------
    def _lift(self, o):
        if isinstance(o, KSeries):
            if o.var != self.var:
                raise VariableMismatch(f"{self.var} vs {o.var}")
            return o
        if isinstance(o, (int, mpq, Fraction, LamPoly, type(mpz(0)), str)):
            return KSeries.const(o, self.var)
        return None

    def __add__(self, o):
        o = self._lift(o)
        if o is None:
            return NotImplemented
        order = min(self.order, o.order)
        if not self.coeffs:
            return o.truncate(order)
        if not o.coeffs:
            return self.truncate(order)
        lo = min(self.val, o.val)
        hi = max(self.val + len(self.coeffs), o.val + len(o.coeffs))
        if _finite(order):
            hi = min(hi, order)
        out = [_ZERO] * max(0, hi - lo)
        for src in (self, o):
            off = src.val - lo
            for i, c in enumerate(src.coeffs):
                if off + i >= len(out):
                    break
                out[off + i] = out[off + i] + c if out[off + i] else c
        return KSeries._raw(out, lo, order, self.var)

    __radd__ = __add__

    def __neg__(self):
        return KSeries._raw([-c for c in self.coeffs], self.val, self.order, self.var)

    def __sub__(self, o):
        o = self._lift(o)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def scale(self, s):
        s = _coerce_coeff(s)
        if not s:
            return KSeries((), 0, EXACT, self.var)
        return KSeries._raw([c * s for c in self.coeffs], self.val, self.order, self.var)

    def __mul__(self, o):
        if not isinstance(o, KSeries):
            if isinstance(o, (int, mpq, Fraction, LamPoly, type(mpz(0)), str)):
                return self.scale(o)
            return NotImplemented
        if o.var != self.var:
            raise VariableMismatch(f"{self.var} vs {o.var}")
        a, b = self, o
        if (not a.coeffs and a.is_exact()) or (not b.coeffs and b.is_exact()):
            return KSeries._raw((), 0, EXACT, a.var)
        if not a.coeffs or not b.coeffs:
            return KSeries._raw((), 0, min(a.order + b.val, b.order + a.val), a.var)
        val = a.val + b.val
        order = min(a.order + b.val, b.order + a.val)
        n = len(a.coeffs) + len(b.coeffs) - 1
        if _finite(order):
            n = min(n, order - val)
        return KSeries._raw(convolve(list(a.coeffs), list(b.coeffs), n), val, order, a.var)

    __rmul__ = __mul__

    def shift(self, j):
        """Multiply by ``var**j``."""
        return KSeries._raw(self.coeffs, self.val + j, self.order + j, self.var)

    def rel_precision(self):
        return self.order - self.val

    def inverse(self, rel=None):
        """Reciprocal; ``rel`` bounds the relative precision (needed for exact input)."""
        if not self.coeffs:
            raise DivisionByUnknownSeries("division by a series that is zero to its known order")
        r = self.rel_precision()
        if rel is not None:
            r = min(r, rel)
        if not _finite(r):
            if len(self.coeffs) == 1:
                c = self.coeffs[0]
                return KSeries._raw([_inv_coeff(c)], -self.val, EXACT, self.var)
            raise DivisionByUnknownSeries("inverse of a polynomial needs an explicit precision")
        r = int(r)
        inv = _reciprocal(list(self.coeffs), r)
        return KSeries._raw(inv, -self.val, -self.val + r, self.var)

    def __truediv__(self, o):
        if not isinstance(o, KSeries):
            if isinstance(o, (int, mpq, Fraction, type(mpz(0)), str)):
                q = Q(o)
                if not q:
                    raise ZeroDivisionError("division by zero")
                return self.scale(1 / q)
            return NotImplemented
        o = self._lift(o)
        if not o.coeffs:
            raise DivisionByUnknownSeries("division by a series that is zero to its known order")
        if not self.coeffs:
            if self.is_exact():
                return self
            return KSeries._raw((), 0, self.order - o.val, self.var)
        rel = min(self.rel_precision(), o.rel_precision())
        if not _finite(rel) and len(o.coeffs) > 1:
            raise DivisionByUnknownSeries("quotient of polynomials needs an explicit precision; truncate first")
        return self * o.inverse(rel)

    def __rtruediv__(self, o):
        lifted = self._lift(o)
        if lifted is None:
            return NotImplemented
        return lifted / self

    def __pow__(self, n):
        if not isinstance(n, Integral):
            return pow_rational(self, n)
        n = int(n)
        if n < 0:
            return self.inverse() ** (-n)
        result = KSeries.const(1, self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- comparison -----------------------------------------------------------
    def first_difference(self, other, order=None):
        """Lowest exponent below the common order where the two differ, or None."""
        o = self._lift(other)
        common = min(self.order, o.order)
        if order is not None:
            if _finite(common) and order > common:
                raise ValueError(f"comparison requested to order {order} but only {common} is known")
            common = order
        d = (self - o).truncate(common)
        return d.val if d.coeffs else None

    def agrees(self, other, order=None):
        return self.first_difference(other, order) is None

    def __eq__(self, other):
        if not isinstance(other, KSeries):
            return NotImplemented
        return (self.var, self.val, self.coeffs, self.order) == (other.var, other.val, other.coeffs, other.order)

    def __hash__(self):
        return hash((self.var, self.val, self.coeffs, self.order))

    # -- calculus -------------------------------------------------------------
    def diff(self):
        """Derivative with respect to the series' own variable."""
        out = [c * (self.val + i) for i, c in enumerate(self.coeffs)]
        return KSeries._raw(out, self.val - 1, self.order - 1, self.var)

    def integrate(self):
        """Antiderivative with zero constant term; requires no var**-1 term."""
        out = []
        for i, c in enumerate(self.coeffs):
            e = self.val + i + 1
            if e == 0:
                if c:
                    raise ValueError("series has a residue term")
                out.append(_ZERO)
            else:
                out.append(c / e)
        return KSeries._raw(out, self.val + 1, self.order + 1, self.var)

    def is_even(self):
        return all(e % 2 == 0 for e, _ in self.items())

    def is_odd(self):
        return all(e % 2 for e, _ in self.items())

    def stretch(self, m, var=None):
        """Substitute ``var -> var**m`` (e.g. a t-series into a k-series with m=2)."""
        out = []
        for i, c in enumerate(self.coeffs):
            out.append(c)
            if i + 1 < len(self.coeffs):
                out.extend([_ZERO] * (m - 1))
        return KSeries._raw(out, self.val * m, self.order * m, var or self.var)

    def squeeze(self, m, var=None):
        """Inverse of :meth:`stretch`; all exponents must be multiples of ``m``."""
        for e, _ in self.items():
            if e % m:
                raise ParityViolation(f"exponent {e} is not a multiple of {m}")
        order = self.order if not _finite(self.order) else -((-self.order) // m)
        # an unknown coefficient at order .. rounds up only when order is a multiple
        if _finite(self.order):
            order = self.order // m if self.order % m == 0 else self.order // m + 1
        vals = {e // m: c for e, c in self.items()}
        return KSeries.from_dict(vals, order, var or self.var)

    def map_coeffs(self, fn):
        return KSeries([fn(c) for c in self.coeffs], self.val, self.order, self.var)


def _inv_coeff(c):
    if isinstance(c, LamPoly):
        if not c.is_constant():
            raise DivisionByUnknownSeries("leading coefficient depends on lambda")
        c = c.constant()
    return 1 / c


def _reciprocal(a, n):
    """First ``n`` coefficients of 1/a for a coefficient list with a[0] != 0."""
    c0 = _inv_coeff(a[0])
    rational = all(map(_is_rational, a))
    if rational and n > 24:
        return _newton_reciprocal(a, n)
    out = [c0]
    for i in range(1, n):
        acc = None
        for j in range(1, min(i, len(a) - 1) + 1):
            term = a[j] * out[i - j]
            acc = term if acc is None else acc + term
        out.append(_ZERO if acc is None else -acc * c0)
    return out


def _newton_reciprocal(a, n):
    # b <- b (2 - a b), doubling the precision each step
    b = [_inv_coeff(a[0])]
    prec = 1
    while prec < n:
        prec = min(2 * prec, n)
        ab = convolve(a[:prec], b, prec)
        corr = [-v for v in ab]
        corr[0] += 2
        b = convolve(b, corr, prec)
    return b[:n]


def const(c, var="k"):
    return KSeries.const(c, var)


def var_series(var="k"):
    return KSeries.monomial(1, 1, var)


def series(coeffs, val=0, order=EXACT, var="k"):
    return KSeries(coeffs, val, order, var)


def ring_op(a, b, op):
    """Arithmetic dispatcher: op in {'add', 'sub', 'mul', 'div'}."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def derive(f, wrt="k", half_integer=False):
    """d/dk, or d/dt = (1/(2k)) d/dk on a k-series.

    Under ``wrt='t'`` odd powers of k raise :class:`ParityViolation` unless
    ``half_integer`` is set, in which case ``k`` is read as ``t**(1/2)``.
    For a series whose own variable is ``t`` (or any other), ``wrt`` equal to
    that variable is the plain derivative.
    """
    if wrt == f.var:
        return f.diff()
    if wrt == "t" and f.var == "k":
        if not half_integer and not f.is_even():
            odd = next(e for e, _ in f.items() if e % 2)
            raise ParityViolation(f"k^{odd} present; not a function of t")
        return f.diff().shift(-1).scale(mpq(1, 2))
    raise ValueError(f"cannot differentiate a {f.var}-series with respect to {wrt}")


def t_of(f):
    """The series ``t`` in the variable of ``f``."""
    if f.var == "k":
        return KSeries.monomial(2, 1, "k")
    return KSeries.monomial(1, 1, f.var)


def d_dt(f):
    """t-derivative in whatever variable ``f`` lives (k is read as t**(1/2))."""
    if f.var == "k":
        return derive(f, "t", half_integer=True)
    return f.diff()


def pow_rational(f, alpha):
    """``f**alpha`` for rational alpha via ``f g' = alpha g f'``."""
    alpha = Q(alpha)
    if alpha.denominator == 1 and not isinstance(f.lead() if f.coeffs else 0, LamPoly):
        return f ** int(alpha)
    if not f.coeffs:
        raise DivisionByUnknownSeries("power of a series that is zero to its known order")
    lead = f.coeffs[0]
    if isinstance(lead, LamPoly) or lead != 1:
        raise NonMonicBase(f"leading coefficient {lead} is not 1")
    v = f.val * alpha
    if v.denominator != 1:
        raise FractionalExponent(f"valuation {f.val} times {alpha} is not an integer")
    r = f.rel_precision()
    if not _finite(r):
        if len(f.coeffs) == 1:
            return KSeries.monomial(int(v), 1, f.var)
        raise DivisionByUnknownSeries("fractional power of a polynomial needs an explicit precision")
    r = int(r)
    a = list(f.coeffs) + [_ZERO] * max(0, r - len(f.coeffs))
    g = [_ONE]
    for n in range(1, r):
        acc = _ZERO
        for j in range(1, n + 1):
            if a[j]:
                acc += ((alpha + 1) * j - n) * a[j] * g[n - j]
        g.append(acc / n)
    return KSeries._raw(g, int(v), int(v) + r, f.var)


def sqrt_series(f):
    return pow_rational(f, mpq(1, 2))


def log_series(f):
    """log f for a series with constant term 1."""
    if not f.coeffs or f.val != 0 or f.coeffs[0] != 1:
        raise LogOfNonUnit("log requires constant term 1")
    return (f.diff() / f).integrate()


def exp_series(f):
    """exp f for a series of positive valuation."""
    if f.coeffs and f.val <= 0:
        raise CompositionDomain("exp requires positive valuation")
    r = f.order
    if not _finite(r):
        raise DivisionByUnknownSeries("exp of a polynomial needs an explicit precision")
    a = [f[e] for e in range(0, r)]
    g = [_ONE]
    for n in range(1, r):
        acc = _ZERO
        for j in range(1, n + 1):
            if a[j]:
                acc += j * a[j] * g[n - j]
        g.append(acc / n)
    return KSeries._raw(g, 0, r, f.var)


def compose(f, g):
    """f(g) with val(g) >= 1; f may carry finitely many negative powers."""
    if not g.coeffs:
        if f.val < 0 and f.coeffs:
            raise CompositionDomain("Laurent outer series at a zero inner series")
        if _finite(f.order) and f.order <= 0:
            raise CompositionDomain("outer series has no known constant term")
        return KSeries([f[0] if f.val <= 0 else 0], 0, g.order, g.var)
    if g.val < 1:
        raise CompositionDomain("inner series must have positive valuation")
    target = f.order * g.val if _finite(f.order) else EXACT
    gg = g.truncate(target) if _finite(target) else g
    top = f.val + len(f.coeffs) - 1
    result = KSeries((), 0, EXACT, g.var)
    lo = max(f.val, 0)
    for e in range(top, lo - 1, -1):
        result = result * gg + f[e]
        if _finite(target):
            result = result.truncate(target)
    if lo > 0 and top >= lo:
        result = result * gg ** lo
    if f.val < 0:
        rel = gg.rel_precision()
        if not _finite(rel) and len(gg.coeffs) > 1:
            if not _finite(target):
                raise DivisionByUnknownSeries("negative powers of a polynomial need a finite target")
            rel = target - f.val * g.val
        ginv = gg.inverse(rel)
        for e in range(-1, f.val - 1, -1):
            if f[e]:
                result = result + ginv ** (-e) * f[e]
    if _finite(target):
        result = result.truncate(target)
    return result


def revert(g, var=None):
    """Compositional inverse of g (valuation 1) via Lagrange inversion."""
    if not g.coeffs or g.val != 1:
        raise CompositionDomain("reversion needs valuation exactly 1")
    r = g.rel_precision()
    if not _finite(r):
        raise DivisionByUnknownSeries("reversion of a polynomial needs an explicit precision")
    n_terms = int(r)
    h = g.shift(-1)  # g / var
    hinv = h.inverse()
    out = [_ZERO]
    p = KSeries.const(1, g.var)
    for n in range(1, n_terms + 1):
        p = (p * hinv).truncate(n_terms)
        out.append(p[n - 1] / n)
    return KSeries(out, 0, n_terms + 1, var or g.var)


def sigma_log_derivative(g, half_integer=True):
    """t(t-1) g'/g with d/dt; the unit condition is checked on g."""
    if not g.coeffs or g.val != 0:
        raise LogOfNonUnit("sigma needs a nonzero constant term")
    if g.var == "k" and not half_integer and not g.is_even():
        raise ParityViolation("odd powers of k")
    t = t_of(g)
    return t * (t - 1) * d_dt(g) / g


def parse_rational(s) -> mpq:
    return Q(s)
