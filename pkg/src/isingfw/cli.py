"""Command-line front end: series documents, printed-vs-computed reports and a disk cache.

Exit status: 0 when every requested check passes, 1 when a check fails,
2 for usage or domain errors (nothing is written to stdout), 4 for internal errors.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import re
import sys
import tempfile
from dataclasses import dataclass, field
from math import gcd

from gmpy2 import mpq

from . import __version__
from .errors import (CheckError, IdentityMismatch, IsingSeriesError, ParityDomain, SolverError,
                     SpecialFunctionError)
from .series_core import EXACT, KSeries, LamPoly, Q

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 4
CACHE_FORMAT = "isingfw-cache/1"
DOC_FORMAT = "isingfw-series/1"


class UsageError(Exception):
    """Bad flags or parameters outside the domain of a command."""


# -- rationals as strings ------------------------------------------------------------

_QRE = re.compile(r"([+-])(\d+)/(\d+)")


def render_q(x):
    """Canonical ``+n/d`` / ``-n/d`` in lowest terms; zero is ``+0/1``."""
    x = Q(x)
    n, d = int(x.numerator), int(x.denominator)
    return f"{'-' if n < 0 else '+'}{abs(n)}/{d}"


def parse_q(s):
    m = _QRE.fullmatch(s)
    if not m:
        raise ValueError(f"not a signed rational string: {s!r}")
    n, d = int(m.group(2)), int(m.group(3))
    if d == 0 or gcd(n, d) != 1 or (n == 0 and (d != 1 or m.group(1) != "+")):
        raise ValueError(f"rational string not in canonical form: {s!r}")
    return mpq(-n if m.group(1) == "-" else n, d)


# -- series documents ----------------------------------------------------------------


@dataclass
class SeriesDocument:
    variable: str
    valuation: int
    order: int | None  # None for an exact (polynomial) series
    coefficients: list
    metadata: dict = field(default_factory=dict)
    lambda_coefficients: list | None = None  # per exponent: [c0, c1, ...] in powers of lambda

    @classmethod
    def from_series(cls, s: KSeries, metadata=None):
        end = s.order if s.order != EXACT else s.val + len(s.coeffs)
        raw = [s[e] for e in range(s.val, end)]
        lam = None
        if any(isinstance(c, LamPoly) for c in raw):
            polys = [c if isinstance(c, LamPoly) else LamPoly((c,)) for c in raw]
            lam = [[render_q(v) for v in (p.c or (0,))] for p in polys]
            raw = [p.constant() for p in polys]
        return cls(s.var, int(s.val), None if s.order == EXACT else int(s.order),
                   [render_q(c) for c in raw], dict(metadata or {}), lam)

    def to_series(self):
        if self.lambda_coefficients is not None:
            cs = [LamPoly([parse_q(v) for v in row]) for row in self.lambda_coefficients]
        else:
            cs = [parse_q(v) for v in self.coefficients]
        return KSeries(cs, self.valuation, EXACT if self.order is None else self.order, self.variable)

    def to_dict(self):
        d = {"format": DOC_FORMAT, "variable": self.variable, "valuation": self.valuation,
             "order": self.order, "coefficients": list(self.coefficients), "metadata": self.metadata}
        if self.lambda_coefficients is not None:
            d["lambda_coefficients"] = [list(r) for r in self.lambda_coefficients]
        return d

    @classmethod
    def from_dict(cls, d):
        if d.get("format") != DOC_FORMAT:
            raise ValueError(f"unknown document format {d.get('format')!r}")
        for s in d["coefficients"]:
            parse_q(s)
        return cls(d["variable"], int(d["valuation"]), d["order"], list(d["coefficients"]),
                   dict(d.get("metadata", {})),
                   [list(r) for r in d["lambda_coefficients"]] if "lambda_coefficients" in d else None)

    def render(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    @classmethod
    def parse(cls, text):
        return cls.from_dict(json.loads(text))

    def rows(self):
        """(exponent, numerator, denominator) for every coefficient."""
        for i, s in enumerate(self.coefficients):
            q = parse_q(s)
            yield self.valuation + i, int(q.numerator), int(q.denominator)


# -- cache ---------------------------------------------------------------------------


def cache_key(command, params):
    blob = json.dumps({"command": command, "params": params, "version": __version__,
                       "format": CACHE_FORMAT}, sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()


class Cache:
    """Content-addressed store of command results; one file per key."""

    def __init__(self, directory):
        self.dir = directory

    @classmethod
    def from_args(cls, args):
        if args.no_cache:
            return None
        d = args.cache_dir or os.environ.get("ISINGFW_CACHE")
        return cls(d) if d else None

    def path(self, key):
        return os.path.join(self.dir, f"{key}.json")

    def load(self, key):
        p = self.path(key)
        try:
            with open(p, "rb") as fh:
                data = fh.read()
        except FileNotFoundError:
            return None
        header, _, body = data.partition(b"\n")
        parts = header.decode("ascii", "replace").split()
        ok = (len(parts) == 3 and parts[0] == CACHE_FORMAT and parts[1] == f"key={key}"
              and parts[2] == f"sha256={hashlib.sha256(body).hexdigest()}")
        if not ok:
            warn(f"cache entry {p} is corrupt or from another version; recomputing")
            return None
        try:
            return json.loads(body)
        except ValueError:
            warn(f"cache entry {p} does not parse; recomputing")
            return None

    def store(self, key, payload):
        os.makedirs(self.dir, exist_ok=True)
        body = json.dumps(payload, sort_keys=True).encode()
        header = f"{CACHE_FORMAT} key={key} sha256={hashlib.sha256(body).hexdigest()}\n".encode()
        fd, tmp = tempfile.mkstemp(dir=self.dir, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "wb") as fh:
                fh.write(header + body)
            os.replace(tmp, self.path(key))
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise


def warn(msg):
    print(f"isingfw: warning: {msg}", file=sys.stderr)


# -- results -------------------------------------------------------------------------


@dataclass
class Result:
    """What a command produced: named series, named checks and report rows."""

    command: str
    params: dict
    series: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    rows: list = field(default_factory=list)

    @property
    def passed(self):
        return all(c["passed"] for c in self.checks)

    def add_series(self, name, s, **annotations):
        meta = {"command": self.command, "parameters": self.params, "version": __version__,
                "name": name, **annotations}
        self.series[name] = SeriesDocument.from_series(s, meta)

    def check(self, name, passed, detail=""):
        self.checks.append({"name": name, "passed": bool(passed), "detail": str(detail)})

    def to_dict(self):
        return {"command": self.command, "parameters": self.params, "version": __version__,
                "series": {k: v.to_dict() for k, v in self.series.items()},
                "checks": self.checks, "rows": self.rows, "passed": self.passed}

    @classmethod
    def from_dict(cls, d):
        r = cls(d["command"], d["parameters"])
        r.series = {k: SeriesDocument.from_dict(v) for k, v in d["series"].items()}
        r.checks, r.rows = d["checks"], d["rows"]
        return r


def run_check(result, name, fn, *a, **kw):
    """Record a check that raises on failure."""
    try:
        out = fn(*a, **kw)
    except (CheckError, SolverError, IdentityMismatch) as exc:
        result.check(name, False, exc)
        return None
    result.check(name, True, "" if out is None or out is True else _brief(out))
    return out


def _brief(out):
    if isinstance(out, dict):
        keep = {k: v for k, v in out.items() if not isinstance(v, KSeries)}
        return json.dumps(keep, sort_keys=True, default=str)
    if isinstance(out, (list, tuple)) and all(isinstance(v, KSeries) for v in out):
        return ", ".join(f"#{i + 1} to {v.var}^{v.order - 1}" for i, v in enumerate(out))
    return str(out)


# -- output formats ------------------------------------------------------------------


def render(result: Result, fmt):
    if fmt == "json":
        return json.dumps(result.to_dict(), sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        for name, doc in result.series.items():
            if len(result.series) > 1:
                buf.write(f"# {name} ({doc.variable})\n")
            w.writerow(["exponent", "numerator", "denominator"])
            for row in doc.rows():
                w.writerow(row)
        if result.rows:
            keys = list(result.rows[0])
            w.writerow(keys)
            for r in result.rows:
                w.writerow([r.get(k, "") for k in keys])
        if result.checks:
            w.writerow(["check", "passed", "detail"])
            for c in result.checks:
                w.writerow([c["name"], "1" if c["passed"] else "0", c["detail"]])
        return buf.getvalue()
    return _pretty(result)


def _pretty_q(s):
    q = parse_q(s)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _pretty(result):
    out = [f"{result.command} {' '.join(f'{k}={v}' for k, v in result.params.items())}"]
    for name, doc in result.series.items():
        o = "exact" if doc.order is None else f"O({doc.variable}^{doc.order})"
        out.append(f"{name}: {o}")
        for i, s in enumerate(doc.coefficients):
            e = doc.valuation + i
            if doc.lambda_coefficients is not None:
                row = doc.lambda_coefficients[i]
                terms = [f"({_pretty_q(v)}) lambda^{j}" for j, v in enumerate(row) if parse_q(v)]
                if terms:
                    out.append(f"  {doc.variable}^{e}: {' + '.join(terms)}")
            elif parse_q(s):
                out.append(f"  {doc.variable}^{e}: {_pretty_q(s)}")
    for r in result.rows:
        flag = "ok" if r["match"] else ("erratum" if r.get("erratum") else "MISMATCH")
        out.append(f"  {r['table']} {r['variable']}^{r['exponent']}: printed {r['printed']}"
                   f" computed {r['computed']} [{flag}]")
    for c in result.checks:
        out.append(f"[{'PASS' if c['passed'] else 'FAIL'}] {c['name']}" + (f": {c['detail']}" if c["detail"] else ""))
    return "\n".join(out) + "\n"


# -- commands ------------------------------------------------------------------------


def _two(M, N):
    if not (0 <= M <= N) or (M + N) % 2 == 0 or N < 1:
        raise UsageError(f"(M,N) = ({M},{N}): need 0 <= M <= N with M+N odd")


def _four(M, N):
    if M != 0 or N % 2 == 0 or N < 3:
        raise UsageError(f"four factors need M = 0 and N odd >= 3, got ({M},{N})")


def _order(o, lo=2, hi=400):
    if not lo <= o <= hi:
        raise UsageError(f"order must lie in [{lo}, {hi}]")


def cmd_correlation(a, r):
    from .fw_toeplitz import correlation_CMN

    if not 0 <= a.M <= a.N:
        raise UsageError("need 0 <= M <= N")
    _order(a.order)
    r.add_series("C", correlation_CMN(a.M, a.N, a.order))


def cmd_factor(a, r):
    from .factors import check_four_product, check_product, four_factors, two_factors

    _order(a.order)
    if a.four:
        _four(a.M, a.N)
        ff = four_factors(a.N, a.order)
        for i in range(4):
            g = ff.g[i]
            r.add_series(f"gtilde{i + 1}", ff.gtilde[i], t_exponent=render_q(g.texp),
                         one_minus_t_exponent=render_q(g.omtexp))
        run_check(r, "product of the four factors", check_four_product, ff)
        return
    _two(a.M, a.N)
    dec = two_factors(a.M, a.N, a.order)
    r.add_series("gplus", dec.gplus)
    r.add_series("gminus", dec.gminus)
    run_check(r, "(1-t)^(-1/4) C = g+ g-", check_product, dec)


def _sigma_series(M, N, which, order, labels):
    from .factors import four_factors, two_factors

    if which in "1234":
        _four(M, N)
        return four_factors(N, order).sigma[int(which) - 1]
    _two(M, N)
    dec = two_factors(M, N, order)
    plus, minus = dec.sigmaplus, dec.sigmaminus
    if labels == "printed" and M > 0:
        plus, minus = minus, plus
    return {"plus": plus, "minus": minus, "sum": plus + minus, "diff": plus - minus}[which]


def cmd_sigma(a, r):
    _order(a.order)
    r.add_series(f"sigma_{a.which}", _sigma_series(a.M, a.N, a.which, a.order, a.labels), labels=a.labels)


def _ode_targets(eq, M, N, order):
    """Series the named equation is claimed for, at the given (M,N)."""
    from .factors import four_factors, h_from_four_sigma, sigma_of_correlation, two_factors
    from .landen import h_from_sigma
    from .special_functions import B1_class1, B1_class4

    name = eq.name
    if name in ("TWOFACTOR", "EQNMODD", "DELTA3", "DELTA2", "OKAMOTO_H"):
        _two(M, N)
        dec = two_factors(M, N, order)
        if name == "TWOFACTOR":
            return {"sigma_plus": dec.sigmaplus, "sigma_minus": dec.sigmaminus}
        if name == "EQNMODD":
            return {"sigma": dec.sigma}
        if name == "OKAMOTO_H":
            return {"h_plus": h_from_sigma(dec.sigmaplus, M, N, order),
                    "h_minus": h_from_sigma(dec.sigmaminus, M, N, order)}
        return {"delta": dec.delta}
    if name == "EQNM":
        if not 0 <= M <= N:
            raise UsageError("need 0 <= M <= N")
        return {"sigma": sigma_of_correlation(M, N, order)}
    if name in ("EQNM_M0", "FOUR_SIGMA", "FOUR_H", "DELTA3_4F", "DELTA2_4F"):
        _four(M, N)
        ff = four_factors(N, order)
        s = ff.sigma
        if name == "EQNM_M0":
            return {"sigma": ff.sigma_total}
        if name == "FOUR_SIGMA":
            return {f"sigma{i + 1}": s[i] for i in range(4)}
        if name == "FOUR_H":
            return {f"h{i + 1}": h_from_four_sigma(s[i], N) for i in range(4)}
        return {"delta13": s[0] - s[2], "delta24": s[1] - s[3]}
    if name in ("LIN_B41", "LIN_B11"):
        f = B1_class4 if name == "LIN_B41" else B1_class1
        return {"B1": f(N, order)}
    raise UsageError(f"{name} has no canonical solution to check; use one of the named families")


def cmd_verify_ode(a, r):
    from .pvi_ode import EquationId, check_residual
    from .special_functions import op_class1, op_class4

    _order(a.order)
    try:
        eq = EquationId.parse(a.eq, a.M, a.N)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if eq.name == "SDI":
        raise UsageError("SDI has no canonical solution to check; use one of the named equations")
    p = eq.param_dict()
    M = int(p["M"]) if "M" in p else (a.M if a.M is not None else 0)
    N = int(p["N"]) if "N" in p else a.N
    if N is None:
        raise UsageError(f"{eq.name} needs --N")
    need = a.order
    for name, s in _ode_targets(eq, M, N, need + 2).items():
        if eq.name in ("LIN_B41", "LIN_B11"):
            res = (op_class4 if eq.name == "LIN_B41" else op_class1)(s, N)
            ok = not res.coeffs or res.val >= need
            r.check(f"{eq} on {name}", ok and res.order >= need - 2,
                    f"checked to {res.var}^{res.order}" + ("" if ok else f", nonzero at {res.var}^{res.val}"))
            continue
        rep = check_residual(eq, s)
        ok = rep.vanishes and rep.checked_order >= need
        detail = f"checked to {rep.variable}^{rep.checked_order}"
        if not rep.vanishes:
            detail += f", first nonzero at {rep.variable}^{rep.first_nonzero}"
        r.check(f"{eq} on {name}", ok, detail)


def cmd_lambda(a, r):
    from .lambda_solver import extract_Bn_and_match, four_factor_lambdas, selected_lambda, solve_family
    from .pvi_ode import EquationId

    _order(a.order)
    if a.M > 0 or a.N % 2 == 0:
        _two(a.M, a.N)
        eq = EquationId.make("TWOFACTOR", a.M, a.N)
        if a.formal:
            fam = solve_family(eq, "zero", "formal", a.order)
            r.add_series("sigma", fam.coefficients, equation=str(eq), resonance=fam.resonance_exponent)
            bs = run_check(r, "B_1, B_2 against closed forms", extract_Bn_and_match, fam, 2)
            for n, b in enumerate(bs or (), 1):
                r.add_series(f"B{n}", b)
            return
        value = Q(a.value) if a.value is not None else selected_lambda(a.M, a.N)[0]
        fam = solve_family(eq, "zero", "numeric", a.order, value=value)
        r.add_series("sigma", fam.coefficients, equation=str(eq), value=render_q(value),
                     resonance=fam.resonance_exponent)
        return
    _four(a.M, a.N)
    if a.N < 5:
        raise UsageError("four-factor lambda families need N >= 5")
    eq = EquationId.make("FOUR_SIGMA", a.N)
    order_t = (a.order + 1) // 2
    seeds = ("algebraic_plus", "algebraic_plus", "algebraic_minus", "algebraic_minus")
    if a.formal:
        for i in (0, 2):
            fam = solve_family(eq, seeds[i], "formal", order_t)
            r.add_series(f"sigma{i + 1}", fam.coefficients, equation=str(eq), seed=seeds[i],
                         resonance=fam.resonance_exponent)
            bs = run_check(r, f"B_1 of family {i + 1}", extract_Bn_and_match, fam, 1)
            for b in bs or ():
                r.add_series(f"B1_family{i + 1}", b)
        return
    lams = four_factor_lambdas(a.N)
    if a.value is not None:
        lam = Q(a.value)
        mu = mpq(1, 4 * (a.N + 1))
        lams = (lam, -lam, mu * lam, -mu * lam)
    for i in range(4):
        fam = solve_family(eq, seeds[i], "numeric", order_t, value=lams[i])
        r.add_series(f"sigma{i + 1}", fam.coefficients, equation=str(eq), seed=seeds[i],
                     value=render_q(lams[i]), resonance=fam.resonance_exponent)


def cmd_landen(a, r):
    from .landen import verify_reduction

    _two(a.M, a.N)
    _order(a.order, 3)
    try:
        rep = verify_reduction(a.M, a.N, a.order)
    except IdentityMismatch as exc:
        r.check("Okamoto reduction", False, exc)
        return
    for name in ("plus", "minus", "zero"):
        r.add_series(f"h_{name}", rep[f"h_{name}"], checked_order=rep[f"checked_order_{name}"])
    r.check("Okamoto reduction", True, f"{rep['equation']}, c7 = {rep['c7']}")


def cmd_fwdet(a, r):
    from .fw_toeplitz import FWParams, fw_determinant

    _order(a.order, 1)
    try:
        params = FWParams(a.ntilde, Q(a.eta), Q(a.p), Q(a.pprime))
    except (ValueError, ParityDomain) as exc:
        raise UsageError(str(exc)) from None
    if params.Ntilde > 12:
        raise UsageError("ntilde above 12 is not supported")
    r.add_series("D", fw_determinant(params, a.order), label=params.label())


def _acceptance_checks(r, numbers):
    from .acceptance import run

    for res in run(numbers, emit=None):
        r.check(f"criterion {res.number} {res.title}", res.passed, res.detail)


def cmd_identities(a, r):
    from .fw_toeplitz import check_cdef_alternate, check_ff
    from .landen import modular_quartic_check
    from .pvi_ode import differential_identities

    if a.suite == "ff":
        for M, N in ((1, 2), (3, 4), (2, 3), (2, 5)):
            run_check(r, f"Landen splitting ({M},{N})", check_ff, M, N, 32)
        for M, N in ((1, 2), (2, 3)):
            run_check(r, f"alternate Cdef parameters ({M},{N})", check_cdef_alternate, M, N)
    elif a.suite == "tables":
        _acceptance_checks(r, {1, 2, 3, 6})
    elif a.suite == "tw":
        _acceptance_checks(r, {9})
    elif a.suite == "covariance":
        for N in (5, 7, 9):
            for kind in ("kw_covariance_P", "kw_covariance_calP", "r3_r2_4f"):
                run_check(r, f"{kind} N={N}", differential_identities, kind, N)
            run_check(r, f"r3_r2 N={N}", differential_identities, "r3_r2", N, M=2)
    elif a.suite == "quartic":
        run_check(r, "quartic modular identity", modular_quartic_check)


# -- reports: printed against computed -------------------------------------------------


def _row(r, table, var, e, printed, computed, erratum=None):
    row = {"table": table, "variable": var, "exponent": e, "printed": render_q(printed),
           "computed": render_q(computed) if computed is not None else "", "match": printed == computed}
    if erratum is not None:
        row["erratum"] = erratum
    r.rows.append(row)


def _report_dict(r, table, var, series, printed, errata=None):
    for e, v in sorted(printed.items()):
        c = series[e] if e < series.order else None
        err = None
        if errata and e in errata:
            err = errata[e] == c
        _row(r, table, var, e, v, c, err)


def _report_two(r, tab, label_swap):
    from . import reference_data as ref
    from .factors import two_factors

    table = ref.G_TWO if tab == "g" else ref.SIGMA_TWO
    for M, N in ref.TWO_FACTOR_PAIRS:
        ext = ref.printed_extent(table, M, N)
        dec = two_factors(M, N, ext)
        plus, minus = (dec.gplus, dec.gminus) if tab == "g" else (dec.sigmaplus, dec.sigmaminus)
        if label_swap:
            plus, minus = minus, plus
        for sign, s, name in ((1, plus, "+"), (-1, minus, "-")):
            printed = {e: v for e, v in ref.two_factor_series(table, M, N, sign).items() if e < ext}
            _report_dict(r, f"{tab}{name}({M},{N})", "k", s, printed)


def cmd_report(a, r):
    from . import reference_data as ref
    from .factors import TABLE1_ROWS, four_factors, table1_row

    if a.appendix == "A":
        _report_two(r, "g", False)
    elif a.appendix == "B":
        # the printed sigma+ is the factor sigma with the positive k^(N+1) term, our sigma-
        _report_two(r, "sigma", True)
        r.check("sigma labels", True, "printed sigma+- compared with computed sigma-+")
    elif a.appendix == "C":
        from .landen import verify_reduction
        from .lambda_solver import solve_family
        from .pvi_ode import EquationId

        rep = verify_reduction(2, 3, 8)
        _report_dict(r, "h+(2,3)", "x", rep["h_minus"], dict(enumerate(ref.H_23["plus"])))
        _report_dict(r, "h-(2,3)", "x", rep["h_plus"], dict(enumerate(ref.H_23["minus"])))
        for N in (5, 7):
            ff = four_factors(N, 24)
            for i in range(4):
                for tab, src, s in (("gtilde", ref.GTILDE_FOUR, ff.gtilde[i]), ("sigma", ref.SIGMA_FOUR, ff.sigma[i])):
                    errata = {e: good for (t_, n, j, e), (_, good) in ref.ERRATA.items() if (t_, n, j) == (tab, N, i)}
                    _report_dict(r, f"{tab}{i + 1}(0,{N})", "t", s.squeeze(2, "t"), src[N][i], errata)
            for seed in ("algebraic_plus", "algebraic_minus"):
                printed = ref.LAMBDA_FAMILY[(N, seed)]
                fam = solve_family(EquationId.make("FOUR_SIGMA", N), seed, "formal", max(printed) + 1)
                for e, cs in sorted(printed.items()):
                    got = fam.coefficients[e]
                    for j, v in enumerate(cs, 1):
                        _row(r, f"lambda^{j} {seed}({N})", "t", e, v, got[j] if isinstance(got, LamPoly) else 0)
    elif a.appendix == "E":
        from .special_functions import B1_class1, B1_class4

        for N in (3, 5, 7, 9):
            _report_dict(r, f"B1 class4 N={N}", "t", B1_class4(N, 4), dict(enumerate(ref.b1_class4_head(N))))
            _report_dict(r, f"B1 class1 N={N}", "t", B1_class1(N, 4), dict(enumerate(ref.b1_class1_head(N))))
    elif a.appendix == "table1":
        for M, N in TABLE1_ROWS:
            row = table1_row(M, N)
            odd, even = ref.TABLE1[(M, N)]
            _row(r, f"table1({M},{N}) +-k^{N + 1}", "k", N + 1, odd, row["odd"])
            _row(r, f"table1({M},{N}) k^{2 * (N + 1)}", "k", 2 * (N + 1), even, row["even"])
            _row(r, f"table1({M},{N}) alpha", "k", N + 1, ref.TABLE1_ALPHA[(M, N)], row["alpha"])
            r.check(f"alpha law ({M},{N})", row["law_odd"] and row["law_even"])
    bad = [x for x in r.rows if not x["match"] and not x.get("erratum")]
    n_err = sum(1 for x in r.rows if x.get("erratum"))
    r.check("printed coefficients", not bad,
            f"{len(r.rows)} compared, {n_err} documented misprints"
            + (f"; first mismatch {bad[0]['table']} at {bad[0]['variable']}^{bad[0]['exponent']}" if bad else ""))


def cmd_selftest(a, r):
    _acceptance_checks(r, None)


COMMANDS = {
    "correlation": (cmd_correlation, True), "factor": (cmd_factor, True), "sigma": (cmd_sigma, True),
    "verify-ode": (cmd_verify_ode, False), "lambda": (cmd_lambda, True), "landen": (cmd_landen, True),
    "fwdet": (cmd_fwdet, True), "identities": (cmd_identities, False), "report": (cmd_report, True),
    "selftest": (cmd_selftest, False),
}


def _rational_arg(s):
    try:
        return Q(s)
    except (ValueError, TypeError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {s!r}") from None


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "pretty"), default="json")
    common.add_argument("--cache-dir", default=None, help="cache directory (default: $ISINGFW_CACHE)")
    common.add_argument("--no-cache", action="store_true", help="neither read nor write the cache")

    p = argparse.ArgumentParser(prog="isingfw", description="Exact series for factorized Ising correlations.")
    p.add_argument("--version", action="version", version=f"isingfw {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def mn(sp, m_required=True):
        sp.add_argument("--M", type=int, required=m_required)
        sp.add_argument("--N", type=int, required=m_required)

    s = sub.add_parser("correlation", parents=[common], help="C(M,N) as a k-series")
    mn(s)
    s.add_argument("--order", type=int, default=20)
    s = sub.add_parser("factor", parents=[common], help="g+- (or the four g~_i with --four)")
    mn(s)
    s.add_argument("--four", action="store_true")
    s.add_argument("--order", type=int, default=20)
    s = sub.add_parser("sigma", parents=[common], help="sigma functions of the factors")
    mn(s)
    s.add_argument("--which", choices=("plus", "minus", "sum", "diff", "1", "2", "3", "4"), required=True)
    s.add_argument("--labels", choices=("factor", "printed"), default="printed",
                   help="printed (default): sigma+ has the positive k^(N+1) term; factor: sigma+ is the log-derivative of g+")
    s.add_argument("--order", type=int, default=20)
    s = sub.add_parser("verify-ode", parents=[common], help="residual of a named equation on its solutions")
    s.add_argument("--eq", required=True, help="NAME or NAME(params)")
    mn(s, False)
    s.add_argument("--order", type=int, default=30)
    s = sub.add_parser("lambda", parents=[common], help="one-parameter families of solutions")
    mn(s)
    g = s.add_mutually_exclusive_group()
    g.add_argument("--value", type=_rational_arg, default=None)
    g.add_argument("--formal", action="store_true")
    s.add_argument("--order", type=int, default=20)
    s = sub.add_parser("landen", parents=[common], help="reduction to the Okamoto form")
    mn(s)
    s.add_argument("--order", type=int, default=15)
    s = sub.add_parser("fwdet", parents=[common], help="a Forrester-Witte Toeplitz determinant")
    s.add_argument("--ntilde", type=int, required=True)
    s.add_argument("--eta", type=_rational_arg, required=True)
    s.add_argument("--p", type=_rational_arg, required=True)
    s.add_argument("--pprime", type=_rational_arg, required=True)
    s.add_argument("--order", type=int, default=12)
    s = sub.add_parser("identities", parents=[common], help="identity suites")
    s.add_argument("--suite", choices=("ff", "tables", "tw", "covariance", "quartic"), required=True)
    s = sub.add_parser("report", parents=[common], help="printed against computed coefficients")
    s.add_argument("--appendix", choices=("A", "B", "C", "E", "table1"), required=True)
    sub.add_parser("selftest", parents=[common], help="the full acceptance suite")
    return p


def _params(args):
    skip = {"command", "format", "cache_dir", "no_cache"}
    out = {}
    for k, v in sorted(vars(args).items()):
        if k in skip:
            continue
        out[k] = render_q(v) if isinstance(v, type(mpq(0))) else v
    return out


def execute(args):
    fn, cacheable = COMMANDS[args.command]
    params = _params(args)
    cache = Cache.from_args(args) if cacheable else None
    key = cache_key(args.command, params) if cache else None
    if cache:
        hit = cache.load(key)
        if hit is not None:
            try:
                return Result.from_dict(hit)
            except (KeyError, ValueError, TypeError):
                warn("cache entry has an unexpected shape; recomputing")
    r = Result(args.command, params)
    fn(args, r)
    if cache:
        cache.store(key, r.to_dict())
    return r


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        result = execute(args)
    except UsageError as exc:
        print(f"isingfw: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParityDomain, SpecialFunctionError) as exc:
        print(f"isingfw: domain error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IsingSeriesError as exc:
        print(f"isingfw: check failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CHECK
    except Exception as exc:  # noqa: BLE001
        print(f"isingfw: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    sys.stdout.write(render(result, args.format))
    sys.stdout.flush()
    if not result.passed:
        first = next(c for c in result.checks if not c["passed"])
        print(f"isingfw: first failure: {first['name']}: {first['detail']}", file=sys.stderr)
        return EXIT_CHECK
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
