"""Command-line interface: documents, exit codes, formats and the cache."""

import json
import os
import subprocess
import sys

import pytest
from gmpy2 import mpq

from isingfw import cli
from isingfw.errors import IdentityMismatch
from isingfw.factors import two_factors
from isingfw.fw_toeplitz import correlation_CMN
from isingfw.series_core import EXACT, KSeries, LamPoly


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def doc(out, name):
    return cli.SeriesDocument.from_dict(json.loads(out)["series"][name])


def test_rational_strings():
    assert cli.render_q(mpq(-3, 8)) == "-3/8"
    assert cli.render_q(0) == "+0/1"
    assert cli.render_q(5) == "+5/1"
    for s in ("+0/1", "-7/2", "+22/7"):
        assert cli.render_q(cli.parse_q(s)) == s
    for bad in ("3/8", "+2/4", "-0/1", "+1/0", "+0/3", "1.5"):
        with pytest.raises(ValueError):
            cli.parse_q(bad)


def test_series_document_round_trip():
    s = KSeries([mpq(1, 2), 0, -3], 2, 9, "k")
    d = cli.SeriesDocument.from_series(s, {"x": 1})
    back = cli.SeriesDocument.parse(d.render())
    assert back.to_series() == s
    assert list(back.rows()) == [(2, 1, 2), (3, 0, 1), (4, -3, 1)] + [(e, 0, 1) for e in range(5, 9)]
    exact = cli.SeriesDocument.from_series(KSeries([1, 1], 0, EXACT, "t"))
    assert exact.order is None and exact.to_series().order == EXACT
    lam = LamPoly.lam()
    f = KSeries([1, lam, 2 + lam * lam], 0, 3, "t")
    fd = cli.SeriesDocument.parse(cli.SeriesDocument.from_series(f).render())
    assert fd.coefficients == ["+1/1", "+0/1", "+2/1"]
    assert fd.to_series()[2] == 2 + lam * lam
    with pytest.raises(ValueError):
        cli.SeriesDocument.from_dict({**d.to_dict(), "format": "other"})


def test_correlation_matches_library(capsys):
    code, out, err = run(capsys, "correlation", "--M", "1", "--N", "2", "--order", "10", "--no-cache")
    assert code == 0 and not err
    assert doc(out, "C").to_series() == correlation_CMN(1, 2, 10)


def test_sigma_labels(capsys):
    _, out, _ = run(capsys, "sigma", "--M", "2", "--N", "3", "--which", "plus", "--order", "8", "--no-cache")
    printed = doc(out, "sigma_plus").to_series()
    assert printed.val == 4 and printed[4] == mpq(5, 64)
    _, out, _ = run(capsys, "sigma", "--M", "2", "--N", "3", "--which", "plus", "--order", "8",
                    "--labels", "factor", "--no-cache")
    factor = doc(out, "sigma_plus").to_series()
    assert factor[4] == mpq(-5, 64)
    assert factor.first_difference(two_factors(2, 3, 8).sigmaplus, 8) is None


def test_usage_errors_exit_2_without_stdout(capsys):
    for argv in (["sigma", "--M", "2", "--N", "4", "--which", "plus"],
                 ["correlation", "--M", "1"],
                 ["report", "--appendix", "Z"],
                 ["fwdet", "--ntilde", "13", "--eta", "+1/2", "--p", "+1/2", "--pprime", "+1/2"],
                 ["correlation", "--M", "1", "--N", "2", "--order", "1000"],
                 ["verify-ode", "--eq", "SDI"]):
        code, out, _ = run(capsys, *argv, "--no-cache")
        assert code == 2 and out == "", argv


def test_failed_check_exits_1(capsys, monkeypatch):
    def broken(M, N, order):
        raise IdentityMismatch("forced")

    monkeypatch.setattr("isingfw.landen.verify_reduction", broken)
    code, out, err = run(capsys, "landen", "--M", "2", "--N", "3", "--order", "6", "--no-cache")
    assert code == 1
    assert json.loads(out)["passed"] is False and "forced" in err


def test_verify_ode_and_lambda(capsys):
    code, out, _ = run(capsys, "verify-ode", "--eq", "TWOFACTOR", "--M", "2", "--N", "3",
                       "--order", "16", "--no-cache")
    assert code == 0 and json.loads(out)["checks"]
    code, out, _ = run(capsys, "lambda", "--M", "0", "--N", "5", "--formal", "--order", "12", "--no-cache")
    assert code == 0
    series = json.loads(out)["series"]
    assert any("lambda_coefficients" in s for s in series.values())


def test_formats(capsys):
    _, out, _ = run(capsys, "factor", "--M", "1", "--N", "2", "--order", "6", "--format", "csv", "--no-cache")
    lines = out.splitlines()
    assert "exponent,numerator,denominator" in lines
    assert any(line.startswith("# ") for line in lines)
    _, out, _ = run(capsys, "factor", "--M", "1", "--N", "2", "--order", "6", "--format", "pretty", "--no-cache")
    assert out.startswith("factor ") and "[PASS]" in out


def test_report_and_identities(capsys):
    code, out, _ = run(capsys, "report", "--appendix", "A", "--no-cache")
    r = json.loads(out)
    assert code == 0 and r["rows"] and all(row["match"] for row in r["rows"])
    code, out, _ = run(capsys, "report", "--appendix", "C", "--no-cache")
    r = json.loads(out)
    flagged = [row for row in r["rows"] if not row["match"]]
    assert code == 0 and len(flagged) == 5 and all(row["erratum"] for row in flagged)
    code, _, _ = run(capsys, "identities", "--suite", "quartic", "--no-cache")
    assert code == 0


def test_cache_hit_tamper_and_bypass(capsys, tmp_path):
    argv = ["landen", "--M", "2", "--N", "3", "--order", "8", "--cache-dir", str(tmp_path)]
    code, first, _ = run(capsys, *argv)
    files = [p for p in os.listdir(tmp_path) if p.endswith(".json")]
    assert code == 0 and len(files) == 1
    code, second, err = run(capsys, *argv)
    assert second == first and not err
    path = tmp_path / files[0]
    path.write_bytes(path.read_bytes().replace(b"+", b"-", 1))
    code, third, err = run(capsys, *argv)
    assert code == 0 and third == first and "corrupt" in err
    code, fourth, _ = run(capsys, "landen", "--M", "2", "--N", "3", "--order", "8", "--no-cache")
    assert fourth == first


def test_cache_env_variable(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("ISINGFW_CACHE", str(tmp_path))
    run(capsys, "correlation", "--M", "1", "--N", "2", "--order", "6")
    assert any(p.endswith(".json") for p in os.listdir(tmp_path))


def test_cache_key_depends_on_params():
    assert cli.cache_key("sigma", {"M": 1}) != cli.cache_key("sigma", {"M": 2})
    assert cli.cache_key("sigma", {"M": 1, "N": 2}) == cli.cache_key("sigma", {"N": 2, "M": 1})


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "isingfw", "fwdet", "--ntilde", "2", "--eta", "1",
                           "--p", "1/2", "--pprime=-1/2", "--order", "4", "--no-cache"],
                          capture_output=True, text=True, cwd=tmp_path)
    assert proc.returncode == 0, proc.stderr
    assert json.loads(proc.stdout)["series"]["D"]["variable"] == "k"
