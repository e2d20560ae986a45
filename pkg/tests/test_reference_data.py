"""Printed fixtures: internal consistency of the errata list and helpers."""

import pytest
from gmpy2 import mpq

from isingfw import reference_data as ref
from isingfw.factors import four_factors


def test_errata_point_at_fixture_entries():
    for (table, N, i, e), (printed, good) in ref.ERRATA.items():
        src = {"gtilde": ref.GTILDE_FOUR, "sigma": ref.SIGMA_FOUR}[table]
        assert src[N][i][e] == printed
        assert printed != good


def test_corrected_differs_only_at_errata():
    for table, src in (("gtilde", ref.GTILDE_FOUR), ("sigma", ref.SIGMA_FOUR)):
        for N in src:
            for i in range(4):
                fixed = ref.corrected(table, N, i)
                diff = {e for e in fixed if fixed[e] != src[N][i][e]}
                assert diff == {e for (tab, n, j, e) in ref.ERRATA if (tab, n, j) == (table, N, i)}


@pytest.mark.parametrize("N", [5, 7])
def test_corrections_equal_computed_factors(N):
    ff = four_factors(N, 24)
    for (table, n, i, e), (_, good) in ref.ERRATA.items():
        if n != N:
            continue
        s = (ff.sigma if table == "sigma" else ff.gtilde)[i].squeeze(2, "t")
        assert s[e] == good


def test_helpers():
    s = ref.as_series({0: mpq(1), 3: mpq(-2)})
    assert s.order == 4 and s[3] == -2
    fam = ref.family_series(5, "algebraic_plus")
    assert fam[3].c == (0, 1)
    assert ref.F(3, 6) == mpq(1, 2)
