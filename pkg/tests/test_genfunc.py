"""Generating-function engine against the enumeration oracle."""

from fractions import Fraction
from math import comb

import pytest

from overmoments import genfunc
from overmoments.combinat import build_table
from overmoments.series import overpartition_gf

NMAX = 12
TABLES = {kind: build_table(kind, NMAX) for kind in ("rank", "crank")}


def binom_sum(kind, r, shift, n):
    return sum(
        comb(m + shift, r) * v for m, v in TABLES[kind].column(n).items() if m >= 1
    )


def test_rho_values():
    assert genfunc.rho_crank(3) == 0 and genfunc.rho_crank(4) == Fraction(1, 2)
    assert genfunc.rho_rank(3) == Fraction(1, 2) and genfunc.rho_rank(4) == 1


def test_standard_shift():
    assert [genfunc.standard_shift(r) for r in range(1, 7)] == [0, 0, 1, 1, 2, 2]


def test_constant_coefficient_vanishes():
    for r in range(1, 7):
        assert genfunc.crank_symmetrized_series(r, 6)[0] == 0
        assert genfunc.rank_symmetrized_series(r, 6)[0] == 0


def test_quoted_sample_expansions():
    # identified against the oracle: the first is the rank series of order 3,
    # the second the crank series of order 4 with binomial shift 2
    sr3 = genfunc.rank_symmetrized_series(3, 7)
    assert list(sr3.coeffs[3:]) == [2, 8, 24, 60, 134]
    sc4_shift2 = genfunc.crank_binomial_series(4, 7, shift=2)
    assert list(sc4_shift2.coeffs[2:]) == [1, 6, 22, 63, 159, 358]
    # the standard-shift crank series of order 4 is a different expansion
    sc4 = genfunc.crank_symmetrized_series(4, 7)
    assert list(sc4.coeffs[3:]) == [1, 6, 22, 64, 160]


def test_standard_series_match_oracle():
    for r in range(1, 7):
        cs = genfunc.crank_symmetrized_series(r, NMAX)
        rs = genfunc.rank_symmetrized_series(r, NMAX)
        s = genfunc.standard_shift(r)
        for n in range(NMAX + 1):
            assert cs[n] == binom_sum("crank", r, s, n)
            assert rs[n] == binom_sum("rank", r, s, n)


def test_generalized_shifts_match_oracle():
    for r in range(0, 6):
        for shift in range(-1, max(r, 1)):
            if r == 0 and shift != -1:
                continue
            cs = genfunc.crank_binomial_series(r, 10, shift=shift)
            rs = genfunc.rank_binomial_series(r, 10, shift=shift)
            for n in range(11):
                assert cs[n] == binom_sum("crank", r, shift, n)
                assert rs[n] == binom_sum("rank", r, shift, n)


def test_shift_domain_is_validated():
    with pytest.raises(ValueError):
        genfunc.crank_binomial_series(3, 5, shift=3)
    with pytest.raises(ValueError):
        genfunc.rank_binomial_series(3, 5, shift=-2)


def test_two_variable_basics():
    zl = genfunc.crank_two_variable(8)
    assert zl.column(0) == {0: 1}
    assert zl.column(1) == {1: 1, -1: 1}
    rl = genfunc.rank_two_variable(8)
    assert rl.column(0) == {0: 1}
    assert rl.column(3) == {2: 2, 0: 4, -2: 2}  # 2z^2 + 4 + 2z^{-2}


def test_two_variable_z_symmetry_and_degree():
    for zl in (genfunc.crank_two_variable(20), genfunc.rank_two_variable(20)):
        assert zl.is_z_symmetric()
        for n in range(21):
            assert zl.max_z_degree(n) <= n


def test_two_variable_z1_is_overpartition_gf():
    gf = overpartition_gf(30)
    assert genfunc.crank_two_variable(30).eval_z1() == gf
    assert genfunc.rank_two_variable(30).eval_z1() == gf


def test_two_variable_columns_match_oracle():
    crank = genfunc.crank_two_variable(NMAX)
    rankzl = genfunc.rank_two_variable(NMAX)
    for n in range(NMAX + 1):
        assert crank.column(n) == TABLES["crank"].column(n)
        assert rankzl.column(n) == TABLES["rank"].column(n)


def test_lambert_sums_compose_from_single_terms():
    from overmoments.series import lambert_term

    # crank inner sum for r=1: q/(1-q) - q^3/(1-q^2) + q^6/(1-q^3) - ...
    expected = (
        lambert_term(1, 1, 1, 8)
        - lambert_term(2, 1, 3, 8)
        + lambert_term(3, 1, 6, 8)
    )
    assert genfunc.crank_lambert_sum(1, 8) == expected
    # rank inner sum for r=1: 2[q^2/((1+q)(1-q)) - q^6/((1+q^2)(1-q^2)) + ...]
    expected = (
        lambert_term(1, 1, 2, 8, alternating_factor=True)
        - lambert_term(2, 1, 6, 8, alternating_factor=True)
    ).scale(2)
    assert genfunc.rank_lambert_sum(1, 8) == expected


def test_manifest_checksum_is_deterministic():
    s1 = genfunc.rank_symmetrized_series(3, 20)
    m1 = genfunc.series_manifest("rank", 3, 20, s1)
    m2 = genfunc.series_manifest("rank", 3, 20, genfunc.rank_symmetrized_series(3, 20))
    assert m1 == m2
    m3 = genfunc.series_manifest(
        "rank", 4, 20, genfunc.rank_symmetrized_series(4, 20)
    )
    assert m3["checksum"] != m1["checksum"]
    assert set(m1) == {"kind", "r", "trunc", "checksum"}


def test_export_helpers():
    import io
    import json

    ser = genfunc.crank_symmetrized_series(2, 4)
    buf = io.StringIO()
    genfunc.write_series_csv(ser, buf)
    assert buf.getvalue().splitlines()[2] == f"2\t{ser[2]}"
    buf = io.StringIO()
    genfunc.write_manifest(genfunc.series_manifest("crank", 2, 4, ser), buf)
    payload = json.loads(buf.getvalue())
    assert payload["kind"] == "crank" and payload["trunc"] == 4
