"""Series core: exact arithmetic, classical product identities, inversion."""

import io
import random

import pytest

from overmoments.errors import NonUnitConstantTerm
from overmoments.series import (
    PowerSeries,
    RationalSeries,
    euler_product,
    lambert_term,
    overpartition_gf,
    pentagonal_support,
    pochhammer_q,
)


def brute_partitions(n, cap=None):
    """All partitions of n with parts <= cap, by recursion (test oracle)."""
    if cap is None:
        cap = n
    if n == 0:
        return [()]
    out = []
    for k in range(min(n, cap), 0, -1):
        for rest in brute_partitions(n - k, k):
            out.append((k,) + rest)
    return out


def test_mul_difference_of_squares():
    a = PowerSeries([1, 1], 5)
    b = PowerSeries([1, -1], 5)
    assert (a * b).coeffs == (1, 0, -1, 0, 0, 0)


def test_mul_identity():
    a = PowerSeries([3, -1, 4, 1, -5, 9])
    assert a * PowerSeries.one(a.trunc) == a


def test_mul_trunc_is_min():
    a = PowerSeries([1] * 11)
    b = PowerSeries([1] * 6)
    assert (a * b).trunc == 5
    assert (a + b).trunc == 5
    assert (a - b).trunc == 5


def test_overpartition_times_reciprocal_product_is_one():
    # two independently built factors: pbar series, and (q)^2_inf / (q^2;q^2)_inf
    t = 50
    pbar = overpartition_gf(t)
    qq = pochhammer_q(-1, t)
    recip = qq * qq * euler_product(t, step=2).invert()
    assert (pbar * recip).coeffs == PowerSeries.one(t).coeffs


def test_invert_geometric():
    assert PowerSeries([1, -1], 8).invert().coeffs == (1,) * 9


def test_invert_one():
    assert PowerSeries.one(5).invert() == PowerSeries.one(5)


def test_invert_euler_gives_partition_numbers():
    t = 10
    inv = pochhammer_q(-1, t).invert()
    counts = [len(brute_partitions(n)) for n in range(t + 1)]
    assert list(inv.coeffs) == counts  # 1,1,2,3,5,7,11,...


def test_invert_requires_unit():
    with pytest.raises(NonUnitConstantTerm):
        PowerSeries([2, 1], 4).invert()
    with pytest.raises(NonUnitConstantTerm):
        PowerSeries([0, 1], 4).invert()


def test_invert_two_sided_random_units():
    rng = random.Random(20240817)
    one = PowerSeries.one(30)
    for _ in range(200):
        coeffs = [rng.choice([1, -1])] + [rng.randint(-9, 9) for _ in range(30)]
        a = PowerSeries(coeffs)
        inv = a.invert()
        assert a * inv == one
        assert inv * a == one


def test_ring_axioms_random():
    rng = random.Random(998)
    for _ in range(25):
        t = rng.randint(3, 20)
        a, b, c = (
            PowerSeries([rng.randint(-50, 50) for _ in range(t + 1)]) for _ in range(3)
        )
        assert a * b == b * a
        assert (a + b) * c == a * c + b * c
        assert (a - b) * c == a * c - b * c


def test_pochhammer_minus_pentagonal_pattern():
    p = pochhammer_q(-1, 12)
    assert p.coeffs == (1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1)


def test_pochhammer_minus_matches_pentagonal_theorem_to_1000():
    t = 1000
    p = pochhammer_q(-1, t)
    support = pentagonal_support(t)
    for n, c in enumerate(p.coeffs):
        if n in support:
            assert c in (1, -1)
        else:
            assert c == 0
    assert p == euler_product(t)


def test_pochhammer_plus_counts_distinct_partitions():
    t = 4
    p = pochhammer_q(1, t)
    counts = [
        sum(1 for parts in brute_partitions(n) if len(set(parts)) == len(parts))
        for n in range(t + 1)
    ]
    assert list(p.coeffs) == counts == [1, 1, 1, 2, 2]


def test_pochhammer_trunc_zero():
    assert pochhammer_q(-1, 0).coeffs == (1,)


def test_overpartition_gf_small_values():
    gf = overpartition_gf(10)
    assert gf[0] == 1
    assert gf[3] == 8
    assert gf.coeffs == (1, 2, 4, 8, 14, 24, 40, 64, 100, 154, 232)


def test_overpartition_gf_equals_pochhammer_quotient():
    t = 200
    gf = overpartition_gf(t)
    assert gf == pochhammer_q(1, t) * pochhammer_q(-1, t).invert()


def test_overpartition_gf_strictly_increasing():
    gf = overpartition_gf(300)
    for n in range(1, 300):
        assert gf[n] < gf[n + 1]


def test_lambert_term_basic():
    assert lambert_term(1, 1, 1, 6).coeffs == (0, 1, 1, 1, 1, 1, 1)
    t = lambert_term(2, 3, 5, 12)
    assert t[5] == 1 and t[7] == 3 and t[9] == 6 and t[6] == 0


def test_lambert_term_alternating_divisor():
    # q^2 / ((1-q)(1+q)) = q^2 + q^4 + q^6 + ...
    direct = (
        PowerSeries([0, 0, 1], 10)
        * PowerSeries([1, -1], 10).invert()
        * PowerSeries([1, 1], 10).invert()
    )
    assert lambert_term(1, 1, 2, 10, alternating_factor=True) == direct


def test_dump_format():
    buf = io.StringIO()
    PowerSeries([5, -3, 0], 2).dump(buf)
    assert buf.getvalue() == "0\t5\n1\t-3\n2\t0\n"


def test_rational_series_roundtrip():
    from fractions import Fraction

    rs = RationalSeries([Fraction(1, 2), Fraction(3, 2)]).scale(2)
    assert rs.to_integer().coeffs == (1, 3)
    with pytest.raises(ValueError):
        RationalSeries([Fraction(1, 3)]).to_integer()
    # Fraction keeps denominators positive and reduced
    assert RationalSeries([Fraction(2, -4)])[0] == Fraction(-1, 2)
    assert RationalSeries([Fraction(2, -4)])[0].denominator == 2
