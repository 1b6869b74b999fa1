"""Exact positive moments, symmetrized moments, and the ospt difference.

The r-th positive moment sums m^r over positive statistic values; the
symmetrized variant replaces m^r by binom(m + floor((r-1)/2), r).  The two
are linked by the polynomial identity

    m^r = r! B_r(m) + sum_{l<r} a_l B_l(m),    B_l(m) = binom(m + floor((l-1)/2), l),

whose coefficients a_l come from an exact rational triangular solve (the
B_l have degree l and leading coefficient 1/l!, so the system is triangular
and the a_l unique).  Small-N values are checked against enumeration;
large-N values come from the generating series exclusively.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Literal

from . import genfunc
from .combinat import StatTable
from .errors import OutOfRange
from .series import PowerSeries, RationalSeries, overpartition_gf

__all__ = [
    "positive_moment",
    "symmetrized_positive_moment",
    "BasisChange",
    "basis_change",
    "ospt",
    "MomentTable",
    "symmetrized_moment_values",
    "positive_moment_values",
    "ospt_values",
]

Kind = Literal["rank", "crank"]


def _check_args(table: StatTable, r: int, N: int) -> None:
    if r < 1:
        raise OutOfRange(f"moment order r={r} must be >= 1")
    if not 0 <= N <= table.nmax:
        raise OutOfRange(f"N={N} outside table range 0..{table.nmax}")


def positive_moment(table: StatTable, r: int, N: int) -> int:
    """sum_{m>=1} m^r T(m, N)."""
    _check_args(table, r, N)
    return sum(m**r * v for m, v in table.column(N).items() if m >= 1)


def symmetrized_positive_moment(
    table: StatTable, r: int, N: int, shift: int | None = None
) -> int:
    """sum_{m>=1} binom(m+shift, r) T(m, N); shift defaults to floor((r-1)/2)."""
    _check_args(table, r, N)
    if shift is None:
        shift = genfunc.standard_shift(r)
    return sum(
        comb(m + shift, r) * v
        for m, v in table.column(N).items()
        if m >= 1 and m + shift >= r
    )


def _basis_polynomial(l: int) -> list[Fraction]:
    """Coefficients (ascending in m) of B_l(m) = binom(m + floor((l-1)/2), l)."""
    s = genfunc.standard_shift(l)
    poly = [Fraction(1)]
    for j in range(l):
        # multiply by (m + s - j)
        shifted = [Fraction(0)] + poly
        poly = [
            shifted[i] + Fraction(s - j) * (poly[i] if i < len(poly) else 0)
            for i in range(len(shifted))
        ]
    f = Fraction(factorial(l))
    return [c / f for c in poly]


@dataclass(frozen=True)
class BasisChange:
    """Coefficients a_0..a_{r-1} of m^r = r! B_r(m) + sum_l a_l B_l(m)."""

    r: int
    a: tuple[Fraction, ...]

    def holds_at(self, m: int) -> bool:
        lhs = Fraction(m) ** self.r
        rhs = factorial(self.r) * Fraction(
            comb(m + genfunc.standard_shift(self.r), self.r)
        )
        for l in range(self.r):
            if self.a[l]:
                rhs += self.a[l] * comb(m + genfunc.standard_shift(l), l)
        return lhs == rhs


def basis_change(r: int) -> BasisChange:
    """Solve the triangular system expressing m^r in the basis {B_l}_{l<=r}."""
    if r < 1:
        raise ValueError("r must be >= 1")
    remainder = [Fraction(0)] * (r + 1)
    remainder[r] = Fraction(1)
    coeffs = [Fraction(0)] * (r + 1)
    for l in range(r, -1, -1):
        B = _basis_polynomial(l)
        c = remainder[l] / B[l]
        coeffs[l] = c
        for i in range(l + 1):
            remainder[i] -= c * B[i]
    assert all(x == 0 for x in remainder)
    assert coeffs[r] == factorial(r)
    bc = BasisChange(r, tuple(coeffs[:r]))
    for m in range(1, r + 2):
        assert bc.holds_at(m), f"basis identity fails at m={m}"
    return bc


def ospt(r: int, N: int, crank_table: StatTable, rank_table: StatTable) -> int:
    """Positive crank moment minus positive rank moment at (r, N)."""
    return positive_moment(crank_table, r, N) - positive_moment(rank_table, r, N)


@dataclass
class MomentTable:
    """Moment values over a range of N, exported as kind,flavor,r,N,value."""

    kind: Kind
    flavor: Literal["positive_power", "positive_symmetrized"]
    r: int
    values: dict[int, int]

    def to_csv(self, fp) -> None:
        for N in sorted(self.values):
            fp.write(f"{self.kind},{self.flavor},{self.r},{N},{self.values[N]}\n")


# ---------------------------------------------------------------------------
# Series-backed production path (the only route past enumeration range).
# ---------------------------------------------------------------------------


def symmetrized_moment_values(
    kind: Kind, r: int, trunc: int, prefactor: PowerSeries | None = None
) -> list[int]:
    """Symmetrized positive moments for all N <= trunc, from the q-series."""
    if prefactor is None:
        prefactor = overpartition_gf(trunc)
    if kind == "crank":
        return list(genfunc.crank_binomial_series(r, trunc, prefactor=prefactor).coeffs)
    if kind == "rank":
        return list(genfunc.rank_binomial_series(r, trunc, prefactor=prefactor).coeffs)
    raise ValueError("kind must be 'rank' or 'crank'")


def positive_moment_values(
    kind: Kind, r: int, trunc: int, prefactor: PowerSeries | None = None
) -> list[int]:
    """Positive power moments for all N <= trunc via the basis change."""
    if r < 1:
        raise ValueError("r must be >= 1")
    if prefactor is None:
        prefactor = overpartition_gf(trunc)
    bc = basis_change(r)
    total = RationalSeries(
        symmetrized_moment_values(kind, r, trunc, prefactor)
    ).scale(factorial(r))
    for l in range(1, r):
        if bc.a[l]:
            total = total + RationalSeries(
                symmetrized_moment_values(kind, l, trunc, prefactor)
            ).scale(bc.a[l])
    return [c for c in total.to_integer().coeffs]


def ospt_values(r: int, trunc: int, prefactor: PowerSeries | None = None) -> list[int]:
    """ospt_r(N) = crank minus rank positive moment, for all N <= trunc."""
    if prefactor is None:
        prefactor = overpartition_gf(trunc)
    crank = positive_moment_values("crank", r, trunc, prefactor)
    rank = positive_moment_values("rank", r, trunc, prefactor)
    return [c - rk for c, rk in zip(crank, rank)]
