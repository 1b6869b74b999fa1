"""Exact q-expansions of the moment generating series.

Two production families, one per statistic.  For order r >= 1 and binomial
shift s (weight binom(m+s, r) on the count at statistic value m >= 1):

  crank:  (-q)oo/(q)oo * sum_{n>=1} (-1)^{n+1} q^{(n^2+(2(r-s)-1)n)/2} / (1-q^n)^r
  rank: 2*(-q)oo/(q)oo * sum_{n>=1} (-1)^{n+1} q^{n^2+(r-s)n} / ((1+q^n)(1-q^n)^r)

The standard symmetrized series use s = floor((r-1)/2); with that shift the
crank exponent is n^2/2 + (r/2 + rho_C) n and the rank exponent is
n^2 + (r/2 + rho_R) n, where rho_C(r) = 0 (r odd) or 1/2, and
rho_R(r) = 1/2 (r odd) or 1.  Both exponents are asserted integral at
construction.

Every identity here is cross-checked against enumeration in the test suite;
the shift parameter exists because two widely quoted sample expansions
correspond to different shifts:

  2q^3 + 8q^4 + 24q^5 + 60q^6 + 134q^7 + ...   rank, r=3, s=1 (standard)
  q^2 + 6q^3 + 22q^4 + 63q^5 + 159q^6 + 358q^7 ...  crank, r=4, s=2 (= floor(r/2))

The second list is *not* the standard-shift crank series of order 4 (that
one starts q^3 + 6q^4 + 22q^5 + 64q^6); only shift 2 reproduces it.

The two-variable series are the validation path: the crank one is
(q^2;q^2)oo / ((zq)oo (z^{-1}q)oo) and the rank one is
sum_{n>=0} (-1)_n q^{n(n+1)/2} / ((zq)_n (z^{-1}q)_n), expanded with exact
Laurent polynomials in z per power of q (z-degree is bounded by n, so no
z-truncation policy is needed).
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction

from .errors import OutOfRange
from .series import PowerSeries, euler_product, overpartition_gf

__all__ = [
    "rho_crank",
    "rho_rank",
    "standard_shift",
    "crank_lambert_sum",
    "rank_lambert_sum",
    "crank_binomial_series",
    "rank_binomial_series",
    "crank_symmetrized_series",
    "rank_symmetrized_series",
    "ZLaurentSeries",
    "crank_two_variable",
    "rank_two_variable",
    "series_manifest",
]


def rho_crank(r: int) -> Fraction:
    """0 if r is odd, 1/2 otherwise."""
    return Fraction(0) if r % 2 == 1 else Fraction(1, 2)


def rho_rank(r: int) -> Fraction:
    """1/2 if r is odd, 1 otherwise."""
    return Fraction(1, 2) if r % 2 == 1 else Fraction(1)


def standard_shift(r: int) -> int:
    """Binomial shift floor((r-1)/2) used by the symmetrized moments."""
    return (r - 1) // 2 if r >= 1 else -1


def _check_order_shift(r: int, shift: int) -> None:
    if r < 0:
        raise ValueError("order r must be >= 0")
    if not -1 <= shift <= max(r - 1, -1):
        raise ValueError(f"shift {shift} outside supported range -1..{r - 1}")


def crank_lambert_sum(r: int, trunc: int, shift: int | None = None) -> PowerSeries:
    """Inner sum of the crank series (no overpartition prefactor)."""
    if shift is None:
        shift = standard_shift(r)
    _check_order_shift(r, shift)
    c = [0] * (trunc + 1)
    n = 1
    while True:
        e2 = n * n + (2 * (r - shift) - 1) * n
        if e2 % 2 != 0:
            raise AssertionError(f"non-integral crank exponent at n={n}")
        e = e2 // 2
        if shift == standard_shift(r):
            assert Fraction(n * n, 2) + (Fraction(r, 2) + rho_crank(r)) * n == e
        if e > trunc:
            break
        sign = 1 if n % 2 == 1 else -1
        # q^e / (1-q^n)^r expanded termwise
        k = 0
        binom = 1 if r >= 1 else None
        while e + k * n <= trunc:
            if r == 0:
                c[e] += sign
                break
            c[e + k * n] += sign * binom
            binom = binom * (k + r) // (k + 1)
            k += 1
        n += 1
    return PowerSeries(c)


def rank_lambert_sum(r: int, trunc: int, shift: int | None = None) -> PowerSeries:
    """Inner sum of the rank series, including the factor 2."""
    if shift is None:
        shift = standard_shift(r)
    _check_order_shift(r, shift)
    c = [0] * (trunc + 1)
    n = 1
    while True:
        e = n * n + (r - shift) * n
        if shift == standard_shift(r):
            assert n * n + (Fraction(r, 2) + rho_rank(r)) * n == e
        if e > trunc:
            break
        sign = 2 if n % 2 == 1 else -2
        # q^e / ((1+q^n)(1-q^n)^r): prefix recurrence d_k = C(k+r-1,r-1) - d_{k-1}
        k = 0
        prev = 0
        binom = 1 if r >= 1 else None
        while e + k * n <= trunc:
            base = (1 if k == 0 else 0) if r == 0 else binom
            d = base - prev
            c[e + k * n] += sign * d
            prev = d
            if r >= 1:
                binom = binom * (k + r) // (k + 1)
            k += 1
        n += 1
    return PowerSeries(c)


def crank_binomial_series(
    r: int, trunc: int, shift: int | None = None, prefactor: PowerSeries | None = None
) -> PowerSeries:
    """Series whose q^n coefficient is sum_{m>=1} binom(m+shift, r) M(m, n),
    M counting overpartitions of n by residual crank."""
    if prefactor is None:
        prefactor = overpartition_gf(trunc)
    return prefactor * crank_lambert_sum(r, trunc, shift)


def rank_binomial_series(
    r: int, trunc: int, shift: int | None = None, prefactor: PowerSeries | None = None
) -> PowerSeries:
    """Series whose q^n coefficient is sum_{m>=1} binom(m+shift, r) N(m, n),
    N counting overpartitions of n by rank."""
    if prefactor is None:
        prefactor = overpartition_gf(trunc)
    return prefactor * rank_lambert_sum(r, trunc, shift)


def crank_symmetrized_series(r: int, trunc: int) -> PowerSeries:
    """Positive symmetrized crank moment series (standard shift)."""
    if r < 1:
        raise ValueError("r must be >= 1")
    return crank_binomial_series(r, trunc)


def rank_symmetrized_series(r: int, trunc: int) -> PowerSeries:
    """Positive symmetrized rank moment series (standard shift)."""
    if r < 1:
        raise ValueError("r must be >= 1")
    return rank_binomial_series(r, trunc)


class ZLaurentSeries:
    """Series in q whose coefficients are Laurent polynomials in z.

    Stored per power of q as a dict {z-exponent: integer}.  Both statistics
    keep z-support inside [-n, n] at q^n.
    """

    def __init__(self, trunc: int):
        if trunc < 0:
            raise ValueError("trunc must be >= 0")
        self.trunc = trunc
        self._cols: list[dict[int, int]] = [dict() for _ in range(trunc + 1)]

    def column(self, n: int) -> dict[int, int]:
        if not 0 <= n <= self.trunc:
            raise OutOfRange(f"n={n} outside 0..{self.trunc}")
        return {m: v for m, v in self._cols[n].items() if v}

    def coefficient(self, m: int, n: int) -> int:
        if not 0 <= n <= self.trunc:
            raise OutOfRange(f"n={n} outside 0..{self.trunc}")
        return self._cols[n].get(m, 0)

    def is_z_symmetric(self) -> bool:
        return all(
            col.get(m, 0) == col.get(-m, 0) for col in self._cols for m in col
        )

    def max_z_degree(self, n: int) -> int:
        col = self.column(n)
        return max((abs(m) for m in col), default=0)

    def eval_z1(self) -> PowerSeries:
        return PowerSeries([sum(col.values()) for col in self._cols])

    # internal builders ----------------------------------------------------

    def _mul_geometric(self, k: int, zstep: int) -> None:
        """In-place multiply by sum_{j>=0} z^{j*zstep} q^{j*k} via the prefix
        recurrence R[n] = A[n] + z^zstep R[n-k]."""
        for n in range(k, self.trunc + 1):
            src = self._cols[n - k]
            dst = self._cols[n]
            for m, v in src.items():
                key = m + zstep
                dst[key] = dst.get(key, 0) + v

    def _add(self, other: "ZLaurentSeries") -> None:
        for n in range(min(self.trunc, other.trunc) + 1):
            dst = self._cols[n]
            for m, v in other._cols[n].items():
                dst[m] = dst.get(m, 0) + v

    def _prune(self) -> "ZLaurentSeries":
        for col in self._cols:
            for m in [m for m, v in col.items() if v == 0]:
                del col[m]
        return self


def crank_two_variable(trunc: int) -> ZLaurentSeries:
    """Two-variable residual-crank series (q^2;q^2)oo / ((zq)oo (z^{-1}q)oo).

    The numerator uses (q)oo (-q)oo = (q^2;q^2)oo, so it is pentagonal-sparse.
    """
    zl = ZLaurentSeries(trunc)
    for e, c in enumerate(euler_product(trunc, step=2).coeffs):
        if c:
            zl._cols[e][0] = c
    for k in range(1, trunc + 1):
        zl._mul_geometric(k, +1)
        zl._mul_geometric(k, -1)
    return zl._prune()


def rank_two_variable(trunc: int) -> ZLaurentSeries:
    """Two-variable rank series sum_{n>=0} (-1)_n q^{n(n+1)/2} / ((zq)_n (z^{-1}q)_n).

    The n-sum is finite: n(n+1)/2 > trunc terminates it.  (-1)_n is the
    finite product prod_{j=0}^{n-1} (1 + q^j), with (-1)_0 = 1.
    """
    total = ZLaurentSeries(trunc)
    n = 0
    while n * (n + 1) // 2 <= trunc:
        offset = n * (n + 1) // 2
        # (-1)_n shifted by q^offset, as a plain q-series
        c = [0] * (trunc + 1)
        c[offset] = 1
        for j in range(n):  # factors (1 + q^j), j = 0..n-1
            if j == 0:
                for i in range(trunc + 1):
                    c[i] *= 2
            else:
                for i in range(trunc, j - 1, -1):
                    c[i] += c[i - j]
        term = ZLaurentSeries(trunc)
        for e, v in enumerate(c):
            if v:
                term._cols[e][0] = v
        # divide by (zq)_n (z^{-1}q)_n
        for j in range(1, n + 1):
            term._mul_geometric(j, +1)
            term._mul_geometric(j, -1)
        total._add(term)
        n += 1
    return total._prune()


def series_manifest(kind: str, r: int, trunc: int, series: PowerSeries) -> dict:
    """JSON-ready manifest with a checksum of the exact coefficients."""
    digest = hashlib.sha256(
        "\n".join(str(c) for c in series.coeffs).encode()
    ).hexdigest()
    return {"kind": kind, "r": r, "trunc": trunc, "checksum": digest}


def write_series_csv(series: PowerSeries, fp) -> None:
    """Debug-dump format: one line per coefficient, index <tab> value."""
    series.dump(fp)


def write_manifest(manifest: dict, fp) -> None:
    json.dump(manifest, fp, sort_keys=True)
    fp.write("\n")
