"""Dense truncated power series in q with exact integer coefficients.

A series is exact through q^trunc and carries nothing beyond: every
arithmetic operation truncates eagerly to the shorter operand, so a
coefficient you can read is always the true coefficient.  Coefficients are
Python ints, hence arbitrary precision from the start (overpartition counts
pass 2^63 near n = 160).

Multiplication packs coefficients into a single big integer (Kronecker
substitution) so the heavy lifting runs on CPython's native big-int
multiply instead of an O(n^2) Python loop.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from .errors import NonUnitConstantTerm

__all__ = [
    "PowerSeries",
    "RationalSeries",
    "pochhammer_q",
    "overpartition_gf",
    "euler_product",
    "lambert_term",
]


def _kron_mul(a: Sequence[int], b: Sequence[int], trunc: int) -> list[int]:
    """Product of integer coefficient lists, truncated at `trunc`.

    Splits `a` by sign so both packed integers are nonnegative; slot width is
    sized so that no convolution coefficient can overflow into its neighbor.
    """
    a = list(a[: trunc + 1])
    b = list(b[: trunc + 1])
    maxa = max((abs(x) for x in a), default=0)
    maxb = max((abs(x) for x in b), default=0)
    if maxa == 0 or maxb == 0:
        return [0] * (trunc + 1)
    nbits = (maxa * maxb * min(len(a), len(b))).bit_length() + 2
    wbytes = (nbits + 7) // 8

    def pack(coeffs: list[int]) -> int:
        return int.from_bytes(
            b"".join(c.to_bytes(wbytes, "little") for c in coeffs), "little"
        )

    def unpack(value: int) -> list[int]:
        data = value.to_bytes((value.bit_length() + 7) // 8 + wbytes, "little")
        return [
            int.from_bytes(data[i * wbytes : (i + 1) * wbytes], "little")
            for i in range(trunc + 1)
        ]

    pos = [x if x > 0 else 0 for x in a]
    neg = [-x if x < 0 else 0 for x in a]
    packed_b = pack(b) if min(b) >= 0 else None
    if packed_b is None:
        # both operands signed: split b as well
        bpos = [x if x > 0 else 0 for x in b]
        bneg = [-x if x < 0 else 0 for x in b]
        pp = unpack(pack(pos) * pack(bpos))
        pn = unpack(pack(pos) * pack(bneg))
        np_ = unpack(pack(neg) * pack(bpos))
        nn = unpack(pack(neg) * pack(bneg))
        return [pp[i] + nn[i] - pn[i] - np_[i] for i in range(trunc + 1)]
    rp = unpack(pack(pos) * packed_b)
    rn = unpack(pack(neg) * packed_b)
    return [rp[i] - rn[i] for i in range(trunc + 1)]


def _invert_list(a: Sequence[int], trunc: int) -> list[int]:
    """Newton iteration for 1/a mod q^{trunc+1}; requires a[0] in {1, -1}."""
    inv = [a[0]]
    known = 0  # exact through q^known
    while known < trunc:
        known = min(2 * known + 1, trunc)
        head = list(a[: known + 1])
        t = _kron_mul(inv, head, known)
        t[0] = 2 - t[0]
        for i in range(1, known + 1):
            t[i] = -t[i]
        inv = _kron_mul(inv, t, known)
    return inv


class PowerSeries:
    """Immutable dense power series, exact through q^trunc."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[int], trunc: int | None = None):
        c = list(coeffs)
        if trunc is not None:
            if trunc < 0:
                raise ValueError("trunc must be >= 0")
            c = c[: trunc + 1] + [0] * (trunc + 1 - len(c))
        elif not c:
            raise ValueError("empty coefficient list needs an explicit trunc")
        self._coeffs = tuple(c)

    # -- basic protocol ---------------------------------------------------

    @property
    def trunc(self) -> int:
        return len(self._coeffs) - 1

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self._coeffs

    def __getitem__(self, n: int) -> int:
        return self._coeffs[n]

    def __len__(self) -> int:
        return len(self._coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, PowerSeries) and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __repr__(self) -> str:
        head = ", ".join(str(c) for c in self._coeffs[:8])
        tail = ", ..." if len(self._coeffs) > 8 else ""
        return f"PowerSeries([{head}{tail}], trunc={self.trunc})"

    # -- ring operations (result trunc = min of operand truncs) -----------

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        t = min(self.trunc, other.trunc)
        return PowerSeries([self[i] + other[i] for i in range(t + 1)])

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        t = min(self.trunc, other.trunc)
        return PowerSeries([self[i] - other[i] for i in range(t + 1)])

    def __neg__(self) -> "PowerSeries":
        return PowerSeries([-c for c in self._coeffs])

    def __mul__(self, other: "PowerSeries") -> "PowerSeries":
        t = min(self.trunc, other.trunc)
        return PowerSeries(_kron_mul(self._coeffs, other._coeffs, t))

    def scale(self, k: int) -> "PowerSeries":
        return PowerSeries([k * c for c in self._coeffs])

    def invert(self) -> "PowerSeries":
        """Multiplicative inverse up to trunc; integral since |a_0| = 1."""
        if self._coeffs[0] not in (1, -1):
            raise NonUnitConstantTerm(
                f"constant term {self._coeffs[0]} is not a unit"
            )
        return PowerSeries(_invert_list(self._coeffs, self.trunc))

    # -- convenience -------------------------------------------------------

    @staticmethod
    def one(trunc: int) -> "PowerSeries":
        return PowerSeries([1], trunc)

    @staticmethod
    def zero(trunc: int) -> "PowerSeries":
        return PowerSeries([0], trunc)

    def dump(self, fp) -> None:
        """Debug dump, one line per coefficient: index <tab> value."""
        for i, c in enumerate(self._coeffs):
            fp.write(f"{i}\t{c}\n")


class RationalSeries:
    """PowerSeries companion with exact rational coefficients.

    Fraction keeps denominators positive and fractions reduced; used for
    basis-change combinations before integrality is asserted.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable, trunc: int | None = None):
        c = [Fraction(x) for x in coeffs]
        if trunc is not None:
            c = c[: trunc + 1] + [Fraction(0)] * (trunc + 1 - len(c))
        elif not c:
            raise ValueError("empty coefficient list needs an explicit trunc")
        self._coeffs = tuple(c)

    @property
    def trunc(self) -> int:
        return len(self._coeffs) - 1

    @property
    def coeffs(self) -> tuple:
        return self._coeffs

    def __getitem__(self, n: int) -> Fraction:
        return self._coeffs[n]

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalSeries) and self._coeffs == other._coeffs

    def __add__(self, other: "RationalSeries") -> "RationalSeries":
        t = min(self.trunc, other.trunc)
        return RationalSeries([self[i] + other[i] for i in range(t + 1)])

    def __mul__(self, other: "RationalSeries") -> "RationalSeries":
        t = min(self.trunc, other.trunc)
        out = [Fraction(0)] * (t + 1)
        for i in range(t + 1):
            ai = self[i]
            if ai:
                for j in range(t + 1 - i):
                    bj = other[j]
                    if bj:
                        out[i + j] += ai * bj
        return RationalSeries(out)

    def scale(self, k) -> "RationalSeries":
        k = Fraction(k)
        return RationalSeries([k * c for c in self._coeffs])

    @staticmethod
    def from_integer(ps: PowerSeries) -> "RationalSeries":
        return RationalSeries(ps.coeffs)

    def to_integer(self) -> PowerSeries:
        """Convert back to integer coefficients; fails if any denominator > 1."""
        out = []
        for i, c in enumerate(self._coeffs):
            if c.denominator != 1:
                raise ValueError(f"coefficient of q^{i} is not integral: {c}")
            out.append(c.numerator)
        return PowerSeries(out)


def pochhammer_q(sign: int, trunc: int) -> PowerSeries:
    """Infinite q-Pochhammer product, truncated.

    sign=-1 gives prod_{k>=1} (1 - q^k), sign=+1 gives prod_{k>=1} (1 + q^k).
    Factors with k > trunc cannot touch coefficients <= trunc, so the product
    stops there.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if trunc < 0:
        raise ValueError("trunc must be >= 0")
    c = [0] * (trunc + 1)
    c[0] = 1
    for k in range(1, trunc + 1):
        # multiply in place by (1 + sign*q^k); descending i keeps old values
        for i in range(trunc, k - 1, -1):
            c[i] += sign * c[i - k]
    return PowerSeries(c)


def euler_product(trunc: int, step: int = 1) -> PowerSeries:
    """(q^step; q^step)_infinity via the pentagonal number theorem.

    Coefficients vanish except at step * k(3k-1)/2 for k in Z, where they
    are (-1)^k.  O(sqrt(trunc)) nonzero terms.
    """
    c = [0] * (trunc + 1)
    c[0] = 1
    k = 1
    while True:
        placed = False
        for e in (step * k * (3 * k - 1) // 2, step * k * (3 * k + 1) // 2):
            if e <= trunc:
                c[e] = (-1) ** k
                placed = True
        if not placed:
            break
        k += 1
    return PowerSeries(c)


def overpartition_gf(trunc: int) -> PowerSeries:
    """Overpartition counting series (-q)_inf / (q)_inf = sum pbar(n) q^n.

    Built from the sparse theta relation pbar * (1 + 2 sum_k (-1)^k q^{k^2}) = 1,
    i.e. pbar(n) = 2 sum_{k>=1} (-1)^{k+1} pbar(n - k^2), which costs
    O(trunc^{3/2}) big-int additions instead of a full series inversion.
    """
    if trunc < 0:
        raise ValueError("trunc must be >= 0")
    c = [0] * (trunc + 1)
    c[0] = 1
    for n in range(1, trunc + 1):
        acc = 0
        k = 1
        while k * k <= n:
            if k % 2:
                acc += c[n - k * k]
            else:
                acc -= c[n - k * k]
            k += 1
        c[n] = 2 * acc
    return PowerSeries(c)


def lambert_term(
    n: int,
    r: int,
    exponent: int,
    trunc: int,
    alternating_factor: bool = False,
) -> PowerSeries:
    """One term of a Lambert-type sum: q^exponent / (1 - q^n)^r.

    With alternating_factor=True an extra 1/(1 + q^n) is folded in; its
    coefficients follow the prefix recurrence d_k = binom(k+r-1, r-1) - d_{k-1}.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if r < 0:
        raise ValueError("r must be >= 0")
    if exponent < 0:
        raise ValueError("exponent must be >= 0")
    c = [0] * (trunc + 1)
    k = 0
    prev = 0
    while exponent + k * n <= trunc:
        if r == 0:
            base = 1 if k == 0 else 0
        else:
            base = comb(k + r - 1, r - 1)
        val = base - prev if alternating_factor else base
        c[exponent + k * n] = val
        if alternating_factor:
            prev = val
        k += 1
    return PowerSeries(c)


def pentagonal_support(limit: int) -> set[int]:
    """Generalized pentagonal numbers k(3k-1)/2, |k| >= 0, up to limit."""
    out = {0}
    k = 1
    while k * (3 * k - 1) // 2 <= limit:
        out.add(k * (3 * k - 1) // 2)
        if k * (3 * k + 1) // 2 <= limit:
            out.add(k * (3 * k + 1) // 2)
        k += 1
    return out
