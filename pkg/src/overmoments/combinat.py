"""Ground-truth enumeration of overpartitions and their statistics.

Everything here is independent of the generating-function code: tables are
built by listing actual overpartitions, so they can referee the series
expansions.  An overpartition is a non-increasing sequence of positive parts
in which the first occurrence of any part value may be overlined.

The rank is the largest part minus the number of parts.  The residual crank
applies the ordinary partition crank to the sub-partition of non-overlined
parts; the lone sub-partition (1) is counted with the classical weights
(-1:+1, 0:-1, +1:+1) so that enumeration agrees coefficient-for-coefficient
with the two-variable crank series (whose q^1 coefficient is z - 1 + 1/z).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Literal

from .errors import OutOfRange, OversizeRequest
from .series import overpartition_gf

__all__ = [
    "Overpartition",
    "enumerate_overpartitions",
    "rank",
    "residual_crank_weights",
    "partition_crank",
    "StatTable",
    "build_table",
]

Kind = Literal["rank", "crank"]


@dataclass(frozen=True)
class Overpartition:
    """parts: non-increasing positive ints; overlined: part values whose
    first occurrence carries the overline."""

    parts: tuple[int, ...]
    overlined: frozenset[int]

    def __post_init__(self):
        if any(p < 1 for p in self.parts):
            raise ValueError("parts must be positive")
        if any(self.parts[i] < self.parts[i + 1] for i in range(len(self.parts) - 1)):
            raise ValueError("parts must be non-increasing")
        if not self.overlined <= set(self.parts):
            raise ValueError("overlined values must occur among the parts")

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def non_overlined_subpartition(self) -> tuple[int, ...]:
        """Parts left after removing the first occurrence of each overlined value."""
        seen: set[int] = set()
        out = []
        for p in self.parts:
            if p in self.overlined and p not in seen:
                seen.add(p)
                continue
            out.append(p)
        return tuple(out)

    def __str__(self) -> str:
        if not self.parts:
            return "(empty)"
        seen: set[int] = set()
        bits = []
        for p in self.parts:
            if p in self.overlined and p not in seen:
                seen.add(p)
                bits.append(f"{p}~")
            else:
                bits.append(str(p))
        return "+".join(bits)


def _partitions(n: int, cap: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for k in range(min(n, cap), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def enumerate_overpartitions(n: int) -> Iterator[Overpartition]:
    """Yield each overpartition of n exactly once.

    Order is deterministic: partitions in descending lexicographic order of
    the part sequence, then overline patterns by bitmask over the distinct
    values (most significant bit = largest value).
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    for parts in _partitions(n, n):
        distinct = sorted(set(parts), reverse=True)
        d = len(distinct)
        for mask in range(1 << d):
            flagged = frozenset(distinct[i] for i in range(d) if mask >> i & 1)
            yield Overpartition(parts, flagged)


def rank(op: Overpartition) -> int:
    """Largest part minus number of parts; 0 for the empty overpartition."""
    if not op.parts:
        return 0
    return op.parts[0] - len(op.parts)


def partition_crank(parts: tuple[int, ...]) -> int:
    """Ordinary crank of a partition: largest part if it has no ones,
    otherwise (number of parts exceeding the count of ones) - (count of ones)."""
    if not parts:
        return 0
    ones = sum(1 for p in parts if p == 1)
    if ones == 0:
        return parts[0]
    mu = sum(1 for p in parts if p > ones)
    return mu - ones


def residual_crank_weights(op: Overpartition) -> list[tuple[int, int]]:
    """Weighted crank contributions of the non-overlined sub-partition.

    Generic sub-partition: [(crank, +1)].  Empty sub-partition: [(0, +1)].
    The sub-partition (1) gets the three weighted values matching the q^1
    coefficient z - 1 + 1/z of the crank series.
    """
    sub = op.non_overlined_subpartition()
    if sub == (1,):
        return [(-1, 1), (0, -1), (1, 1)]
    return [(partition_crank(sub), 1)]


class StatTable:
    """Counts T(m, n) of a statistic over overpartitions, |m| <= n <= nmax."""

    def __init__(self, kind: Kind, nmax: int):
        if kind not in ("rank", "crank"):
            raise ValueError("kind must be 'rank' or 'crank'")
        self.kind = kind
        self.nmax = nmax
        self._cols: list[dict[int, int]] = [dict() for _ in range(nmax + 1)]
        self._frozen = False

    def _add(self, m: int, n: int, w: int) -> None:
        if self._frozen:
            raise RuntimeError("table is frozen")
        col = self._cols[n]
        col[m] = col.get(m, 0) + w

    def freeze(self) -> "StatTable":
        for col in self._cols:
            for m in [m for m, v in col.items() if v == 0]:
                del col[m]
        self._frozen = True
        return self

    def value(self, m: int, n: int) -> int:
        if not 0 <= n <= self.nmax:
            raise OutOfRange(f"n={n} outside table range 0..{self.nmax}")
        return self._cols[n].get(m, 0)

    def column(self, n: int) -> dict[int, int]:
        if not 0 <= n <= self.nmax:
            raise OutOfRange(f"n={n} outside table range 0..{self.nmax}")
        return dict(self._cols[n])

    def column_sum(self, n: int) -> int:
        return sum(self.column(n).values())

    def is_symmetric(self) -> bool:
        return all(
            col.get(m, 0) == col.get(-m, 0) for col in self._cols for m in col
        )

    def to_csv(self, fp) -> None:
        """Header 'kind,nmax', then rows 'n,m,value' for nonzero entries."""
        fp.write(f"{self.kind},{self.nmax}\n")
        for n in range(self.nmax + 1):
            for m in sorted(self._cols[n]):
                v = self._cols[n][m]
                if v:
                    fp.write(f"{n},{m},{v}\n")


def estimated_enumeration_count(nmax: int) -> int:
    """Exact total number of overpartitions with weight <= nmax."""
    gf = overpartition_gf(nmax)
    return sum(gf.coeffs)


def build_table(
    kind: Kind,
    nmax: int,
    budget: int = 10_000_000,
    source: str = "enumerate",
) -> StatTable:
    """Build a rank or crank table.

    source='enumerate' walks every overpartition (guarded by `budget`);
    source='gf' reads columns off the two-variable series instead, which
    reaches n a full enumeration cannot.
    """
    if nmax < 0:
        raise ValueError("nmax must be >= 0")
    if source == "gf":
        from . import genfunc  # local import: genfunc does not depend on us

        zl = (
            genfunc.rank_two_variable(nmax)
            if kind == "rank"
            else genfunc.crank_two_variable(nmax)
        )
        table = StatTable(kind, nmax)
        for n in range(nmax + 1):
            for m, v in zl.column(n).items():
                if v:
                    table._add(m, n, v)
        return table.freeze()
    if source != "enumerate":
        raise ValueError("source must be 'enumerate' or 'gf'")
    total = estimated_enumeration_count(nmax)
    if total > budget:
        raise OversizeRequest(
            f"enumeration of ~{total} overpartitions exceeds budget {budget}"
        )
    table = StatTable(kind, nmax)
    for n in range(nmax + 1):
        for op in enumerate_overpartitions(n):
            if kind == "rank":
                table._add(rank(op), n, 1)
            else:
                for m, w in residual_crank_weights(op):
                    table._add(m, n, w)
    return table.freeze()
