"""Point types and exact metrics for the ambient spaces.

Three kinds of points live here:

* `BairePoint` — an eventually periodic sequence of naturals, the
  representable fragment of the space of all infinite sequences.  The
  metric is 1/(least disagreement index + 1), an ultrametric, and is
  exactly decidable for eventually periodic sequences.
* `CantorGridPoint` — a finitely described element of the 0/1 grid
  indexed by pairs (row, column), with finitely many explicit rows and a
  default row.  Its metric flattens the grid through the fixed Cantor
  diagonal enumeration of pairs and applies the sequence metric.
* rationals — points of the real line and the unit interval.

Each space object knows its exact metric, point membership, a canonical
countable dense sequence, and a total index-bound function witnessing
density.  All values are immutable; all operations are pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .rationals import floor_reciprocal, format_rational, parse_rational

# ---------------------------------------------------------------------------
# canonical eventually-periodic sequences
# ---------------------------------------------------------------------------


def _primitive_period(period: tuple[int, ...]) -> tuple[int, ...]:
    """Shortest block whose repetition gives the same tail."""
    n = len(period)
    for d in range(1, n + 1):
        if n % d == 0 and all(period[i] == period[i % d] for i in range(n)):
            return period[:d]
    return period


def canonical_seq(prefix: Sequence[int], period: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Canonical (prefix, period) pair: primitive period, shortest prefix.

    Dropping a trailing prefix entry equal to the period's last entry and
    rotating the period right by one preserves the denoted sequence, so
    value equality coincides with representation equality afterwards.
    """
    if not period:
        raise ValueError("period must be nonempty")
    pre = tuple(int(x) for x in prefix)
    per = _primitive_period(tuple(int(x) for x in period))
    while pre and pre[-1] == per[-1]:
        pre = pre[:-1]
        per = per[-1:] + per[:-1]
    return pre, per


@dataclass(frozen=True)
class BairePoint:
    """Eventually periodic sequence of naturals, in canonical form."""

    prefix: tuple[int, ...]
    period: tuple[int, ...]

    def __post_init__(self) -> None:
        pre, per = canonical_seq(self.prefix, self.period)
        if any(x < 0 for x in pre) or any(x < 0 for x in per):
            raise ValueError("entries must be naturals")
        object.__setattr__(self, "prefix", pre)
        object.__setattr__(self, "period", per)

    def entry(self, n: int) -> int:
        if n < 0:
            raise ValueError("index must be a natural")
        if n < len(self.prefix):
            return self.prefix[n]
        return self.period[(n - len(self.prefix)) % len(self.period)]

    def head(self, n: int) -> tuple[int, ...]:
        lp = len(self.prefix)
        if n <= lp:
            return self.prefix[:n]
        per = self.period
        reps = -(-(n - lp) // len(per))
        return (self.prefix + per * reps)[:n]

    def starts_with(self, u: Sequence[int]) -> bool:
        lp = len(self.prefix)
        k = min(len(u), lp)
        if tuple(u[:k]) != self.prefix[:k]:
            return False
        per, m = self.period, len(self.period)
        return all(u[i] == per[(i - lp) % m] for i in range(lp, len(u)))

    def shift_entries(self, delta: int = 1) -> "BairePoint":
        """Entrywise shift; used for the +1 tree shift."""
        if delta < 0 and any(self.entry(i) + delta < 0 for i in range(len(self.prefix) + len(self.period))):
            raise ValueError("shift would produce a negative entry")
        return BairePoint(
            tuple(x + delta for x in self.prefix),
            tuple(x + delta for x in self.period),
        )

    def sort_key(self) -> tuple:
        return (self.prefix, self.period)

    def __str__(self) -> str:
        return format_baire_point(self)


def baire_point(prefix: Iterable[int], period: Iterable[int]) -> BairePoint:
    return BairePoint(tuple(prefix), tuple(period))


def eventually_zero(head: Iterable[int]) -> BairePoint:
    """The sequence `head` followed by zeros."""
    return BairePoint(tuple(head), (0,))


def parse_baire_point(text: str) -> BairePoint:
    """Parse the "prefix;period" literal, e.g. "0,1;0" for (0,1,0,0,...)."""
    if ";" not in text:
        raise ValueError('expected "prefix;period" literal: %r' % text)
    pre_text, _, per_text = text.partition(";")
    pre = tuple(int(t) for t in pre_text.split(",") if t.strip() != "")
    per = tuple(int(t) for t in per_text.split(",") if t.strip() != "")
    if not per:
        raise ValueError("period part must be nonempty: %r" % text)
    return BairePoint(pre, per)


def format_baire_point(p: BairePoint) -> str:
    return "%s;%s" % (
        ",".join(str(x) for x in p.prefix),
        ",".join(str(x) for x in p.period),
    )


def first_disagreement(a: BairePoint, b: BairePoint) -> int | None:
    """Least index where two sequences differ; None when equal.

    Two eventually periodic sequences that agree below
    max prefix length + lcm of period lengths agree everywhere.
    """
    if a == b:
        return None
    bound = max(len(a.prefix), len(b.prefix)) + math.lcm(len(a.period), len(b.period))
    for n in range(bound):
        if a.entry(n) != b.entry(n):
            return n
    return None


def baire_dist(a: BairePoint, b: BairePoint) -> Fraction:
    """1/(least disagreement index + 1); 0 on equality."""
    n = first_disagreement(a, b)
    if n is None:
        return Fraction(0)
    return Fraction(1, n + 1)


def basic_nbhd_contains(u: Sequence[int], a: BairePoint) -> bool:
    """Does `a` extend the finite constraint sequence `u`?"""
    return all(a.entry(i) == u[i] for i in range(len(u)))


# ---------------------------------------------------------------------------
# Cantor grid points
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RowSpec:
    """Eventually periodic 0/1 row of the grid, canonical form."""

    bit_prefix: tuple[int, ...]
    bit_period: tuple[int, ...]

    def __post_init__(self) -> None:
        pre, per = canonical_seq(self.bit_prefix, self.bit_period)
        if any(b not in (0, 1) for b in pre + per):
            raise ValueError("row bits must be 0 or 1")
        object.__setattr__(self, "bit_prefix", pre)
        object.__setattr__(self, "bit_period", per)

    def bit(self, s: int) -> int:
        if s < len(self.bit_prefix):
            return self.bit_prefix[s]
        return self.bit_period[(s - len(self.bit_prefix)) % len(self.bit_period)]

    def has_infinitely_many_ones(self) -> bool:
        return 1 in self.bit_period

    def last_one_index(self) -> int | None:
        """Index of the last 1, for rows with finitely many 1s."""
        if self.has_infinitely_many_ones():
            raise ValueError("row has infinitely many ones")
        last = None
        for s, bit in enumerate(self.bit_prefix):
            if bit == 1:
                last = s
        return last

    def first_one_at_or_after(self, n: int) -> int | None:
        """Least s >= n with bit 1; None when the tail is all zero."""
        for s in range(n, len(self.bit_prefix)):
            if self.bit_prefix[s] == 1:
                return s
        if not self.has_infinitely_many_ones():
            return None
        start = max(n, len(self.bit_prefix))
        for s in range(start, start + len(self.bit_period)):
            if self.bit(s) == 1:
                return s
        raise AssertionError("period with a 1 must expose one within a block")


ALL_ZERO_ROW = RowSpec((), (0,))
ALL_ONE_ROW = RowSpec((), (1,))


def row_disagreement(a: RowSpec, b: RowSpec) -> int | None:
    if a == b:
        return None
    bound = max(len(a.bit_prefix), len(b.bit_prefix)) + math.lcm(len(a.bit_period), len(b.bit_period))
    for s in range(bound):
        if a.bit(s) != b.bit(s):
            return s
    return None


def pair_index(m: int, s: int) -> int:
    """Fixed Cantor diagonal enumeration of (row, column) pairs.

    Anti-diagonals d = m + s in increasing order; within one, increasing
    row index m.  pair_index(0, 0) = 0, (0, 1) = 1, (1, 0) = 2, (0, 2) = 3.
    """
    d = m + s
    return d * (d + 1) // 2 + m


def unpair_index(k: int) -> tuple[int, int]:
    d = (math.isqrt(8 * k + 1) - 1) // 2
    m = k - d * (d + 1) // 2
    return m, d - m


@dataclass(frozen=True)
class CantorGridPoint:
    """Finitely described point of the 0/1 grid.

    Stored as explicit rows over a default row; explicit rows equal to the
    default are dropped so equality of descriptions is equality of points.
    """

    explicit_rows: tuple[tuple[int, RowSpec], ...]
    default_row: RowSpec = ALL_ZERO_ROW

    def __post_init__(self) -> None:
        rows = {}
        for m, spec in self.explicit_rows:
            if m < 0:
                raise ValueError("row index must be a natural")
            if m in rows:
                raise ValueError("duplicate explicit row %d" % m)
            rows[m] = spec
        canon = tuple(sorted((m, spec) for m, spec in rows.items() if spec != self.default_row))
        object.__setattr__(self, "explicit_rows", canon)

    def row(self, m: int) -> RowSpec:
        for mm, spec in self.explicit_rows:
            if mm == m:
                return spec
        return self.default_row

    def entry(self, m: int, s: int) -> int:
        return self.row(m).bit(s)

    def flat_entry(self, k: int) -> int:
        m, s = unpair_index(k)
        return self.entry(m, s)

    def sort_key(self) -> tuple:
        return (self.explicit_rows, self.default_row.bit_prefix, self.default_row.bit_period)


def grid_point(rows: dict[int, tuple[Sequence[int], Sequence[int]]] | None = None,
               default: tuple[Sequence[int], Sequence[int]] = ((), (0,))) -> CantorGridPoint:
    """Convenience constructor from (prefix, period) bit pairs."""
    rows = rows or {}
    return CantorGridPoint(
        tuple((m, RowSpec(tuple(p), tuple(q))) for m, (p, q) in rows.items()),
        RowSpec(tuple(default[0]), tuple(default[1])),
    )


def grid_dist(a: CantorGridPoint, b: CantorGridPoint, pairing=pair_index) -> Fraction:
    """Sequence metric on the flattened grids; 0 exactly on equality.

    The least differing flattened index is located row by row: only rows
    where the specs differ can contribute, and rows where both points use
    their defaults contribute at the least non-explicit row index.
    """
    explicit = sorted({m for m, _ in a.explicit_rows} | {m for m, _ in b.explicit_rows})
    candidates: list[int] = []
    for m in explicit:
        s = row_disagreement(a.row(m), b.row(m))
        if s is not None:
            candidates.append(pairing(m, s))
    s_default = row_disagreement(a.default_row, b.default_row)
    if s_default is not None:
        m0 = 0
        while m0 in explicit:
            m0 += 1
        candidates.append(pairing(m0, s_default))
    if not candidates:
        return Fraction(0)
    return Fraction(1, min(candidates) + 1)


def grid_point_to_json(p: CantorGridPoint) -> dict:
    return {
        "explicit_rows": {
            str(m): {"prefix": "".join(map(str, spec.bit_prefix)),
                     "period": "".join(map(str, spec.bit_period))}
            for m, spec in p.explicit_rows
        },
        "default_row": {"prefix": "".join(map(str, p.default_row.bit_prefix)),
                        "period": "".join(map(str, p.default_row.bit_period))},
    }


def _row_from_json(obj: dict) -> RowSpec:
    def bits(text) -> tuple[int, ...]:
        if isinstance(text, str):
            return tuple(int(c) for c in text)
        return tuple(int(c) for c in text)
    return RowSpec(bits(obj.get("prefix", "")), bits(obj.get("period", "0")) or (0,))


def grid_point_from_json(obj: dict) -> CantorGridPoint:
    rows = obj.get("explicit_rows", {})
    return CantorGridPoint(
        tuple((int(m), _row_from_json(spec)) for m, spec in rows.items()),
        _row_from_json(obj.get("default_row", {"prefix": "", "period": "0"})),
    )


# ---------------------------------------------------------------------------
# Stern-Brocot enumeration of the rationals
# ---------------------------------------------------------------------------


def _sb_walk(bits: str, lo: tuple[int, int], hi: tuple[int, int]) -> Fraction:
    cur = (lo[0] + hi[0], lo[1] + hi[1])
    for b in bits:
        if b == "0":
            hi = cur
        else:
            lo = cur
        cur = (lo[0] + hi[0], lo[1] + hi[1])
    return Fraction(cur[0], cur[1])


def _sb_path(q: Fraction, lo: tuple[int, int], hi: tuple[int, int]) -> str:
    bits = []
    cur = (lo[0] + hi[0], lo[1] + hi[1])
    while Fraction(cur[0], cur[1]) != q:
        if q < Fraction(cur[0], cur[1]):
            bits.append("0")
            hi = cur
        else:
            bits.append("1")
            lo = cur
        cur = (lo[0] + hi[0], lo[1] + hi[1])
    return "".join(bits)


def sb_positive(i: int) -> Fraction:
    """i-th positive rational in breadth-first Stern-Brocot order."""
    bits = bin(i + 1)[3:]
    return _sb_walk(bits, (0, 1), (1, 0))


def sb_positive_index(q: Fraction) -> int:
    if q <= 0:
        raise ValueError("positive rational required")
    bits = _sb_path(q, (0, 1), (1, 0))
    return int("1" + bits, 2) - 1


def sb_unit(i: int) -> Fraction:
    """i-th rational strictly inside (0, 1), Stern-Brocot order."""
    bits = bin(i + 1)[3:]
    return _sb_walk(bits, (0, 1), (1, 1))


def sb_unit_index(q: Fraction) -> int:
    if not 0 < q < 1:
        raise ValueError("rational strictly inside (0,1) required")
    bits = _sb_path(q, (0, 1), (1, 1))
    return int("1" + bits, 2) - 1


# ---------------------------------------------------------------------------
# graded enumeration of eventually-zero sequences
# ---------------------------------------------------------------------------
#
# Sequences are keyed by their zero-stripped head u (empty or ending in a
# nonzero entry) and ordered by (length + sum of entries, length, lex).
# Every grade is finite, so this is a total enumeration.


def _heads_of_weight(w: int):
    if w == 0:
        yield ()
        return
    for length in range(1, w):
        for head in _compositions(w - length, length):
            if head[-1] != 0:
                yield head


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _count_tail_positive(total: int, parts: int) -> int:
    """Sequences of `parts` naturals summing to `total` with last >= 1."""
    if parts == 0:
        return 1 if total == 0 else 0
    if total < 1:
        return 0
    return math.comb(total - 1 + parts - 1, parts - 1)


def ez_rank(head: tuple[int, ...]) -> int:
    """Index of the eventually-zero sequence with zero-stripped head `head`."""
    if head and head[-1] == 0:
        raise ValueError("head must be zero-stripped")
    if head == ():
        return 0
    w = len(head) + sum(head)
    rank = 1 + sum(2 ** (v - 2) for v in range(2, w))
    for length in range(1, len(head)):
        rank += _count_tail_positive(w - length, length)
    remaining = sum(head)
    for i, value in enumerate(head):
        parts_left = len(head) - i - 1
        for c in range(value):
            rank += _count_tail_positive(remaining - c, parts_left)
        remaining -= value
    return rank


def ez_head(s: int) -> tuple[int, ...]:
    """Inverse of ez_rank."""
    if s == 0:
        return ()
    w = 2
    base = 1
    while base + 2 ** (w - 2) <= s:
        base += 2 ** (w - 2)
        w += 1
    rem = s - base
    length = 1
    while rem >= _count_tail_positive(w - length, length):
        rem -= _count_tail_positive(w - length, length)
        length += 1
    head: list[int] = []
    total = w - length
    for i in range(length):
        parts_left = length - i - 1
        c = 0
        while True:
            block = _count_tail_positive(total - c, parts_left)
            if rem < block:
                break
            rem -= block
            c += 1
        head.append(c)
        total -= c
    return tuple(head)


# ---------------------------------------------------------------------------
# spaces
# ---------------------------------------------------------------------------


class RealLine:
    """The rational points of the real line with |x - y|."""

    name = "real_line"

    def contains(self, x) -> bool:
        return isinstance(x, Fraction)

    def dist(self, x: Fraction, y: Fraction) -> Fraction:
        return abs(x - y)

    def dense_point(self, s: int) -> Fraction:
        if s == 0:
            return Fraction(0)
        i, odd = divmod(s - 1, 2)
        value = sb_positive(i)
        return value if odd == 0 else -value

    def dense_bound(self, x: Fraction, k: int) -> int:
        """Index at which the enumeration hits x itself."""
        if x == 0:
            return 0
        if x > 0:
            return 2 * sb_positive_index(x) + 1
        return 2 * sb_positive_index(-x) + 2

    def parse_point(self, text: str) -> Fraction:
        return parse_rational(text)

    def format_point(self, x: Fraction) -> str:
        return format_rational(x)

    def __eq__(self, other) -> bool:
        return type(other) is type(self)

    def __hash__(self) -> int:
        return hash(self.name)


class UnitInterval(RealLine):
    """Rational points of [0, 1]."""

    name = "unit_interval"

    def contains(self, x) -> bool:
        return isinstance(x, Fraction) and 0 <= x <= 1

    def dense_point(self, s: int) -> Fraction:
        if s == 0:
            return Fraction(0)
        if s == 1:
            return Fraction(1)
        return sb_unit(s - 2)

    def dense_bound(self, x: Fraction, k: int) -> int:
        if x == 0:
            return 0
        if x == 1:
            return 1
        return sb_unit_index(x) + 2


class BaireSpace:
    """Eventually periodic sequences with the 1/(n+1) ultrametric."""

    name = "baire_space"

    def contains(self, x) -> bool:
        return isinstance(x, BairePoint)

    def dist(self, x: BairePoint, y: BairePoint) -> Fraction:
        return baire_dist(x, y)

    def dense_point(self, s: int) -> BairePoint:
        return eventually_zero(ez_head(s))

    def dense_bound(self, x: BairePoint, k: int) -> int:
        head = list(x.head(k + 1))
        while head and head[-1] == 0:
            head.pop()
        return ez_rank(tuple(head))

    def parse_point(self, text: str) -> BairePoint:
        return parse_baire_point(text)

    def format_point(self, x: BairePoint) -> str:
        return format_baire_point(x)

    def __eq__(self, other) -> bool:
        return type(other) is type(self)

    def __hash__(self) -> int:
        return hash(self.name)


class CantorGrid:
    """Finitely described 0/1 grids, metric via the diagonal flattening."""

    name = "cantor_grid"

    def contains(self, x) -> bool:
        return isinstance(x, CantorGridPoint)

    def dist(self, x: CantorGridPoint, y: CantorGridPoint) -> Fraction:
        return grid_dist(x, y)

    def dense_point(self, s: int) -> CantorGridPoint:
        rows: dict[int, list[int]] = {}
        k = 0
        while s:
            if s & 1:
                m, col = unpair_index(k)
                row = rows.setdefault(m, [])
                while len(row) <= col:
                    row.append(0)
                row[col] = 1
            s >>= 1
            k += 1
        return grid_point({m: (bits, (0,)) for m, bits in rows.items()})

    def dense_bound(self, x: CantorGridPoint, k: int) -> int:
        return sum(x.flat_entry(j) << j for j in range(k + 1))

    def parse_point(self, text: str):
        import json

        return grid_point_from_json(json.loads(text))

    def format_point(self, x: CantorGridPoint) -> str:
        import json

        return json.dumps(grid_point_to_json(x), sort_keys=True)

    def __eq__(self, other) -> bool:
        return type(other) is type(self)

    def __hash__(self) -> int:
        return hash(self.name)


@dataclass(frozen=True)
class FinitePoints:
    """Finite labeled metric space given by an explicit distance table.

    The table is validated at construction: symmetric, zero exactly on the
    diagonal, and triangle inequality, all with exact arithmetic.
    `rational_labels` marks spaces whose labels are rational values with the
    |x - y| metric, which is what codomain-side finite spaces must use.
    """

    labels: tuple[str, ...]
    table: tuple[tuple[Fraction, ...], ...]
    rational_labels: bool = False

    name = "finite_points"

    def __post_init__(self) -> None:
        n = len(self.labels)
        if len(set(self.labels)) != n or n == 0:
            raise ValueError("labels must be nonempty and distinct")
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise ValueError("table shape must match labels")
        for i in range(n):
            if self.table[i][i] != 0:
                raise ValueError("diagonal must be zero")
            for j in range(n):
                if self.table[i][j] != self.table[j][i]:
                    raise ValueError("table must be symmetric")
                if i != j and self.table[i][j] <= 0:
                    raise ValueError("off-diagonal distances must be positive")
                for k in range(n):
                    if self.table[i][k] > self.table[i][j] + self.table[j][k]:
                        raise ValueError("triangle inequality violated")

    def _key(self, x) -> str:
        return format_rational(x) if isinstance(x, Fraction) else x

    def index_of(self, x) -> int:
        try:
            return self.labels.index(self._key(x))
        except ValueError:
            raise ValueError("point %r not in space" % (x,)) from None

    def contains(self, x) -> bool:
        if self.rational_labels:
            return isinstance(x, Fraction) and format_rational(x) in self.labels
        return isinstance(x, str) and x in self.labels

    def dist(self, x, y) -> Fraction:
        return self.table[self.index_of(x)][self.index_of(y)]

    def _point(self, label: str):
        return parse_rational(label) if self.rational_labels else label

    def points(self) -> list:
        return [self._point(label) for label in self.labels]

    def dense_point(self, s: int):
        return self._point(self.labels[s % len(self.labels)])

    def dense_bound(self, x, k: int) -> int:
        return self.index_of(x)

    def parse_point(self, text: str):
        if text not in self.labels:
            raise ValueError("point %r not in space" % text)
        return self._point(text)

    def format_point(self, x) -> str:
        return self._key(x)


def finite_points_space(labels: Sequence[str], table: Sequence[Sequence[Fraction]]) -> FinitePoints:
    return FinitePoints(tuple(labels), tuple(tuple(row) for row in table))


def rational_points_space(values: Sequence[Fraction]) -> FinitePoints:
    """Finite space of rational points under the |x - y| metric."""
    vals = sorted(set(values))
    table = tuple(tuple(abs(a - b) for b in vals) for a in vals)
    return FinitePoints(tuple(format_rational(v) for v in vals), table, rational_labels=True)


REAL_LINE = RealLine()
UNIT_INTERVAL = UnitInterval()
BAIRE_SPACE = BaireSpace()
CANTOR_GRID = CantorGrid()


def dense_sequence(space, s: int):
    """s-th element of the space's canonical countable dense sequence."""
    return space.dense_point(s)


def dense_index_bound(space, x, k: int) -> int:
    """Total witness for density: some index up to this bound lands a
    dense-sequence element strictly within 1/(k+1) of x."""
    return space.dense_bound(x, k)


def baire_ball_agreement_length(radius: Fraction) -> int:
    """Coordinates an open ball of the quantized metric constrains.

    dist(a, b) < radius holds exactly when a and b agree on all indices
    below floor(1/radius).
    """
    return floor_reciprocal(radius)
