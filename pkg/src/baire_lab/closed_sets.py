"""Finitely representable closed (and open) subsets of the target spaces.

Variants denote subsets of the real line / unit interval (finite point
sets, closed or open interval unions), of the sequence space (finite point
sets, tree bodies), or the empty set.  Point-to-set distance is exact; the
empty set is at distance 1 from everything, following the convention the
truncated criteria rely on.

A TreeBody denotes the value of the tree-indexed gallery map: the body of
the +1-shifted tree together with every terminal of the shifted tree padded
with zeros.  For the representable trees here that denotation is a finite
set of eventually periodic points, so distances, nets, and membership are
all exact enumerations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .spaces import BairePoint, baire_dist, eventually_zero
from .trees import Tree, terminals, tree_shift


@dataclass(frozen=True)
class FiniteRealSet:
    points: frozenset[Fraction]

    kind = "finite_real"

    def __post_init__(self) -> None:
        if not self.points:
            raise ValueError("finite set variant must be nonempty; use Empty")
        object.__setattr__(self, "points", frozenset(Fraction(p) for p in self.points))


@dataclass(frozen=True)
class ClosedIntervalUnion:
    intervals: tuple[tuple[Fraction, Fraction], ...]

    kind = "closed_intervals"

    def __post_init__(self) -> None:
        if not self.intervals:
            raise ValueError("interval union must be nonempty; use Empty")
        for a, b in self.intervals:
            if a > b:
                raise ValueError("closed interval needs a <= b")


@dataclass(frozen=True)
class OpenIntervalUnion:
    """Not closed; exists to exercise the closure map."""

    intervals: tuple[tuple[Fraction, Fraction], ...]

    kind = "open_intervals"

    def __post_init__(self) -> None:
        if not self.intervals:
            raise ValueError("interval union must be nonempty; use Empty")
        for a, b in self.intervals:
            if a >= b:
                raise ValueError("open interval needs a < b")


@dataclass(frozen=True)
class FiniteBaireSet:
    points: frozenset[BairePoint]

    kind = "finite_baire"

    def __post_init__(self) -> None:
        if not self.points:
            raise ValueError("finite set variant must be nonempty; use Empty")


@dataclass(frozen=True)
class TreeBody:
    tree: Tree

    kind = "tree_body"


@dataclass(frozen=True)
class Empty:
    kind = "empty"


ClosedSetRepr = FiniteRealSet | ClosedIntervalUnion | OpenIntervalUnion | FiniteBaireSet | TreeBody | Empty


def finite_real(*points) -> FiniteRealSet:
    return FiniteRealSet(frozenset(Fraction(p) for p in points))


def closed_intervals(*intervals) -> ClosedIntervalUnion:
    return ClosedIntervalUnion(tuple((Fraction(a), Fraction(b)) for a, b in intervals))


def open_intervals(*intervals) -> OpenIntervalUnion:
    return OpenIntervalUnion(tuple((Fraction(a), Fraction(b)) for a, b in intervals))


@lru_cache(maxsize=4096)
def tree_body_points(t: Tree) -> frozenset[BairePoint]:
    """Exact denotation of TreeBody(t): shifted branches and padded terminals."""
    shifted = tree_shift(t)
    points = {b.shift_entries(1) for b in t.branches}
    for u in terminals(shifted):
        points.add(eventually_zero(u))
    return frozenset(points)


def enumerate_points(s: ClosedSetRepr):
    """Finite list of the denotation for point-enumerable variants, else None."""
    if isinstance(s, FiniteRealSet):
        return sorted(s.points)
    if isinstance(s, FiniteBaireSet):
        return sorted(s.points, key=BairePoint.sort_key)
    if isinstance(s, TreeBody):
        return sorted(tree_body_points(s.tree), key=BairePoint.sort_key)
    if isinstance(s, Empty):
        return []
    return None


def _interval_dist(y: Fraction, a: Fraction, b: Fraction) -> Fraction:
    if y < a:
        return a - y
    if y > b:
        return y - b
    return Fraction(0)


def dist_to_set(y, s: ClosedSetRepr) -> Fraction:
    """Exact infimum distance; 1 for the empty set by convention."""
    if isinstance(s, Empty):
        return Fraction(1)
    if isinstance(s, FiniteRealSet):
        return min(abs(y - p) for p in s.points)
    if isinstance(s, (ClosedIntervalUnion, OpenIntervalUnion)):
        # inf distance to an interval equals distance to its closure
        return min(_interval_dist(y, a, b) for a, b in s.intervals)
    if isinstance(s, FiniteBaireSet):
        return min(baire_dist(y, p) for p in s.points)
    if isinstance(s, TreeBody):
        return min(baire_dist(y, p) for p in tree_body_points(s.tree))
    raise TypeError("unknown set representation: %r" % (s,))


def set_contains(y, s: ClosedSetRepr) -> bool:
    """Exact membership in the denotation."""
    if isinstance(s, Empty):
        return False
    if isinstance(s, OpenIntervalUnion):
        return any(a < y < b for a, b in s.intervals)
    if isinstance(s, ClosedIntervalUnion):
        return any(a <= y <= b for a, b in s.intervals)
    points = enumerate_points(s)
    return y in points


def closure(s: ClosedSetRepr) -> ClosedSetRepr:
    """Topological closure; open interval unions close, the rest are closed."""
    if isinstance(s, OpenIntervalUnion):
        return ClosedIntervalUnion(s.intervals)
    return s


def _grid_points(a: Fraction, b: Fraction, eps: Fraction) -> list[Fraction]:
    step = eps / 2
    out = [a]
    k = 1
    while a + k * step < b:
        out.append(a + k * step)
        k += 1
    if b != a:
        out.append(b)
    return out


def eps_net(s: ClosedSetRepr, eps: Fraction) -> list:
    """Finite subset of the denotation with every point within eps of it.

    Finite variants are their own nets (covering radius 0).  Interval
    unions get an eps/2-spaced grid, so the covering property holds with a
    strict margin.  Empty yields the empty list; callers fall back on the
    distance-1 convention.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    if isinstance(s, Empty):
        return []
    if isinstance(s, ClosedIntervalUnion):
        out: list[Fraction] = []
        for a, b in s.intervals:
            out.extend(_grid_points(a, b, eps))
        return sorted(set(out))
    if isinstance(s, OpenIntervalUnion):
        out = []
        for a, b in s.intervals:
            step = eps / 2
            if b - a <= step:
                out.append((a + b) / 2)
            else:
                k = 1
                while a + k * step < b:
                    out.append(a + k * step)
                    k += 1
        return sorted(set(out))
    return enumerate_points(s)


def net_with_radius(s: ClosedSetRepr, eps: Fraction) -> tuple[list, Fraction]:
    """eps_net plus its exact covering radius (0 for enumerated variants)."""
    net = eps_net(s, eps)
    if isinstance(s, (ClosedIntervalUnion, OpenIntervalUnion)):
        return net, eps
    return net, Fraction(0)


def meets_open_ball(s: ClosedSetRepr, center, radius: Fraction) -> bool:
    """Does the denotation meet the open ball?  Exact: dist < radius."""
    if radius <= 0:
        raise ValueError("radius must be positive")
    if isinstance(s, Empty):
        return False
    return dist_to_set(center, s) < radius


def clip_to_interval(s: ClosedSetRepr, lo: Fraction, hi: Fraction) -> ClosedSetRepr:
    """Representation of the intersection with [lo, hi], for real variants.

    For open interval unions the closure of the intersection is returned;
    its point-to-set distances and emptiness agree exactly with the true
    intersection, which is all the truncated criteria consume.
    """
    if isinstance(s, Empty):
        return Empty()
    if isinstance(s, FiniteRealSet):
        kept = frozenset(p for p in s.points if lo <= p <= hi)
        return FiniteRealSet(kept) if kept else Empty()
    if isinstance(s, ClosedIntervalUnion):
        kept_iv = []
        for a, b in s.intervals:
            a2, b2 = max(a, lo), min(b, hi)
            if a2 <= b2:
                kept_iv.append((a2, b2))
        return ClosedIntervalUnion(tuple(kept_iv)) if kept_iv else Empty()
    if isinstance(s, OpenIntervalUnion):
        kept_iv = []
        for a, b in s.intervals:
            a2, b2 = max(a, lo), min(b, hi)
            if a2 < b2 or (a2 == b2 and a < a2 < b):
                kept_iv.append((a2, b2))
        return ClosedIntervalUnion(tuple(kept_iv)) if kept_iv else Empty()
    raise TypeError("interval clipping is for real-flavored variants: %r" % (s,))


def clips_properly(s: ClosedSetRepr, lo: Fraction, hi: Fraction) -> bool:
    """Did intersecting with [lo, hi] lose part of the denotation?"""
    if isinstance(s, Empty):
        return False
    if isinstance(s, FiniteRealSet):
        return any(not lo <= p <= hi for p in s.points)
    if isinstance(s, (ClosedIntervalUnion, OpenIntervalUnion)):
        return any(a < lo or b > hi for a, b in s.intervals)
    raise TypeError("interval clipping is for real-flavored variants: %r" % (s,))


def set_separation(s1: ClosedSetRepr, s2: ClosedSetRepr) -> Fraction | None:
    """Exact infimum distance between two nonempty denotations.

    None when either side is Empty (callers treat an empty value as an
    automatic refuter through the distance-1 convention).
    """
    if isinstance(s1, Empty) or isinstance(s2, Empty):
        return None
    p1, p2 = enumerate_points(s1), enumerate_points(s2)
    if p1 is not None:
        return min(dist_to_set(p, s2) for p in p1)
    if p2 is not None:
        return min(dist_to_set(p, s1) for p in p2)
    best = None
    for a1, b1 in s1.intervals:
        for a2, b2 in s2.intervals:
            gap = max(Fraction(0), a2 - b1, a1 - b2)
            best = gap if best is None else min(best, gap)
    return best


# --- JSON wire form ---------------------------------------------------------


def set_to_json(s: ClosedSetRepr) -> dict:
    from .rationals import format_rational
    from .spaces import format_baire_point
    from .trees import format_tree_literal

    if isinstance(s, FiniteRealSet):
        return {"kind": s.kind, "points": [format_rational(p) for p in sorted(s.points)]}
    if isinstance(s, (ClosedIntervalUnion, OpenIntervalUnion)):
        return {"kind": s.kind,
                "intervals": [[format_rational(a), format_rational(b)] for a, b in s.intervals]}
    if isinstance(s, FiniteBaireSet):
        return {"kind": s.kind,
                "points": [format_baire_point(p) for p in sorted(s.points, key=BairePoint.sort_key)]}
    if isinstance(s, TreeBody):
        return {"kind": s.kind, "tree": format_tree_literal(s.tree)}
    if isinstance(s, Empty):
        return {"kind": s.kind}
    raise TypeError("unknown set representation: %r" % (s,))


def set_from_json(obj: dict) -> ClosedSetRepr:
    from .rationals import parse_rational
    from .spaces import parse_baire_point
    from .trees import parse_tree_literal

    kind = obj.get("kind")
    if kind == "finite_real":
        return FiniteRealSet(frozenset(parse_rational(p) for p in obj["points"]))
    if kind == "closed_intervals":
        return ClosedIntervalUnion(tuple((parse_rational(a), parse_rational(b)) for a, b in obj["intervals"]))
    if kind == "open_intervals":
        return OpenIntervalUnion(tuple((parse_rational(a), parse_rational(b)) for a, b in obj["intervals"]))
    if kind == "finite_baire":
        return FiniteBaireSet(frozenset(parse_baire_point(p) for p in obj["points"]))
    if kind == "tree_body":
        return TreeBody(parse_tree_literal(obj["tree"]))
    if kind == "empty":
        return Empty()
    raise ValueError("unknown set kind: %r" % (kind,))
