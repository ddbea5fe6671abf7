"""Trees on the naturals with fully decidable combinatorics.

A tree is a finite prefix-closed node set together with finitely many
designated infinite branches, each eventually periodic.  Membership,
terminal nodes, bodies, ill-foundedness, and the metric induced by
characteristic functions over a fixed enumeration of all finite sequences
are all exactly decidable for this representation.

The node enumeration is graded: nodes are ordered by
(length + entry sum, length, lexicographic).  Each grade is finite, the
rank of a node is computable in closed form, and rank(b|j) is strictly
increasing along any branch b, which is what makes the metric and the
ball-constraint extraction feasible even for astronomically small radii.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .rationals import floor_reciprocal
from .spaces import BairePoint, first_disagreement, parse_baire_point, format_baire_point

Node = tuple[int, ...]

EMPTY_NODE: Node = ()


def is_prefix(u: Node, v: Node) -> bool:
    """u is an initial segment of v."""
    return len(u) <= len(v) and all(u[i] == v[i] for i in range(len(u)))


def prefixes(u: Node) -> list[Node]:
    return [u[:i] for i in range(len(u) + 1)]


def prefix_closure(nodes: Iterable[Node]) -> frozenset[Node]:
    out: set[Node] = {EMPTY_NODE}
    for u in nodes:
        v = tuple(u)
        while v not in out:  # prefixes of a present node are already present
            out.add(v)
            v = v[:-1]
    return frozenset(out)


# ---------------------------------------------------------------------------
# the fixed enumeration of all finite sequences
# ---------------------------------------------------------------------------


def node_weight(u: Node) -> int:
    return len(u) + sum(u)


def _lex_rank(u: Node, total: int) -> int:
    """Rank of u among length-len(u) sequences of naturals summing to total."""
    rank = 0
    remaining = total
    length = len(u)
    for i, value in enumerate(u):
        parts_left = length - i - 1
        for c in range(value):
            if parts_left == 0:
                rank += 1 if remaining - c == 0 else 0
            else:
                rank += math.comb(remaining - c + parts_left - 1, parts_left - 1)
        remaining -= value
    return rank


@lru_cache(maxsize=1 << 16)
def node_rank(u: Node) -> int:
    """Index of u in the graded enumeration; rank(()) = 0."""
    w = node_weight(u)
    if w == 0:
        return 0
    rank = 2 ** (w - 1)  # all nodes of smaller weight, incl. the empty node
    for length in range(1, len(u)):
        rank += math.comb(w - 1, length - 1)
    rank += _lex_rank(u, w - len(u))
    return rank


def node_unrank(k: int) -> Node:
    if k == 0:
        return EMPTY_NODE
    w = k.bit_length()  # 2^(w-1) <= k < 2^w
    rem = k - 2 ** (w - 1)
    length = 1
    while rem >= math.comb(w - 1, length - 1):
        rem -= math.comb(w - 1, length - 1)
        length += 1
    out: list[int] = []
    total = w - length
    for i in range(length):
        parts_left = length - i - 1
        c = 0
        while True:
            if parts_left == 0:
                block = 1 if total - c == 0 else 0
            else:
                block = math.comb(total - c + parts_left - 1, parts_left - 1)
            if rem < block:
                break
            rem -= block
            c += 1
        out.append(c)
        total -= c
    return tuple(out)


def max_entry_below_rank(k: int) -> int:
    """Strict upper bound for entries of nodes with rank < k.

    A node containing entry e has weight >= e + 1, hence rank >= 2^e, so
    entries of nodes below rank k are < k.bit_length().
    """
    return k.bit_length()


# ---------------------------------------------------------------------------
# trees
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Tree:
    """Prefix-closed node set, canonical form.

    `finite_part` is the prefix closure of the off-branch nodes (always
    containing the empty node); membership adds every prefix of every
    designated branch.  Two trees denote the same node set exactly when
    their canonical fields are equal: the designated branches are exactly
    the infinite branches of the node set, since past the finite part every
    deep prefix must follow one of the finitely many branches.
    """

    finite_part: frozenset[Node]
    branches: frozenset[BairePoint]

    def __post_init__(self) -> None:
        fp = frozenset(self.finite_part)
        for u in fp:
            if any(e < 0 for e in u):
                raise ValueError("node entries must be naturals")
        if EMPTY_NODE not in fp or any(u[:-1] not in fp for u in fp if u):
            raise ValueError("finite part must be closed under initial segments")
        off = {u for u in fp if not self._on_some_branch(u, self.branches)}
        object.__setattr__(self, "finite_part", prefix_closure(off))

    @staticmethod
    def _on_some_branch(u: Node, branches: frozenset[BairePoint]) -> bool:
        return any(branch.starts_with(u) for branch in branches)

    def contains(self, u: Node) -> bool:
        return u in self.finite_part or self._on_some_branch(u, self.branches)

    def off_branch_nodes(self) -> frozenset[Node]:
        return frozenset(u for u in self.finite_part if not self._on_some_branch(u, self.branches))

    def max_finite_length(self) -> int:
        return max((len(u) for u in self.finite_part), default=0)

    def sort_key(self) -> tuple:
        return (
            tuple(sorted(self.finite_part)),
            tuple(sorted(b.sort_key() for b in self.branches)),
        )


def make_tree(nodes: Iterable[Node] = (), branches: Iterable[BairePoint] = ()) -> Tree:
    return Tree(prefix_closure(tuple(tuple(u) for u in nodes)), frozenset(branches))


def generated_by(seed: Iterable[Node]) -> Tree:
    """The least prefix-closed node set containing `seed`."""
    seed = tuple(tuple(u) for u in seed)
    if not seed:
        raise ValueError("generating set must be nonempty")
    return Tree(prefix_closure(seed), frozenset())


def tree_shift(t: Tree) -> Tree:
    """Entrywise +1 on every node and branch; all shifted entries >= 1."""
    return Tree(
        frozenset(tuple(e + 1 for e in u) for u in t.finite_part),
        frozenset(b.shift_entries(1) for b in t.branches),
    )


def terminals(t: Tree) -> frozenset[Node]:
    """Members with no proper extension in the tree.

    Branch prefixes always extend along their branch, and in a
    prefix-closed set any proper extension implies an immediate child, so
    terminals are exactly the off-branch nodes that parent nothing.
    """
    parents = {u[:-1] for u in t.finite_part if u}
    out = set()
    for u in t.finite_part:
        if u in parents:
            continue
        if Tree._on_some_branch(u, t.branches):
            continue
        out.add(u)
    return frozenset(out)


def is_ill_founded(t: Tree) -> bool:
    """The body of this representation is exactly the designated branches."""
    return bool(t.branches)


def body_prefixes(t: Tree, depth: int) -> frozenset[Node]:
    return frozenset(b.head(depth) for b in t.branches)


# ---------------------------------------------------------------------------
# the tree metric
# ---------------------------------------------------------------------------


def _branch_cover_bound(beta: BairePoint, t: Tree) -> int:
    """Depth past which no prefix of `beta` can be a member of `t`."""
    bound = t.max_finite_length()
    for other in t.branches:
        d = first_disagreement(beta, other)
        if d is not None:
            bound = max(bound, d)
    return bound + 1


def tree_dist(a: Tree, b: Tree) -> Fraction:
    """1/(least differing node rank + 1); 0 exactly on equal node sets.

    Differing nodes are located among: finite-part nodes of either tree,
    and per uncovered branch, the least prefix depth not a member of the
    other tree (memberships of deeper prefixes only stay different, and
    rank increases with depth, so the least rank per branch is there).
    """
    if a == b:
        return Fraction(0)
    candidates: list[int] = []
    for u in a.finite_part | b.finite_part:
        if a.contains(u) != b.contains(u):
            candidates.append(node_rank(u))
    for src, dst in ((a, b), (b, a)):
        for beta in src.branches:
            if beta in dst.branches:
                continue
            for j in range(_branch_cover_bound(beta, dst) + 1):
                u = beta.head(j)
                if not dst.contains(u):
                    candidates.append(node_rank(u))
                    break
    if not candidates:
        raise AssertionError("unequal trees must differ at some node")
    return Fraction(1, min(candidates) + 1)


def constrained_members(t: Tree, rank_bound: int) -> frozenset[Node]:
    """Members of `t` with rank below `rank_bound`.

    rank(b|j) is strictly increasing in j (weight strictly grows, and the
    enumeration is graded by weight), so branch prefixes are collected by a
    short scan even when rank_bound is astronomically large.
    """
    out = {u for u in t.finite_part if node_rank(u) < rank_bound}
    for beta in t.branches:
        j = 0
        while node_rank(beta.head(j)) < rank_bound:
            out.add(beta.head(j))
            j += 1
    return frozenset(out)


class TreeSpace:
    """Trees as points, compared through their characteristic functions."""

    name = "tree_space"

    def contains(self, x) -> bool:
        return isinstance(x, Tree)

    def dist(self, x: Tree, y: Tree) -> Fraction:
        return tree_dist(x, y)

    def parse_point(self, text: str) -> Tree:
        return parse_tree_literal(text)

    def format_point(self, x: Tree) -> str:
        return format_tree_literal(x)

    def __eq__(self, other) -> bool:
        return type(other) is type(self)

    def __hash__(self) -> int:
        return hash(self.name)


TREE_SPACE = TreeSpace()


def ball_rank_bound(radius: Fraction) -> int:
    """Open tree-metric ball of `radius` constrains ranks below this."""
    return floor_reciprocal(radius)


# ---------------------------------------------------------------------------
# literals
# ---------------------------------------------------------------------------

_NODE_RE = re.compile(r"\(([^()]*)\)")


def format_node(u: Node) -> str:
    if u == EMPTY_NODE:
        return "()"
    return "(%s)" % ",".join(str(e) for e in u)


def parse_node(text: str) -> Node:
    text = text.strip()
    if text in ("()", "ε", "e"):
        return EMPTY_NODE
    m = _NODE_RE.fullmatch(text)
    if m is None:
        raise ValueError("malformed node literal: %r" % text)
    body = m.group(1).strip()
    if not body:
        return EMPTY_NODE
    return tuple(int(p) for p in body.split(","))


def format_tree_literal(t: Tree) -> str:
    nodes = ",".join(format_node(u) for u in sorted(t.finite_part))
    branches = ",".join('"%s"' % format_baire_point(b) for b in sorted(t.branches, key=BairePoint.sort_key))
    if branches:
        return "tree{nodes:[%s],branches:[%s]}" % (nodes, branches)
    return "tree{nodes:[%s]}" % nodes


def parse_tree_literal(text: str) -> Tree:
    """Parse `tree{ nodes: [(…),(…)], branches: ["prefix;period", …] }`."""
    stripped = re.sub(r"\s+", "", text)
    m = re.fullmatch(r"tree\{(.*)\}", stripped)
    if m is None:
        raise ValueError("malformed tree literal: %r" % text)
    body = m.group(1)
    nodes: list[Node] = []
    branches: list[BairePoint] = []
    nodes_m = re.search(r"nodes:\[((?:\([^()]*\),?)*)\]", body)
    if nodes_m:
        nodes = [parse_node("(%s)" % g) for g in _NODE_RE.findall(nodes_m.group(1))]
    branches_m = re.search(r'branches:\[((?:"[^"]*",?)*)\]', body)
    if branches_m:
        branches = [parse_baire_point(t) for t in re.findall(r'"([^"]*)"', branches_m.group(1))]
    if nodes_m is None and branches_m is None:
        raise ValueError("tree literal needs nodes and/or branches: %r" % text)
    return make_tree(nodes, branches)
