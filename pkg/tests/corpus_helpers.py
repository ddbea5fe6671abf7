"""Deterministic corpora shared by the gallery and acceptance tests."""

import random

from baire_lab.spaces import eventually_zero, grid_point, parse_baire_point
from baire_lab.trees import make_tree

GRID_ROWS = {
    "zero": ((), (0,)),
    "one": ((), (1,)),
    "single": ((1,), (0,)),
    "late_single": ((0, 0, 0, 1), (0,)),
    "period01": ((), (0, 1)),
    "period100": ((), (1, 0, 0)),
    "pre_period": ((1, 1, 0), (0, 1)),
    "finite_burst": ((1, 0, 1, 1), (0,)),
}


def grid_corpus(size=56):
    """All-zero, all-one, single-1 rows, periodic rows, mixed defaults."""
    names = sorted(GRID_ROWS)
    corpus = [grid_point(), grid_point(default=((), (1,)))]
    rng = random.Random(2024)
    while len(corpus) < size:
        explicit = {}
        for m in rng.sample(range(9), rng.randrange(0, 4)):
            explicit[m] = GRID_ROWS[rng.choice(names)]
        default = GRID_ROWS[rng.choice(["zero", "single", "finite_burst", "one", "period01"])]
        corpus.append(grid_point(explicit, default))
    return corpus


DEPTH3_UNIVERSE = (
    [(a,) for a in range(3)]
    + [(a, b) for a in range(3) for b in range(3)]
    + [(a, b, c) for a in range(3) for b in range(3) for c in range(3)]
)


def depth3_tree_sample(count=2000, seed=40423):
    """Stratified seeded sample of depth-3 trees over the 3-ary universe."""
    rng = random.Random(seed)
    seen = set()
    out = []
    while len(out) < count:
        k = rng.randrange(1, 9)
        seeds = rng.sample(DEPTH3_UNIVERSE, k)
        tree = make_tree(seeds)
        if tree.finite_part not in seen:
            seen.add(tree.finite_part)
            out.append(tree)
    return out


def branch_bearing_trees():
    return [
        make_tree(branches=[eventually_zero(())]),
        make_tree(branches=[parse_baire_point(";1")]),
        make_tree(branches=[parse_baire_point("1;0")]),
        make_tree(branches=[parse_baire_point("0,1;0")]),
        make_tree(branches=[parse_baire_point(";0,1")]),
        make_tree([(2,)], branches=[eventually_zero(())]),
        make_tree([(1, 1)], branches=[parse_baire_point(";1")]),
        make_tree(branches=[eventually_zero(()), parse_baire_point("1;0")]),
        make_tree(branches=[parse_baire_point(";2")]),
        make_tree([(0, 2), (3,)], branches=[parse_baire_point("0;1")]),
    ]
