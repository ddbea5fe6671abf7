"""Symbolic pointclass inference over a small set-expression language.

Expressions are built from the atoms `open closed analytic coanalytic
borel` with combinators `compl Uc Ic union inter preimg proj` (countable
union/intersection take one operand standing for a uniform family).
`classify` computes the least class derivable from the standard closure
rules and returns it with a machine-readable derivation trace — one rule
instantiation per node.  The result is always a guaranteed upper bound;
the engine knows nothing about hardness.

Classes are Sigma/Pi/Delta at finite levels of the additive-multiplicative
hierarchy (side 0) and of the projective hierarchy (side 1), ordered by
the inclusion lattice: Delta below Sigma and Pi at the same index, all
three below Delta at the next index, and everything on side 0 below
Delta1(1) (every set built from countable operations on open sets is
bi-analytic).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

# ---------------------------------------------------------------------------
# pointclasses and their order
# ---------------------------------------------------------------------------

SIGMA, PI, DELTA = "Sigma", "Pi", "Delta"


@dataclass(frozen=True)
class Pointclass:
    kind: str   # Sigma | Pi | Delta
    side: int   # 0 = Borel-side, 1 = projective
    index: int  # >= 1

    def __post_init__(self) -> None:
        if self.kind not in (SIGMA, PI, DELTA):
            raise ValueError("kind must be Sigma, Pi or Delta")
        if self.side not in (0, 1) or self.index < 1:
            raise ValueError("side in {0,1} and index >= 1 required")

    def __str__(self) -> str:
        return "%s%d(%d)" % (self.kind, self.side, self.index)


def parse_pointclass(text: str) -> Pointclass:
    import re

    m = re.fullmatch(r"(Sigma|Pi|Delta)([01])\((\d+)\)", text.strip())
    if m is None:
        raise ValueError("malformed pointclass: %r" % text)
    return Pointclass(m.group(1), int(m.group(2)), int(m.group(3)))


def sigma0(n: int) -> Pointclass:
    return Pointclass(SIGMA, 0, n)


def pi0(n: int) -> Pointclass:
    return Pointclass(PI, 0, n)


def delta0(n: int) -> Pointclass:
    return Pointclass(DELTA, 0, n)


def sigma1(n: int) -> Pointclass:
    return Pointclass(SIGMA, 1, n)


def pi1(n: int) -> Pointclass:
    return Pointclass(PI, 1, n)


def delta1(n: int) -> Pointclass:
    return Pointclass(DELTA, 1, n)


def leq(a: Pointclass, b: Pointclass) -> bool:
    """Reflexive-transitive closure of the inclusion lattice.

    Within one side: strictly smaller index always fits (through the Delta
    of the next level); at equal index, Delta fits under Sigma and Pi.
    Everything on side 0 fits under every projective class; nothing
    projective ever fits back into side 0.
    """
    if a.side == b.side:
        if a.index < b.index:
            return True
        if a.index > b.index:
            return False
        return a.kind == b.kind or a.kind == DELTA
    return a.side == 0


def join(a: Pointclass, b: Pointclass) -> Pointclass:
    """Least class of the lattice containing both."""
    if leq(a, b):
        return b
    if leq(b, a):
        return a
    # incomparable: same side and index with {Sigma, Pi} mixed
    return Pointclass(DELTA, a.side, a.index + 1)


def dual(pc: Pointclass) -> Pointclass:
    if pc.kind == DELTA:
        return pc
    return Pointclass(PI if pc.kind == SIGMA else SIGMA, pc.side, pc.index)


# ---------------------------------------------------------------------------
# expressions
# ---------------------------------------------------------------------------

ATOMS = ("open", "closed", "analytic", "coanalytic", "borel")


@dataclass(frozen=True)
class Atom:
    name: str

    def __post_init__(self) -> None:
        if self.name not in ATOMS:
            raise ValueError("unknown atom %r" % self.name)

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Compl:
    arg: "SetExpr"

    def __str__(self) -> str:
        return "compl(%s)" % self.arg


@dataclass(frozen=True)
class UnionCtbl:
    arg: "SetExpr"

    def __str__(self) -> str:
        return "Uc(%s)" % self.arg


@dataclass(frozen=True)
class InterCtbl:
    arg: "SetExpr"

    def __str__(self) -> str:
        return "Ic(%s)" % self.arg


@dataclass(frozen=True)
class Union:
    left: "SetExpr"
    right: "SetExpr"

    def __str__(self) -> str:
        return "union(%s,%s)" % (self.left, self.right)


@dataclass(frozen=True)
class Inter:
    left: "SetExpr"
    right: "SetExpr"

    def __str__(self) -> str:
        return "inter(%s,%s)" % (self.left, self.right)


@dataclass(frozen=True)
class Preimg:
    arg: "SetExpr"

    def __str__(self) -> str:
        return "preimg(%s)" % self.arg


@dataclass(frozen=True)
class Proj:
    arg: "SetExpr"

    def __str__(self) -> str:
        return "proj(%s)" % self.arg


SetExpr = Atom | Compl | UnionCtbl | InterCtbl | Union | Inter | Preimg | Proj


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


class ParseError(ValueError):
    def __init__(self, message: str, offset: int, expected: tuple[str, ...] = ()):
        super().__init__("%s at offset %d%s" % (
            message, offset,
            "; expected one of: %s" % ", ".join(expected) if expected else "",
        ))
        self.offset = offset
        self.expected = expected


_COMBINATORS = {
    "compl": (Compl, 1),
    "Uc": (UnionCtbl, 1),
    "Ic": (InterCtbl, 1),
    "union": (Union, 2),
    "inter": (Inter, 2),
    "preimg": (Preimg, 1),
    "proj": (Proj, 1),
}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def expect(self, token: str) -> None:
        self.skip_ws()
        if not self.text.startswith(token, self.pos):
            raise ParseError("syntax error", self.pos, (token,))
        self.pos += len(token)

    def word(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isalpha():
            self.pos += 1
        if start == self.pos:
            raise ParseError("syntax error", start, ATOMS + tuple(_COMBINATORS))
        return self.text[start:self.pos]

    def expr(self) -> SetExpr:
        start = self.pos
        name = self.word()
        if name in ATOMS:
            return Atom(name)
        if name in _COMBINATORS:
            ctor, arity = _COMBINATORS[name]
            self.expect("(")
            first = self.expr()
            if arity == 1:
                self.expect(")")
                return ctor(first)
            self.expect(",")
            second = self.expr()
            self.expect(")")
            return ctor(first, second)
        raise ParseError("unknown name %r" % name, start, ATOMS + tuple(_COMBINATORS))

    def parse(self) -> SetExpr:
        out = self.expr()
        self.skip_ws()
        if self.pos != len(self.text):
            raise ParseError("trailing input", self.pos)
        return out


def parse_expr(text: str) -> SetExpr:
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------

_ATOM_CLASS = {
    "open": sigma0(1),
    "closed": pi0(1),
    "analytic": sigma1(1),
    "coanalytic": pi1(1),
    "borel": delta1(1),
}


@dataclass(frozen=True)
class TraceStep:
    expr: str
    rule: str
    inputs: tuple[str, ...]
    result: str


def _ctbl_union_class(g: Pointclass) -> tuple[Pointclass, str]:
    if g.side == 1:
        return g, "countable-union-projective-stable"
    if g.kind == SIGMA:
        return g, "countable-union-sigma-stable"
    if g.kind == DELTA:
        return Pointclass(SIGMA, 0, g.index), "countable-union-within-sigma"
    return Pointclass(SIGMA, 0, g.index + 1), "countable-union-pi-step"


def _ctbl_inter_class(g: Pointclass) -> tuple[Pointclass, str]:
    if g.side == 1:
        return g, "countable-intersection-projective-stable"
    if g.kind == PI:
        return g, "countable-intersection-pi-stable"
    if g.kind == DELTA:
        return Pointclass(PI, 0, g.index), "countable-intersection-within-pi"
    return Pointclass(PI, 0, g.index + 1), "countable-intersection-sigma-step"


def _proj_class(g: Pointclass) -> tuple[Pointclass, str]:
    if g.side == 0 or (g.side == 1 and g.kind == DELTA and g.index == 1):
        return sigma1(1), "projection-of-borel-is-analytic"
    if g.kind == SIGMA:
        return g, "projection-sigma1-stable"
    if g.kind == PI:
        return Pointclass(SIGMA, 1, g.index + 1), "projection-pi1-step"
    return Pointclass(SIGMA, 1, g.index), "projection-within-sigma1"


def classify(e: SetExpr, trace: list[TraceStep] | None = None) -> Pointclass:
    """Least derivable upper bound with an auditable rule trace."""
    rec = trace.append if trace is not None else (lambda step: None)

    def go(node: SetExpr) -> Pointclass:
        if isinstance(node, Atom):
            out = _ATOM_CLASS[node.name]
            rec(TraceStep(str(node), "atom-%s" % node.name, (), str(out)))
            return out
        if isinstance(node, Compl):
            g = go(node.arg)
            out = dual(g)
            rec(TraceStep(str(node), "complement-swap", (str(g),), str(out)))
            return out
        if isinstance(node, UnionCtbl):
            g = go(node.arg)
            out, rule = _ctbl_union_class(g)
            rec(TraceStep(str(node), rule, (str(g),), str(out)))
            return out
        if isinstance(node, InterCtbl):
            g = go(node.arg)
            out, rule = _ctbl_inter_class(g)
            rec(TraceStep(str(node), rule, (str(g),), str(out)))
            return out
        if isinstance(node, (Union, Inter)):
            gl, gr = go(node.left), go(node.right)
            out = join(gl, gr)
            rule = "finite-union-join" if isinstance(node, Union) else "finite-intersection-join"
            rec(TraceStep(str(node), rule, (str(gl), str(gr)), str(out)))
            return out
        if isinstance(node, Preimg):
            g = go(node.arg)
            rec(TraceStep(str(node), "preimage-invariant", (str(g),), str(g)))
            return g
        if isinstance(node, Proj):
            g = go(node.arg)
            out, rule = _proj_class(g)
            rec(TraceStep(str(node), rule, (str(g),), str(out)))
            return out
        raise TypeError("not a set expression: %r" % (node,))

    return go(e)


def dual_expr(e: SetExpr) -> SetExpr:
    """An expression denoting the complement, by De Morgan push-through.

    Projections have no dual combinator in the grammar, so a complement
    node is left in place there; everywhere else the complement is pushed
    to the atoms.
    """
    if isinstance(e, Atom):
        flipped = {"open": "closed", "closed": "open",
                   "analytic": "coanalytic", "coanalytic": "analytic",
                   "borel": "borel"}
        return Atom(flipped[e.name])
    if isinstance(e, Compl):
        return e.arg
    if isinstance(e, UnionCtbl):
        return InterCtbl(dual_expr(e.arg))
    if isinstance(e, InterCtbl):
        return UnionCtbl(dual_expr(e.arg))
    if isinstance(e, Union):
        return Inter(dual_expr(e.left), dual_expr(e.right))
    if isinstance(e, Inter):
        return Union(dual_expr(e.left), dual_expr(e.right))
    if isinstance(e, Preimg):
        return Preimg(dual_expr(e.arg))
    if isinstance(e, Proj):
        return Compl(e)
    raise TypeError("not a set expression: %r" % (e,))


# ---------------------------------------------------------------------------
# independent trace replay
# ---------------------------------------------------------------------------

_RULE_TABLE = {
    "complement-swap": lambda ins: dual(ins[0]),
    "countable-union-sigma-stable": lambda ins: ins[0],
    "countable-union-projective-stable": lambda ins: ins[0],
    "countable-union-within-sigma": lambda ins: Pointclass(SIGMA, 0, ins[0].index),
    "countable-union-pi-step": lambda ins: Pointclass(SIGMA, 0, ins[0].index + 1),
    "countable-intersection-pi-stable": lambda ins: ins[0],
    "countable-intersection-projective-stable": lambda ins: ins[0],
    "countable-intersection-within-pi": lambda ins: Pointclass(PI, 0, ins[0].index),
    "countable-intersection-sigma-step": lambda ins: Pointclass(PI, 0, ins[0].index + 1),
    "finite-union-join": lambda ins: join(ins[0], ins[1]),
    "finite-intersection-join": lambda ins: join(ins[0], ins[1]),
    "preimage-invariant": lambda ins: ins[0],
    "projection-of-borel-is-analytic": lambda ins: sigma1(1),
    "projection-sigma1-stable": lambda ins: ins[0],
    "projection-pi1-step": lambda ins: Pointclass(SIGMA, 1, ins[0].index + 1),
    "projection-within-sigma1": lambda ins: Pointclass(SIGMA, 1, ins[0].index),
}


def replay_trace(trace: list[TraceStep]) -> bool:
    """Check each step instantiates its named rule correctly."""
    for step in trace:
        if step.rule.startswith("atom-"):
            name = step.rule[len("atom-"):]
            if name not in _ATOM_CLASS or str(_ATOM_CLASS[name]) != step.result:
                return False
            continue
        fn = _RULE_TABLE.get(step.rule)
        if fn is None:
            return False
        ins = tuple(parse_pointclass(t) for t in step.inputs)
        try:
            if str(fn(ins)) != step.result:
                return False
        except (IndexError, ValueError):
            return False
    return True


def iter_subexpressions(e: SetExpr) -> Iterator[SetExpr]:
    yield e
    if isinstance(e, (Compl, UnionCtbl, InterCtbl, Preimg, Proj)):
        yield from iter_subexpressions(e.arg)
    elif isinstance(e, (Union, Inter)):
        yield from iter_subexpressions(e.left)
        yield from iter_subexpressions(e.right)
