"""Witness-based continuity checking over finite truncations.

The quantifiers of the continuity notions range over infinite sets; the
checkers evaluate them over finite schedules (eps and delta values), a
probe generator supplying finitely many ball members, finite nets of the
value sets, and bounded dense-sequence indices.  Outcomes are tri-valued:

* Continuous — carries a witness point with an (eps -> delta) table that
  re-validates against the probes.
* Discontinuous — carries, for each point of a net of the value at x, a
  refutation level and per-delta counterexample probes, plus a margin
  making the per-net refutation cover the whole value set (point-to-set
  distance is 1-Lipschitz in the point).
* Inconclusive — some truncation axis was exhausted without a verdict.

Verdicts are correct relative to the probe set and schedules; on finite
spaces probed exhaustively they coincide with brute-force evaluation of
the definitions.  Refutation levels come from the eps schedule so that
search verdicts and the truncated-negation oracle agree exactly.

The criterion evaluators (`eval_star`, `eval_dagger`) refuse to report a
refutation merely because the dense-sequence budget ran out: they demand a
separation certificate — two probes whose value sets are 2/(n+1) apart, or
an empty clipped value — which extends the refutation to every index of
the dense sequence at once.  Budget exhaustion without a certificate is
Inconclusive, which keeps verdicts monotone under budget growth.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Sequence

from .closed_sets import (
    ClosedSetRepr,
    Empty,
    clip_to_interval,
    clips_properly,
    closure,
    dist_to_set,
    eps_net,
    meets_open_ball,
    net_with_radius,
    set_separation,
)
from .spaces import BairePoint, CantorGridPoint
from .trees import Tree

ProbeGen = Callable[[Any, Fraction], Sequence[Any]]


class DomainError(ValueError):
    """A point fell outside the domain of the space or map."""


@dataclass(frozen=True)
class CheckConfig:
    """Finite truncation of the continuity quantifiers."""

    eps_schedule: tuple[Fraction, ...]
    delta_schedule: tuple[Fraction, ...]
    probe_budget: int
    net_resolution: Fraction
    dense_bound: int
    n_bound: int
    m_bound: int

    def __post_init__(self) -> None:
        for schedule in (self.eps_schedule, self.delta_schedule):
            if not schedule or any(v <= 0 for v in schedule):
                raise ValueError("schedules must be nonempty and positive")
            if any(a <= b for a, b in zip(schedule, schedule[1:])):
                raise ValueError("schedules must be strictly descending")
        if self.probe_budget < 1 or self.dense_bound < 0 or self.n_bound < 0 or self.m_bound < 0:
            raise ValueError("budgets must be sensible")
        if self.net_resolution <= 0:
            raise ValueError("net resolution must be positive")


def default_config(**overrides) -> CheckConfig:
    halves = tuple(Fraction(1, 2 ** i) for i in range(9))
    base = dict(
        eps_schedule=halves,
        delta_schedule=halves,
        probe_budget=64,
        net_resolution=Fraction(1, 16),
        dense_bound=256,
        n_bound=8,
        m_bound=8,
    )
    base.update(overrides)
    return CheckConfig(**base)


class MultiMap:
    """Total assignment of value-set representations to domain points."""

    def __init__(self, domain, codomain, rule: Callable[[Any], ClosedSetRepr],
                 name: str = "multimap", default_probes: ProbeGen | None = None):
        self.domain = domain
        self.codomain = codomain
        self.rule = rule
        self.name = name
        self.default_probes = default_probes

    def value(self, x) -> ClosedSetRepr:
        if not self.domain.contains(x):
            raise DomainError("point %r outside the domain of %s" % (x, self.name))
        return self.rule(x)

    def __repr__(self) -> str:
        return "MultiMap(%s)" % self.name


def tabular_multimap(space, values: dict, codomain, name: str = "tabular") -> MultiMap:
    """Explicit finite map over a finite-points domain."""
    table = dict(values)

    def rule(x):
        return table[x]

    mm = MultiMap(space, codomain, rule, name=name)
    mm.default_probes = full_domain_probes(space)
    return mm


def full_domain_probes(space) -> ProbeGen:
    """Probe generator enumerating the whole finite space inside the ball."""

    def gen(center, radius):
        return [p for p in space.points() if space.dist(center, p) < radius]

    return gen


def point_sort_key(p):
    if isinstance(p, Fraction):
        return (0, p)
    if isinstance(p, BairePoint):
        return (1, p.sort_key())
    if isinstance(p, CantorGridPoint):
        return (2, p.sort_key())
    if isinstance(p, str):
        return (3, p)
    if isinstance(p, Tree):
        return (4, p.sort_key())
    raise TypeError("unsortable point: %r" % (p,))


# ---------------------------------------------------------------------------
# verdicts and witnesses
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ContinuityWitness:
    """A value point and the eps -> delta table that certifies it."""

    y: Any
    table: tuple[tuple[Fraction, Fraction], ...]
    net_resolution: Fraction


@dataclass(frozen=True)
class RefutationEntry:
    y: Any
    eps_star: Fraction
    counterexamples: tuple[tuple[Fraction, Any], ...]


@dataclass(frozen=True)
class DiscontinuityWitness:
    """Per-net-point refutations with a net-coverage margin.

    Point-to-set distance is 1-Lipschitz in the point, so refuting a net
    point at level eps_star refutes its whole net cell at eps_star minus
    the covering radius; margin > 0 extends the refutation to all of F(x).
    """

    entries: tuple[RefutationEntry, ...]
    net_resolution: Fraction
    net_radius: Fraction
    margin: Fraction
    notion: str = "plain"  # plain: every net point refuted; strong: one suffices


@dataclass(frozen=True, eq=False)
class Verdict:
    kind: str  # "continuous" | "discontinuous" | "inconclusive"
    witness: ContinuityWitness | DiscontinuityWitness | None = None
    report: Any = None

    @property
    def conclusive(self) -> bool:
        return self.kind != "inconclusive"

    def __repr__(self) -> str:
        return "Verdict(%s)" % self.kind


CONTINUOUS = "continuous"
DISCONTINUOUS = "discontinuous"
INCONCLUSIVE = "inconclusive"


# ---------------------------------------------------------------------------
# probe handling
# ---------------------------------------------------------------------------


def gather_probes(multimap: MultiMap, probes: ProbeGen, x, radius: Fraction, budget: int) -> list:
    """Center plus generator output: deduplicated, validated, budget-capped."""
    out = [x]
    seen = {x}
    for xp in probes(x, radius):
        if xp in seen:
            continue
        if not multimap.domain.contains(xp):
            raise DomainError("probe %r outside the domain" % (xp,))
        if multimap.domain.dist(x, xp) >= radius:
            raise ValueError("probe generator emitted a point outside the open ball")
        out.append(xp)
        seen.add(xp)
        if len(out) >= budget:
            break
    return out


def _probe_cache(multimap, probes, x, cfg: CheckConfig) -> dict:
    return {
        delta: gather_probes(multimap, probes, x, delta, cfg.probe_budget)
        for delta in cfg.delta_schedule
    }


def _net_dist(codomain, y, value: ClosedSetRepr, resolution: Fraction):
    """Least distance from y to the eps-net of a value; None for empty nets."""
    net = eps_net(value, resolution)
    if not net:
        return None
    return min(codomain.dist(y, yp) for yp in net)


# ---------------------------------------------------------------------------
# the two definition checkers
# ---------------------------------------------------------------------------


def _validate_table(multimap, cache, y, cfg: CheckConfig):
    table = []
    for eps in cfg.eps_schedule:
        found = None
        for delta in cfg.delta_schedule:
            ok = True
            for xp in cache[delta]:
                d = _net_dist(multimap.codomain, y, multimap.value(xp), cfg.net_resolution)
                if d is None or d >= eps:
                    ok = False
                    break
            if ok:
                found = delta
                break
        if found is None:
            return None
        table.append((eps, found))
    return tuple(table)


def _refute_entry(multimap, cache, y, cfg: CheckConfig, net_radius: Fraction):
    counterexamples = []
    level = None
    for delta in cfg.delta_schedule:
        worst = None
        worst_x = None
        for xp in cache[delta]:
            d = dist_to_set(y, multimap.value(xp))
            if worst is None or d > worst:
                worst, worst_x = d, xp
        counterexamples.append((delta, worst_x))
        level = worst if level is None else min(level, worst)
    for eps in cfg.eps_schedule:
        if eps <= level and eps - net_radius > 0:
            return RefutationEntry(y, eps, tuple(counterexamples))
    return None


def check_continuity(multimap: MultiMap, x, cfg: CheckConfig, probes: ProbeGen) -> Verdict:
    """Does some value point admit the full eps -> delta table on probes?"""
    value = multimap.value(x)
    net, net_radius = net_with_radius(value, cfg.net_resolution)
    net = sorted(net, key=point_sort_key)
    cache = _probe_cache(multimap, probes, x, cfg)
    for y in net:
        table = _validate_table(multimap, cache, y, cfg)
        if table is not None:
            return Verdict(CONTINUOUS, ContinuityWitness(y, table, cfg.net_resolution))
    entries = []
    for y in net:
        entry = _refute_entry(multimap, cache, y, cfg, net_radius)
        if entry is None:
            return Verdict(INCONCLUSIVE, report={
                "reason": "net point neither validated nor refuted with margin",
                "exhausted": "eps/delta schedules",
            })
        entries.append(entry)
    margin = min(e.eps_star for e in entries) - net_radius
    return Verdict(DISCONTINUOUS, DiscontinuityWitness(tuple(entries), cfg.net_resolution, net_radius, margin))


def check_strong_continuity(multimap: MultiMap, x, cfg: CheckConfig, probes: ProbeGen) -> Verdict:
    """Does every point of the value's net admit a table on probes?"""
    value = multimap.value(x)
    net, net_radius = net_with_radius(value, cfg.net_resolution)
    net = sorted(net, key=point_sort_key)
    cache = _probe_cache(multimap, probes, x, cfg)
    tables = []
    failed = []
    for y in net:
        table = _validate_table(multimap, cache, y, cfg)
        if table is None:
            failed.append(y)
        else:
            tables.append((y, table))
    if not failed:
        y0, table0 = tables[0]
        return Verdict(CONTINUOUS, ContinuityWitness(y0, table0, cfg.net_resolution),
                       report={"validated": len(tables)})
    for y in failed:
        entry = _refute_entry(multimap, cache, y, cfg, net_radius)
        if entry is not None:
            margin = entry.eps_star - net_radius
            witness = DiscontinuityWitness((entry,), cfg.net_resolution, net_radius, margin,
                                           notion="strong")
            return Verdict(DISCONTINUOUS, witness)
    return Verdict(INCONCLUSIVE, report={
        "reason": "some net point neither validated nor refuted with margin",
        "exhausted": "eps/delta schedules",
    })


# ---------------------------------------------------------------------------
# criterion evaluators
# ---------------------------------------------------------------------------


def _threshold(n: int) -> Fraction:
    return Fraction(1, n + 1)


def _sup_over_probes(probe_values, y) -> Fraction:
    return max(dist_to_set(y, v) for v in probe_values)


def _sup_below(probe_values, y, threshold: Fraction) -> bool:
    """sup over probe values of dist < threshold, with early exit."""
    for v in probe_values:
        if dist_to_set(y, v) >= threshold:
            return False
    return True


def _certificate_level(probe_values) -> Fraction | None:
    """Separation evidence at one delta: None when an empty value is
    present (everything is distance 1 from it — full refutation), else
    the largest pairwise separation between value sets.

    Two values sep apart refute every point y at level sep/2: y cannot be
    closer than sep/2 to both, so the probe sup is at least sep/2 no
    matter which dense index produced y.
    """
    values = list(probe_values)
    for v in values:
        if isinstance(v, Empty):
            return None
    best = Fraction(0)
    for i in range(len(values)):
        for j in range(i + 1, len(values)):
            sep = set_separation(values[i], values[j])
            if sep is not None and sep > best:
                best = sep
    return best


def _certified_at(levels, n: int) -> bool:
    """Is the refutation of level n certified at every delta?"""
    need = 2 * _threshold(n)
    return all(level is None or level >= need for level in levels.values())


def _star_scan(values: dict, cfg: CheckConfig, dense):
    """Per-level search for dense indices passing the inf-sup test.

    Returns (passes, failing, certified): the (n, s, delta) passes, the
    first level the search could not satisfy, and the least level whose
    refutation carries a separation certificate at every delta.  A
    certificate is checked before scanning — it implies the scan must
    fail — and once a level fails, larger levels are only probed for
    certificates (thresholds shrink, so their scans fail too).
    """
    levels = {delta: _certificate_level(values[delta]) for delta in cfg.delta_schedule}
    passes = []
    failing = None
    for n in range(cfg.n_bound + 1):
        if _certified_at(levels, n):
            return passes, (failing if failing is not None else n), n
        if failing is not None:
            continue
        hit = None
        threshold = _threshold(n)
        for s in range(cfg.dense_bound + 1):
            ys = dense(s)
            for delta in cfg.delta_schedule:
                if _sup_below(values[delta], ys, threshold):
                    hit = (n, s, delta)
                    break
            if hit:
                break
        if hit is None:
            failing = n
        else:
            passes.append(hit)
    return passes, failing, None


def eval_star(multimap: MultiMap, x, cfg: CheckConfig, probes: ProbeGen,
              dense_fn: Callable[[int], Any] | None = None) -> Verdict:
    """Truncated evaluation of the inf-sup criterion over a dense sequence."""
    dense = dense_fn or multimap.codomain.dense_point
    cache = _probe_cache(multimap, probes, x, cfg)
    values = {delta: [multimap.value(xp) for xp in cache[delta]] for delta in cfg.delta_schedule}
    passes, failing, certified = _star_scan(values, cfg, dense)
    if failing is None:
        return Verdict(CONTINUOUS, report={"criterion": "star", "passes": tuple(passes)})
    if certified is not None:
        return Verdict(DISCONTINUOUS, report={
            "criterion": "star", "refuted_n": certified,
            "certificate": "probe value sets separated by 2/(n+1) at every delta",
        })
    return Verdict(INCONCLUSIVE, report={
        "criterion": "star", "failing_n": failing,
        "reason": "dense bound exhausted without a separation certificate",
    })


def _default_exhaustion(multimap, cfg: CheckConfig):
    """K_m = [-m, m] clipped to the codomain, m = 0 .. m_bound."""
    lo_clip, hi_clip = None, None
    name = getattr(multimap.codomain, "name", "")
    if name == "unit_interval":
        lo_clip, hi_clip = Fraction(0), Fraction(1)
    out = []
    for m in range(cfg.m_bound + 1):
        lo, hi = Fraction(-m), Fraction(m)
        if lo_clip is not None:
            lo, hi = max(lo, lo_clip), min(hi, hi_clip)
        out.append((lo, hi))
    return out


def eval_dagger(multimap: MultiMap, x, cfg: CheckConfig, probes: ProbeGen,
                exhaustion: Sequence[tuple[Fraction, Fraction]] | None = None,
                dense_fn: Callable[[int], Any] | None = None) -> Verdict:
    """The exhaustion-relative criterion: values are clipped to K_m first.

    Empty clipped values contribute distance 1.  A refutation is reported
    only when no proper clipping happened at the last exhaustion stage;
    otherwise a larger stage could still change the outcome and the result
    is Inconclusive.
    """
    dense = dense_fn or multimap.codomain.dense_point
    stages = list(exhaustion) if exhaustion is not None else _default_exhaustion(multimap, cfg)
    cache = _probe_cache(multimap, probes, x, cfg)
    raw = {delta: [multimap.value(xp) for xp in cache[delta]] for delta in cfg.delta_schedule}
    refuted = []
    for stage_index, (lo, hi) in enumerate(stages):
        clipped = {
            delta: [clip_to_interval(v, lo, hi) for v in raw[delta]]
            for delta in cfg.delta_schedule
        }
        passes, failing, certified = _star_scan(clipped, cfg, dense)
        if failing is None:
            return Verdict(CONTINUOUS, report={
                "criterion": "dagger", "stage": stage_index, "window": (lo, hi),
                "passes": tuple(passes),
            })
        refuted.append({"stage": stage_index, "failing_n": failing,
                        "certified": certified is not None})
    if all(r["certified"] for r in refuted):
        lo, hi = stages[-1]
        proper = any(
            clips_properly(v, lo, hi)
            for delta in cfg.delta_schedule
            for v in raw[delta]
        )
        if not proper:
            return Verdict(DISCONTINUOUS, report={"criterion": "dagger", "stages": refuted})
        return Verdict(INCONCLUSIVE, report={
            "criterion": "dagger", "stages": refuted,
            "reason": "exhaustion bound clipped some value; larger stages could differ",
        })
    return Verdict(INCONCLUSIVE, report={
        "criterion": "dagger", "stages": refuted,
        "reason": "refutation lacked a separation certificate at some stage",
    })


def eval_strong_star(multimap: MultiMap, x, cfg: CheckConfig, probes: ProbeGen,
                     dense_fn: Callable[[int], Any] | None = None) -> Verdict:
    """Truncated strong criterion: every dense point near the value at x
    must admit a delta with small probe-sup distance."""
    dense = dense_fn or multimap.codomain.dense_point
    value = multimap.value(x)
    cache = _probe_cache(multimap, probes, x, cfg)
    values = {delta: [multimap.value(xp) for xp in cache[delta]] for delta in cfg.delta_schedule}
    for n in range(cfg.n_bound + 1):
        for s in range(cfg.dense_bound + 1):
            ys = dense(s)
            if dist_to_set(ys, value) > Fraction(1, 3 * (n + 1)):
                continue
            ok = any(
                _sup_over_probes(values[delta], ys) < _threshold(n)
                for delta in cfg.delta_schedule
            )
            if not ok:
                counterexamples = []
                for delta in cfg.delta_schedule:
                    worst = max(cache[delta], key=lambda xp: dist_to_set(ys, multimap.value(xp)))
                    counterexamples.append((delta, worst))
                return Verdict(DISCONTINUOUS, report={
                    "criterion": "strong_star", "failing": (n, s), "y": ys,
                    "counterexamples": tuple(counterexamples),
                })
    return Verdict(CONTINUOUS, report={"criterion": "strong_star"})


def eval_lower_fell(multimap: MultiMap, x, cfg: CheckConfig, probes: ProbeGen,
                    test_balls: Sequence[tuple[Any, Fraction]]) -> Verdict:
    """Continuity of the closure map into the lower Fell sub-basis sets.

    For each test ball met by the closure of the value at x, some delta
    must make every probe's closure meet it too.
    """
    if not test_balls:
        raise ValueError("test_balls must be nonempty")
    value_closure = closure(multimap.value(x))
    cache = _probe_cache(multimap, probes, x, cfg)
    checked = []
    for center, radius in test_balls:
        if not meets_open_ball(value_closure, center, radius):
            continue
        found = None
        for delta in cfg.delta_schedule:
            if all(
                meets_open_ball(closure(multimap.value(xp)), center, radius)
                for xp in cache[delta]
            ):
                found = delta
                break
        if found is None:
            counterexamples = []
            for delta in cfg.delta_schedule:
                bad = next(
                    xp for xp in cache[delta]
                    if not meets_open_ball(closure(multimap.value(xp)), center, radius)
                )
                counterexamples.append((delta, bad))
            return Verdict(DISCONTINUOUS, report={
                "criterion": "lower_fell", "ball": (center, radius),
                "counterexamples": tuple(counterexamples),
            })
        checked.append(((center, radius), found))
    return Verdict(CONTINUOUS, report={"criterion": "lower_fell", "validated": tuple(checked)})


# ---------------------------------------------------------------------------
# witness re-validation
# ---------------------------------------------------------------------------


def verify_witness(multimap: MultiMap, x, witness, probes: ProbeGen) -> bool:
    """Re-validate every clause of a witness, independent of any search."""
    if isinstance(witness, ContinuityWitness):
        return _verify_continuity(multimap, x, witness, probes)
    if isinstance(witness, DiscontinuityWitness):
        return _verify_discontinuity(multimap, x, witness)
    raise TypeError("not a witness: %r" % (witness,))


def _verify_continuity(multimap, x, w: ContinuityWitness, probes) -> bool:
    if not multimap.domain.contains(x):
        return False
    if dist_to_set(w.y, multimap.value(x)) != 0:
        return False
    if not w.table:
        return False
    for eps, delta in w.table:
        if eps <= 0 or delta <= 0:
            return False
        for xp in probes(x, delta):
            if multimap.domain.dist(x, xp) >= delta:
                return False
        for xp in [x, *probes(x, delta)]:
            d = _net_dist(multimap.codomain, w.y, multimap.value(xp), w.net_resolution)
            if d is None or d >= eps:
                return False
    return True


def _verify_discontinuity(multimap, x, w: DiscontinuityWitness) -> bool:
    if not multimap.domain.contains(x):
        return False
    net, radius = net_with_radius(multimap.value(x), w.net_resolution)
    if radius != w.net_radius:
        return False
    if not w.entries:
        return False
    net_keys = {point_sort_key(y) for y in net}
    entry_keys = {point_sort_key(e.y) for e in w.entries}
    if w.notion == "plain":
        if entry_keys != net_keys:
            return False
    elif not entry_keys <= net_keys:
        return False
    if w.margin != min(e.eps_star for e in w.entries) - w.net_radius or w.margin <= 0:
        return False
    for entry in w.entries:
        if entry.eps_star <= 0 or not entry.counterexamples:
            return False
        for delta, xp in entry.counterexamples:
            if delta <= 0 or not multimap.domain.contains(xp):
                return False
            if multimap.domain.dist(x, xp) >= delta:
                return False
            if dist_to_set(entry.y, multimap.value(xp)) < entry.eps_star:
                return False
    return True


def continuity_points(multimap: MultiMap, sample: Sequence, mode: str,
                      cfg: CheckConfig, probes: ProbeGen) -> dict:
    """Pointwise application of the selected checker; aggregation only."""
    if mode not in ("plain", "strong"):
        raise ValueError("mode must be 'plain' or 'strong'")
    checker = check_continuity if mode == "plain" else check_strong_continuity
    return {x: checker(multimap, x, cfg, probes) for x in sample}
