"""State space exploration, concretely and abstractly.

The loop pops states off a frontier, computes rule successors and
stores the fresh ones.  Freshness is either strict isomorphism (every
state kept) or subsumption (a new state is dropped when an existing
state subsumes it, and existing states subsumed by the newcomer are
marked and trimmed from the frontier).  In reachability mode no
transitions are stored and subsumed states are evicted from the store.
"""

from __future__ import annotations

import itertools
import math
import resource
import time
from collections import deque
from dataclasses import dataclass, field

from .graphs import Graph, certificate as graph_certificate, find_isomorphism
from .rules import (ApplyInfeasible, Rule, apply, concrete_apply,
                    concrete_matches, materialise, normalise, prematch)
from .shapes import (Shape, abstract, compare_shapes, shape_certificate,
                     strict_shape_certificate, strictly_isomorphic)


class ExploreError(ValueError):
    pass


@dataclass
class ExploreConfig:
    engine: str = "abstract"       # "abstract" | "concrete"
    strategy: str = "bfs"          # "bfs" | "dfs"
    subsumption: bool = True
    mode: str = "full"             # "full" | "reach"
    max_states: int | None = None
    max_depth: int | None = None
    timeout: float | None = None   # seconds

    def __post_init__(self):
        if self.engine not in ("abstract", "concrete"):
            raise ExploreError(f"unknown engine {self.engine!r}")
        if self.strategy not in ("bfs", "dfs"):
            raise ExploreError(f"unknown strategy {self.strategy!r}")
        if self.mode not in ("full", "reach"):
            raise ExploreError(f"unknown mode {self.mode!r}")


@dataclass
class ExplorationStats:
    grammar: str = ""
    engine: str = "abstract"
    strategy: str = "bfs"
    subsumption: bool = True
    mode: str = "full"
    maximum: int | None = None
    generated: int = 0
    subsumed: int = 0
    discarded: int = 0
    transitions_generated: int = 0
    transitions_relevant: int = 0
    time_ms: int = 0
    peak_mem_bytes: int = 0
    complete: bool = True

    @property
    def relevant(self) -> int:
        return self.generated - self.subsumed


@dataclass
class TransitionSystem:
    """Stored states, marked (subsumed) states and labelled transitions.

    A transition is ``(src id, (rule name, match descriptor), tgt id)``
    where the descriptor is the sorted rule-node -> state-node pairing.
    """

    states: dict = field(default_factory=dict)
    transitions: set = field(default_factory=set)
    start: int = 0
    marked: set = field(default_factory=set)

    def relevant_states(self):
        return sorted(i for i in self.states if i not in self.marked)

    def audit(self, engine):
        """No stored pair may be strictly isomorphic."""
        by_cert = {}
        for i, s in self.states.items():
            by_cert.setdefault(engine.certificate(s), []).append(i)
        for ids in by_cert.values():
            for i, j in itertools.combinations(ids, 2):
                below, above = engine.compare(self.states[i], self.states[j])
                if below and above:
                    raise ExploreError(f"stored states {i} and {j} coincide")


# --- engines --------------------------------------------------------------


class ConcreteEngine:
    """States are plain graphs; collapsing is up to graph isomorphism."""

    name = "concrete"

    def __init__(self, grammar):
        self.grammar = grammar

    def start_state(self) -> Graph:
        return self.grammar.start

    def certificate(self, g: Graph) -> str:
        return graph_certificate(g)

    strict_certificate = certificate

    def compare(self, g: Graph, h: Graph):
        iso = find_isomorphism(g, h) is not None
        return iso, iso

    def successors(self, g: Graph):
        out = []
        for rule in self.grammar.rules:
            for m in concrete_matches(rule, g):
                out.append(((rule.name, m.as_tuple()), concrete_apply(rule, m, g)))
        return out


class AbstractEngine:
    """States are shapes; freshness is strict shape isomorphism or
    shape subsumption."""

    name = "abstract"

    def __init__(self, grammar):
        self.grammar = grammar
        for rule in grammar.rules:
            if rule.has_nac:
                raise ExploreError(
                    f"rule {rule.name!r} carries a negative condition, "
                    "which the abstract engine does not support")

    def start_state(self) -> Shape:
        return abstract(self.grammar.start)

    def certificate(self, s: Shape) -> str:
        return shape_certificate(s)

    def strict_certificate(self, s: Shape) -> str:
        return strict_shape_certificate(s)

    def compare(self, s: Shape, t: Shape):
        below, above = compare_shapes(s, t)
        return below is not None, above is not None

    def successors(self, s: Shape):
        out = []
        for rule in self.grammar.rules:
            for m in prematch(rule, s):
                for mat in materialise(rule, m, s):
                    try:
                        t = apply(rule, mat)
                    except ApplyInfeasible:
                        continue
                    out.append(((rule.name, m.as_tuple()), normalise(t)))
        # Canonical order: least abstract first.  The DFS stack then
        # pops the most abstract successor first, which reaches the
        # subsuming fixpoint states early and prunes harder.
        out.sort(key=lambda p: _abstractness(p[1]))
        return out


def _abstractness(s: Shape) -> int:
    """How many multiplicity entries of the shape are unbounded."""
    entries = list(s.node_mult.values()) + list(s.out_mult.values()) \
        + list(s.in_mult.values())
    return sum(1 for m in entries if math.isinf(m.hi))


def make_engine(grammar, name: str):
    if name == "concrete":
        return ConcreteEngine(grammar)
    if name == "abstract":
        return AbstractEngine(grammar)
    raise ExploreError(f"unknown engine {name!r}")


# --- freshness ------------------------------------------------------------


class _Store:
    """Certificate-bucketed state store with the two freshness policies."""

    def __init__(self, engine, subsumption: bool):
        self.engine = engine
        self.subsumption = subsumption
        # Subsumable shapes must share a bucket; for strict isomorphism
        # the finer multiplicity-aware certificate keeps buckets small.
        self.certify = (engine.certificate if subsumption
                        else engine.strict_certificate)
        self.buckets = {}
        self.newly_marked = []

    def add(self, ts: TransitionSystem, state, next_id):
        """Store ``state`` if fresh; returns ``(fresh, canonical id)``.

        With subsumption on, states of the store subsumed by the
        newcomer are marked; ``self.newly_marked`` carries them to the
        caller for frontier trimming.
        """
        self.newly_marked = []
        cert = self.certify(state)
        bucket = self.buckets.setdefault(cert, [])
        below = []
        for i in bucket:
            new_below_old, old_below_new = self.engine.compare(state, ts.states[i])
            if self.subsumption:
                if new_below_old:
                    return False, i
                if old_below_new:
                    below.append(i)
            elif new_below_old and old_below_new:
                return False, i
        i = next(next_id)
        ts.states[i] = state
        bucket.append(i)
        for j in below:
            ts.marked.add(j)
            bucket.remove(j)
            self.newly_marked.append(j)
        return True, i


def is_fresh_iso(state, store: _Store, ts: TransitionSystem) -> bool:
    """Strict-isomorphism freshness against a certificate bucket."""
    bucket = store.buckets.get(store.engine.certificate(state), ())
    return not any(all(store.engine.compare(state, ts.states[i])) for i in bucket)


def is_fresh_subsumption(state, store: _Store, ts: TransitionSystem) -> bool:
    """Subsumption freshness: false iff some stored state subsumes it."""
    bucket = store.buckets.get(store.engine.certificate(state), ())
    return not any(store.engine.compare(state, ts.states[i])[0] for i in bucket)


# --- the loop -------------------------------------------------------------


def explore(grammar, config: ExploreConfig):
    """Explore ``grammar``'s state space; returns (TransitionSystem, stats)."""
    t0 = time.perf_counter()
    engine = make_engine(grammar, config.engine)
    stats = ExplorationStats(grammar=grammar.name, engine=config.engine,
                             strategy=config.strategy,
                             subsumption=config.subsumption, mode=config.mode)
    ts = TransitionSystem()
    store = _Store(engine, config.subsumption)
    next_id = itertools.count()

    fresh, start_id = store.add(ts, engine.start_state(), next_id)
    assert fresh and start_id == 0
    stats.generated = 1
    ts.start = start_id

    frontier = deque([start_id])
    in_frontier = {start_id}
    depth = {start_id: 0}
    complete = True

    while frontier:
        if config.timeout is not None and time.perf_counter() - t0 > config.timeout:
            complete = False
            break
        if config.max_states is not None and stats.generated >= config.max_states:
            complete = False
            break
        i = frontier.popleft() if config.strategy == "bfs" else frontier.pop()
        if i not in in_frontier:       # trimmed after being marked subsumed
            continue
        in_frontier.discard(i)
        if config.max_depth is not None and depth[i] >= config.max_depth:
            continue
        for (label, succ) in engine.successors(ts.states[i]):
            stats.transitions_generated += 1
            was_fresh, j = store.add(ts, succ, next_id)
            if config.mode == "full":
                ts.transitions.add((i, label, j))
            if was_fresh:
                stats.generated += 1
                depth[j] = depth[i] + 1
                frontier.append(j)
                in_frontier.add(j)
            for k in store.newly_marked:
                stats.subsumed += 1
                if k in in_frontier:
                    in_frontier.discard(k)
                    stats.discarded += 1
                if config.mode == "reach":
                    ts.states.pop(k)
                    ts.marked.discard(k)

    if not config.subsumption:
        stats.maximum = stats.generated
    stats.transitions_relevant = sum(
        1 for (src, _, _) in ts.transitions if src not in ts.marked)
    stats.complete = complete
    stats.time_ms = int((time.perf_counter() - t0) * 1000)
    stats.peak_mem_bytes = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss * 1024
    return ts, stats


# --- reporting ------------------------------------------------------------

CSV_HEADER = ("grammar,engine,strategy,subsumption,mode,maximum,generated,"
              "subsumed,relevant,discarded,transitions_generated,"
              "transitions_relevant,time_ms,peak_mem_bytes,complete")


def stats_row(stats: ExplorationStats) -> str:
    cells = [stats.grammar, stats.engine, stats.strategy,
             "on" if stats.subsumption else "off", stats.mode,
             "" if stats.maximum is None else str(stats.maximum),
             str(stats.generated), str(stats.subsumed), str(stats.relevant),
             str(stats.discarded), str(stats.transitions_generated),
             str(stats.transitions_relevant), str(stats.time_ms),
             str(stats.peak_mem_bytes),
             "true" if stats.complete else "false"]
    return ",".join(cells)


def stats_report(stats: ExplorationStats, format: str = "table") -> str:
    if format == "csv":
        return CSV_HEADER + "\n" + stats_row(stats) + "\n"
    if format == "table":
        pairs = list(zip(CSV_HEADER.split(","), stats_row(stats).split(",")))
        width = max(len(k) for k, _ in pairs)
        return "\n".join(f"{k.ljust(width)}  {v or '-'}" for k, v in pairs) + "\n"
    raise ExploreError(f"unknown report format {format!r}")
