"""Simple directed labelled graphs, morphisms, certificates and isomorphism.

Node labels are encoded as self-loops carrying unary labels; there is no
separate label field.  Node ids are opaque integers local to each graph:
equality of graphs is structural under identical ids, isomorphism is the
semantic equality.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from itertools import permutations


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Label:
    text: str
    arity: str  # "unary" | "binary"

    def __post_init__(self):
        if not self.text:
            raise GraphError("empty label identifier")
        if self.arity not in ("unary", "binary"):
            raise GraphError(f"bad arity {self.arity!r}")

    @property
    def is_unary(self) -> bool:
        return self.arity == "unary"

    def __repr__(self):
        return f"{self.text}/{self.arity[0]}"


def unary(text: str) -> Label:
    return Label(text, "unary")


def binary(text: str) -> Label:
    return Label(text, "binary")


# An edge is a triple (source id, Label, target id).
Edge = tuple[int, Label, int]


@dataclass(frozen=True)
class Graph:
    nodes: frozenset
    edges: frozenset

    def __post_init__(self):
        for v, l, w in self.edges:
            if v not in self.nodes or w not in self.nodes:
                raise GraphError(f"edge ({v},{l},{w}) has endpoint outside node set")
            if l.is_unary and v != w:
                raise GraphError(f"unary label {l.text} on non-loop edge ({v},{w})")

    def node_labels(self, v) -> frozenset:
        """Unary labels carried by node ``v`` (its self-loops)."""
        if v not in self.nodes:
            raise GraphError(f"unknown node id {v}")
        return frozenset(l for (s, l, t) in self.edges
                         if s == v and t == v and l.is_unary)

    def out_edges(self, v, l: Label, c) -> frozenset:
        """Outgoing ``l``-edges from ``v`` into nodes of ``c``."""
        self._check_binary_query(v, l, c)
        return frozenset(e for e in self.edges
                         if e[0] == v and e[1] == l and e[2] in c)

    def in_edges(self, v, l: Label, c) -> frozenset:
        """Incoming ``l``-edges into ``v`` from nodes of ``c``."""
        self._check_binary_query(v, l, c)
        return frozenset(e for e in self.edges
                         if e[2] == v and e[1] == l and e[0] in c)

    def _check_binary_query(self, v, l, c):
        if v not in self.nodes:
            raise GraphError(f"unknown node id {v}")
        if l.is_unary:
            raise GraphError(f"label {l.text} is unary")
        if not set(c) <= set(self.nodes):
            raise GraphError("node set argument not contained in graph nodes")

    def binary_edges(self) -> frozenset:
        return frozenset(e for e in self.edges if not e[1].is_unary)

    def relabel(self, mapping) -> "Graph":
        """Rename node ids through ``mapping`` (a node-id bijection)."""
        return graph((mapping[v] for v in self.nodes),
                     ((mapping[s], l, mapping[t]) for (s, l, t) in self.edges))

    def __repr__(self):
        return f"Graph({len(self.nodes)} nodes, {len(self.edges)} edges)"


def graph(nodes, edges=()) -> Graph:
    return Graph(frozenset(nodes), frozenset(edges))


@dataclass
class Morphism:
    """Total node map; structure and labels must be preserved."""

    node_map: dict

    def __call__(self, v):
        return self.node_map[v]

    def is_injective(self) -> bool:
        return len(set(self.node_map.values())) == len(self.node_map)

    def inverse(self) -> "Morphism":
        if not self.is_injective():
            raise GraphError("non-injective morphism has no inverse")
        return Morphism({w: v for v, w in self.node_map.items()})

    def as_tuple(self):
        return tuple(sorted(self.node_map.items()))

    def __eq__(self, other):
        return isinstance(other, Morphism) and self.node_map == other.node_map


def is_morphism(m: Morphism, g: Graph, h: Graph) -> bool:
    """Check the structure/label preservation condition of ``m : g -> h``."""
    if set(m.node_map) != set(g.nodes):
        return False
    if not set(m.node_map.values()) <= set(h.nodes):
        return False
    return all((m(v), l, m(w)) in h.edges for (v, l, w) in g.edges)


# --- certificates ---------------------------------------------------------
#
# Iterated neighbourhood colour refinement: start from the unary label
# set of each node and repeatedly fold in the multiset of (label,
# direction, neighbour colour) triples.  A small fixed iteration count
# is enough for the filtering role certificates play here.

_REFINEMENT_ROUNDS = 3


def _digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()[:16]


def _refined_colours(g: Graph, rounds: int = _REFINEMENT_ROUNDS) -> dict:
    colour = {v: _digest("lab:" + ",".join(sorted(l.text for l in g.node_labels(v))))
              for v in g.nodes}
    bin_edges = g.binary_edges()
    for _ in range(rounds):
        new = {}
        for v in g.nodes:
            around = sorted(f"o:{l.text}:{colour[w]}" for (s, l, w) in bin_edges if s == v)
            around += sorted(f"i:{l.text}:{colour[s]}" for (s, l, w) in bin_edges if w == v)
            new[v] = _digest(colour[v] + "|" + ";".join(around))
        colour = new
    return colour


def certificate(g: Graph) -> str:
    """Deterministic, renaming-invariant hash; isomorphic graphs collide."""
    colours = sorted(_refined_colours(g).values())
    return _digest(f"n={len(g.nodes)};e={len(g.edges)};" + ",".join(colours))


# --- isomorphism search ---------------------------------------------------


def _pair_labels(g: Graph):
    pairs = {}
    for (v, l, w) in g.edges:
        pairs.setdefault((v, w), set()).add(l)
    return pairs


def isomorphisms(g: Graph, h: Graph):
    """Yield every node bijection preserving edges in both directions.

    The search is seeded by refined-colour partitions: only same-colour
    nodes are candidate images.
    """
    if len(g.nodes) != len(h.nodes) or len(g.edges) != len(h.edges):
        return
    cg = _refined_colours(g)
    ch = _refined_colours(h)
    if sorted(cg.values()) != sorted(ch.values()):
        return
    by_colour = {}
    for w in sorted(h.nodes):
        by_colour.setdefault(ch[w], []).append(w)
    order = sorted(g.nodes, key=lambda v: (len(by_colour.get(cg[v], ())), v))
    gp = _pair_labels(g)
    hp = _pair_labels(h)
    mapping = {}
    used = set()

    def compatible(v, w):
        for u, x in mapping.items():
            for (a, b), (c, d) in (((v, u), (w, x)), ((u, v), (x, w))):
                if gp.get((a, b), set()) != hp.get((c, d), set()):
                    return False
        if gp.get((v, v), set()) != hp.get((w, w), set()):
            return False
        return True

    def extend(i):
        if i == len(order):
            yield dict(mapping)
            return
        v = order[i]
        for w in by_colour.get(cg[v], ()):
            if w in used or not compatible(v, w):
                continue
            mapping[v] = w
            used.add(w)
            yield from extend(i + 1)
            del mapping[v]
            used.discard(w)

    yield from extend(0)


def find_isomorphism(g: Graph, h: Graph):
    """First isomorphism between ``g`` and ``h`` as a Morphism, or None."""
    for m in isomorphisms(g, h):
        return Morphism(m)
    return None


def brute_force_isomorphism(g: Graph, h: Graph):
    """Oracle: enumerate all bijections (only sensible for tiny graphs)."""
    if len(g.nodes) != len(h.nodes):
        return None
    gs = sorted(g.nodes)
    for perm in permutations(sorted(h.nodes)):
        m = Morphism(dict(zip(gs, perm)))
        if is_morphism(m, g, h) and is_morphism(m.inverse(), h, g):
            return m
    return None
