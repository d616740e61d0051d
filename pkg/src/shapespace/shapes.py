"""Neighbourhood abstraction: equivalences, shapes, subsumption.

A shape is a graph together with a similarity partition and node/edge
multiplicity maps.  Throughout this package the similarity relation is
label equality (radius-0 neighbourhood equivalence), so a similarity
block is identified by its unary label set; edge multiplicity maps are
keyed by ``(node, binary label, label set of the target block)``.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

from .graphs import Graph, GraphError, Morphism, certificate, graph, isomorphisms
from . import multiplicity as mult
from .multiplicity import Multiplicity, approx_card, subsumes


class ShapeError(ValueError):
    pass


def label_partition(g: Graph):
    """Radius-0 blocks: nodes grouped by unary label set."""
    blocks = {}
    for v in g.nodes:
        blocks.setdefault(g.node_labels(v), set()).add(v)
    return tuple(sorted((frozenset(b) for b in blocks.values()),
                        key=lambda b: sorted(b)))


def _binary_labels(g: Graph):
    return sorted({e[1] for e in g.binary_edges()}, key=lambda l: l.text)


def _signature(g: Graph, v, level0):
    sig = []
    for l in _binary_labels(g):
        for c in level0:
            out_n = len(g.out_edges(v, l, c))
            in_n = len(g.in_edges(v, l, c))
            if out_n or in_n:
                sig.append((l.text, sorted(c)[0], approx_card(out_n), approx_card(in_n)))
    return tuple(sig)


def neighbourhood_partition(g: Graph):
    """Radius-0 and radius-1 partitions of ``g``'s nodes.

    Radius 1 refines radius 0 by equality of the per-block approximated
    in/out edge counts, for every binary label and every radius-0 block.
    """
    level0 = label_partition(g)
    refined = {}
    for block in level0:
        for v in block:
            refined.setdefault((block, _signature(g, v, level0)), set()).add(v)
    level1 = tuple(sorted((frozenset(b) for b in refined.values()),
                          key=lambda b: sorted(b)))
    return level0, level1


@dataclass
class Shape:
    """Graph plus similarity partition and multiplicity maps.

    ``out_mult``/``in_mult`` are sparse: a missing entry denotes
    multiplicity 0 and the absence of shape edges for that slot.
    Shapes are immutable by convention after construction.
    """

    graph: Graph
    node_mult: dict = field(default_factory=dict)
    out_mult: dict = field(default_factory=dict)
    in_mult: dict = field(default_factory=dict)

    def class_key(self, v) -> frozenset:
        return self.graph.node_labels(v)

    def members(self, key: frozenset) -> frozenset:
        return frozenset(v for v in self.graph.nodes if self.class_key(v) == key)

    def similarity(self):
        """The similarity partition as a tuple of blocks."""
        return label_partition(self.graph)

    def is_concrete(self, v) -> bool:
        return self.node_mult[v].is_concrete

    def collectors(self):
        return sorted(v for v in self.graph.nodes if not self.is_concrete(v))

    def out_multiplicity(self, v, l, block) -> Multiplicity:
        """Multiplicity of outgoing ``l``-edges from ``v`` into ``block``.

        ``block`` may be a similarity block (set of node ids) or its
        label-set key.
        """
        return self.out_mult.get((v, l, self._key_of(block)), mult.ZERO)

    def in_multiplicity(self, v, l, block) -> Multiplicity:
        return self.in_mult.get((v, l, self._key_of(block)), mult.ZERO)

    def _key_of(self, block):
        if block and isinstance(next(iter(block)), int):
            keys = {self.class_key(v) for v in block}
            if len(keys) != 1:
                raise ShapeError("node set spans several similarity blocks")
            return keys.pop()
        return frozenset(block)

    def validate(self):
        """Raise ShapeError when the shape invariants do not hold."""
        g = self.graph
        if set(self.node_mult) != set(g.nodes):
            raise ShapeError("node multiplicity map is not total")
        for v, m in self.node_mult.items():
            if m == mult.ZERO:
                raise ShapeError(f"zero-population node {v} present")
        for (v, l, w) in g.binary_edges():
            if (v, l, self.class_key(w)) not in self.out_mult:
                raise ShapeError(f"edge ({v},{l},{w}) lacks an outgoing multiplicity")
            if (w, l, self.class_key(v)) not in self.in_mult:
                raise ShapeError(f"edge ({v},{l},{w}) lacks an incoming multiplicity")
        for (v, l, key), m in list(self.out_mult.items()) + list(self.in_mult.items()):
            if v not in g.nodes:
                raise ShapeError(f"multiplicity entry for unknown node {v}")
            if m == mult.ZERO:
                raise ShapeError(f"zero multiplicity stored for ({v},{l},{set(key)})")
        for (v, l, key) in self.out_mult:
            if not any(e[0] == v and e[1] == l and self.class_key(e[2]) == key
                       for e in g.binary_edges()):
                raise ShapeError(f"outgoing multiplicity ({v},{l}) without support edge")
        for (v, l, key) in self.in_mult:
            if not any(e[2] == v and e[1] == l and self.class_key(e[0]) == key
                       for e in g.binary_edges()):
                raise ShapeError(f"incoming multiplicity ({v},{l}) without support edge")

    def __repr__(self):
        return (f"Shape({len(self.graph.nodes)} nodes, "
                f"{len(self.graph.binary_edges())} edges)")


def abstract(g: Graph) -> Shape:
    """Fold the radius-1 equivalence classes of ``g`` into a shape."""
    level0, level1 = neighbourhood_partition(g)
    block_id = {}
    for i, block in enumerate(level1):
        block_id[block] = i
    node_of = {}
    for block, i in block_id.items():
        for v in block:
            node_of[v] = i

    nodes = set(block_id.values())
    edges = set()
    for block, i in block_id.items():
        rep = sorted(block)[0]
        for l in g.node_labels(rep):
            edges.add((i, l, i))
    for (v, l, w) in g.binary_edges():
        edges.add((node_of[v], l, node_of[w]))

    node_mult = {i: approx_card(len(block)) for block, i in block_id.items()}
    out_mult = {}
    in_mult = {}
    for block, i in block_id.items():
        rep = sorted(block)[0]
        for l in _binary_labels(g):
            for c in level0:
                key = g.node_labels(sorted(c)[0])
                n_out = len(g.out_edges(rep, l, c))
                if n_out:
                    out_mult[(i, l, key)] = approx_card(n_out)
                n_in = len(g.in_edges(rep, l, c))
                if n_in:
                    in_mult[(i, l, key)] = approx_card(n_in)
    return Shape(graph(nodes, edges), node_mult, out_mult, in_mult)


# --- comparison -----------------------------------------------------------


def _mults_below(s: Shape, t: Shape, phi: dict) -> bool:
    """All multiplicities of ``s`` subsumed by ``t``'s under ``phi``."""
    for v in s.graph.nodes:
        if not subsumes(t.node_mult[phi[v]], s.node_mult[v]):
            return False
    for (v, l, w) in s.graph.binary_edges():
        ks = s.class_key(w)
        kt = t.class_key(phi[w])
        if not subsumes(t.out_mult.get((phi[v], l, kt), mult.ZERO),
                        s.out_mult.get((v, l, ks), mult.ZERO)):
            return False
        ks = s.class_key(v)
        kt = t.class_key(phi[v])
        if not subsumes(t.in_mult.get((phi[w], l, kt), mult.ZERO),
                        s.in_mult.get((w, l, ks), mult.ZERO)):
            return False
    return True


def compare_shapes(s: Shape, t: Shape):
    """Subsumption in both directions with a single isomorphism search.

    Returns ``(s_below_t, t_below_s)`` where each entry is a witness
    Morphism ``s.graph -> t.graph`` (respectively its direction) or
    None.  Every graph isomorphism is tried before a direction is
    declared to fail; one failing candidate proves nothing.
    """
    wit_st = None
    wit_ts = None
    for phi in isomorphisms(s.graph, t.graph):
        inv = {w: v for v, w in phi.items()}
        if wit_st is None and _mults_below(s, t, phi):
            wit_st = Morphism(dict(phi))
        if wit_ts is None and _mults_below(t, s, inv):
            wit_ts = Morphism(inv)
        if wit_st is not None and wit_ts is not None:
            break
    return wit_st, wit_ts


def shape_subsumes(t: Shape, s: Shape):
    """Whether ``s`` is below ``t``; returns ``(bool, witness or None)``."""
    wit, _ = compare_shapes(s, t)
    return wit is not None, wit


def strictly_isomorphic(s: Shape, t: Shape) -> bool:
    """Mutual subsumption through one witness: equal multiplicities."""
    for phi in isomorphisms(s.graph, t.graph):
        inv = {w: v for v, w in phi.items()}
        if _mults_below(s, t, phi) and _mults_below(t, s, inv):
            return True
    return False


def shape_certificate(s: Shape) -> str:
    """Hash from graph structure and similarity only.

    Multiplicities are deliberately excluded so that mutually
    subsumable shapes land in the same store bucket.
    """
    return hashlib.sha256(("shape:" + certificate(s.graph))
                          .encode("utf-8")).hexdigest()[:16]


def strict_shape_certificate(s: Shape) -> str:
    """Hash that additionally folds in the multiplicity multisets.

    Strictly isomorphic shapes collide; merely subsumable ones need
    not.  Useful for bucketing when freshness is strict isomorphism.
    """
    def key_text(key):
        return ",".join(sorted(l.text for l in key))

    node_part = sorted(f"{m.lo}:{m.hi}" for m in s.node_mult.values())
    out_part = sorted(f"{l.text}|{key_text(k)}|{m.lo}:{m.hi}"
                      for (_, l, k), m in s.out_mult.items())
    in_part = sorted(f"{l.text}|{key_text(k)}|{m.lo}:{m.hi}"
                     for (_, l, k), m in s.in_mult.items())
    text = (shape_certificate(s) + ";" + ";".join(node_part) + "#"
            + ";".join(out_part) + "#" + ";".join(in_part))
    return hashlib.sha256(text.encode("utf-8")).hexdigest()[:16]


def covered(g: Graph, states) -> bool:
    """Whether some shape in ``states`` subsumes the abstraction of ``g``."""
    s = abstract(g)
    cert = shape_certificate(s)
    for t in states:
        if shape_certificate(t) != cert:
            continue
        wit, _ = compare_shapes(s, t)
        if wit is not None:
            return True
    return False
