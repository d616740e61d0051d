"""Rules and the two rewrite pipelines."""

import pytest

from shapespace import (ONE, ONE_PLUS, TWO_PLUS, ZERO_PLUS, Morphism, Rule,
                        RuleError, Shape, abstract, apply, approx_card, binary,
                        concrete_apply, concrete_matches, graph, materialise,
                        normalise, prematch, strictly_isomorphic, unary)

from conftest import random_graph

L, O, I, P, S, C, last = (unary(t) for t in ("L", "O", "I", "P", "S", "C", "last"))
at, conn, n = binary("at"), binary("conn"), binary("n")

READER, ERASER, CREATOR, EMBARGO = "reader", "eraser", "creator", "embargo"


def concrete_shape(g):
    """The exact shape of a concrete graph: every node kept apart."""
    node_mult = {v: ONE for v in g.nodes}
    out_m, in_m = {}, {}
    classes = {frozenset(g.node_labels(v)) for v in g.nodes}
    for v in g.nodes:
        for (a, l, b) in g.binary_edges():
            if a == v:
                key = (v, l, g.node_labels(b))
                out_m[key] = approx_card(len(
                    [e for e in g.binary_edges()
                     if e[0] == v and e[1] == l and g.node_labels(e[2]) == g.node_labels(b)]))
            if b == v:
                key = (v, l, g.node_labels(a))
                in_m[key] = approx_card(len(
                    [e for e in g.binary_edges()
                     if e[2] == v and e[1] == l and g.node_labels(e[0]) == g.node_labels(a)]))
    s = Shape(g, node_mult, out_m, in_m)
    s.validate()
    return s


def new_packet_rule():
    return Rule("new-packet", {0: READER, 1: CREATOR},
                ((0, L, 0, READER), (1, P, 1, CREATOR), (1, at, 0, CREATOR)))


def move_rule():
    return Rule("move", {0: READER, 1: READER, 2: READER},
                ((0, L, 0, READER), (1, L, 1, READER), (2, P, 2, READER),
                 (0, conn, 1, READER), (2, at, 0, ERASER), (2, at, 1, CREATOR)))


def append_rule():
    return Rule("append", {0: READER, 1: CREATOR},
                ((0, C, 0, READER), (0, last, 0, ERASER),
                 (1, C, 1, CREATOR), (1, last, 1, CREATOR),
                 (0, n, 1, CREATOR)))


def chain(k):
    nodes = range(k)
    edges = [(v, C, v) for v in nodes] + [(k - 1, last, k - 1)]
    edges += [(v, n, v + 1) for v in range(k - 1)]
    return graph(nodes, edges)


# --- rule validation ------------------------------------------------------


def test_rule_role_validation():
    with pytest.raises(RuleError):   # creator edge touching an eraser node
        Rule("bad", {0: ERASER, 1: CREATOR}, ((0, at, 1, CREATOR),))
    with pytest.raises(RuleError):   # eraser edge touching a creator node
        Rule("bad", {0: READER, 1: CREATOR}, ((0, at, 1, ERASER),))
    with pytest.raises(RuleError):   # embargo edge on an eraser node
        Rule("bad", {0: ERASER, 1: EMBARGO}, ((0, at, 1, EMBARGO),))
    with pytest.raises(RuleError):   # dangling endpoint
        Rule("bad", {0: READER}, ((0, at, 1, READER),))
    with pytest.raises(RuleError):   # unary label between distinct nodes
        Rule("bad", {0: READER, 1: READER}, ((0, P, 1, READER),))


def test_lhs_collects_readers_and_erasers():
    r = move_rule()
    lhs = r.lhs()
    assert lhs.nodes == frozenset({0, 1, 2})
    assert (2, at, 0) in lhs.edges and (2, at, 1) not in lhs.edges


# --- concrete pipeline ----------------------------------------------------


def world():
    return graph(range(3), [(0, L, 0), (1, L, 1), (0, conn, 1),
                            (2, P, 2), (2, at, 0)])


def test_concrete_match_and_apply():
    g = world()
    ms = concrete_matches(move_rule(), g)
    assert len(ms) == 1
    h = concrete_apply(move_rule(), ms[0], g)
    assert (2, at, 1) in h.edges and (2, at, 0) not in h.edges


def test_concrete_apply_creates_fresh_nodes():
    g = world()
    ms = concrete_matches(new_packet_rule(), g)
    assert len(ms) == 2              # either location
    h = concrete_apply(new_packet_rule(), ms[0], g)
    assert len(h.nodes) == 4
    fresh = next(iter(h.nodes - g.nodes))
    assert h.node_labels(fresh) == frozenset({P})


def test_spo_deletion_drops_incident_edges():
    r = Rule("del-packet", {0: ERASER}, ((0, P, 0, ERASER),))
    g = world()
    ms = concrete_matches(r, g)
    assert len(ms) == 1
    h = concrete_apply(r, ms[0], g)
    assert 2 not in h.nodes
    assert all(e[0] != 2 and e[2] != 2 for e in h.edges)


def test_unsatisfiable_nac_blocks_all_matches():
    # the embargo edge duplicates a reader edge, so it always holds
    r = Rule("blocked", {0: READER, 1: READER},
             ((0, L, 0, READER), (1, L, 1, READER),
              (0, conn, 1, READER), (0, conn, 1, EMBARGO)))
    assert concrete_matches(r, world()) == []


def test_nac_blocks_only_when_extension_exists():
    # forbid locations that already host a packet
    r = Rule("new-at-empty", {0: READER, 1: EMBARGO},
             ((0, L, 0, READER), (1, P, 1, EMBARGO), (1, at, 0, EMBARGO)))
    ms = concrete_matches(r, world())
    assert len(ms) == 1 and ms[0].node_map[0] == 1   # only the empty location


def test_label_flip_concrete():
    g = chain(2)
    ms = concrete_matches(append_rule(), g)
    assert len(ms) == 1 and ms[0].node_map[0] == 1
    h = concrete_apply(append_rule(), ms[0], g)
    assert len(h.nodes) == 3
    assert h.node_labels(1) == frozenset({C})        # mark removed
    fresh = next(iter(h.nodes - g.nodes))
    assert h.node_labels(fresh) == frozenset({C, last})


# --- prematch -------------------------------------------------------------


def test_prematch_allows_noninjective_on_collectors():
    s = abstract(graph(range(4), [(0, L, 0)] +
                       [(p, P, p) for p in (1, 2, 3)] +
                       [(p, at, 0) for p in (1, 2, 3)]))
    two = Rule("two-packets", {0: READER, 1: READER, 2: READER},
               ((0, L, 0, READER), (1, P, 1, READER), (2, P, 2, READER),
                (1, at, 0, READER), (2, at, 0, READER)))
    ms = prematch(two, s)
    packets = next(v for v in s.graph.nodes if s.class_key(v) == frozenset({P}))
    assert any(m.node_map[1] == m.node_map[2] == packets for m in ms)


def test_prematch_respects_node_multiplicity_bound():
    s = concrete_shape(graph(range(2), [(0, L, 0), (1, P, 1), (1, at, 0)]))
    two = Rule("two-packets", {0: READER, 1: READER, 2: READER},
               ((0, L, 0, READER), (1, P, 1, READER), (2, P, 2, READER),
                (1, at, 0, READER), (2, at, 0, READER)))
    # both packet nodes would have to share the single concrete packet
    assert prematch(two, s) == []


# --- materialise ----------------------------------------------------------


def test_materialise_on_concrete_match_is_identity():
    s = concrete_shape(world())
    ms = prematch(move_rule(), s)
    assert len(ms) == 1
    mats = materialise(move_rule(), ms[0], s)
    assert len(mats) == 1
    assert strictly_isomorphic(mats[0].shape, s)
    assert mats[0].match.node_map == ms[0].node_map


def test_materialise_splits_collector():
    g = graph(range(4), [(0, L, 0)] + [(p, P, p) for p in (1, 2, 3)]
              + [(p, at, 0) for p in (1, 2, 3)])
    s = abstract(g)
    r = move_like = Rule("grab", {0: READER, 1: READER},
                         ((0, L, 0, READER), (1, P, 1, READER),
                          (1, at, 0, READER)))
    ms = prematch(r, s)
    assert len(ms) == 1
    mats = materialise(r, ms[0], s)
    assert mats
    for mat in mats:
        mat.shape.validate()
        img = mat.match.node_map[1]
        assert mat.shape.node_mult[img] == ONE       # match image concrete
    # the 2+ collector leaves a 1+ remainder in every branch
    assert any(ONE_PLUS in mat.shape.node_mult.values() for mat in mats)


def test_materialise_drops_optional_remainder():
    # collector with multiplicity 1+: after pulling out one node the
    # remainder may be empty or non-empty -> both branches appear
    g = graph(range(2), [(0, L, 0), (1, P, 1), (1, at, 0)])
    s = abstract(g)
    v = next(v for v in s.graph.nodes if s.class_key(v) == frozenset({P}))
    s = Shape(s.graph, {**s.node_mult, v: ONE_PLUS}, dict(s.out_mult),
              dict(s.in_mult))
    r = Rule("grab", {0: READER, 1: READER},
             ((0, L, 0, READER), (1, P, 1, READER), (1, at, 0, READER)))
    mats = materialise(r, prematch(r, s)[0], s)
    node_counts = {len(mat.shape.graph.nodes) for mat in mats}
    assert node_counts == {2, 3}


# --- apply + normalise ----------------------------------------------------


def test_abstract_apply_mirrors_concrete_on_exact_shapes():
    for k in (2, 3):
        g = chain(k)
        s = concrete_shape(g)
        ms = prematch(append_rule(), s)
        assert len(ms) == 1
        (mat,) = materialise(append_rule(), ms[0], s)
        t = normalise(apply(append_rule(), mat))
        h = concrete_apply(append_rule(),
                           concrete_matches(append_rule(), g)[0], g)
        assert strictly_isomorphic(t, normalise(concrete_shape(h)))


def test_apply_label_flip_rekeys_slots():
    s = concrete_shape(chain(2))
    (mat,) = materialise(append_rule(), prematch(append_rule(), s)[0], s)
    t = apply(append_rule(), mat)
    t.validate()
    flipped = mat.match.node_map[0]
    assert t.class_key(flipped) == frozenset({C})
    # the incoming slot of the flipped node keeps its old class key
    pred = next(v for v in t.graph.nodes
                if (v, n, frozenset({C})) in t.out_mult)
    assert t.out_mult[(pred, n, frozenset({C}))] == ONE


def test_normalise_merges_equal_signatures():
    g = graph([0, 1], [(0, P, 0), (1, P, 1)])
    s = normalise(concrete_shape(g))
    assert len(s.graph.nodes) == 1
    assert list(s.node_mult.values()) == [TWO_PLUS]


def test_normalise_is_identity_on_abstractions(rng):
    for _ in range(200):
        g = random_graph(rng, max_nodes=8)
        s = abstract(g)
        assert strictly_isomorphic(normalise(s), s)
