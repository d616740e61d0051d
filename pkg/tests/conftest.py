"""Shared test fixtures: deterministic random graph generation."""

import random

import pytest

from shapespace import Label, binary, graph, unary

UNARY = (unary("A"), unary("B"))
BINARY = (binary("e"), binary("f"))


def random_graph(rng: random.Random, max_nodes: int = 6, edge_prob: float = 0.3):
    n = rng.randint(0, max_nodes)
    nodes = list(range(n))
    edges = []
    for v in nodes:
        for l in UNARY:
            if rng.random() < 0.5:
                edges.append((v, l, v))
    for v in nodes:
        for w in nodes:
            for l in BINARY:
                if rng.random() < edge_prob:
                    edges.append((v, l, w))
    return graph(nodes, edges)


def permuted(rng: random.Random, g):
    nodes = sorted(g.nodes)
    images = list(range(100, 100 + len(nodes)))
    rng.shuffle(images)
    return g.relabel(dict(zip(nodes, images)))


@pytest.fixture
def rng():
    return random.Random(20260825)
