"""Seeded random corpora used by tests, the acceptance harness and the CLI."""

from __future__ import annotations

import random

from tdl.forest import Forest
from tdl.graph import Graph


def random_tree(n: int, rng: random.Random) -> Forest:
    """Uniform-attachment random tree on n >= 1 vertices, randomly relabelled."""
    perm = list(range(n))
    rng.shuffle(perm)
    edges = [(perm[i], perm[rng.randrange(i)]) for i in range(1, n)]
    return Forest(n, edges)


def random_forest(n: int, rng: random.Random, edge_keep: float = 0.8) -> Forest:
    """Random tree with each edge independently kept with probability ``edge_keep``."""
    tree = random_tree(n, rng)
    return Forest(n, [e for e in tree.edges() if rng.random() < edge_keep])


def gnp(n: int, p: float, rng: random.Random) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p])


def random_spanning_tree_of_complete(n: int, rng: random.Random) -> Forest:
    """Randomised growth: attach each new vertex to a random earlier vertex."""
    order = list(range(n))
    rng.shuffle(order)
    edges = []
    for i in range(1, n):
        edges.append((order[i], order[rng.randrange(i)]))
    return Forest(n, edges)
