"""Forest patterns and their statistics: alpha_s, stable sets, covers, automorphisms."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
import heapq
import math
from typing import Iterable, Sequence

from tdl.errors import ValidationError
from tdl.graph import Graph, find_cycle


class Forest(Graph):
    """A Graph certified acyclic at construction time."""

    __slots__ = ()

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        super().__init__(n, edges)
        cycle = find_cycle(self)
        if cycle is not None:
            raise ValidationError(f"not a forest: cycle {cycle}")

    @classmethod
    def from_graph(cls, g: Graph) -> Forest:
        if isinstance(g, Forest):
            return g
        return cls(g.n, g.edges())


@dataclass(frozen=True)
class AlphaResult:
    value: int
    witness: list[int]
    low_degree_set: list[int]


@dataclass(frozen=True)
class MixedCover:
    vertices: list[int]
    edges: list[tuple[int, int]]

    def __len__(self) -> int:
        return len(self.vertices) + len(self.edges)


def _rooted_orders(f: Graph) -> list[tuple[int, list[int], dict[int, int]]]:
    """Per component: (root, BFS order, parent map); roots are smallest ids."""
    seen = [False] * f.n
    out = []
    for root in range(f.n):
        if seen[root]:
            continue
        seen[root] = True
        order = [root]
        parent = {root: -1}
        i = 0
        while i < len(order):
            u = order[i]
            i += 1
            for w in f.neighbors(u):
                if not seen[w]:
                    seen[w] = True
                    parent[w] = u
                    order.append(w)
        out.append((root, order, parent))
    return out


def max_stable_set_forest(f: Graph) -> list[int]:
    """Maximum stable set of a forest by the include/exclude tree DP.

    Ties favour inclusion, scanning each component from its smallest vertex,
    so the witness is deterministic.
    """
    take = [0] * f.n
    skip = [0] * f.n
    chosen = []
    for root, order, parent in _rooted_orders(f):
        for v in reversed(order):
            take[v] = 1
            skip[v] = 0
            for w in f.neighbors(v):
                if parent.get(w) == v:
                    take[v] += skip[w]
                    skip[v] += max(take[w], skip[w])
        picked = {}
        for v in order:
            p = parent[v]
            if p >= 0 and picked[p]:
                picked[v] = False
            else:
                picked[v] = take[v] >= skip[v]
            if picked[v]:
                chosen.append(v)
    return sorted(chosen)


def low_degree_subforest(t: Graph, s: int) -> tuple[Forest, list[int]]:
    """Subforest induced on {v : deg_T(v) <= s}, with the original ids of its vertices."""
    low = [v for v in range(t.n) if t.degree(v) <= s]
    sub, ids = t.induced_subgraph(low)
    return Forest.from_graph(sub), ids


def alpha_s(t: Graph, s: int) -> AlphaResult:
    """alpha_s(T): largest stable set among vertices of T-degree at most s."""
    sub, ids = low_degree_subforest(t, s)
    witness = [ids[i] for i in max_stable_set_forest(sub)]
    return AlphaResult(len(witness), witness, ids)


def maximum_matching_forest(f: Graph) -> list[tuple[int, int]]:
    """Maximum matching of a forest: repeatedly match the smallest leaf to its neighbour."""
    deg = f.degrees()
    alive = [True] * f.n
    heap = [v for v in range(f.n) if deg[v] == 1]
    heapq.heapify(heap)
    matching = []
    while heap:
        v = heapq.heappop(heap)
        if not alive[v] or deg[v] != 1:
            continue
        u = next(w for w in f.neighbors(v) if alive[w])
        matching.append((min(u, v), max(u, v)))
        for x in (u, v):
            alive[x] = False
            for w in f.neighbors(x):
                if alive[w]:
                    deg[w] -= 1
                    if deg[w] == 1:
                        heapq.heappush(heap, w)
    return sorted(matching)


def mixed_cover(f: Graph) -> MixedCover:
    """Vertices and edges covering every vertex of f, with |cover| = alpha(f).

    Built as a maximum matching plus the vertices it leaves unmatched; for a
    forest this has size |V| - nu = alpha.
    """
    matching = maximum_matching_forest(f)
    covered = {x for e in matching for x in e}
    return MixedCover([v for v in range(f.n) if v not in covered], matching)


# -- automorphisms ---------------------------------------------------------

def _rooted_code(f: Graph, root: int, banned: int = -1) -> tuple[str, int]:
    """AHU code and automorphism count of the tree rooted at ``root``."""
    order = [root]
    parent = {root: banned}
    i = 0
    while i < len(order):
        u = order[i]
        i += 1
        for w in f.neighbors(u):
            if w != parent[u] and w != banned:
                parent[w] = u
                order.append(w)
    code: dict[int, str] = {}
    aut: dict[int, int] = {}
    for v in reversed(order):
        kids = [w for w in f.neighbors(v) if w != parent[v] and w != banned]
        codes = sorted(code[w] for w in kids)
        code[v] = "(" + "".join(codes) + ")"
        a = 1
        for w in kids:
            a *= aut[w]
        for mult in Counter(codes).values():
            a *= math.factorial(mult)
        aut[v] = a
    return code[root], aut[root]


def _centers(f: Graph, comp: list[int]) -> list[int]:
    if len(comp) <= 2:
        return comp
    deg = {v: f.degree(v) for v in comp}
    layer = [v for v in comp if deg[v] <= 1]
    left = len(comp)
    while left > 2:
        left -= len(layer)
        nxt = []
        for v in layer:
            for w in f.neighbors(v):
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
        layer = nxt
    return sorted(layer)


def tree_canonical_form(f: Graph, comp: list[int]) -> tuple[str, int]:
    """Canonical code and |Aut| of one tree component (centre canonisation)."""
    centers = _centers(f, comp)
    if len(centers) == 1:
        return _rooted_code(f, centers[0])
    a, b = centers
    code_a, aut_a = _rooted_code(f, a, banned=b)
    code_b, aut_b = _rooted_code(f, b, banned=a)
    aut = aut_a * aut_b * (2 if code_a == code_b else 1)
    return "[" + "".join(sorted((code_a, code_b))) + "]", aut


def automorphism_count(t: Graph) -> int:
    """|Aut(T)| for a forest T."""
    classes: Counter[str] = Counter()
    total = 1
    for comp in t.components():
        code, aut = tree_canonical_form(t, comp)
        classes[code] += 1
        total *= aut
    for mult in classes.values():
        total *= math.factorial(mult)
    return total


def forest_canonical_form(t: Graph) -> tuple[str, ...]:
    return tuple(sorted(tree_canonical_form(t, c)[0] for c in t.components()))
