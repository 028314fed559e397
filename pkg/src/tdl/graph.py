"""Simple undirected graphs on dense integer vertex ids, plus structural helpers.

Vertices are always ``0..n-1``.  External labels only ever live in the codecs
(:mod:`tdl.codecs`) or in construction-specific label tables.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction
import heapq
import math
from typing import Iterable, Sequence

from tdl.errors import DomainError, ValidationError

Edge = tuple[int, int]


class Graph:
    """Immutable simple graph with sorted adjacency lists."""

    __slots__ = ("_n", "_adj", "_nbr_sets", "_m")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise ValidationError(f"vertex count must be non-negative, got {n}")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < n and 0 <= v < n):
                raise ValidationError(f"edge ({u},{v}) has an endpoint outside [0,{n})")
            if u == v:
                raise ValidationError(f"self-loop at vertex {u}")
            if v in nbrs[u]:
                raise ValidationError(f"duplicate edge ({u},{v})")
            nbrs[u].add(v)
            nbrs[v].add(u)
        self._n = n
        self._nbr_sets = tuple(frozenset(s) for s in nbrs)
        self._adj = tuple(tuple(sorted(s)) for s in nbrs)
        self._m = sum(len(s) for s in nbrs) // 2

    @classmethod
    def simple(cls, n: int, edges: Iterable[Sequence[int]]) -> Graph:
        """Build a graph, silently merging parallel edges and dropping loops."""
        seen = set()
        for u, v in edges:
            if u != v:
                seen.add((min(u, v), max(u, v)))
        return cls(n, sorted(seen))

    # -- basic queries -------------------------------------------------
    @property
    def n(self) -> int:
        return self._n

    @property
    def edge_count(self) -> int:
        return self._m

    @property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        return self._adj

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def neighbor_set(self, v: int) -> frozenset[int]:
        return self._nbr_sets[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self._adj]

    def max_degree(self) -> int:
        return max((len(a) for a in self._adj), default=0)

    def min_degree(self) -> int:
        return min((len(a) for a in self._adj), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._nbr_sets[u]

    def edges(self) -> list[Edge]:
        return [(u, v) for u in range(self._n) for v in self._adj[u] if u < v]

    def vertices(self) -> range:
        return range(self._n)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self._n, self._adj))

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={self._n}, edges={self.edges()})"

    # -- derived graphs ------------------------------------------------
    def with_edges(self, extra: Iterable[Sequence[int]]) -> Graph:
        """Simple supergraph with ``extra`` edges added (duplicates merged)."""
        return Graph.simple(self._n, list(self.edges()) + [tuple(e) for e in extra])

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
        """Return ``(H, old_ids)`` where H's vertex ``i`` is ``old_ids[i]``."""
        old = sorted(set(vertices))
        index = {v: i for i, v in enumerate(old)}
        edges = [
            (index[u], index[v])
            for u in old
            for v in self._adj[u]
            if u < v and v in index
        ]
        return Graph(len(old), edges), old

    def components(self) -> list[list[int]]:
        """Connected components, each sorted, ordered by smallest vertex."""
        seen = [False] * self._n
        comps = []
        for s in range(self._n):
            if seen[s]:
                continue
            seen[s] = True
            comp = [s]
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in self._adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        queue.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self._n <= 1 or len(self.components()) == 1


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges())
        offset += g.n
    return Graph(offset, edges)


def is_connected_subset(g: Graph, vertices: Iterable[int]) -> bool:
    """True iff ``vertices`` is non-empty and induces a connected subgraph."""
    vs = set(vertices)
    if not vs:
        return False
    start = min(vs)
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in g.neighbors(u):
            if w in vs and w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == len(vs)


# -- structural primitives --------------------------------------------------

def degeneracy(g: Graph) -> tuple[int, list[int]]:
    """Degeneracy and the min-degree elimination order (ties: smallest id)."""
    if g.n == 0:
        raise DomainError("degeneracy is undefined for the empty graph")
    deg = g.degrees()
    removed = [False] * g.n
    heap = [(d, v) for v, d in enumerate(deg)]
    heapq.heapify(heap)
    order = []
    k = 0
    while heap:
        d, v = heapq.heappop(heap)
        if removed[v] or d != deg[v]:
            continue
        removed[v] = True
        order.append(v)
        k = max(k, d)
        for w in g.neighbors(v):
            if not removed[w]:
                deg[w] -= 1
                heapq.heappush(heap, (deg[w], w))
    return k, order


def density(g: Graph) -> Fraction:
    """Exact edge density |E|/|V|."""
    if g.n == 0:
        raise DomainError("density is undefined for the empty graph")
    return Fraction(g.edge_count, g.n)


def bfs_distances(g: Graph, source: int) -> list[int]:
    dist = [-1] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in g.neighbors(u):
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def diameter(g: Graph) -> int | float:
    """Largest shortest-path distance; ``math.inf`` if g is disconnected."""
    best = 0
    for v in range(g.n):
        dist = bfs_distances(g, v)
        if -1 in dist:
            return math.inf
        best = max(best, max(dist))
    return best


def find_cycle(g: Graph) -> list[int] | None:
    """Vertex sequence of some cycle in g, or None if g is acyclic."""
    parent = [-1] * g.n
    depth = [-1] * g.n
    for root in range(g.n):
        if depth[root] >= 0:
            continue
        depth[root] = 0
        stack = [root]
        while stack:
            u = stack.pop()
            for w in g.neighbors(u):
                if w == parent[u]:
                    continue
                if depth[w] < 0:
                    depth[w] = depth[u] + 1
                    parent[w] = u
                    stack.append(w)
                else:
                    # non-tree edge uw closes a cycle through their common ancestor
                    a, b = u, w
                    left, right = [a], [b]
                    while depth[a] > depth[b]:
                        a = parent[a]
                        left.append(a)
                    while depth[b] > depth[a]:
                        b = parent[b]
                        right.append(b)
                    while a != b:
                        a, b = parent[a], parent[b]
                        left.append(a)
                        right.append(b)
                    cycle = left + right[-2::-1]
                    i = cycle.index(min(cycle))
                    cycle = cycle[i:] + cycle[:i]
                    if cycle[1] > cycle[-1]:
                        cycle = [cycle[0]] + cycle[:0:-1]
                    return cycle
    return None


def is_forest(g: Graph) -> bool:
    return g.edge_count == g.n - len(g.components()) if g.n else True


def contract_partition(g: Graph, parts: Sequence[Iterable[int]]) -> Graph:
    """Contract each part to one vertex.

    Vertices not covered by ``parts`` become singleton parts.  New vertices
    are numbered by the smallest original vertex of their part, so the
    all-singletons partition reproduces ``g`` exactly.
    """
    owner = [-1] * g.n
    blocks: list[list[int]] = []
    for part in parts:
        block = sorted(set(part))
        if not block:
            raise ValidationError("empty part")
        for v in block:
            if not 0 <= v < g.n:
                raise ValidationError(f"vertex {v} out of range")
            if owner[v] >= 0:
                raise ValidationError(f"vertex {v} lies in two parts")
            owner[v] = len(blocks)
        if not is_connected_subset(g, block):
            raise ValidationError(f"part {block} does not induce a connected subgraph")
        blocks.append(block)
    for v in range(g.n):
        if owner[v] < 0:
            owner[v] = len(blocks)
            blocks.append([v])
    rank = {b: i for i, b in enumerate(sorted(range(len(blocks)), key=lambda b: blocks[b][0]))}
    return Graph.simple(len(blocks), ((rank[owner[u]], rank[owner[v]]) for u, v in g.edges()))


# -- named graphs -----------------------------------------------------------

def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def star_graph(leaves: int) -> Graph:
    return complete_bipartite(1, leaves)


def empty_graph(n: int) -> Graph:
    return Graph(n)


def spider(*legs: int) -> Graph:
    """Subdivided star: centre 0 with one path of each given length."""
    edges = []
    nxt = 1
    for length in legs:
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Graph(nxt, edges)
