"""Extremal lower-bound graphs, tree decompositions, and the gadget graph H^{s,t}.

Gadget vertex labels are ``("core", v, i)`` for the i-th copy of H-vertex v
(1-based i) and ``("star", v, j)`` for its j-th star vertex.  Their string
forms are ``"(v,i)"`` and ``"(v,j)*"``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from tdl.errors import DomainError, ValidationError
from tdl.forest import Forest, alpha_s
from tdl.graph import Graph, contract_partition, complete_bipartite, diameter, is_connected_subset

Label = tuple[str, int, int]


@dataclass(frozen=True)
class TreeDecomposition:
    """Bags indexed by the nodes of ``index_tree`` (bag i belongs to node i)."""

    index_tree: Graph
    bags: tuple[tuple[int, ...], ...]

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def to_json_obj(self) -> dict:
        return {"tree_edges": [list(e) for e in self.index_tree.edges()],
                "bags": [list(b) for b in self.bags]}

    @classmethod
    def from_json_obj(cls, obj: dict) -> TreeDecomposition:
        try:
            bags = tuple(tuple(sorted(set(int(v) for v in b))) for b in obj["bags"])
            tree = Graph(len(bags), [tuple(e) for e in obj["tree_edges"]])
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed tree decomposition JSON: {exc}") from None
        return cls(tree, bags)


@dataclass(frozen=True)
class TDCheck:
    valid: bool
    width: int
    violation: str | None = None

    def __bool__(self) -> bool:
        return self.valid


def verify_tree_decomposition(g: Graph, d: TreeDecomposition) -> TDCheck:
    """Check index-tree acyclicity, (T1) edge coverage and (T2) connected support."""
    width = d.width
    tree = d.index_tree
    if tree.n != len(d.bags):
        return TDCheck(False, width, f"index tree has {tree.n} nodes but there are {len(d.bags)} bags")
    for x, bag in enumerate(d.bags):
        for v in bag:
            if not 0 <= v < g.n:
                raise DomainError(f"bag {x} mentions vertex {v} outside [0,{g.n})")
    if tree.edge_count != tree.n - len(tree.components()):
        return TDCheck(False, width, "index graph contains a cycle")
    holders: list[list[int]] = [[] for _ in range(g.n)]
    for x, bag in enumerate(d.bags):
        for v in bag:
            holders[v].append(x)
    bag_sets = [set(b) for b in d.bags]
    for u, v in g.edges():
        if not any(v in bag_sets[x] for x in holders[u]):
            return TDCheck(False, width, f"(T1) violated: edge {u}{v} lies in no bag")
    for v in range(g.n):
        if not holders[v]:
            return TDCheck(False, width, f"(T2) violated: vertex {v} lies in no bag")
        if not is_connected_subset(tree, holders[v]):
            return TDCheck(False, width, f"(T2) violated: bags holding vertex {v} are not connected")
    return TDCheck(True, width)


# -- lower-bound blow-up ---------------------------------------------------

@dataclass(frozen=True)
class LowerBoundInstance:
    graph: Graph
    decomposition: TreeDecomposition
    stable_set: list[int]
    clones: dict[int, list[int]]
    m: int
    k: int
    pattern: Forest
    s: int
    n: int

    def copy_lower_bound(self) -> int:
        return self.m ** self.k

    def asymptotic_lower_bound(self) -> float:
        """(2k)^{-k} n^k; guaranteed once n >= 2|V(T)| + 2k."""
        return (2 * self.k) ** (-self.k) * self.n ** self.k


def build_lower_bound_graph(t: Graph, s: int, n: int) -> LowerBoundInstance:
    """Blow up each vertex of a maximum low-degree stable set into m twins.

    Clones get ids ``|V(T)|, |V(T)|+1, ...`` in order of their prototype.
    The returned decomposition has width at most s.
    """
    t = Forest.from_graph(t)
    if s < 1:
        raise DomainError("s must be at least 1")
    if t.n == 0:
        raise DomainError("pattern must have at least one vertex")
    if n < t.n:
        raise DomainError(f"n={n} is smaller than |V(T)|={t.n}")
    res = alpha_s(t, s)
    S, k = res.witness, res.value
    m = (n - t.n) // k
    edges = list(t.edges())
    clones: dict[int, list[int]] = {}
    nxt = t.n
    for v in S:
        clones[v] = list(range(nxt, nxt + m))
        for x in clones[v]:
            edges.extend((x, w) for w in t.neighbors(v))
        nxt += m
    g = Graph(nxt, edges)
    return LowerBoundInstance(g, _blowup_decomposition(t, S, clones, nxt), S, clones, m, k, t, s, n)


def _blowup_decomposition(t: Forest, S: list[int], clones: dict[int, list[int]], total: int) -> TreeDecomposition:
    # one index node per vertex of the blow-up: node id == vertex id
    in_s = set(S)
    bags: list[tuple[int, ...]] = [()] * total
    tree_edges = []
    for comp in t.components():
        if len(comp) == 1:
            v = comp[0]
            bags[v] = (v,)
            for x in clones.get(v, []):
                bags[x] = (v, x)
                tree_edges.append((v, x))
            continue
        r = min(w for w in comp if w not in in_s)
        parent = {r: -1}
        queue = deque([r])
        while queue:
            u = queue.popleft()
            for w in t.neighbors(u):
                if w not in parent:
                    parent[w] = u
                    tree_edges.append((u, w))
                    queue.append(w)
        for w in comp:
            if w == r:
                bags[w] = (r,)
            elif w in in_s:
                nb = t.neighbors(w)
                bags[w] = tuple(sorted((*nb, w)))
                for x in clones[w]:
                    bags[x] = tuple(sorted((*nb, x)))
                    tree_edges.append((w, x))
            else:
                bags[w] = tuple(sorted((w, parent[w])))
    return TreeDecomposition(Graph(total, tree_edges), tuple(bags))


def natural_decomposition(t: Graph) -> TreeDecomposition:
    """Width-1 decomposition of a forest (bag {v, parent(v)} per vertex)."""
    bags: list[tuple[int, ...]] = [()] * t.n
    tree_edges = []
    for comp in t.components():
        r = comp[0]
        bags[r] = (r,)
        parent = {r: -1}
        queue = deque([r])
        while queue:
            u = queue.popleft()
            for w in t.neighbors(u):
                if w not in parent:
                    parent[w] = u
                    bags[w] = tuple(sorted((u, w)))
                    tree_edges.append((u, w))
                    queue.append(w)
    return TreeDecomposition(Graph(t.n, tree_edges), tuple(bags))


def one_sum(g1: Graph, d1: TreeDecomposition, g2: Graph, d2: TreeDecomposition,
            glue: tuple[int, int] | None = None) -> tuple[Graph, TreeDecomposition]:
    """Glue g2 onto g1 at one vertex (``glue=(v1, v2)``) or take the disjoint union.

    The merged decomposition joins one bag holding v1 to one bag holding v2,
    so its width is the larger of the two input widths.
    """
    if glue is None:
        remap = {v: g1.n + v for v in range(g2.n)}
        n = g1.n + g2.n
    else:
        v1, v2 = glue
        remap = {}
        nxt = g1.n
        for v in range(g2.n):
            if v == v2:
                remap[v] = v1
            else:
                remap[v] = nxt
                nxt += 1
        n = nxt
    edges = g1.edges() + [(remap[u], remap[v]) for u, v in g2.edges()]
    off = d1.index_tree.n
    bags = list(d1.bags) + [tuple(sorted(remap[v] for v in b)) for b in d2.bags]
    tree_edges = d1.index_tree.edges() + [(off + a, off + b) for a, b in d2.index_tree.edges()]
    if glue is not None and d1.bags and d2.bags:
        x1 = next(i for i, b in enumerate(d1.bags) if glue[0] in b)
        x2 = next(i for i, b in enumerate(d2.bags) if glue[1] in b)
        tree_edges.append((x1, off + x2))
    return Graph(n, edges), TreeDecomposition(Graph(len(bags), tree_edges), tuple(bags))


# -- the gadget H^{s,t} ------------------------------------------------------

def comp_deg(h: Graph, s: int, v: int) -> int:
    """Number of star vertices attached to each copy of v: max(s+1-deg(v), 0)."""
    if not 0 <= v < h.n:
        raise DomainError(f"vertex {v} not in H (n={h.n})")
    return max(s + 1 - h.degree(v), 0)


def gadget_s_prime(h: Graph, s: int) -> int:
    return sum(comp_deg(h, s, v) for v in range(h.n))


def label_str(label: Label) -> str:
    kind, v, i = label
    return f"({v},{i})" if kind == "core" else f"({v},{i})*"


@dataclass(frozen=True)
class Gadget:
    graph: Graph
    labels: tuple[Label, ...]
    h: Graph
    s: int
    t: int
    index: dict[Label, int] = field(repr=False, compare=False)

    @property
    def h_vertices(self) -> list[Label]:
        return [lab for lab in self.labels if lab[0] == "core"]

    @property
    def star_vertices(self) -> list[Label]:
        return [lab for lab in self.labels if lab[0] == "star"]

    def copy_class(self, i: int) -> list[int]:
        """Vertex ids of X_i, the i-th copy of H (1-based)."""
        return [self.index[("core", v, i)] for v in range(self.h.n)]

    def to_json_obj(self) -> dict:
        return {"n": self.graph.n,
                "labels": [label_str(lab) for lab in self.labels],
                "edges": [list(e) for e in self.graph.edges()],
                "s": self.s, "t": self.t}


def build_gadget(h: Graph, s: int, t: int) -> Gadget:
    """t disjoint copies of H plus comp_deg(v) star vertices joined to every copy of v."""
    if h.n < 1:
        raise DomainError("H must have at least one vertex")
    if s < 1 or t < 1:
        raise DomainError("s and t must be positive")
    labels: list[Label] = [("core", v, i) for i in range(1, t + 1) for v in range(h.n)]
    labels += [("star", v, j) for v in range(h.n) for j in range(1, comp_deg(h, s, v) + 1)]
    index = {lab: x for x, lab in enumerate(labels)}
    edges = [(index[("core", v, i)], index[("core", w, i)])
             for i in range(1, t + 1) for v, w in h.edges()]
    edges += [(index[("core", v, i)], index[("star", v, j)])
              for v in range(h.n) for i in range(1, t + 1)
              for j in range(1, comp_deg(h, s, v) + 1)]
    return Gadget(Graph(len(labels), edges), tuple(labels), h, s, t, index)


@dataclass
class GadgetReport:
    s_prime: int
    contraction_ok: bool | None     # note (A); None when H is disconnected
    degrees_ok: bool                # note (B) degree identities
    min_degree_ok: bool | None      # note (B) min degree >= s+1; None unless t >= s+1 and H a tree
    diameter_ok: bool | None        # note (C); None when H is disconnected
    gadget_diameter: float
    h_diameter: float
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_gadget_properties(h: Graph, s: int, t: int) -> GadgetReport:
    gad = build_gadget(h, s, t)
    g = gad.graph
    sp = gadget_s_prime(h, s)
    failures = []
    connected = h.is_connected()

    contraction_ok = None
    if connected:
        contracted = contract_partition(g, [gad.copy_class(i) for i in range(1, t + 1)])
        # copy classes own the smallest ids, so they come first after contraction
        contraction_ok = contracted == complete_bipartite(t, sp)
        if not contraction_ok:
            failures.append(f"(A) contraction is not K_{{{sp},{t}}}")

    degrees_ok = True
    for x, (kind, v, _) in enumerate(gad.labels):
        want = t if kind == "star" else h.degree(v) + comp_deg(h, s, v)
        if g.degree(x) != want:
            degrees_ok = False
            failures.append(f"(B) vertex {label_str(gad.labels[x])} has degree {g.degree(x)}, expected {want}")
    min_degree_ok = None
    if t >= s + 1 and connected and h.edge_count == h.n - 1:
        min_degree_ok = g.min_degree() >= s + 1
        if not min_degree_ok:
            failures.append(f"(B) minimum degree {g.min_degree()} < s+1 = {s + 1}")

    dg, dh = diameter(g), diameter(h)
    diameter_ok = None
    if connected:
        diameter_ok = dg <= dh + 2
        if not diameter_ok:
            failures.append(f"(C) diameter {dg} exceeds diam(H)+2 = {dh + 2}")
    return GadgetReport(sp, contraction_ok, degrees_ok, min_degree_ok, diameter_ok, dg, dh, failures)


def is_labeled_gadget_embedding(gad: Gadget, mapping: dict[Label, int], host: Graph) -> bool:
    """True iff ``mapping`` is injective on all gadget labels and preserves every gadget edge."""
    if set(mapping) != set(gad.labels):
        return False
    images = [mapping[lab] for lab in gad.labels]
    if len(set(images)) != len(images) or not all(0 <= x < host.n for x in images):
        return False
    return all(host.has_edge(images[u], images[v]) for u, v in gad.graph.edges())
