"""Shortcut systems, their expansions G^P and G^(d), and transfer of
complete-bipartite models from G^P back to G."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from tdl._mis import greedy_stable_set
from tdl.errors import ConsistencyError, DomainError, ValidationError
from tdl.graph import Graph, is_connected_subset


@dataclass(frozen=True)
class ShortcutSystem:
    base: Graph
    paths: tuple[tuple[int, ...], ...]

    def __init__(self, base: Graph, paths: Sequence[Sequence[int]]):
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "paths", tuple(tuple(int(v) for v in p) for p in paths))
        for p in self.paths:
            _check_path(base, p)

    def to_json_obj(self) -> dict:
        return {"paths": [list(p) for p in self.paths]}

    @classmethod
    def from_json_obj(cls, base: Graph, obj: dict) -> ShortcutSystem:
        if not isinstance(obj, dict) or "paths" not in obj:
            raise ValidationError('shortcut JSON needs a "paths" list')
        return cls(base, obj["paths"])


def _check_path(base: Graph, p: Sequence[int]) -> None:
    if len(p) < 2:
        raise ValidationError(f"shortcut {list(p)} is trivial (needs length >= 1)")
    if len(set(p)) != len(p):
        raise ValidationError(f"shortcut {list(p)} repeats a vertex")
    for v in p:
        if not 0 <= v < base.n:
            raise ValidationError(f"shortcut {list(p)} leaves the vertex range")
    for u, w in zip(p, p[1:]):
        if not base.has_edge(u, w):
            raise ValidationError(f"shortcut {list(p)} uses non-edge {u}{w}")


@dataclass(frozen=True)
class ShortcutProfile:
    max_length: int                  # k
    max_internal_load: int           # d for a (k,d) system
    max_m_set: int                   # d for a (k,d)* system
    m_sets: dict[int, frozenset[int]] = field(repr=False)
    unique_endpoint_pairs: bool = True

    def is_star_system(self, k: int, d: int) -> bool:
        return self.max_length <= k and self.max_m_set <= d


def validate_shortcut_system(sys: ShortcutSystem) -> ShortcutProfile:
    """Length, internal load and |M_v| statistics of a shortcut system."""
    load = [0] * sys.base.n
    m_sets: dict[int, set[int]] = {}
    pairs = set()
    for p in sys.paths:
        _check_path(sys.base, p)
        pairs.add(frozenset((p[0], p[-1])))
        for v in p[1:-1]:
            load[v] += 1
            m_sets.setdefault(v, set()).update((p[0], p[-1]))
    return ShortcutProfile(
        max((len(p) - 1 for p in sys.paths), default=0),
        max(load, default=0),
        max((len(m) for m in m_sets.values()), default=0),
        {v: frozenset(m) for v, m in m_sets.items()},
        len(pairs) == len(sys.paths),
    )


def expand(sys: ShortcutSystem) -> Graph:
    """G^P: the base graph plus an edge between the ends of every shortcut."""
    return sys.base.with_edges((p[0], p[-1]) for p in sys.paths)


def build_low_degree_square(g: Graph, d: int) -> tuple[Graph, ShortcutSystem]:
    """G^(d) (a clique on N(v) for every v of degree <= d) and its (2,d)* witness system."""
    paths = []
    for v in range(g.n):
        nb = g.neighbors(v)
        if len(nb) <= d:
            paths.extend((u, v, w) for i, u in enumerate(nb) for w in nb[i + 1:])
    sys = ShortcutSystem(g, paths)
    return expand(sys), sys


# -- (p,q)-models -------------------------------------------------------------

@dataclass(frozen=True)
class BipartiteModel:
    left: tuple[tuple[int, ...], ...]
    right: tuple[tuple[int, ...], ...]

    def __init__(self, left: Sequence[Sequence[int]], right: Sequence[Sequence[int]]):
        object.__setattr__(self, "left", tuple(tuple(sorted(x)) for x in left))
        object.__setattr__(self, "right", tuple(tuple(sorted(y)) for y in right))

    def to_json_obj(self) -> dict:
        return {"left": [list(x) for x in self.left], "right": [list(y) for y in self.right]}

    @classmethod
    def from_json_obj(cls, obj: dict) -> BipartiteModel:
        try:
            return cls(obj["left"], obj["right"])
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed model JSON: {exc}") from None


@dataclass(frozen=True)
class ModelCheck:
    valid: bool
    violation: str | None = None

    def __bool__(self) -> bool:
        return self.valid


def verify_model(g: Graph, model: BipartiteModel, s: int, t: int, p: int, q: int) -> ModelCheck:
    """Is ``model`` a (p,q)-model of K_{s,t} in g?"""
    if len(model.left) != s or len(model.right) != t:
        return ModelCheck(False, f"model has {len(model.left)}+{len(model.right)} branch sets, expected {s}+{t}")
    seen: set[int] = set()
    for side, cap, sets in (("left", p, model.left), ("right", q, model.right)):
        for idx, x in enumerate(sets):
            if not x:
                return ModelCheck(False, f"{side}[{idx}] is empty")
            if any(not 0 <= v < g.n for v in x):
                return ModelCheck(False, f"{side}[{idx}] has a vertex outside the graph")
            if len(x) > cap:
                return ModelCheck(False, f"{side}[{idx}] has {len(x)} vertices, cap {cap}")
            if seen & set(x):
                return ModelCheck(False, f"{side}[{idx}] overlaps an earlier branch set")
            seen |= set(x)
            if not is_connected_subset(g, x):
                return ModelCheck(False, f"{side}[{idx}] is not connected")
    for i, x in enumerate(model.left):
        reach = set().union(*(g.neighbor_set(v) for v in x))
        for j, y in enumerate(model.right):
            if reach.isdisjoint(y):
                return ModelCheck(False, f"no edge between left[{i}] and right[{j}]")
    return ModelCheck(True)


def transfer_requirements(s: int, t: int, p: int, q: int, k: int, d: int) -> tuple[int, int]:
    """(s', t') such that a (p,q)-model of K_{s',t'} in G^P transfers to K_{s,t} in G."""
    s_big = (d * (k - 1) * (p - 1) + 1) * (s - 1) + 1
    t_big = (2 * d * (k - 1) * (s + q - 1) + 1) * (t - 1) + 1 + s * d * (p + (k - 1) * (p - 1))
    return s_big, t_big


def transfer_caps(s: int, p: int, q: int, k: int) -> dict[str, tuple[int, int]]:
    """Branch-set caps of the transferred model: as stated, and as the proof's last line reads."""
    left = p + (k - 1) * (p - 1)
    return {"statement": (left, q + (k - 1) * (s + q - 1)),
            "proof": (left, q + k * (s + q - 1))}


def _spanning_tree_edges(g: Graph, vertices: Sequence[int]) -> list[tuple[int, int]]:
    """BFS tree of g[vertices] from the smallest vertex."""
    vs = set(vertices)
    root = min(vs)
    seen = {root}
    out = []
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in g.neighbors(u):
            if w in vs and w not in seen:
                seen.add(w)
                out.append((u, w))
                queue.append(w)
    return out


def transfer_model(sys: ShortcutSystem, model: BipartiteModel, s: int, t: int,
                   p: int, q: int, k: int, d: int) -> BipartiteModel:
    """Turn a (p,q)-model of K_{s',t'} in G^P into a small model of K_{s,t} in G.

    Each left branch set is thickened by the internal vertices of the
    shortcuts realising its tree edges; a stable set of the overlap graph
    keeps s of them.  Right branch sets meeting the chosen left sets or their
    M-sets are dropped, the rest are thickened by the shortcuts of their tree
    edges plus one connecting shortcut per chosen left set, and a stable set of
    their overlap graph keeps t.
    """
    if min(s, t, p, q, k, d) < 1:
        raise DomainError("s, t, p, q, k, d must all be positive")
    prof = validate_shortcut_system(sys)
    if not prof.is_star_system(k, d):
        raise DomainError(f"system is not ({k},{d})*: length {prof.max_length}, |M_v| up to {prof.max_m_set}")
    s_big, t_big = transfer_requirements(s, t, p, q, k, d)
    if len(model.left) < s_big or len(model.right) < t_big:
        raise DomainError(f"need a model of K_{{{s_big},{t_big}}}, got K_{{{len(model.left)},{len(model.right)}}}")
    gp = expand(sys)
    check = verify_model(gp, model, len(model.left), len(model.right), p, q)
    if not check:
        raise ValidationError(f"input is not a ({p},{q})-model in G^P: {check.violation}")

    base = sys.base
    realiser: dict[frozenset, tuple[int, ...]] = {}
    for path in sys.paths:
        realiser.setdefault(frozenset((path[0], path[-1])), path[1:-1])

    def internals(u: int, w: int) -> tuple[int, ...]:
        if base.has_edge(u, w):
            return ()
        return realiser[frozenset((u, w))]

    m_sets = prof.m_sets

    x_hat = []
    for x in model.left:
        extra = {c for u, w in _spanning_tree_edges(gp, x) for c in internals(u, w)}
        x_hat.append(frozenset(x) | extra)
    a_edges = [(i, j) for i in range(len(x_hat)) for j in range(i + 1, len(x_hat)) if x_hat[i] & x_hat[j]]
    keep_left = greedy_stable_set(len(x_hat), a_edges)
    if len(keep_left) < s:
        raise ConsistencyError(f"overlap graph A gave a stable set of {len(keep_left)} < s={s}")
    keep_left = keep_left[:s]
    covered = frozenset().union(*(x_hat[i] for i in keep_left))
    forbidden = frozenset().union(*(m_sets.get(v, frozenset()) for v in covered))

    survivors = [j for j, y in enumerate(model.right) if forbidden.isdisjoint(y) and covered.isdisjoint(y)]
    y_hat = []
    for j in survivors:
        y = model.right[j]
        extra: set[int] = set()
        for i in keep_left:
            u, w = next((u, w) for u in model.left[i] for w in y if gp.has_edge(u, w))
            extra.update(internals(u, w))
        for u, w in _spanning_tree_edges(gp, y):
            extra.update(internals(u, w))
        if extra & covered:
            raise ConsistencyError(f"augmented right set {j} meets the chosen left sets")
        y_hat.append(frozenset(y) | extra)
    b_edges = [(a, b) for a in range(len(y_hat)) for b in range(a + 1, len(y_hat)) if y_hat[a] & y_hat[b]]
    keep_right = greedy_stable_set(len(y_hat), b_edges)
    if len(keep_right) < t:
        raise ConsistencyError(f"overlap graph B gave a stable set of {len(keep_right)} < t={t} "
                               f"({len(survivors)} right sets survived the M-filter)")
    out = BipartiteModel([x_hat[i] for i in keep_left], [y_hat[b] for b in keep_right[:t]])
    p_out, q_out = transfer_caps(s, p, q, k)["statement"]
    check = verify_model(base, out, s, t, p_out, q_out)
    if not check:
        raise ConsistencyError(f"transferred model fails verification: {check.violation}")
    return out
