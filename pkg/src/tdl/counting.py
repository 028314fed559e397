"""Exact image and copy counting of forest patterns by backtracking.

The search places pattern vertices in a fixed order where every non-first
vertex of a component has an already-placed pattern neighbour, so candidate
host vertices always come from one adjacency list.  A trailing run of
pattern vertices whose candidate set is the same (leaves of one placed
parent, or isolated vertices) is counted in closed form as a falling
factorial instead of being enumerated.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import permutations
import math
from typing import Iterator, Sequence

from tdl.errors import CapacityError, ConsistencyError, DomainError
from tdl.forest import automorphism_count
from tdl.graph import Graph

ORACLE_GUARD = 10**8


@dataclass(frozen=True)
class Embedding:
    """Injective edge-preserving map; ``assignment[x]`` is the host vertex of pattern vertex x."""

    assignment: tuple[int, ...]

    @property
    def pattern_size(self) -> int:
        return len(self.assignment)

    def __getitem__(self, x: int) -> int:
        return self.assignment[x]

    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.assignment)

    def is_valid(self, pattern: Graph, host: Graph) -> bool:
        a = self.assignment
        if len(a) != pattern.n or len(set(a)) != len(a):
            return False
        if not all(0 <= x < host.n for x in a):
            return False
        return all(host.has_edge(a[u], a[v]) for u, v in pattern.edges())


@dataclass(frozen=True)
class CountReport:
    images: int
    copies: int
    automorphisms: int
    truncated: bool = False


@dataclass(frozen=True)
class _Plan:
    order: tuple[int, ...]         # pattern vertices in placement order
    anchor: tuple[int, ...]        # placed neighbour used for candidates, -1 for a component root
    checks: tuple[tuple[int, ...], ...]  # other earlier-placed neighbours (edge checks)
    tail_start: int                # positions >= tail_start are counted in closed form
    tail_groups: tuple[tuple[int, int], ...]  # (anchor, size) per tail group; anchor -1: isolated
    min_degree: tuple[int, ...]


def search_plan(t: Graph) -> _Plan:
    """Placement order for the backtracker.

    Components go largest first; each is laid out by BFS from a max-degree
    root, then its pendant leaves are moved to the end, grouped by parent
    with the largest group last.  Up to two trailing leaf groups (or a run of
    isolated vertices) form the closed-form tail.
    """
    comps = sorted(t.components(), key=lambda c: (-len(c), c[0]))
    order: list[int] = []
    anchor: list[int] = []
    for comp in comps:
        root = min(comp, key=lambda v: (-t.degree(v), v))
        block = [root]
        parent = {root: -1}
        i = 0
        while i < len(block):
            u = block[i]
            i += 1
            kids = sorted((w for w in t.neighbors(u) if w not in parent),
                          key=lambda w: (-t.degree(w), w))
            for w in kids:
                parent[w] = u
                block.append(w)
        inner = [v for v in block if parent[v] < 0 or t.degree(v) > 1]
        groups: dict[int, list[int]] = {}
        for v in block:
            if parent[v] >= 0 and t.degree(v) == 1:
                groups.setdefault(parent[v], []).append(v)
        pos = {v: i for i, v in enumerate(inner)}
        for p in sorted(groups, key=lambda p: (len(groups[p]), pos[p])):
            inner.extend(groups[p])
        order.extend(inner)
        anchor.extend(parent[v] for v in inner)
    pos = {v: i for i, v in enumerate(order)}
    checks = tuple(
        tuple(w for w in t.neighbors(v) if pos[w] < pos[v] and w != anchor[i])
        for i, v in enumerate(order)
    )
    h = len(order)
    tail_start = h
    tail_groups: list[tuple[int, int]] = []
    j = h - 1
    if h and anchor[j] < 0:
        while j >= 0 and anchor[j] < 0 and t.degree(order[j]) == 0:
            j -= 1
        tail_groups.append((-1, h - 1 - j))
        tail_start = j + 1
    else:
        while j >= 0 and len(tail_groups) < 2:
            a = anchor[j]
            if a < 0 or t.degree(order[j]) != 1:
                break
            k = j
            while k >= 0 and anchor[k] == a and t.degree(order[k]) == 1:
                k -= 1
            tail_groups.insert(0, (a, j - k))
            j = k
        tail_start = j + 1
    return _Plan(tuple(order), tuple(anchor), checks, tail_start, tuple(tail_groups),
                 tuple(t.degree(v) for v in order))


def _falling(x: int, r: int) -> int:
    return math.perm(x, r) if x >= r else 0


def _two_group_count(only_a: int, only_b: int, shared: int, ra: int, rb: int) -> int:
    """Injective fillings of ra slots from A and rb slots from B, split by how
    many A-slots draw on the shared part A & B."""
    total = 0
    for i in range(min(ra, shared) + 1):
        total += (math.comb(ra, i) * _falling(shared, i) * _falling(only_a, ra - i)
                  * _falling(only_b + shared - i, rb))
    return total


def _count_from(plan: _Plan, g: Graph, roots: Sequence[int] | None, limit: int | None) -> tuple[int, bool]:
    order, anchor, checks = plan.order, plan.anchor, plan.checks
    h = len(order)
    if h == 0:
        return 1, False
    tail = plan.tail_start
    groups = plan.tail_groups
    slot = {v: i for i, v in enumerate(order)}
    img = [-1] * h
    used: set[int] = set()
    adj = g.adjacency
    nbr = [g.neighbor_set(v) for v in range(g.n)]
    deg = g.degrees()
    need = plan.min_degree
    total = 0
    stopped = False

    def tail_count() -> int:
        if groups[0][0] < 0:
            return _falling(g.n - len(used), groups[0][1])
        if len(groups) == 1:
            a = img[slot[groups[0][0]]]
            free = len(adj[a]) - sum(1 for u in used if u in nbr[a])
            return _falling(free, groups[0][1])
        (pa, ra), (pb, rb) = groups
        na, nb = nbr[img[slot[pa]]], nbr[img[slot[pb]]]
        if len(na) > len(nb):
            common = sum(1 for x in nb if x in na and x not in used)
        else:
            common = sum(1 for x in na if x in nb and x not in used)
        free_a = len(na) - sum(1 for u in used if u in na)
        free_b = len(nb) - sum(1 for u in used if u in nb)
        return _two_group_count(free_a - common, free_b - common, common, ra, rb)

    def rec(i: int) -> None:
        nonlocal total, stopped
        if i == tail:
            total += tail_count()
            if limit is not None and total >= limit:
                stopped = True
            return
        a = anchor[i]
        if a < 0:
            cands = roots if (i == 0 and roots is not None) else range(g.n)
        else:
            cands = adj[img[slot[a]]]
        need_i = need[i]
        chk = [slot[w] for w in checks[i]]
        for x in cands:
            if x in used or deg[x] < need_i:
                continue
            if any(x not in nbr[img[c]] for c in chk):
                continue
            img[i] = x
            used.add(x)
            rec(i + 1)
            used.discard(x)
            if stopped:
                return
        img[i] = -1

    rec(0)
    return total, stopped


def _count_chunk(args: tuple) -> int:
    plan, g, roots = args
    return _count_from(plan, g, roots, None)[0]


def count_images(t: Graph, g: Graph, limit: int | None = None, threads: int = 1) -> CountReport:
    """Exact number of images of pattern t in host g.

    With ``limit`` the search stops once at least ``limit`` images are seen and
    the report is flagged ``truncated``.  ``threads > 1`` splits the first
    component's root choices over worker processes.
    """
    aut = automorphism_count(t)
    plan = search_plan(t)
    if threads > 1 and limit is None and plan.order and plan.tail_start > 0 and g.n > 1:
        chunks = [list(range(g.n))[k::threads] for k in range(threads)]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            images = sum(pool.map(_count_chunk, [(plan, g, c) for c in chunks if c]))
        truncated = False
    else:
        images, truncated = _count_from(plan, g, None, limit)
    copies, rest = divmod(images, aut)
    if rest and not truncated:
        raise ConsistencyError(f"{images} images not divisible by |Aut|={aut}")
    return CountReport(images, copies, aut, truncated)


def count_copies(t: Graph, g: Graph, threads: int = 1) -> CountReport:
    """Copies of t in g: images divided by |Aut(t)|, exact division enforced."""
    return count_images(t, g, threads=threads)


def iter_images(t: Graph, g: Graph) -> Iterator[Embedding]:
    """All images in deterministic backtracking order (no closed-form tail)."""
    plan = search_plan(t)
    order, anchor, checks = plan.order, plan.anchor, plan.checks
    h = len(order)
    slot = {v: i for i, v in enumerate(order)}
    img = [-1] * h
    used: set[int] = set()

    def rec(i: int) -> Iterator[Embedding]:
        if i == h:
            out = [0] * h
            for k, v in enumerate(order):
                out[v] = img[k]
            yield Embedding(tuple(out))
            return
        a = anchor[i]
        cands = range(g.n) if a < 0 else g.neighbors(img[slot[a]])
        for x in cands:
            if x in used or g.degree(x) < plan.min_degree[i]:
                continue
            if any(not g.has_edge(x, img[slot[w]]) for w in checks[i]):
                continue
            img[i] = x
            used.add(x)
            yield from rec(i + 1)
            used.discard(x)
        img[i] = -1

    yield from rec(0)


def enumerate_images(t: Graph, g: Graph, cap: int) -> list[Embedding]:
    """The first ``cap`` images in deterministic order."""
    if cap < 1:
        raise DomainError("cap must be at least 1")
    out = []
    for emb in iter_images(t, g):
        out.append(emb)
        if len(out) >= cap:
            break
    return out


def oracle_count_images(t: Graph, g: Graph) -> int:
    """Exhaustive count over ordered tuples of distinct host vertices."""
    h, n = t.n, g.n
    if n ** h > ORACLE_GUARD:
        raise CapacityError(f"oracle guard: {n}^{h} exceeds {ORACLE_GUARD}")
    pattern_edges = t.edges()
    host_edges = {(u, v) for u, v in g.edges()} | {(v, u) for u, v in g.edges()}
    count = 0
    for tup in permutations(range(n), h):
        if all((tup[u], tup[v]) in host_edges for u, v in pattern_edges):
            count += 1
    return count
