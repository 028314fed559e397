"""Search for small complete-bipartite models, and separations / flap numbers."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from tdl._mis import max_independent_set
from tdl.errors import CapacityError, DomainError
from tdl.graph import Graph
from tdl.shortcuts import BipartiteModel

SEPARATION_GUARD = 12


# -- (p,q)-model search -------------------------------------------------------

@dataclass
class ModelSearch:
    status: str                         # "found", "none" or "unknown"
    model: BipartiteModel | None = None
    nodes: int = 0

    def __bool__(self) -> bool:
        return self.status == "found"


def connected_sets(g: Graph, max_size: int) -> list[frozenset[int]]:
    """All connected vertex sets of size 1..max_size, ordered by (size, sorted tuple)."""
    level = {frozenset([v]) for v in range(g.n)}
    found = set(level)
    for _ in range(max_size - 1):
        nxt = set()
        for x in level:
            for v in x:
                for w in g.neighbors(v):
                    if w not in x:
                        nxt.add(x | {w})
        nxt -= found
        found |= nxt
        level = nxt
    return sorted(found, key=lambda x: (len(x), sorted(x)))


def _mask(xs) -> int:
    m = 0
    for v in xs:
        m |= 1 << v
    return m


def find_pq_model(g: Graph, s: int, t: int, p: int, q: int, budget: int = 1_000_000) -> ModelSearch:
    """Backtracking search for a (p,q)-model of K_{s,t} in g.

    Left branch sets are fixed first, in candidate order, each later one with a
    larger candidate index; then t pairwise-disjoint right sets adjacent to all
    of them are packed the same way.  ``budget`` caps search nodes; hitting it
    yields status "unknown" rather than "none".
    """
    if min(s, t, p, q) < 1:
        raise DomainError("s, t, p, q must be positive")
    left_c = connected_sets(g, p)
    right_c = left_c if q == p else connected_sets(g, q)
    lm = [_mask(x) for x in left_c]
    rm = [_mask(y) for y in right_c]
    nb = [_mask(g.neighbors(v)) for v in range(g.n)]

    def reach(m: int) -> int:
        out = 0
        while m:
            low = m & -m
            out |= nb[low.bit_length() - 1]
            m ^= low
        return out

    lreach = [reach(m) for m in lm]
    nodes = 0
    exhausted = False

    def pack_right(cands: list[int], start: int, used: int, chosen: list[int]) -> list[int] | None:
        nonlocal nodes, exhausted
        need = t - len(chosen)
        if need == 0:
            return chosen
        for idx in range(start, len(cands) - need + 1):
            nodes += 1
            if nodes > budget:
                exhausted = True
                return None
            m = rm[cands[idx]]
            if m & used:
                continue
            got = pack_right(cands, idx + 1, used | m, chosen + [cands[idx]])
            if got is not None or exhausted:
                return got
        return None

    def pick_left(start: int, used: int, chosen: list[int], feasible: list[int]) -> tuple[list[int], list[int]] | None:
        nonlocal nodes, exhausted
        if len(chosen) == s:
            right = pack_right(feasible, 0, 0, [])
            return (chosen, right) if right is not None else None
        for idx in range(start, len(lm)):
            nodes += 1
            if nodes > budget:
                exhausted = True
                return None
            m = lm[idx]
            if m & used:
                continue
            r = lreach[idx]
            nxt = [j for j in feasible if not rm[j] & m and rm[j] & r]
            if len(nxt) < t:
                continue
            got = pick_left(idx + 1, used | m, chosen + [idx], nxt)
            if got is not None or exhausted:
                return got
        return None

    got = pick_left(0, 0, [], list(range(len(rm))))
    if exhausted:
        return ModelSearch("unknown", None, nodes)
    if got is None:
        return ModelSearch("none", None, nodes)
    left, right = got
    return ModelSearch("found", BipartiteModel([left_c[i] for i in left], [right_c[j] for j in right]), nodes)


# -- separations and the flap number ---------------------------------------------

@dataclass(frozen=True)
class Separation:
    """An ordered separation (A, B); A is the side whose private vertices form the flap."""

    a_vertices: frozenset[int]
    b_vertices: frozenset[int]
    a_edges: frozenset[tuple[int, int]]
    b_edges: frozenset[tuple[int, int]]

    @property
    def order(self) -> int:
        return len(self.a_vertices & self.b_vertices)

    @property
    def flap(self) -> frozenset[int]:
        return self.a_vertices - self.b_vertices

    def is_valid(self, h: Graph) -> bool:
        edges = set(h.edges())
        return (self.a_vertices | self.b_vertices == frozenset(range(h.n))
                and self.a_edges | self.b_edges == edges
                and not self.a_edges & self.b_edges
                and all(u in self.a_vertices and v in self.a_vertices for u, v in self.a_edges)
                and all(u in self.b_vertices and v in self.b_vertices for u, v in self.b_edges)
                and bool(self.a_vertices - self.b_vertices)
                and bool(self.b_vertices - self.a_vertices))


def independent(x: Separation, y: Separation) -> bool:
    """No shared A-edges and disjoint flaps.  The relation is symmetric as written."""
    return not (x.a_edges & y.a_edges) and not (x.flap & y.flap)


def enumerate_separations(h: Graph, s: int) -> list[Separation]:
    """All ordered (<= s)-separations of h (brute force, |V(h)| <= 12)."""
    if h.n > SEPARATION_GUARD:
        raise CapacityError(f"separation enumeration limited to {SEPARATION_GUARD} vertices")
    edges = h.edges()
    out = []
    for size in range(0, min(s, h.n) + 1):
        for sep in combinations(range(h.n), size):
            both = frozenset(sep)
            rest = [v for v in range(h.n) if v not in both]
            inner = [e for e in edges if e[0] in both and e[1] in both]
            for bits in range(1, 2 ** len(rest) - 1):
                only_a = frozenset(v for i, v in enumerate(rest) if bits >> i & 1)
                only_b = frozenset(rest) - only_a
                if any((u in only_a and v in only_b) or (u in only_b and v in only_a) for u, v in edges):
                    continue
                a_forced = [e for e in edges if e[0] in only_a or e[1] in only_a]
                b_forced = [e for e in edges if e[0] in only_b or e[1] in only_b]
                for split in range(2 ** len(inner)):
                    a_in = [e for i, e in enumerate(inner) if split >> i & 1]
                    b_in = [e for i, e in enumerate(inner) if not split >> i & 1]
                    out.append(Separation(only_a | both, only_b | both,
                                          frozenset(a_forced + a_in), frozenset(b_forced + b_in)))
    return out


@dataclass(frozen=True)
class FlapResult:
    value: int
    witness: list[Separation] = field(default_factory=list)


def flap_candidates(h: Graph, s: int) -> list[frozenset[int]]:
    """Inclusion-minimal vertex sets X that are the private side of some (<= s)-separation.

    X qualifies iff it is non-empty, |N(X)| <= s and X together with N(X) misses
    some vertex.  Any separation is dominated (for independence) by the one
    whose A side is X plus N(X) with exactly the edges touching X.
    """
    if h.n > SEPARATION_GUARD:
        raise CapacityError(f"flap search limited to {SEPARATION_GUARD} vertices")
    nb = [_mask(h.neighbors(v)) for v in range(h.n)]
    full = (1 << h.n) - 1
    valid = []
    for x in range(1, full + 1):
        reach = 0
        for v in range(h.n):
            if x >> v & 1:
                reach |= nb[v]
        boundary = reach & ~x
        if bin(boundary).count("1") <= s and (x | boundary) != full:
            valid.append(x)
    valid_set = set(valid)
    minimal = []
    for x in valid:
        sub = (x - 1) & x
        dominated = False
        while sub:
            if sub in valid_set:
                dominated = True
                break
            sub = (sub - 1) & x
        if not dominated:
            minimal.append(x)
    return [frozenset(v for v in range(h.n) if x >> v & 1) for x in minimal]


def canonical_separation(h: Graph, flap: frozenset[int]) -> Separation:
    boundary = frozenset(w for v in flap for w in h.neighbors(v)) - flap
    a_edges = frozenset(e for e in h.edges() if e[0] in flap or e[1] in flap)
    return Separation(flap | boundary, frozenset(range(h.n)) - flap,
                      a_edges, frozenset(h.edges()) - a_edges)


def flap_number(h: Graph, s: int) -> FlapResult:
    """Maximum number of pairwise independent (<= s)-separations (1 if there are none)."""
    flaps = flap_candidates(h, s)
    if not flaps:
        return FlapResult(1, [])
    masks = [_mask(x) for x in flaps]
    reach = [_mask(w for v in x for w in h.neighbors(v)) | masks[i] for i, x in enumerate(flaps)]
    conflicts = [(i, j) for i in range(len(flaps)) for j in range(i + 1, len(flaps))
                 if reach[i] & masks[j]]
    best = max_independent_set(len(flaps), conflicts)
    return FlapResult(len(best), [canonical_separation(h, flaps[i]) for i in best])
