"""Exact maximum independent set by branch and bound (max clique in the complement).

Vertex sets are Python int bitmasks.  Greedy colouring of the candidate set
gives the upper bound (Tomita-style MCQ).
"""

from __future__ import annotations

from typing import Iterable


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _color_sort(cand: int, nbr: list[int]) -> tuple[list[int], list[int]]:
    """Vertices of ``cand`` in colour order with their cumulative colour bounds."""
    order, bounds = [], []
    color = 0
    rest = cand
    while rest:
        color += 1
        q = rest
        while q:
            low = q & -q
            v = low.bit_length() - 1
            q &= ~low & ~nbr[v]
            rest &= ~low
            order.append(v)
            bounds.append(color)
    return order, bounds


def max_clique(n: int, nbr: list[int], target: int | None = None) -> list[int]:
    """Largest clique of the graph given by neighbour bitmasks ``nbr``.

    With ``target`` the search stops as soon as a clique of that size is found.
    """
    best: list[int] = []

    def expand(clique: list[int], cand: int) -> bool:
        nonlocal best
        order, bounds = _color_sort(cand, nbr)
        for idx in range(len(order) - 1, -1, -1):
            if len(clique) + bounds[idx] <= len(best):
                return False
            v = order[idx]
            clique.append(v)
            nxt = cand & nbr[v]
            if nxt:
                if expand(clique, nxt):
                    return True
            elif len(clique) > len(best):
                best = sorted(clique)
                if target is not None and len(best) >= target:
                    return True
            clique.pop()
            cand &= ~(1 << v)
        return False

    expand([], (1 << n) - 1)
    return best


def max_independent_set(n: int, edges: Iterable[tuple[int, int]], target: int | None = None) -> list[int]:
    """Largest stable set of the graph on ``range(n)`` with the given edges."""
    full = (1 << n) - 1
    adj = [0] * n
    for u, v in edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    comp = [full & ~adj[v] & ~(1 << v) for v in range(n)]
    return max_clique(n, comp, target)


def greedy_stable_set(n: int, edges: Iterable[tuple[int, int]]) -> list[int]:
    """Repeatedly take a minimum-degree vertex (ties: smallest) and delete its
    closed neighbourhood.  Size >= n / (average degree + 1)."""
    adj = [set() for _ in range(n)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    alive = set(range(n))
    chosen = []
    while alive:
        v = min(alive, key=lambda x: (len(adj[x] & alive), x))
        chosen.append(v)
        alive -= adj[v] | {v}
    return sorted(chosen)
