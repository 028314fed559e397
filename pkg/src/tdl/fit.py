"""Desk-scale exponent fitting: build the blow-up instance at several n,
count copies exactly, and fit log(count) against log(n)."""

from __future__ import annotations

from dataclasses import dataclass
import math
import time
from typing import Sequence

from tdl.constructions import build_lower_bound_graph
from tdl.counting import count_copies
from tdl.errors import DomainError
from tdl.forest import Forest, alpha_s


@dataclass
class FitReport:
    points: list[tuple[int, int]]
    slope: float
    target: int
    tolerance: float
    partial: bool = False

    @property
    def within_tolerance(self) -> bool:
        return not self.partial and abs(self.slope - self.target) <= self.tolerance

    def to_json_obj(self) -> dict:
        return {"points": [list(p) for p in self.points], "slope": self.slope,
                "target": self.target, "tolerance": self.tolerance,
                "partial": self.partial, "ok": self.within_tolerance}


def least_squares_slope(points: Sequence[tuple[int, int]]) -> float:
    xs = [math.log(n) for n, _ in points]
    ys = [math.log(c) for _, c in points]
    mx, my = sum(xs) / len(xs), sum(ys) / len(ys)
    sxx = sum((x - mx) ** 2 for x in xs)
    if sxx == 0:
        raise DomainError("need at least two distinct n values")
    return sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sxx


def min_fit_n(t: Forest, s: int) -> int:
    return 2 * t.n + 2 * alpha_s(t, s).value


def run_fit(t: Forest, s: int, n_values: Sequence[int], tolerance: float = 0.2,
            time_budget: float | None = None, threads: int = 1) -> FitReport:
    """Count copies of t in the blow-up instance for each n and fit the exponent."""
    t = Forest.from_graph(t)
    ns = list(n_values)
    if len(ns) < 2:
        raise DomainError("need at least two n values")
    if any(b <= a for a, b in zip(ns, ns[1:])):
        raise DomainError("n values must be strictly increasing")
    floor = min_fit_n(t, s)
    if ns[0] < floor:
        raise DomainError(f"n values must be at least 2|V(T)|+2*alpha = {floor}")
    target = alpha_s(t, s).value
    start = time.monotonic()
    points = []
    partial = False
    for n in ns:
        if time_budget is not None and time.monotonic() - start > time_budget:
            partial = True
            break
        inst = build_lower_bound_graph(t, s, n)
        points.append((n, count_copies(t, inst.graph, threads=threads).copies))
    if len(points) < 2:
        return FitReport(points, math.nan, target, tolerance, True)
    return FitReport(points, least_squares_slope(points), target, tolerance, partial)
