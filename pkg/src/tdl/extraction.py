"""Constructive upper-bound machinery: coherent subfamilies, sunflowers, and
the pipeline that turns many images of a forest into a gadget subgraph."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
import math
from typing import Hashable, Sequence

from tdl._mis import max_independent_set
from tdl.constructions import (Gadget, Label, build_gadget, comp_deg,
                               is_labeled_gadget_embedding, label_str)
from tdl.counting import Embedding, count_images
from tdl.errors import CapacityError, ConsistencyError, DomainError, TdlError, ValidationError
from tdl.forest import Forest, alpha_s, low_degree_subforest, max_stable_set_forest, mixed_cover
from tdl.graph import Graph, density

MIS_GUARD = 200


def coherence_constant(h: int, t: int) -> int:
    """h!^2 t^h images always contain a coherent subfamily of size t."""
    return math.factorial(h) ** 2 * t ** h


def sunflower_constant(h: int, t: int) -> int:
    """h!(t-1)^h + 1 distinct h-sets always contain a t-sunflower."""
    return math.factorial(h) * (t - 1) ** h + 1


# -- coherence ---------------------------------------------------------------

def _assignment(e: Embedding | Sequence[int]) -> tuple[int, ...]:
    return e.assignment if isinstance(e, Embedding) else tuple(e)


def conflict_pairs(images: Sequence[Embedding]) -> list[tuple[int, int]]:
    """Pairs (i, j), i < j, where some x != y has images[i][x] == images[j][y]."""
    maps = [_assignment(e) for e in images]
    if len({len(a) for a in maps}) > 1:
        raise DomainError("images come from patterns of different sizes")
    inverse = [{hv: x for x, hv in enumerate(a)} for a in maps]
    out = []
    for i in range(len(maps)):
        inv = inverse[i]
        for j in range(i + 1, len(maps)):
            for y, hv in enumerate(maps[j]):
                x = inv.get(hv)
                if x is not None and x != y:
                    out.append((i, j))
                    break
    return out


def is_coherent(images: Sequence[Embedding]) -> bool:
    return not conflict_pairs(images)


def coherent_subfamily(images: Sequence[Embedding], t: int, guard: int = MIS_GUARD) -> list[int] | None:
    """Indices of a maximum coherent subfamily, or None if it has fewer than t members."""
    if len(images) > guard:
        raise CapacityError(f"{len(images)} images exceed the exact-search guard {guard}")
    best = max_independent_set(len(images), conflict_pairs(images))
    return best if len(best) >= t else None


# -- sunflowers ---------------------------------------------------------------

@dataclass(frozen=True)
class Sunflower:
    kernel: frozenset
    member_indices: tuple[int, ...]


def _check_family(family: Sequence[frozenset]) -> None:
    if len(set(family)) != len(family):
        raise ValidationError("family contains repeated sets")
    if len({len(x) for x in family}) > 1:
        raise ValidationError("family sets are not all the same size")


def is_sunflower(family: Sequence[frozenset], sf: Sunflower) -> bool:
    """Every pair of members meets exactly in the kernel."""
    members = [frozenset(family[i]) for i in sf.member_indices]
    if len(set(sf.member_indices)) != len(members):
        return False
    return all(members[a] & members[b] == sf.kernel
               for a in range(len(members)) for b in range(a + 1, len(members)))


def find_sunflower(family: Sequence[Sequence[Hashable]], t: int) -> Sunflower | None:
    """Erdos-Rado extraction of a t-sunflower.

    Take a maximal pairwise-disjoint subfamily greedily; if it is too small,
    recurse on the sets through the most frequent element (ties: smallest)
    with that element removed, adding it to the kernel.
    """
    if t < 2:
        raise DomainError("t must be at least 2")
    sets = [frozenset(x) for x in family]
    _check_family(sets)

    def search(current: dict[int, frozenset]) -> tuple[frozenset, list[int]] | None:
        taken, used = [], set()
        for i, x in current.items():
            if used.isdisjoint(x):
                taken.append(i)
                used |= x
                if len(taken) == t:
                    return frozenset(), taken
        counts = Counter(e for x in current.values() for e in x)
        if not counts:
            return None
        top = max(counts.values())
        if top < t:
            return None
        elem = min(e for e, c in counts.items() if c == top)
        found = search({i: x - {elem} for i, x in current.items() if elem in x})
        if found is None:
            return None
        return found[0] | {elem}, found[1]

    found = search(dict(enumerate(sets)))
    if found is None:
        return None
    sf = Sunflower(found[0], tuple(found[1]))
    if not is_sunflower(sets, sf):
        raise ConsistencyError(f"extracted family {sf} is not a sunflower")
    return sf


# -- witness extraction ------------------------------------------------------

class ExtractionFailure(TdlError):
    """The pipeline ran out of material at ``stage``."""

    def __init__(self, stage: str, required: int | None, available: int | None, detail: str = ""):
        msg = f"stage '{stage}' failed"
        if required is not None:
            msg += f": needed {required}, had {available}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)
        self.stage = stage
        self.required = required
        self.available = available


@dataclass
class WitnessResult:
    subtree: Forest
    subtree_vertices: list[int]          # pattern ids of U's vertices, U-vertex a is subtree_vertices[a]
    kernel_preimage: list[int]           # K
    kernel: list[int]                    # R, host vertices
    embedding: dict[Label, int]
    selected_images: list[int]           # indices into the caller's image list, in gadget copy order
    gadget: Gadget = field(repr=False)
    bucket_truncated: bool = False

    def to_json_obj(self) -> dict:
        ids = self.subtree_vertices
        emb = {}
        for (kind, a, i), hv in self.embedding.items():
            emb[label_str((kind, ids[a], i))] = hv
        return {"subtree_edges": [[ids[a], ids[b]] for a, b in self.subtree.edges()],
                "subtree_vertices": ids,
                "kernel_preimage": self.kernel_preimage,
                "embedding": emb}


def image_key(e: Embedding, y_vertices: Sequence[int], y_edges: Sequence[tuple[int, int]]) -> tuple:
    """Y_phi: the images of the cover's vertices and edges."""
    a = _assignment(e)
    return (frozenset(a[x] for x in y_vertices),
            frozenset(frozenset((a[x], a[y])) for x, y in y_edges))


def extract_witness(pattern: Graph, s: int, t: int, host: Graph,
                    images: Sequence[Embedding], guard: int = MIS_GUARD) -> WitnessResult:
    """Run the extraction proof on concrete images; raise ExtractionFailure when a stage runs dry."""
    pattern = Forest.from_graph(pattern)
    if s < 1 or t < 2:
        raise DomainError("need s >= 1 and t >= 2")
    for e in images:
        if not isinstance(e, Embedding):
            raise ValidationError("images must be Embedding objects")
        if not e.is_valid(pattern, host):
            raise ValidationError(f"{e.assignment} is not an image of the pattern in the host")

    # (1) low-degree set S, its subforest F, and a vertex/edge cover Y of F with |Y| = alpha(F)
    sub, S = low_degree_subforest(pattern, s)
    cover = mixed_cover(sub)
    y_vertices = [S[x] for x in cover.vertices]
    y_edges = [(S[a], S[b]) for a, b in cover.edges]
    if len(cover) != len(max_stable_set_forest(sub)):
        raise ConsistencyError("mixed cover size differs from alpha of the low-degree subforest")

    # (2) bucket images by Y_phi and keep a largest bucket
    buckets: dict[tuple, list[int]] = {}
    for idx, e in enumerate(images):
        buckets.setdefault(image_key(e, y_vertices, y_edges), []).append(idx)
    bucket = max(buckets.values(), key=len, default=[])
    if len(bucket) < t:
        raise ExtractionFailure("bucketing", t, len(bucket))
    truncated = len(bucket) > guard
    bucket = bucket[:guard]

    # (3) a maximum coherent subfamily
    chosen = coherent_subfamily([images[i] for i in bucket], t, guard)
    if chosen is None:
        best = len(max_independent_set(len(bucket), conflict_pairs([images[i] for i in bucket])))
        raise ExtractionFailure("coherence", t, best)
    family = [bucket[i] for i in chosen]

    # (4) coherent images have distinct vertex sets; take a t-sunflower of them
    vsets = [images[i].vertex_set() for i in family]
    if len(set(vsets)) != len(vsets):
        raise ConsistencyError("coherent images share a vertex set")
    sf = find_sunflower(vsets, t)
    if sf is None:
        raise ExtractionFailure("sunflower", t, len(family),
                                f"no {t}-sunflower among {len(family)} coherent vertex sets")
    members = [family[i] for i in sf.member_indices]
    R = sf.kernel

    # (5) kernel preimage K (independent of the member used) and a component U of T - K
    def preimage(i: int) -> frozenset[int]:
        a = images[i].assignment
        return frozenset(x for x in range(pattern.n) if a[x] in R)

    K = preimage(members[0])
    if any(preimage(i) != K for i in members[1:]):
        raise ConsistencyError("kernel preimage depends on the chosen sunflower member")
    if not set(S) <= K:
        raise ConsistencyError(f"low-degree set {S} not contained in kernel preimage {sorted(K)}")
    rest = [v for v in range(pattern.n) if v not in K]
    if not rest:
        raise ExtractionFailure("component", 1, 0, "T - K is empty, no component U")
    forest_minus_k, ids = pattern.induced_subgraph(rest)
    comps = forest_minus_k.components()
    comp = max(comps, key=lambda c: (len(c), -ids[c[0]]))
    u_ids = [ids[a] for a in comp]
    U, _ = pattern.induced_subgraph(u_ids)
    U = Forest.from_graph(U)

    # (6) assemble U^{s,t}: copies from the sunflower members, stars from phi_0(N_v)
    phi0 = images[members[0]].assignment
    mapping: dict[Label, int] = {}
    for a, v in enumerate(u_ids):
        need = comp_deg(U, s, a)
        n_v = sorted(w for w in pattern.neighbors(v) if w in K)
        if len(n_v) < need:
            raise ExtractionFailure("witness assembly", need, len(n_v),
                                    f"vertex {v} has too few kernel neighbours")
        for i, m in enumerate(members, start=1):
            mapping[("core", a, i)] = images[m].assignment[v]
        for j in range(1, need + 1):
            mapping[("star", a, j)] = phi0[n_v[j - 1]]
    gad = build_gadget(U, s, t)
    if not is_labeled_gadget_embedding(gad, mapping, host):
        raise ExtractionFailure("witness assembly", None, None, "assembled map is not a gadget embedding")
    return WitnessResult(U, u_ids, sorted(K), sorted(R), mapping, members, gad, truncated)


@dataclass(frozen=True)
class ThresholdReport:
    images: int
    n: int
    alpha: int
    rho: Fraction
    c_h: Fraction      # c6(h, c7(h,t)) * (rho+1)^h, the constant as stated
    c_k: Fraction      # same with (rho+1)^k, what the pigeonhole step actually needs

    @property
    def meets_stated(self) -> bool:
        return self.images >= self.c_h * self.n ** self.alpha

    @property
    def meets_pigeonhole(self) -> bool:
        return self.images >= self.c_k * self.n ** self.alpha


def upper_bound_threshold(pattern: Graph, s: int, t: int, host: Graph) -> ThresholdReport:
    """Compare I(T, G) against the extraction threshold c * n^alpha_s(T)."""
    h = pattern.n
    k = alpha_s(pattern, s).value
    rho = density(host)
    base = coherence_constant(h, sunflower_constant(h, t))
    return ThresholdReport(count_images(pattern, host).images, host.n, k, rho,
                           base * (rho + 1) ** h, base * (rho + 1) ** k)
