"""Exact vertex/face density invariants.

mu(S) is the vertex count divided by the face count; mu_tilde(S) is the
minimum of mu over all nonempty face subsets, with vertices counted as the
vertices the chosen faces induce (isolated vertices can only raise the
ratio, so the minimum over subcomplexes is attained on pure subcomplexes
without isolated vertices).  All values are exact rationals.

Three interchangeable search methods are provided:

* ``exhaustive``      -- Gray-code walk over all 2^f - 1 nonempty face
                         subsets with O(1) work per step; the default up to
                         ``EXHAUSTIVE_LIMIT`` faces.
* ``branch_and_bound``-- include/exclude DFS over faces with the admissible
                         bound v0/(f0 + m): chosen vertices can never shrink
                         and at most m faces can still join.  The bound is
                         weak, so this is only practical up to ~20 faces;
                         it exists as an independently-coded cross-check.
* ``mincut``          -- exact minimum-ratio search by Dinkelbach iteration:
                         repeatedly maximize t*|F| - v(F) via a min-cut
                         (project-selection) subproblem with rational
                         capacities.  Each iteration strictly lowers the
                         achieved ratio t, so termination is finite; this
                         scales to the face counts the subset searches cannot
                         reach.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .complexes import Complex2, Tri

#: Largest face count for which mu_tilde defaults to the exhaustive search.
EXHAUSTIVE_LIMIT = 22

METHOD_EXHAUSTIVE = "exhaustive"
METHOD_BRANCH_AND_BOUND = "branch_and_bound"
METHOD_MINCUT = "mincut"


@dataclass(frozen=True)
class MuResult:
    """Minimum density plus a face subset attaining it."""

    value: Fraction
    witness: frozenset[Tri]
    method: str


def mu(c: Complex2) -> Fraction:
    """Vertex count over face count, as declared: every ambient vertex counts."""
    if c.f == 0:
        raise ValueError("mu is undefined for a complex without faces")
    return Fraction(c.n_vertices, c.f)


def mu_tilde(c: Complex2, method: str = "auto") -> MuResult:
    """Minimize induced-vertex count over face count across nonempty face subsets."""
    if c.f == 0:
        raise ValueError("mu_tilde is undefined for a complex without faces")
    faces = sorted(c.triangles)
    if method == "auto":
        method = METHOD_EXHAUSTIVE if len(faces) <= EXHAUSTIVE_LIMIT else METHOD_MINCUT
    if method == METHOD_EXHAUSTIVE:
        value, witness = _min_density_exhaustive(faces)
    elif method == METHOD_BRANCH_AND_BOUND:
        value, witness = _min_density_branch_and_bound(faces)
    elif method == METHOD_MINCUT:
        value, witness = _min_density_mincut(faces)
    else:
        raise ValueError(f"unknown mu_tilde method {method!r}")
    return MuResult(value, frozenset(witness), method)


def is_balanced(c: Complex2) -> bool:
    """True iff no proper face subset is denser than the whole complex."""
    return mu_tilde(c).value == mu(c)


def mu_tilde_max(complexes, method: str = "auto") -> Fraction:
    """Largest mu_tilde over a nonempty collection of complexes."""
    values = [mu_tilde(c, method=method).value for c in complexes]
    if not values:
        raise ValueError("mu_tilde_max of an empty collection")
    return max(values)


# -- exhaustive (Gray code) -------------------------------------------------


def _min_density_exhaustive(faces: list[Tri]) -> tuple[Fraction, list[Tri]]:
    nf_total = len(faces)
    verts = sorted({v for t in faces for v in t})
    vid = {v: i for i, v in enumerate(verts)}
    face_verts = [tuple(vid[v] for v in t) for t in faces]

    count = [0] * len(verts)
    mask = 0
    nv = 0
    nf = 0
    best_num = None  # type: int | None
    best_den = 1
    best_mask = 0
    # Gray code: subset index s toggles face ctz(s); visits every subset once.
    for s in range(1, 1 << nf_total):
        j = (s & -s).bit_length() - 1
        bit = 1 << j
        mask ^= bit
        if mask & bit:
            nf += 1
            for v in face_verts[j]:
                count[v] += 1
                if count[v] == 1:
                    nv += 1
        else:
            nf -= 1
            for v in face_verts[j]:
                count[v] -= 1
                if count[v] == 0:
                    nv -= 1
        if nf == 0:
            continue
        if best_num is None or nv * best_den < best_num * nf:
            best_num, best_den, best_mask = nv, nf, mask
        elif nv * best_den == best_num * nf:
            cand = [faces[i] for i in range(nf_total) if mask >> i & 1]
            cur = [faces[i] for i in range(nf_total) if best_mask >> i & 1]
            if cand < cur:
                best_mask = mask
    assert best_num is not None
    witness = [faces[i] for i in range(nf_total) if best_mask >> i & 1]
    return Fraction(best_num, best_den), witness


# -- branch and bound --------------------------------------------------------


def _min_density_branch_and_bound(faces: list[Tri]) -> tuple[Fraction, list[Tri]]:
    nf_total = len(faces)
    all_verts = {v for t in faces for v in t}
    best_value = Fraction(len(all_verts), nf_total)
    best_set = list(faces)

    count: dict[int, int] = {}

    def visit(idx: int, chosen: list[Tri], nv: int) -> None:
        nonlocal best_value, best_set
        nf = len(chosen)
        if nf:
            value = Fraction(nv, nf)
            if value < best_value or (value == best_value and chosen < best_set):
                best_value, best_set = value, list(chosen)
        if idx == nf_total:
            return
        remaining = nf_total - idx
        # Admissible: added faces contribute >= 0 new vertices.
        if nf + remaining > 0 and Fraction(nv, nf + remaining) >= best_value:
            return
        t = faces[idx]
        gained = 0
        for v in t:
            count[v] = count.get(v, 0) + 1
            if count[v] == 1:
                gained += 1
        chosen.append(t)
        visit(idx + 1, chosen, nv + gained)
        chosen.pop()
        for v in t:
            count[v] -= 1
        visit(idx + 1, chosen, nv)

    visit(0, [], 0)
    return best_value, best_set


# -- Dinkelbach iteration over min-cut subproblems ---------------------------


class _MaxFlow:
    """Edmonds-Karp max-flow with exact Fraction capacities."""

    def __init__(self, n_nodes: int):
        self.n = n_nodes
        self.adj: list[list[int]] = [[] for _ in range(n_nodes)]
        self.to: list[int] = []
        self.cap: list[Fraction] = []

    def add_edge(self, u: int, v: int, capacity: Fraction) -> None:
        self.adj[u].append(len(self.to))
        self.to.append(v)
        self.cap.append(capacity)
        self.adj[v].append(len(self.to))
        self.to.append(u)
        self.cap.append(Fraction(0))

    def max_flow(self, s: int, t: int) -> Fraction:
        total = Fraction(0)
        while True:
            parent_edge = [-1] * self.n
            parent_edge[s] = -2
            queue = [s]
            for u in queue:
                for ei in self.adj[u]:
                    v = self.to[ei]
                    if parent_edge[v] == -1 and self.cap[ei] > 0:
                        parent_edge[v] = ei
                        queue.append(v)
                if parent_edge[t] != -1:
                    break
            if parent_edge[t] == -1:
                return total
            bottleneck = None
            v = t
            while v != s:
                ei = parent_edge[v]
                if bottleneck is None or self.cap[ei] < bottleneck:
                    bottleneck = self.cap[ei]
                v = self.to[ei ^ 1]
            v = t
            while v != s:
                ei = parent_edge[v]
                self.cap[ei] -= bottleneck
                self.cap[ei ^ 1] += bottleneck
                v = self.to[ei ^ 1]
            total += bottleneck

    def source_side(self, s: int) -> set[int]:
        seen = {s}
        queue = [s]
        for u in queue:
            for ei in self.adj[u]:
                v = self.to[ei]
                if v not in seen and self.cap[ei] > 0:
                    seen.add(v)
                    queue.append(v)
        return seen


def _best_subset_for_ratio(faces: list[Tri], verts: list[int], t: Fraction) -> list[int]:
    """Face indices maximizing t*|F| - v(F) (project selection via min cut)."""
    vid = {v: i for i, v in enumerate(verts)}
    nf, nv = len(faces), len(verts)
    source, sink = nf + nv, nf + nv + 1
    flow = _MaxFlow(nf + nv + 2)
    huge = t * nf + nv + 1
    for i, face in enumerate(faces):
        flow.add_edge(source, i, t)
        for v in face:
            flow.add_edge(i, nf + vid[v], huge)
    for j in range(nv):
        flow.add_edge(nf + j, sink, Fraction(1))
    flow.max_flow(source, sink)
    side = flow.source_side(source)
    return [i for i in range(nf) if i in side]


def _min_density_mincut(faces: list[Tri]) -> tuple[Fraction, list[Tri]]:
    verts = sorted({v for t in faces for v in t})
    witness = list(range(len(faces)))
    ratio = Fraction(len(verts), len(faces))
    while True:
        subset = _best_subset_for_ratio(faces, verts, ratio)
        if not subset:
            break
        nv = len({v for i in subset for v in faces[i]})
        gain = ratio * len(subset) - nv
        if gain == 0:
            witness = subset
            break
        witness = subset
        ratio = Fraction(nv, len(subset))
    return ratio, [faces[i] for i in witness]
