"""Centered pseudo-surfaces: the iterated-star family and the forbidden catalogs.

A centered pseudo-surface is a pure, strongly connected complex of bounded
edge degree together with a distinguished center triangle.  The catalog for
parameters (k, r) collects, up to center-preserving isomorphism, every
r-pseudo-surface whose triangles all lie within dual distance k of the center
and whose center has collapse depth exactly k whenever a boundary exists.
A complex of degree at most r fails to collapse to a graph in k steps exactly
when one of these catalog members embeds into it, which is what makes the
finite list worth enumerating.

Enumeration grows complexes triangle by triangle from the center.  Every
member is reachable through growth states whose current center distances
already equal the final ones (add triangles in order of their distance to
the center), so states violating the distance cap can be pruned without
losing members.  Degree violations are monotone under growth and are pruned
as well.  States are deduplicated by an anchored canonical form.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Optional

from .collapse import collapse_depth
from .complexes import Complex2, Tri, tri_edges


@dataclass(frozen=True)
class PseudoSurface:
    """A complex with a distinguished center triangle and claimed parameters."""

    complex: Complex2
    center: Tri
    k: int
    r: int


def star_surface(k: int) -> PseudoSurface:
    """The surface grown from one triangle by k rounds of attaching a fresh
    triangle to every boundary edge.  Round i doubles the vertex count, so the
    result has 3*2^k vertices and 3*2^k - 2 faces.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    tris: set[Tri] = {(0, 1, 2)}
    n = 3
    for _ in range(k):
        snapshot = sorted(Complex2(n, frozenset(tris)).boundary())
        for a, b in snapshot:
            tris.add((a, b, n))
            n += 1
    return PseudoSurface(Complex2(n, frozenset(tris)), (0, 1, 2), k, 2)


def verify_membership(s: PseudoSurface) -> tuple[bool, str]:
    """Re-check every catalog condition from scratch; names the first failure."""
    c, center = s.complex, tuple(sorted(s.center))
    if center not in c.triangles:
        return False, "center is not a triangle of the complex"
    if not c.is_pure():
        return False, "complex is not pure"
    if not c.is_strongly_connected():
        return False, "complex is not strongly connected"
    if c.max_degree() > s.r:
        return False, f"edge degree exceeds {s.r}"
    dist = c.dual_distances_from(center)
    if any(d > s.k for d in dist.values()):
        return False, f"a triangle lies farther than {s.k} from the center"
    if c.boundary():
        depth = collapse_depth(c, center)
        if depth != s.k:
            return False, f"boundary is nonempty but center depth is {depth}, not {s.k}"
    return True, "ok"


# -- canonical forms -----------------------------------------------------------


def canonical_key(
    triangles: Iterable[Tri], anchor: Optional[Tri] = None
) -> tuple[Tri, ...]:
    """Canonical relabeled triangle list of a dual-connected complex.

    The key is the minimum, over a relabeling family that depends only on the
    isomorphism type, of the sorted triangle list; with ``anchor`` given, only
    relabelings sending the anchor to {0,1,2} are considered, so equal keys
    mean center-preserving isomorphism.  Labelings are generated by seeding a
    triangle with labels 0..2 and repeatedly labeling a vertex that completes
    a triangle with two labeled vertices, branching over vertices whose
    labeled-neighborhood signatures tie.
    """
    tris = frozenset(tuple(sorted(t)) for t in triangles)
    if not tris:
        return ()
    at_vertex: dict[int, list[Tri]] = {}
    for t in tris:
        for v in t:
            at_vertex.setdefault(v, []).append(t)
    n_verts = len(at_vertex)
    seeds = [tuple(sorted(anchor))] if anchor is not None else sorted(tris)
    if anchor is not None and seeds[0] not in tris:
        raise ValueError("anchor must be a triangle of the complex")

    best: Optional[tuple[Tri, ...]] = None

    def finish(label: dict[int, int]) -> None:
        nonlocal best
        relabeled = tuple(
            sorted(tuple(sorted((label[a], label[b], label[c]))) for a, b, c in tris)
        )
        if best is None or relabeled < best:
            best = relabeled

    def grow(label: dict[int, int]) -> None:
        if len(label) == n_verts:
            finish(label)
            return
        sig: dict[int, list[tuple[int, int]]] = {}
        for v, ts in at_vertex.items():
            if v in label:
                continue
            pairs = [
                tuple(sorted(label[u] for u in t if u != v))
                for t in ts
                if sum(u in label for u in t) == 2
            ]
            if pairs:
                sig[v] = sorted(pairs)  # type: ignore[assignment]
        if not sig:
            raise ValueError("canonical_key requires a dual-connected complex")
        target = min(sig.values())
        nxt = len(label)
        for v in sorted(sig):
            if sig[v] == target:
                label[v] = nxt
                grow(label)
                del label[v]

    for seed in seeds:
        for perm in permutations(seed):
            grow({perm[i]: i for i in range(3)})
    assert best is not None
    return best


# -- catalog enumeration ---------------------------------------------------------


def face_bound(k: int, r: int) -> int:
    """Upper bound on the face count of a catalog member for (k, r).

    A triangle at distance d+1 shares an edge with one at distance d; each of
    the <= 3*N_d edges at distance d can host at most r-1 further triangles,
    so N_{d+1} <= 3(r-1) N_d and f <= sum of (3(r-1))^i for i <= k.
    """
    q = 3 * (r - 1)
    return sum(q**i for i in range(k + 1))


def _default_supported(k: int, r: int) -> bool:
    return (r == 2 and k <= 2) or (k <= 1 and r <= 4) or k == 0


@dataclass(frozen=True)
class Catalog:
    """Enumerated forbidden surfaces for one (k, r), up to anchored isomorphism.

    ``truncated`` is set when the supplied limits are below the safe bounds,
    i.e. completeness is not guaranteed.  Members are listed in increasing
    (face count, vertex count, canonical form) order, each relabeled so its
    center is (0, 1, 2).
    """

    k: int
    r: int
    members: tuple[PseudoSurface, ...]
    truncated: bool
    face_limit: int
    vertex_limit: int
    unanchored_type_count: int

    def complexes(self) -> list[Complex2]:
        return [m.complex for m in self.members]


def enumerate_forbidden(
    k: int,
    r: int,
    max_faces: Optional[int] = None,
    max_vertices: Optional[int] = None,
) -> Catalog:
    """Enumerate the forbidden catalog for (k, r) by anchored growth search."""
    if k < 0 or r < 2:
        raise ValueError("need k >= 0 and r >= 2")
    safe_f = face_bound(k, r)
    safe_v = safe_f + 2
    if (max_faces is None or max_vertices is None) and not _default_supported(k, r):
        raise ValueError(
            f"(k={k}, r={r}) has no default limits; pass max_faces/max_vertices "
            "explicitly (the result is flagged truncated when they are too small)"
        )
    if max_faces is None:
        max_faces = safe_f
    if max_vertices is None:
        max_vertices = safe_v
    truncated = max_faces < safe_f or max_vertices < safe_v

    center: Tri = (0, 1, 2)
    start = frozenset([center])
    seen = {canonical_key(start, center)}
    queue: deque[tuple[frozenset[Tri], int]] = deque([(start, 3)])
    accepted: set[tuple[Tri, ...]] = set()

    while queue:
        tris, nv = queue.popleft()
        cpx = Complex2(nv, tris)
        if _accept(cpx, center, k):
            accepted.add(canonical_key(tris, center))
        if len(tris) >= max_faces:
            continue
        deg = cpx.degree_map()
        candidates: set[tuple[Tri, bool]] = set()
        for e, d in deg.items():
            if d >= r:
                continue
            for a in range(nv):
                if a in e:
                    continue
                t = tuple(sorted((e[0], e[1], a)))
                if t in tris:
                    continue
                if any(deg.get(e2, 0) >= r for e2 in tri_edges(t)):
                    continue
                candidates.add((t, False))  # type: ignore[arg-type]
            if nv < max_vertices:
                candidates.add((tuple(sorted((e[0], e[1], nv))), True))  # type: ignore[arg-type]
        for t, fresh in sorted(candidates):
            new_tris = tris | {t}
            new_nv = nv + 1 if fresh else nv
            new_cpx = Complex2(new_nv, new_tris)
            if any(d > k for d in new_cpx.dual_distances_from(center).values()):
                continue
            key = canonical_key(new_tris, center)
            if key not in seen:
                seen.add(key)
                queue.append((new_tris, new_nv))

    members = []
    for key in sorted(accepted, key=lambda ts: (len(ts), _n_verts(ts), ts)):
        n = _n_verts(key)
        members.append(PseudoSurface(Complex2(n, frozenset(key)), center, k, r))
    unanchored = len({canonical_key(m.complex.triangles) for m in members})
    return Catalog(k, r, tuple(members), truncated, max_faces, max_vertices, unanchored)


def _n_verts(key: tuple[Tri, ...]) -> int:
    return len({v for t in key for v in t})


def _accept(cpx: Complex2, center: Tri, k: int) -> bool:
    """Conditions on an already degree- and distance-legal growth state."""
    if cpx.boundary():
        return collapse_depth(cpx, center) == k
    return True


def embedding_minimal_flags(catalog: Catalog) -> list[bool]:
    """For each member, whether no other member embeds into it.

    The catalog as defined places no minimality requirement on its members;
    this reports the minimal sub-list for callers that want it.
    """
    from .embedding import embeds

    flags = []
    for i, m in enumerate(catalog.members):
        hosted = any(
            embeds(other.complex, m.complex) is not None
            for j, other in enumerate(catalog.members)
            if j != i
        )
        flags.append(not hosted)
    return flags
