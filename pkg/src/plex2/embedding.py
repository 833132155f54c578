"""Simplicial embedding (containment) testing.

An embedding of a pure pattern complex into a host is an injective map of
the pattern's incident vertices into the host's vertices carrying every
pattern triangle onto a host triangle.  Extra edges never constrain the
search: patterns are pure and host edges beyond triangles are irrelevant.

The search backtracks over pattern vertices sorted by decreasing triangle
incidence (ties broken by label), filtering host candidates by triangle
counts, by edge degrees along already-mapped pattern edges, and by host
adjacency to mapped pattern neighbors before the decisive check that every
fully-mapped pattern triangle lands on a host triangle.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .complexes import Complex2, Tri


def embeds(pattern: Complex2, host: Complex2) -> Optional[dict[int, int]]:
    """Injective vertex map sending pattern triangles to host triangles, or None."""
    if pattern.extra_edges:
        raise ValueError("pattern must be pure (no extra edges)")
    if pattern.f == 0:
        raise ValueError("pattern must contain at least one triangle")
    if pattern.f > host.f:
        return None

    p_verts = sorted(pattern.incident_vertices())
    h_verts = sorted(host.incident_vertices())
    if len(p_verts) > len(h_verts):
        return None

    p_count = pattern.vertex_triangle_counts()
    h_count = host.vertex_triangle_counts()
    p_deg = pattern.degree_map()
    h_deg = host.degree_map()
    h_tris = host.triangles

    h_neighbors: dict[int, set[int]] = {v: set() for v in h_verts}
    for a, b in h_deg:
        h_neighbors[a].add(b)
        h_neighbors[b].add(a)

    p_tris_at: dict[int, list[Tri]] = {v: [] for v in p_verts}
    for t in pattern.triangles:
        for v in t:
            p_tris_at[v].append(t)
    p_edges_at: dict[int, list[tuple[int, int]]] = {v: [] for v in p_verts}
    for e in p_deg:
        p_edges_at[e[0]].append(e)
        p_edges_at[e[1]].append(e)

    order = sorted(p_verts, key=lambda v: (-p_count[v], v))
    base = {v: [w for w in h_verts if h_count[w] >= p_count[v]] for v in p_verts}

    mapping: dict[int, int] = {}
    used: set[int] = set()

    def assign(pos: int) -> bool:
        if pos == len(order):
            return True
        v = order[pos]
        candidates: Optional[set[int]] = None
        for e in p_edges_at[v]:
            u = e[0] if e[1] == v else e[1]
            if u in mapping:
                adj = h_neighbors[mapping[u]]
                candidates = set(adj) if candidates is None else candidates & adj
        pool = base[v] if candidates is None else [w for w in base[v] if w in candidates]
        for w in pool:
            if w in used:
                continue
            ok = True
            for e in p_edges_at[v]:
                u = e[0] if e[1] == v else e[1]
                if u in mapping:
                    image = tuple(sorted((mapping[u], w)))
                    if h_deg.get(image, 0) < p_deg[e]:
                        ok = False
                        break
            if ok:
                for t in p_tris_at[v]:
                    others = [u for u in t if u != v]
                    if all(u in mapping for u in others):
                        image_t = tuple(sorted([w] + [mapping[u] for u in others]))
                        if image_t not in h_tris:
                            ok = False
                            break
            if ok:
                mapping[v] = w
                used.add(w)
                if assign(pos + 1):
                    return True
                del mapping[v]
                used.discard(w)
        return False

    if assign(0):
        return dict(sorted(mapping.items()))
    return None


def check_embedding(pattern: Complex2, host: Complex2, vmap: dict[int, int]) -> bool:
    """Revalidate a witness: injectivity plus triangles landing on triangles."""
    incident = pattern.incident_vertices()
    if set(vmap) != set(incident):
        return False
    if len(set(vmap.values())) != len(vmap):
        return False
    for t in pattern.triangles:
        if tuple(sorted(vmap[v] for v in t)) not in host.triangles:
            return False
    return True


def contains_any(
    host: Complex2, members: Sequence
) -> Optional[tuple[int, dict[int, int]]]:
    """First catalog member embedding into the host, tried in increasing face count.

    Members may be complexes or objects with a ``complex`` attribute.  Returns
    (index into ``members``, witness) or None.
    """
    patterns = [getattr(m, "complex", m) for m in members]
    for idx in sorted(range(len(patterns)), key=lambda i: (patterns[i].f, i)):
        witness = embeds(patterns[idx], host)
        if witness is not None:
            return idx, witness
    return None
