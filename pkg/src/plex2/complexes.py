"""Finite 2-dimensional simplicial complexes and their structural queries.

A complex is stored as a set of triangles (strictly sorted vertex triples)
plus an optional set of "extra" edges that are not contained in any triangle.
Extra edges exist to represent the 1-skeleton left over by collapses and the
full skeleton of sampled random complexes; they never duplicate an edge that
a triangle already induces.

Vertices are dense integers 0..n_vertices-1.  Isolated vertex labels are
permitted (they are part of the ambient vertex count) but carry no simplex.
Unreachable dual distances and never-collapsed depths are reported as the
dedicated sentinel ``INF`` (``math.inf``), never as a large integer.
"""

from __future__ import annotations

import math
from collections import Counter, deque
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterable, Optional

Tri = tuple[int, int, int]
Edge = tuple[int, int]

#: Sentinel for "no chain exists" / "survives every collapse".
INF = math.inf


def tri_edges(t: Tri) -> tuple[Edge, Edge, Edge]:
    """The three (sorted) edges of a sorted triangle."""
    i, j, k = t
    return ((i, j), (i, k), (j, k))


@dataclass(frozen=True)
class Complex2:
    """An immutable finite 2-complex.

    invariants (guaranteed by :meth:`from_triangles` and the JSON reader):
      * every index < n_vertices,
      * triangles strictly sorted and pairwise distinct,
      * extra_edges strictly sorted and disjoint from triangle-induced edges,
      * if full_skeleton is set, extra_edges is empty and every vertex pair
        counts as an edge of the complex.
    """

    n_vertices: int
    triangles: frozenset[Tri]
    extra_edges: frozenset[Edge] = frozenset()
    full_skeleton: bool = False

    # -- construction -------------------------------------------------

    @classmethod
    def from_triangles(
        cls,
        n_vertices: int,
        triangles: Iterable[Iterable[int]],
        extra_edges: Iterable[Iterable[int]] = (),
        full_skeleton: bool = False,
    ) -> "Complex2":
        """Build a normalized complex from raw vertex triples and pairs.

        Triples/pairs are sorted and deduplicated; extra edges that are the
        face of some triangle are dropped.  Raises ValueError on out-of-range
        or degenerate input.
        """
        if n_vertices < 0:
            raise ValueError("n_vertices must be nonnegative")
        tris = set()
        for raw in triangles:
            t = tuple(sorted(raw))
            if len(t) != 3 or len(set(t)) != 3:
                raise ValueError(f"degenerate triangle {tuple(raw)!r}: needs 3 distinct vertices")
            if t[0] < 0 or t[2] >= n_vertices:
                raise ValueError(f"triangle {t!r} out of range for n_vertices={n_vertices}")
            tris.add(t)  # type: ignore[arg-type]
        covered = {e for t in tris for e in tri_edges(t)}
        extras = set()
        for raw in extra_edges:
            e = tuple(sorted(raw))
            if len(e) != 2 or e[0] == e[1]:
                raise ValueError(f"degenerate edge {tuple(raw)!r}")
            if e[0] < 0 or e[1] >= n_vertices:
                raise ValueError(f"edge {e!r} out of range for n_vertices={n_vertices}")
            if e not in covered:
                extras.add(e)  # type: ignore[arg-type]
        if full_skeleton and extras:
            raise ValueError("full_skeleton complexes store no explicit extra edges")
        return cls(n_vertices, frozenset(tris), frozenset(extras), full_skeleton)

    # -- basic counts --------------------------------------------------

    @property
    def f(self) -> int:
        """Number of faces (triangles)."""
        return len(self.triangles)

    def incident_vertices(self) -> frozenset[int]:
        """Vertices lying in at least one triangle."""
        return frozenset(v for t in self.triangles for v in t)

    def vertex_triangle_counts(self) -> dict[int, int]:
        """Map vertex -> number of triangles containing it (incident only)."""
        counts: Counter[int] = Counter()
        for t in self.triangles:
            for v in t:
                counts[v] += 1
        return dict(counts)

    # -- edges and degrees ----------------------------------------------

    def degree_map(self) -> dict[Edge, int]:
        """Map from each triangle-induced edge to the number of triangles containing it."""
        deg: Counter[Edge] = Counter()
        for t in self.triangles:
            for e in tri_edges(t):
                deg[e] += 1
        return dict(deg)

    def edges(self) -> frozenset[Edge]:
        """All edges of the complex (triangle-induced, extra, or the full skeleton)."""
        if self.full_skeleton:
            return frozenset(combinations(range(self.n_vertices), 2))
        return frozenset(self.degree_map()) | self.extra_edges

    def edge_degree(self, e: Edge) -> int:
        """Number of triangles containing edge e.  Raises if e is not an edge of the complex."""
        e = tuple(sorted(e))  # type: ignore[assignment]
        deg = self.degree_map().get(e)
        if deg is not None:
            return deg
        if e in self.extra_edges:
            return 0
        if self.full_skeleton and 0 <= e[0] < e[1] < self.n_vertices:
            return 0
        raise ValueError(f"{e!r} is not an edge of the complex")

    def max_degree(self) -> int:
        """Maximal edge degree (0 for a triangle-free complex)."""
        deg = self.degree_map()
        return max(deg.values()) if deg else 0

    def boundary(self) -> frozenset[Edge]:
        """The free edges: those contained in exactly one triangle."""
        return frozenset(e for e, d in self.degree_map().items() if d == 1)

    def is_closed(self) -> bool:
        """True iff the boundary is empty (vacuously true without triangles)."""
        return not self.boundary()

    def is_pure(self) -> bool:
        """True iff every maximal simplex is a triangle, i.e. no extra edges exist."""
        if self.extra_edges:
            return False
        if self.full_skeleton:
            covered = set(self.degree_map())
            return len(covered) == math.comb(self.n_vertices, 2)
        return True

    def pure_part(self) -> "Complex2":
        """The union of all triangles; extra edges dropped, vertex count unchanged."""
        return Complex2(self.n_vertices, self.triangles)

    # -- dual graph ------------------------------------------------------

    def dual_adjacency(self) -> dict[Tri, list[Tri]]:
        """Adjacency of the dual graph: triangles sharing an edge."""
        by_edge: dict[Edge, list[Tri]] = {}
        for t in sorted(self.triangles):
            for e in tri_edges(t):
                by_edge.setdefault(e, []).append(t)
        adj: dict[Tri, list[Tri]] = {t: [] for t in self.triangles}
        for group in by_edge.values():
            for a in group:
                for b in group:
                    if a != b:
                        adj[a].append(b)
        return {t: sorted(set(ns)) for t, ns in adj.items()}

    def dual_distances_from(self, source: Tri) -> dict[Tri, float]:
        """BFS distances from source in the dual graph; unreachable triangles get INF."""
        source = tuple(sorted(source))  # type: ignore[assignment]
        if source not in self.triangles:
            raise ValueError(f"{source!r} is not a triangle of the complex")
        adj = self.dual_adjacency()
        dist: dict[Tri, float] = {t: INF for t in self.triangles}
        dist[source] = 0
        queue = deque([source])
        while queue:
            cur = queue.popleft()
            for nxt in adj[cur]:
                if dist[nxt] == INF:
                    dist[nxt] = dist[cur] + 1
                    queue.append(nxt)
        return dist

    def dual_distance(self, sigma: Tri, tau: Tri) -> float:
        """Length of a shortest chain of edge-adjacent triangles from sigma to tau (INF if none)."""
        tau = tuple(sorted(tau))  # type: ignore[assignment]
        if tau not in self.triangles:
            raise ValueError(f"{tau!r} is not a triangle of the complex")
        return self.dual_distances_from(sigma)[tau]

    def diameter(self) -> float:
        """Maximal dual distance over all triangle pairs.  Requires at least one triangle."""
        if not self.triangles:
            raise ValueError("diameter is undefined for a triangle-free complex")
        best: float = 0
        for t in self.triangles:
            for d in self.dual_distances_from(t).values():
                if d > best:
                    best = d
                    if best == INF:
                        return INF
        return best

    def is_strongly_connected(self) -> bool:
        """True iff the dual graph is connected (equivalently, diameter < INF)."""
        if not self.triangles:
            raise ValueError("strong connectivity is undefined for a triangle-free complex")
        start = min(self.triangles)
        return INF not in self.dual_distances_from(start).values()

    def is_pseudo_surface(self, r: int) -> bool:
        """True iff the complex is pure, strongly connected, and of degree at most r."""
        if r < 1:
            raise ValueError("degree cap r must be >= 1")
        if not self.triangles or not self.is_pure():
            return False
        return self.is_strongly_connected() and self.max_degree() <= r

    # -- homological counts ------------------------------------------------

    def euler_characteristic(self) -> int:
        """v - e + f over the full induced skeleton (ambient vertices included)."""
        if self.full_skeleton:
            n_edges = math.comb(self.n_vertices, 2)
        else:
            n_edges = len(self.degree_map()) + len(self.extra_edges)
        return self.n_vertices - n_edges + self.f

    def h2_rank_mod2(self) -> int:
        """Rank of the second homology over GF(2): f minus the rank of the
        triangle/edge incidence matrix mod 2 (there are no 3-cells, so the
        kernel of the boundary map is the whole of H2)."""
        edges = sorted(self.degree_map())
        index = {e: i for i, e in enumerate(edges)}
        pivots: dict[int, int] = {}
        rank = 0
        for t in sorted(self.triangles):
            row = 0
            for e in tri_edges(t):
                row |= 1 << index[e]
            while row:
                low = row & (-row)
                if low in pivots:
                    row ^= pivots[low]
                else:
                    pivots[low] = row
                    rank += 1
                    break
        return self.f - rank

    # -- serialization ------------------------------------------------------

    def to_json_dict(self) -> dict:
        out: dict = {
            "n_vertices": self.n_vertices,
            "triangles": [list(t) for t in sorted(self.triangles)],
            "extra_edges": [list(e) for e in sorted(self.extra_edges)],
        }
        if self.full_skeleton:
            out["full_skeleton"] = True
        return out


def complex_from_json(data: dict) -> Complex2:
    """Strict JSON reader for the complex format.

    Unlike :meth:`Complex2.from_triangles` this does not normalize: unsorted
    or duplicate entries are rejected with a descriptive error, so files
    round-trip exactly.
    """
    if not isinstance(data, dict):
        raise ValueError("complex JSON must be an object")
    try:
        n = data["n_vertices"]
        tris_raw = data["triangles"]
        extras_raw = data["extra_edges"]
    except KeyError as exc:
        raise ValueError(f"complex JSON missing key {exc}") from None
    if not isinstance(n, int) or n < 0:
        raise ValueError("n_vertices must be a nonnegative integer")
    full = bool(data.get("full_skeleton", False))
    tris: set[Tri] = set()
    for raw in tris_raw:
        t = tuple(raw)
        if len(t) != 3 or not all(isinstance(v, int) for v in t):
            raise ValueError(f"triangle {raw!r} must be a list of 3 integers")
        if not (t[0] < t[1] < t[2]):
            raise ValueError(f"triangle {raw!r} is not strictly sorted")
        if t[0] < 0 or t[2] >= n:
            raise ValueError(f"triangle {raw!r} out of range for n_vertices={n}")
        if t in tris:
            raise ValueError(f"duplicate triangle {raw!r}")
        tris.add(t)  # type: ignore[arg-type]
    covered = {e for t in tris for e in tri_edges(t)}
    extras: set[Edge] = set()
    for raw in extras_raw:
        e = tuple(raw)
        if len(e) != 2 or not all(isinstance(v, int) for v in e):
            raise ValueError(f"edge {raw!r} must be a list of 2 integers")
        if not e[0] < e[1]:
            raise ValueError(f"edge {raw!r} is not strictly sorted")
        if e[0] < 0 or e[1] >= n:
            raise ValueError(f"edge {raw!r} out of range for n_vertices={n}")
        if e in extras:
            raise ValueError(f"duplicate edge {raw!r}")
        if e in covered:
            raise ValueError(f"extra edge {raw!r} is already a face of a triangle")
        extras.add(e)  # type: ignore[arg-type]
    if full and extras:
        raise ValueError("full_skeleton complexes must list no extra edges")
    return Complex2(n, frozenset(tris), frozenset(extras), full)


# -- isomorphism ---------------------------------------------------------------


def _vertex_invariants(c: Complex2) -> dict[int, tuple]:
    deg = c.degree_map()
    tcount = c.vertex_triangle_counts()
    inv: dict[int, tuple] = {}
    for v in c.incident_vertices():
        around = sorted(d for e, d in deg.items() if v in e)
        inv[v] = (tcount[v], tuple(around))
    return inv


def are_isomorphic(
    a: Complex2,
    b: Complex2,
    anchor: Optional[tuple[Tri, Tri]] = None,
) -> Optional[dict[int, int]]:
    """Search for a bijection of incident vertices carrying triangles onto triangles.

    Only the pure parts matter: extra edges and isolated vertices are ignored.
    If ``anchor=(ta, tb)`` is given, the map must carry ta onto tb setwise.
    Returns a vertex mapping, or None when the complexes are not isomorphic.
    """
    if anchor is not None:
        ta, tb = (tuple(sorted(anchor[0])), tuple(sorted(anchor[1])))
        if ta not in a.triangles or tb not in b.triangles:
            raise ValueError("anchor must be a triangle of its complex")

    va, vb = sorted(a.incident_vertices()), sorted(b.incident_vertices())
    if len(va) != len(vb) or a.f != b.f:
        return None
    deg_a, deg_b = a.degree_map(), b.degree_map()
    if sorted(deg_a.values()) != sorted(deg_b.values()):
        return None
    inv_a, inv_b = _vertex_invariants(a), _vertex_invariants(b)
    if sorted(inv_a.values()) != sorted(inv_b.values()):
        return None

    if anchor is not None:
        seeds = [dict(zip(ta, perm)) for perm in permutations(tb)]
    else:
        seeds = [{}]

    tris_b = b.triangles
    tris_at_a: dict[int, list[Tri]] = {v: [] for v in va}
    for t in a.triangles:
        for v in t:
            tris_at_a[v].append(t)
    order = sorted(va, key=lambda v: (-inv_a[v][0], v))

    def extend(mapping: dict[int, int], used: set[int]) -> Optional[dict[int, int]]:
        if len(mapping) == len(va):
            return dict(mapping)
        v = next(u for u in order if u not in mapping)
        for w in vb:
            if w in used or inv_a[v] != inv_b[w]:
                continue
            ok = True
            for t in tris_at_a[v]:
                others = [u for u in t if u != v]
                if all(u in mapping for u in others):
                    image = tuple(sorted([w] + [mapping[u] for u in others]))
                    if image not in tris_b:
                        ok = False
                        break
            if ok:
                mapping[v] = w
                used.add(w)
                res = extend(mapping, used)
                if res is not None:
                    return res
                del mapping[v]
                used.discard(w)
        return None

    for seed in seeds:
        if len(set(seed.values())) != len(seed):
            continue
        if any(inv_a[v] != inv_b[w] for v, w in seed.items()):
            continue
        res = extend(dict(seed), set(seed.values()))
        if res is not None:
            return res
    return None
