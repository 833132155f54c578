"""Shared fixtures and independent brute-force oracles for the test suite.

The oracles deliberately avoid the library's search code: isomorphism is
decided by trying every vertex permutation, embeddings by trying every
injective vertex map, and catalog enumeration by filtering all labeled
complexes of the right shape.  They are slow but obviously correct.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations

from plex2 import Complex2
from plex2.catalog import enumerate_forbidden


@lru_cache(maxsize=None)
def cached_catalog(k: int, r: int):
    """Catalogs are pure values; share them across test modules."""
    return enumerate_forbidden(k, r)

TETRAHEDRON = Complex2.from_triangles(4, [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)])

OCTAHEDRON = Complex2.from_triangles(
    6,
    [
        (0, 2, 4), (0, 2, 5), (0, 3, 4), (0, 3, 5),
        (1, 2, 4), (1, 2, 5), (1, 3, 4), (1, 3, 5),
    ],
)

# Vertex-minimal triangulated torus on 7 vertices: faces {i, i+1, i+3} and
# {i, i+2, i+3} mod 7 give v=7, e=21, f=14 with every edge in two faces.
TORUS7 = Complex2.from_triangles(
    7,
    [tuple(sorted(((i) % 7, (i + 1) % 7, (i + 3) % 7))) for i in range(7)]
    + [tuple(sorted(((i) % 7, (i + 2) % 7, (i + 3) % 7))) for i in range(7)],
)

# Two tetrahedra glued along a face (denser than one vertex per face) plus a
# pendant triangle: the pendant raises mu above mu_tilde.
UNBALANCED = Complex2.from_triangles(
    6,
    [
        (0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3),
        (0, 1, 4), (0, 2, 4), (1, 2, 4),
        (0, 3, 5),
    ],
)
TWO_TETRA = Complex2.from_triangles(
    5,
    [
        (0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3),
        (0, 1, 4), (0, 2, 4), (1, 2, 4),
    ],
)


def full_complex(n: int) -> Complex2:
    """Every triple on n vertices."""
    return Complex2.from_triangles(n, combinations(range(n), 3))


def random_complex(rng: random.Random, n: int, p: float) -> Complex2:
    """Plain Bernoulli face selection without the model's skeleton flag."""
    tris = [t for t in combinations(range(n), 3) if rng.random() < p]
    return Complex2.from_triangles(n, tris)


def random_subcomplex(rng: random.Random, c: Complex2, keep: float) -> Complex2:
    tris = [t for t in sorted(c.triangles) if rng.random() < keep]
    return Complex2(c.n_vertices, frozenset(tris))


def relabeled(c: Complex2, perm: dict[int, int], n_vertices: int) -> Complex2:
    tris = [tuple(sorted(perm[v] for v in t)) for t in c.triangles]
    return Complex2.from_triangles(n_vertices, tris)


# -- oracles -------------------------------------------------------------------


def oracle_isomorphic(a: Complex2, b: Complex2) -> bool:
    """All-permutations isomorphism test on incident vertices (<= 8 each)."""
    va, vb = sorted(a.incident_vertices()), sorted(b.incident_vertices())
    if len(va) != len(vb) or a.f != b.f:
        return False
    for perm in permutations(vb):
        vmap = dict(zip(va, perm))
        if {tuple(sorted(vmap[v] for v in t)) for t in a.triangles} == set(b.triangles):
            return True
    return False


def oracle_embedding(pattern: Complex2, host: Complex2):
    """Exhaustive injective-map search; returns a witness dict or None."""
    pv = sorted(pattern.incident_vertices())
    hv = sorted(host.incident_vertices())
    if len(pv) > len(hv):
        return None
    for image in permutations(hv, len(pv)):
        vmap = dict(zip(pv, image))
        if all(
            tuple(sorted(vmap[v] for v in t)) in host.triangles
            for t in pattern.triangles
        ):
            return vmap
    return None


def oracle_min_density(c: Complex2):
    """Minimum of induced-vertex count over face count, by direct subset loop."""
    faces = sorted(c.triangles)
    best = None
    for size in range(1, len(faces) + 1):
        for subset in combinations(faces, size):
            verts = {v for t in subset for v in t}
            value = Fraction(len(verts), size)
            if best is None or value < best:
                best = value
    return best


def oracle_anchored_isomorphic(a: Complex2, b: Complex2, center) -> bool:
    """Permutation search for an isomorphism fixing the center setwise."""
    va, vb = sorted(a.incident_vertices()), sorted(b.incident_vertices())
    if len(va) != len(vb) or a.f != b.f:
        return False
    rest_a = [v for v in va if v not in center]
    rest_b = [v for v in vb if v not in center]
    target = set(b.triangles)
    for cperm in permutations(center):
        head = dict(zip(center, cperm))
        for perm in permutations(rest_b, len(rest_a)):
            vmap = {**head, **dict(zip(rest_a, perm))}
            if {tuple(sorted(vmap[v] for v in t)) for t in a.triangles} == target:
                return True
    return False


def _invariant_bucket(c: Complex2, center) -> tuple:
    deg = c.degree_map()
    return (
        len(c.incident_vertices()),
        c.f,
        tuple(sorted(deg.values())),
        tuple(sorted(c.vertex_triangle_counts().values())),
        tuple(sorted(deg[e] for e in combinations(center, 2))),
    )


def dedup_anchored(complexes: list[Complex2], center) -> list[Complex2]:
    """Quotient by center-anchored isomorphism using the permutation oracle,
    prefiltered by cheap invariants."""
    buckets: dict[tuple, list[Complex2]] = {}
    types: list[Complex2] = []
    for c in complexes:
        key = _invariant_bucket(c, center)
        group = buckets.setdefault(key, [])
        if not any(oracle_anchored_isomorphic(c, t, center) for t in group):
            group.append(c)
            types.append(c)
    return types


def oracle_catalog_radius1(r: int) -> list[Complex2]:
    """Labeled enumeration of all catalog members for k=1 and degree cap r.

    Every triangle other than the center shares an edge with the center (dual
    distance 1), so a member is the center plus at most r-1 flaps per center
    edge; up to relabeling the flap apexes live in a pool of 3(r-1) labels.
    Filters: degree cap on every edge, and center depth exactly 1 when a
    boundary exists.
    """
    from plex2 import collapse_depth

    center = (0, 1, 2)
    pool = list(range(3, 3 + 3 * (r - 1)))
    options = []
    for size in range(r):
        options.extend(combinations(pool, size))

    candidates = []
    for flaps01 in options:
        for flaps02 in options:
            for flaps12 in options:
                tris = {center}
                for (a, b), apexes in zip(
                    ((0, 1), (0, 2), (1, 2)), (flaps01, flaps02, flaps12)
                ):
                    for apex in apexes:
                        tris.add(tuple(sorted((a, b, apex))))
                c = Complex2.from_triangles(3 + len(pool), tris)
                if c.max_degree() > r:
                    continue
                if c.boundary() and collapse_depth(c, center) != 1:
                    continue
                candidates.append(c)
    return dedup_anchored(candidates, center)
