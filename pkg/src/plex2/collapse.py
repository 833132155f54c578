"""Simplicial collapse of 2-complexes.

One collapse step simultaneously removes every free triangle (a triangle
with at least one edge of degree 1).  Iterating the step either empties the
triangle set ("graph" terminal) or stabilizes on a nonempty complex with no
free edges ("closed" terminal).  The depth of a triangle is the index of the
last stage still containing it; triangles of a closed residue have depth INF.

All functions here act on the pure part: the leftover 1-skeleton does not
influence the dynamics.  :func:`collapse_step_tracked` additionally keeps the
discarded skeleton for callers that want the literal remainder graph; the
removed free edge of each collapsed triangle is chosen as its
lexicographically smallest free edge, which keeps runs reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complexes import INF, Complex2, Edge, Tri, tri_edges

TERMINAL_GRAPH = "graph"
TERMINAL_CLOSED = "closed"


@dataclass(frozen=True)
class CollapseTrace:
    """Full collapse history of a complex.

    stages[i] is the triangle set of the i-th stage; stages are strictly
    decreasing and the last one is either empty (terminal "graph") or stable
    (terminal "closed").  ``steps`` is the number of steps performed until
    the terminal stage.  A triangle belongs to stages[i] iff its depth >= i.
    """

    stages: tuple[frozenset[Tri], ...]
    depths: dict[Tri, float]
    terminal: str
    steps: int


def _free_triangles(tris: frozenset[Tri]) -> frozenset[Tri]:
    deg: dict[Edge, int] = {}
    for t in tris:
        for e in tri_edges(t):
            deg[e] = deg.get(e, 0) + 1
    return frozenset(t for t in tris if any(deg[e] == 1 for e in tri_edges(t)))


def collapse_step(c: Complex2) -> Complex2:
    """Remove every free triangle at once; returns the pure part of the result."""
    survivors = c.triangles - _free_triangles(c.triangles)
    return Complex2(c.n_vertices, survivors)


def collapse_step_tracked(c: Complex2) -> Complex2:
    """One collapse step keeping the leftover 1-skeleton as extra edges.

    Each removed triangle takes its lexicographically smallest free edge with
    it; the rest of its edges stay in the complex.  Materializes the skeleton,
    so intended for small complexes.
    """
    deg = c.degree_map()
    free = _free_triangles(c.triangles)
    removed_edges = {min(e for e in tri_edges(t) if deg[e] == 1) for t in free}
    survivors = c.triangles - free
    kept = (frozenset(deg) | c.edges()) - removed_edges
    induced = {e for t in survivors for e in tri_edges(t)}
    return Complex2(c.n_vertices, survivors, frozenset(kept - induced))


def collapse_sequence(c: Complex2) -> CollapseTrace:
    """Iterate collapse steps until the triangle set is empty or stable."""
    stages: list[frozenset[Tri]] = [frozenset(c.triangles)]
    while True:
        cur = stages[-1]
        if not cur:
            terminal = TERMINAL_GRAPH
            break
        free = _free_triangles(cur)
        if not free:
            terminal = TERMINAL_CLOSED
            break
        stages.append(cur - free)

    steps = len(stages) - 1
    depths: dict[Tri, float] = {}
    for i, stage in enumerate(stages):
        for t in stage:
            depths[t] = i
    if terminal == TERMINAL_CLOSED:
        for t in stages[-1]:
            depths[t] = INF
    return CollapseTrace(tuple(stages), depths, terminal, steps)


def collapse_depth(c: Complex2, sigma: Tri) -> float:
    """Index of the last collapse stage containing sigma (INF for residue members)."""
    sigma = tuple(sorted(sigma))  # type: ignore[assignment]
    if sigma not in c.triangles:
        raise ValueError(f"{sigma!r} is not a triangle of the complex")
    return collapse_sequence(c).depths[sigma]


def is_collapsible(c: Complex2, k: int) -> bool:
    """True iff k collapse steps suffice to leave a graph (no triangles)."""
    if k < 0:
        raise ValueError("step budget k must be >= 0")
    trace = collapse_sequence(c)
    return trace.terminal == TERMINAL_GRAPH and trace.steps <= k


def collapse_number(c: Complex2) -> float:
    """Minimal number of steps collapsing the complex to a graph, INF if impossible."""
    trace = collapse_sequence(c)
    return trace.steps if trace.terminal == TERMINAL_GRAPH else INF


@dataclass(frozen=True)
class PathSearch:
    """Result of collapsing-path enumeration; truncated marks a hit enumeration cap."""

    paths: tuple[tuple[Tri, ...], ...]
    truncated: bool


def _level_predecessors(c: Complex2, trace: CollapseTrace) -> dict[Tri, list[Tri]]:
    """For each triangle of finite depth d >= 1, its depth-(d-1) edge-neighbors."""
    adj = c.dual_adjacency()
    preds: dict[Tri, list[Tri]] = {}
    for t, d in trace.depths.items():
        if d == INF or d == 0:
            continue
        preds[t] = sorted(u for u in adj[t] if trace.depths[u] == d - 1)
    return preds


def collapsing_paths(c: Complex2, sigma: Tri, limit: int = 10**6) -> PathSearch:
    """All chains sigma_0..sigma_d ending at sigma with depth(sigma_i) = i and
    consecutive triangles sharing an edge, found by backward search through
    depth levels.  Enumeration stops (truncated=True) once ``limit`` paths
    are collected.
    """
    if limit < 1:
        raise ValueError("limit must be >= 1")
    sigma = tuple(sorted(sigma))  # type: ignore[assignment]
    if sigma not in c.triangles:
        raise ValueError(f"{sigma!r} is not a triangle of the complex")
    trace = collapse_sequence(c)
    depth = trace.depths[sigma]
    if depth == INF:
        raise ValueError("no collapsing paths: the triangle survives every collapse")
    if depth == 0:
        return PathSearch(((sigma,),), False)

    preds = _level_predecessors(c, trace)
    paths: list[tuple[Tri, ...]] = []
    truncated = False

    def descend(partial: list[Tri]) -> bool:
        """Extend a partial path backwards; returns False when the cap is hit."""
        head = partial[-1]
        if trace.depths[head] == 0:
            paths.append(tuple(reversed(partial)))
            return len(paths) < limit
        for u in preds[head]:
            partial.append(u)
            alive = descend(partial)
            partial.pop()
            if not alive:
                return False
        return True

    if not descend([sigma]):
        truncated = True
    return PathSearch(tuple(paths), truncated)


def _reachable_starts(c: Complex2, trace: CollapseTrace, sigma: Tri) -> set[Tri]:
    """Depth-0 triangles from which some collapsing path reaches sigma."""
    preds = _level_predecessors(c, trace)
    frontier = {sigma}
    d = trace.depths[sigma]
    while d > 0:
        frontier = {u for t in frontier for u in preds[t]}
        d -= 1
    return frontier


def accessible_boundary(c: Complex2, sigma: Tri) -> frozenset[Edge]:
    """Boundary edges of the complex lying on the initial triangle of some
    collapsing path to sigma.  Empty exactly when sigma has infinite depth
    (then no path exists); this is not an error.
    """
    sigma = tuple(sorted(sigma))  # type: ignore[assignment]
    if sigma not in c.triangles:
        raise ValueError(f"{sigma!r} is not a triangle of the complex")
    trace = collapse_sequence(c)
    if trace.depths[sigma] == INF:
        return frozenset()
    bd = c.pure_part().boundary()
    starts = _reachable_starts(c, trace, sigma)
    return frozenset(e for s in starts for e in tri_edges(s) if e in bd)


def accessible_boundary_via(c: Complex2, sigma: Tri, e: Edge) -> frozenset[Edge]:
    """Accessible boundary restricted to paths whose final shared edge is e.

    Defined only for triangles of depth >= 1 (for a free triangle no final
    shared edge exists); returns the empty set when the depth is infinite.
    """
    sigma = tuple(sorted(sigma))  # type: ignore[assignment]
    e = tuple(sorted(e))  # type: ignore[assignment]
    if sigma not in c.triangles:
        raise ValueError(f"{sigma!r} is not a triangle of the complex")
    if e not in tri_edges(sigma):
        raise ValueError(f"{e!r} is not an edge of {sigma!r}")
    trace = collapse_sequence(c)
    depth = trace.depths[sigma]
    if depth == 0:
        raise ValueError("accessible boundary through an edge requires depth >= 1")
    if depth == INF:
        return frozenset()
    bd = c.pure_part().boundary()
    out: set[Edge] = set()
    for t in c.triangles:
        if t != sigma and e in tri_edges(t) and trace.depths[t] == depth - 1:
            starts = _reachable_starts(c, trace, t)
            out.update(edge for s in starts for edge in tri_edges(s) if edge in bd)
    return frozenset(out)
