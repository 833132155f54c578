"""Sampling of random 2-complexes with a full 1-skeleton.

A sample on n vertices keeps every vertex pair as an edge and includes each
of the C(n,3) triangles independently with probability p.  Inclusion is
decided by comparing p against a uniform draw indexed by the triangle's
colexicographic rank in a counter-based (Philox) stream keyed by the seed,
so samples are reproducible bit-for-bit and independent of evaluation order.
The full skeleton is kept implicit (a flag on the complex) so that large n
does not require materializing C(n,2) edges.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .complexes import Complex2, Tri

#: Second Philox key word; fixed so a seed alone identifies the stream.
_STREAM = 0x9E3779B97F4A7C15


@dataclass(frozen=True)
class ModelParams:
    """Parameters of one sample: vertex count, face probability, RNG seed."""

    n: int
    p: float
    seed: int

    def __post_init__(self) -> None:
        if self.n < 3:
            raise ValueError("need n >= 3")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError("p must lie in [0, 1]")


def colex_rank(t: Tri) -> int:
    """Rank of a sorted triple in colexicographic order."""
    i, j, k = t
    return math.comb(k, 3) + math.comb(j, 2) + i


def sample(params: ModelParams) -> Complex2:
    """Draw one complex from the model."""
    n, p = params.n, params.p
    m = math.comb(n, 3)
    key = np.array([params.seed % 2**64, _STREAM], dtype=np.uint64)
    uniforms = np.random.Generator(np.random.Philox(key=key)).random(m)
    ranks = np.flatnonzero(uniforms < p)

    cum3 = [math.comb(k, 3) for k in range(n + 1)]
    cum2 = [math.comb(j, 2) for j in range(n + 1)]
    tris = []
    for rank in ranks.tolist():
        k = bisect_right(cum3, rank) - 1
        rem = rank - cum3[k]
        j = bisect_right(cum2, rem) - 1
        tris.append((rem - cum2[j], j, k))
    return Complex2(n, frozenset(tris), frozenset(), full_skeleton=True)


def sample_complex(n: int, p: float, seed: int) -> Complex2:
    """Convenience wrapper around :func:`sample`."""
    return sample(ModelParams(n, p, seed))


@dataclass(frozen=True)
class DegreeHistogram:
    """Edge counts by degree.  For full-skeleton complexes the total is C(n,2)."""

    counts: dict[int, int]
    total_edges: int

    def observed(self, k: int) -> int:
        return self.counts.get(k, 0)


def degree_histogram(c: Complex2) -> DegreeHistogram:
    """Exact per-degree edge counts; degree-0 edges are synthesized from the
    skeleton flag (or taken from the extra edges) rather than stored."""
    deg = c.degree_map()
    counts = Counter(deg.values())
    if c.full_skeleton:
        total = math.comb(c.n_vertices, 2)
        zero = total - len(deg)
    else:
        total = len(deg) + len(c.extra_edges)
        zero = len(c.extra_edges)
    if zero:
        counts[0] += zero
    return DegreeHistogram(dict(counts), total)


def expected_degree_count(n: int, p: float, k: int) -> float:
    """Expected number of edges of degree k: C(n,2) C(n-2,k) p^k (1-p)^(n-2-k),
    evaluated in log space for stability."""
    if not 0 <= k <= n - 2:
        raise ValueError(f"degree k must lie in 0..{n - 2}")
    pairs = math.comb(n, 2)
    if p == 0.0:
        return float(pairs) if k == 0 else 0.0
    if p == 1.0:
        return float(pairs) if k == n - 2 else 0.0
    log_pmf = (
        math.lgamma(n - 1)
        - math.lgamma(k + 1)
        - math.lgamma(n - 1 - k)
        + k * math.log(p)
        + (n - 2 - k) * math.log1p(-p)
    )
    return pairs * math.exp(log_pmf)


def high_degree_bound(n: int, p: float, r: int) -> float:
    """First-moment bound n^(2+r) p^r / (1 - p n) on the probability that some
    edge has degree r or more; requires p*n < 1."""
    if p * n >= 1:
        raise ValueError("the bound requires p * n < 1")
    return n ** (2 + r) * p**r / (1.0 - p * n)
