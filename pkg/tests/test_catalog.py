"""Star surfaces, membership checks, and forbidden-catalog enumeration."""

import random

import pytest

from plex2 import (
    Complex2,
    INF,
    are_isomorphic,
    collapse_depth,
    collapse_number,
    is_collapsible,
)
from plex2.catalog import (
    PseudoSurface,
    canonical_key,
    embedding_minimal_flags,
    enumerate_forbidden,
    face_bound,
    star_surface,
    verify_membership,
)
from helpers import (
    TETRAHEDRON,
    cached_catalog,
    dedup_anchored,
    oracle_catalog_radius1,
    relabeled,
)

CENTER = (0, 1, 2)


def test_star_surface_counts():
    for k in range(7):
        s = star_surface(k)
        c = s.complex
        assert c.n_vertices == 3 * 2**k
        assert len(c.incident_vertices()) == 3 * 2**k
        assert c.f == 3 * 2**k - 2
        assert c.max_degree() <= 2


def test_star_surface_membership():
    for k in range(5):
        ok, reason = verify_membership(star_surface(k))
        assert ok, reason


def test_verify_membership_diagnostics():
    tetra_member = PseudoSurface(TETRAHEDRON, (0, 1, 2), 1, 2)
    ok, _ = verify_membership(tetra_member)
    assert ok  # closed: depth condition is vacuous, diameter 1 <= 1

    wrong_depth = PseudoSurface(star_surface(1).complex, CENTER, 2, 2)
    ok, reason = verify_membership(wrong_depth)
    assert not ok and "depth" in reason

    far = PseudoSurface(star_surface(2).complex, CENTER, 1, 2)
    ok, reason = verify_membership(far)
    assert not ok and "farther" in reason

    not_center = PseudoSurface(TETRAHEDRON, (0, 1, 9), 1, 2)
    ok, reason = verify_membership(not_center)
    assert not ok and "center" in reason

    impure = PseudoSurface(
        Complex2.from_triangles(5, [(0, 1, 2)], [(3, 4)]), CENTER, 0, 2
    )
    ok, reason = verify_membership(impure)
    assert not ok and "pure" in reason


def test_catalog_radius0():
    for r in (2, 3, 4):
        cat = enumerate_forbidden(0, r)
        assert len(cat.members) == 1
        assert cat.members[0].complex.f == 1
        assert not cat.truncated


def test_catalog_k1_r2_members():
    cat = cached_catalog(1, 2)
    assert len(cat.members) == 3
    assert sorted(len(m.complex.incident_vertices()) for m in cat.members) == [4, 5, 6]
    assert cat.unanchored_type_count == 3
    assert not cat.truncated
    for m in cat.members:
        ok, reason = verify_membership(m)
        assert ok, reason
    # the closed member is the tetrahedron, the 6-vertex one the flattened star
    closed = [m for m in cat.members if m.complex.is_closed()]
    assert len(closed) == 1
    assert are_isomorphic(closed[0].complex, TETRAHEDRON) is not None
    star = [m for m in cat.members if len(m.complex.incident_vertices()) == 6]
    assert are_isomorphic(star[0].complex, star_surface(1).complex) is not None


@pytest.mark.parametrize("r", [2, 3])
def test_catalog_k1_matches_labeled_oracle(r):
    cat = cached_catalog(1, r)
    oracle = oracle_catalog_radius1(r)
    assert len(cat.members) == len(oracle)
    # anchored canonical forms coincide as sets
    got = {canonical_key(m.complex.triangles, CENTER) for m in cat.members}
    want = {canonical_key(c.triangles, CENTER) for c in oracle}
    assert got == want


def test_catalog_members_all_verify():
    for k, r in ((1, 3), (2, 2)):
        cat = cached_catalog(k, r)
        for m in cat.members:
            ok, reason = verify_membership(m)
            assert ok, reason


def test_catalog_members_resist_k_collapses():
    for k, r in ((1, 2), (1, 3), (2, 2)):
        for m in cached_catalog(k, r).members:
            assert not is_collapsible(m.complex, k)
            if m.complex.is_closed():
                assert collapse_number(m.complex) == INF


def test_catalog_grows_with_degree_cap():
    small = cached_catalog(1, 2)
    large = cached_catalog(1, 3)
    keys = {canonical_key(m.complex.triangles, CENTER) for m in large.members}
    for m in small.members:
        assert canonical_key(m.complex.triangles, CENTER) in keys


def test_star_surface_found_by_enumeration():
    cat = cached_catalog(2, 2)
    s2 = star_surface(2)
    assert any(
        are_isomorphic(
            m.complex, s2.complex, anchor=(m.center, s2.center)
        )
        is not None
        for m in cat.members
    )


def test_truncation_flag():
    cat = enumerate_forbidden(1, 2, max_faces=2, max_vertices=12)
    assert cat.truncated
    assert not cat.members  # nothing with <= 2 faces has center depth 1
    assert face_bound(1, 2) == 4
    assert face_bound(2, 2) == 13


def test_unsupported_range_requires_limits():
    with pytest.raises(ValueError, match="limits"):
        enumerate_forbidden(2, 3)
    with pytest.raises(ValueError):
        enumerate_forbidden(-1, 2)
    with pytest.raises(ValueError):
        enumerate_forbidden(1, 1)


def test_canonical_key_invariant_under_relabeling():
    rng = random.Random(5)
    for m in cached_catalog(1, 3).members[:8]:
        c = m.complex
        verts = sorted(c.incident_vertices())
        for _ in range(3):
            target = list(verts)
            rng.shuffle(target)
            perm = dict(zip(verts, target))
            other = relabeled(c, perm, c.n_vertices)
            anchor_img = tuple(sorted(perm[v] for v in CENTER))
            assert canonical_key(other.triangles, anchor_img) == canonical_key(
                c.triangles, CENTER
            )


def test_canonical_key_separates_types():
    members = cached_catalog(1, 3).members
    keys = {canonical_key(m.complex.triangles, CENTER) for m in members}
    assert len(keys) == len(members)
    # and the permutation-oracle quotient agrees
    complexes = [m.complex for m in members]
    assert len(dedup_anchored(complexes, CENTER)) == len(members)


def test_minimal_flags():
    cat = cached_catalog(1, 2)
    assert embedding_minimal_flags(cat) == [True, True, True]
    cat22 = cached_catalog(2, 2)
    flags = embedding_minimal_flags(cat22)
    assert any(flags) and not all(flags)


def test_star_surface_rejects_negative():
    with pytest.raises(ValueError):
        star_surface(-1)


def test_member_path_union_certifies_density_bound():
    # a collapsing path to the center has k+1 faces on at most k+3 vertices,
    # so members with boundary admit a subcomplex of density <= 1 + 2/(k+1)
    from fractions import Fraction

    from plex2 import collapsing_paths, mu_tilde

    for k, r in ((1, 2), (1, 3), (2, 2)):
        bound = 1 + Fraction(2, k + 1)
        for m in cached_catalog(k, r).members:
            c = m.complex
            if c.boundary():
                path = collapsing_paths(c, m.center, limit=1).paths[0]
                assert len(path) == k + 1
                verts = {v for t in path for v in t}
                assert len(verts) <= k + 3
                assert Fraction(len(verts), len(path)) <= bound
            assert mu_tilde(c).value <= bound


def test_catalog_min_density_sandwich():
    # the largest member min-density sits between the star-surface value and
    # the path-union bound, for every enumerated catalog
    from fractions import Fraction

    from plex2 import mu_tilde_max

    for k, r in ((0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (2, 2)):
        cat = cached_catalog(k, r)
        value = mu_tilde_max(cat.complexes())
        lower = 1 + 1 / (Fraction(3 * 2**k, 2) - 1)
        upper = 1 + Fraction(2, k + 1)
        assert lower <= value <= upper, (k, r, value)
