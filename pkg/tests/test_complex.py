import pytest

from simpepist import gallery
from simpepist.complex import (SimplexError, SimplicialModel, SkeletonError, Vertex, canonical_key,
                               check_simplicial_map, dimension, faces, find_isomorphism,
                               is_full_pure, is_isomorphic, is_pure, m_skeleton, normalize,
                               skeleton_by_agents, validate)

ABC = {"p_a": "a", "p_b": "b", "p_c": "c"}


def raw(facets, colours, agents=("a", "b", "c")):
    verts = {v: Vertex(v, colours[v]) for v in colours}
    return SimplicialModel(tuple(agents), ABC, verts, tuple(frozenset(f) for f in facets))


def test_single_triangle_is_valid():
    assert validate(gallery.single_triangle()) == []


def test_non_chromatic_facet():
    m = raw([{"u", "v"}], {"u": "a", "v": "a"})
    assert any(p.startswith("non-chromatic") for p in validate(m))


def test_subsumed_facet_is_normalized():
    m = raw([{"u", "v"}, {"u", "v", "w"}], {"u": "a", "v": "b", "w": "c"})
    assert any(p.startswith("subsumed facet ['u', 'v']") for p in validate(m))
    assert normalize(m).facets == (frozenset({"u", "v", "w"}),)
    assert validate(normalize(m)) == []


def test_normalize_is_idempotent_on_bundled_models():
    for build in gallery.SIMPLICIAL.values():
        m = build()
        n = normalize(m)
        assert normalize(n).facets == n.facets == m.facets


def test_faces():
    assert faces({"v"}) == {frozenset({"v"})}
    assert faces({"v", "w"}) == {frozenset({"v"}), frozenset({"w"}), frozenset({"v", "w"})}
    assert len(faces({"u", "v", "w"})) == 7


def test_star_facets():
    cc = gallery.crash_complex()
    assert set(cc.star_facets({"v"})) == {frozenset(f) for f in ({"w", "v"}, {"v", "x", "z"}, {"v", "u"})}
    et = gallery.edge_triangle()
    assert set(et.star_facets({"a0"})) == {gallery.EDGE_X, gallery.TRIANGLE_Y}
    with pytest.raises(SimplexError, match="unknown simplex"):
        et.star_facets({"b1", "c1"})


def test_dimension_and_purity():
    tri = gallery.single_triangle()
    assert dimension(tri) == 2 and is_pure(tri) and is_full_pure(tri)
    et = gallery.edge_triangle()
    assert dimension(et) == 2 and not is_pure(et)
    assert not is_pure(gallery.crash_complex())
    edges = gallery.two_edges()
    assert is_pure(edges) and not is_full_pure(edges)


def test_skeleton_by_agents():
    et = gallery.edge_triangle()
    assert skeleton_by_agents(et, "abc").facets == et.facets
    sk = skeleton_by_agents(et, ["a", "b"])
    assert set(sk.facets) == {frozenset({"a0", "b1"}), frozenset({"a0", "b0"})}
    with pytest.raises(SkeletonError, match="empty skeleton"):
        skeleton_by_agents(gallery.two_edges(), ["d"])


def test_m_skeleton():
    tri = gallery.single_triangle()
    assert m_skeleton(tri, 2).facets == tri.facets
    assert set(m_skeleton(tri, 1).facets) == {frozenset(e) for e in
                                              ({"a0", "b1"}, {"a0", "c0"}, {"b1", "c0"})}
    assert set(m_skeleton(tri, 0).facets) == {frozenset({v}) for v in tri.vertices}
    with pytest.raises(SkeletonError):
        m_skeleton(tri, 3)


def test_isomorphism():
    et = gallery.edge_triangle()
    assert find_isomorphism(et, et) == {v: v for v in et.vertices}
    assert not is_isomorphic(et, gallery.single_triangle())
    # renamed copy
    ren = {v: v + "'" for v in et.vertices}
    copy = SimplicialModel.build(et.agents, et.variables,
                                 {ren[v]: Vertex(ren[v], x.agent, x.true) for v, x in et.vertices.items()},
                                 [{ren[v] for v in f} for f in et.facets])
    assert find_isomorphism(et, copy) == ren
    assert canonical_key(et) == canonical_key(copy)


def test_isomorphism_respects_values():
    a = gallery.two_triangles_share_a()
    b = gallery.pure_share_a()
    assert not is_isomorphic(a, b)


def test_simplicial_maps():
    et = gallery.edge_triangle()
    ident = {v: v for v in et.vertices}
    assert check_simplicial_map(ident, et, et, rigid=True, chromatic=True, value_preserving=True) == []
    # b1 -> b0 collapses the edge onto a face of the triangle: simplicial, rigid, not value preserving
    collapse = dict(ident, b1="b0")
    assert check_simplicial_map(collapse, et, et, rigid=True, chromatic=True) == []
    assert check_simplicial_map(collapse, et, et, value_preserving=True) == ["not value preserving at b1"]
    tri = gallery.single_triangle()
    swap = {"a0": "b1", "b1": "a0", "c0": "c0"}
    assert any("not chromatic" in p for p in check_simplicial_map(swap, tri, tri, chromatic=True))
    squash = {"a0": "a0", "b1": "a0", "c0": "c0"}
    problems = check_simplicial_map(squash, tri, tri, rigid=True)
    assert any(p.startswith("not rigid") for p in problems)
