from fractions import Fraction as F

from pwlext.complex_pq import FaceId, FaceKind
from pwlext.covering import all_tri_classes, build_graph, covered_sets, graph_to_dot, tri_class
from pwlext.delta_complex import DeltaFace, additive_faces, project


def TL(a, b, q=5):
    return FaceId(FaceKind.TRI_LOWER, (a, b), q)


def TU(a, b, q=5):
    return FaceId(FaceKind.TRI_UPPER, (a, b), q)


def V(a, b, q=5):
    return FaceId(FaceKind.VERTEX, (a, b), q)


def D(a, b, q=5):
    return FaceId(FaceKind.EDGE_D, (a, b), q)


def test_build_graph_patterns():
    faces = [
        DeltaFace(TL(0, 0), TU(1, 1), V(2, 2)),     # point edge, case a
        DeltaFace(TL(1, 1), D(4, 0), TL(6, 2)),     # diagonal edge, case b
        DeltaFace(TL(2, 2), TL(2, 2), TL(4, 4)),    # all triangles: seeds only
        DeltaFace(V(3, 3), V(3, 3), V(6, 6)),       # no triangles: ignored
    ]
    g = build_graph(faces, 5)
    assert frozenset((tri_class(TL(0, 0)), tri_class(TU(1, 1)))) in g.e_point
    assert frozenset((tri_class(TL(1, 1)), tri_class(TL(6, 2)))) in g.e_diag
    assert g.seeds1 == {tri_class(TL(1, 1)), tri_class(TL(6, 2))}
    assert g.seeds2 == {tri_class(TL(2, 2)), tri_class(TL(4, 4))}
    assert len(g.e_point) == 1 and len(g.e_diag) == 1


def test_build_graph_no_self_loops():
    faces = [DeltaFace(TL(0, 0), V(0, 0), TL(0, 0))]
    g = build_graph(faces, 5)
    assert not g.e_point and not g.e_diag


def test_graph_edges_undirected(golden):
    faces = additive_faces(golden)
    g = build_graph(faces, golden.q)
    for e in g.e_point | g.e_diag:
        assert len(e) == 2  # frozenset pair encodes both directions


def test_symmetry_relation_contributes_point_edge(golden):
    # F(I, f-I, {f}) links [I] and [f-I] whenever the classes differ
    faces = additive_faces(golden)
    g = build_graph(faces, golden.q)
    assert frozenset((tri_class(TL(0, 0)), tri_class(TU(1, 1)))) in g.e_point


def test_golden_type4_faces_feed_seeds_and_diag_edges(golden):
    faces = additive_faces(golden)
    g = build_graph(faces, golden.q)
    # the edge-projection face on two distinct triangle classes
    assert frozenset((tri_class(TL(2, 3)), tri_class(TU(4, 3)))) in g.e_diag
    # triangle projections of the diagonal-edge faces land in the weak seeds
    for c in (TL(2, 3), TU(4, 3), TL(3, 0), TU(3, 1), TL(4, 3), TU(2, 3)):
        assert tri_class(c) in g.seeds1


def test_cover_report_golden_regression(golden):
    cover = covered_sets(golden)
    assert not cover.fully_covered
    assert len(cover.s2) == 14
    assert len(cover.s1) == 20
    assert len(cover.bar_s2) == 14
    assert len(cover.bar_s1) == 6
    assert cover.seeds2 <= cover.s2
    assert cover.s2 <= cover.bar_s2
    assert not (cover.bar_s1 & cover.bar_s2)
    assert cover.bar_s2 <= cover.s1 | cover.s2
    # uncovered classes exist, so the point-flavor perturbation applies
    uncovered = set(all_tri_classes(5)) - (cover.s1 | cover.s2)
    assert uncovered


def test_cover_report_stripe_regression(stripe):
    cover = covered_sets(stripe)
    assert not cover.fully_covered
    # every triangle is at least weakly covered, and a band remains weak
    assert cover.s1 | cover.s2 == frozenset(all_tri_classes(5))
    assert cover.bar_s1
    # the weak band is closed under vertical/horizontal adjacency, so the
    # diagonal-flavor perturbation stays continuous on its boundary
    from pwlext.covering import _vh_neighbors
    for c in cover.bar_s1:
        comp = cover.gbar_component(c)
        for d in _vh_neighbors(c):
            assert d in comp


def test_cover_fully_covered_diag_embed(diag_embed):
    cover = covered_sets(diag_embed)
    assert cover.fully_covered
    assert cover.bar_s2 == frozenset(all_tri_classes(5))


def test_dot_dump(golden):
    dot = graph_to_dot(covered_sets(golden))
    assert dot.startswith("graph covering {")
    assert "--" in dot and dot.rstrip().endswith("}")
