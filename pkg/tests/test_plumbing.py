import random
from fractions import Fraction

import pytest

from branchlink.semigroup import derive_from_generators, random_plane_semigroup
from branchlink.qres import compute_qresolution
from branchlink.detcalc import LinkKind, classify_link, det_S
from branchlink.plumbing import (
    NotNegativeDefinite,
    PlumbingGraph,
    Vertex,
    assemble_full_resolution,
    classify_topologically,
    graph_determinant,
    h1_link,
    integer_intersection_matrix,
    is_negative_definite,
    minimize,
    pullback_on_full_resolution,
    to_dot,
    to_json_dict,
)
from branchlink import _linalg
from conftest import naive_det, random_zhs_semigroup


def graph_of(beta):
    return assemble_full_resolution(compute_qresolution(derive_from_generators(beta)))


def chain_graph(kappas):
    verts = tuple(
        Vertex(vid=i, genus=0, self_int=-k, label=f"c{i}") for i, k in enumerate(kappas)
    )
    edges = tuple((i, i + 1) for i in range(len(kappas) - 1))
    return PlumbingGraph(vertices=verts, edges=edges, strict=((),))


def test_worked_example_graph_shape():
    pg = graph_of((8, 12, 26, 53))
    # two level-1 curves at -2, the last curve at -1, four order-3 chains,
    # two chains with weights (3, 2, 2)
    assert pg.n == 13
    assert pg.is_tree()
    by_label = {v.label: v for v in pg.vertices}
    assert by_label["E1.1"].self_int == -2
    assert by_label["E1.2"].self_int == -2
    assert by_label["E2.1"].self_int == -1
    assert sum(1 for v in pg.vertices if v.self_int == -3) == 4 + 2
    assert all(v.genus == 0 for v in pg.vertices)


def test_worked_example_determinant_and_h1():
    pg = graph_of((8, 12, 26, 53))
    full = integer_intersection_matrix(pg)
    assert graph_determinant(pg) == 117
    assert abs(naive_det(full)) == 117  # independent cofactor oracle (13x13)
    assert graph_determinant(pg) == det_S(derive_from_generators((8, 12, 26, 53)))
    h1 = h1_link(pg)
    assert h1.free_rank == 0
    assert h1.torsion_order == 117
    for a, b in zip(h1.torsion, h1.torsion[1:]):
        assert b % a == 0


def test_worked_example_pullback_multiplicities():
    cd = derive_from_generators((8, 12, 26, 53))
    qr = compute_qresolution(cd)
    pg = assemble_full_resolution(qr)
    mult = pullback_on_full_resolution(pg, qr)
    values = {pg.vertices[v].label: m for v, m in mult.items()}
    assert values["E1.1"] == values["E1.2"] == 6
    assert values["E2.1"] == 26
    for label, m in values.items():
        if label.startswith("Q0"):
            assert m == 2
    for j in (1, 2):
        chain = sorted(m for label, m in values.items() if label.startswith(f"Q12[{j}]"))
        assert chain == [8, 10, 12]
    # the strict transform of the curve meets the last curve twice
    assert pg.arrow == ((next(v.vid for v in pg.vertices if v.label == "E2.1"), 2),)


def test_strict_transform_vertices_are_marked():
    cd = derive_from_generators((70, 105, 215, 1511))
    qr = compute_qresolution(cd)
    pg = assemble_full_resolution(qr)
    strict_ids = {v for level in pg.strict for v in level}
    chain_ids = {v.vid for v in pg.vertices} - strict_ids
    assert len(strict_ids) == sum(qr.r[1:])
    assert chain_ids  # coprime data still carries nontrivial chains here


def test_e8_graph_from_g2_example():
    cd = derive_from_generators((6, 10, 31))
    qr = compute_qresolution(cd)
    pg = assemble_full_resolution(qr)
    assert pg.n == 8
    assert all(v.self_int == -2 and v.genus == 0 for v in pg.vertices)
    degrees = sorted(pg.degree(v.vid) for v in pg.vertices)
    assert degrees == [1, 1, 1, 2, 2, 2, 2, 3]
    assert graph_determinant(pg) == 1
    assert classify_topologically(pg).kind is LinkKind.ZHS
    mult = pullback_on_full_resolution(pg, qr)
    values = {pg.vertices[v].label: m for v, m in mult.items()}
    assert values["E1.1"] == 30
    assert sorted(values.values()) == [6, 10, 12, 16, 18, 20, 24, 30]


def test_single_chain_graphs():
    assert graph_determinant(chain_graph((5,))) == 5
    pg = chain_graph((3, 2, 2))
    assert graph_determinant(pg) == 7
    # deleting an end vertex leaves the two sub-chain determinants q', q
    assert graph_determinant(chain_graph((3, 2))) == 5
    assert graph_determinant(chain_graph((2, 2))) == 3
    assert 3 * 5 % 7 == 1


def test_det_multiplicativity_over_census():
    for trial in range(30):
        g = 3 + trial % 3
        cd = derive_from_generators(random_plane_semigroup(g, 4, seed=f"pl:{trial}"))
        qr = compute_qresolution(cd)
        pg = assemble_full_resolution(qr)
        from branchlink.detcalc import build_intersection_matrix, census_order_product, det_exact

        lhs = Fraction(graph_determinant(pg))
        rhs = abs(det_exact(build_intersection_matrix(qr))) * census_order_product(qr)
        assert lhs == rhs


def test_pullback_strict_entries_are_multiplicities():
    for trial in range(25):
        g = 3 + trial % 3
        cd = derive_from_generators(random_plane_semigroup(g, 4, seed=f"pb:{trial}"))
        qr = compute_qresolution(cd)
        pg = assemble_full_resolution(qr)
        mult = pullback_on_full_resolution(pg, qr)  # asserts N_k and positivity
        assert all(m > 0 for m in mult.values())


def test_h1_zhs_trivial():
    pg = graph_of((70, 105, 215, 1511))
    assert h1_link(pg).is_trivial


def test_h1_torsion_order_matches_det_S():
    cd = derive_from_generators((70, 105, 225, 1579))
    pg = assemble_full_resolution(compute_qresolution(cd))
    h1 = h1_link(pg)
    assert h1.free_rank == 0
    assert h1.torsion_order == det_S(cd)


def test_h1_free_rank_counts_genus():
    pg = PlumbingGraph(
        vertices=(Vertex(vid=0, genus=1, self_int=-1, label="torus"),),
        edges=(),
        strict=((0,),),
    )
    h1 = h1_link(pg)
    assert h1.free_rank == 2
    assert h1.torsion == ()


def test_h1_rejects_indefinite():
    pg = PlumbingGraph(
        vertices=(Vertex(vid=0, genus=0, self_int=1, label="bad"),),
        edges=(),
        strict=((0,),),
    )
    with pytest.raises(NotNegativeDefinite):
        h1_link(pg)


def test_smith_normal_form_known_values():
    assert _linalg.invariant_factors([[2, 0], [0, 4]]) == [2, 4]
    assert _linalg.invariant_factors([[-2, 1], [1, -2]]) == [1, 3]
    # cross-checked against an independent normal-form implementation
    assert _linalg.invariant_factors([[2, 4, 4], [-6, 6, 12], [10, 4, 16]]) == [2, 2, 156]


def test_classify_topologically_matches_gcd_route():
    for trial in range(60):
        g = 3 + trial % 4
        cd = derive_from_generators(random_plane_semigroup(g, 4, seed=f"cl:{trial}"))
        pg = assemble_full_resolution(compute_qresolution(cd))
        assert classify_topologically(pg).kind == classify_link(cd).kind


def test_genus_vertex_forces_not_qhs():
    pg = graph_of((24, 36, 75, 311))
    assert any(v.genus > 0 for v in pg.vertices)
    assert classify_topologically(pg).kind is LinkKind.NOT_QHS


def test_minimize_contracts_superfluous_last_curve():
    pg = graph_of((8, 12, 26, 53))
    reduced, contracted = minimize(pg)
    assert contracted == ["E2.1"]
    assert reduced.n == pg.n - 1
    assert graph_determinant(reduced) == 117
    assert is_negative_definite(reduced)
    # no further contraction is available
    assert minimize(reduced)[1] == []


def test_minimize_preserves_minimal_graphs():
    pg = graph_of((70, 105, 215, 1511))
    reduced, contracted = minimize(pg)
    assert contracted == []
    assert reduced.n == pg.n


def test_dot_and_json_output():
    pg = graph_of((8, 12, 26, 53))
    dot = to_dot(pg)
    assert dot.startswith("graph plumbing {")
    assert '[label="[0, -1]"]' in dot
    assert "arrow" in dot
    payload = to_json_dict(pg)
    assert len(payload["vertices"]) == pg.n
    assert len(payload["edges"]) == len(pg.edges)
    assert payload["arrow"]
