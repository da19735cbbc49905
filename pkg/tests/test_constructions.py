import json

import pytest

from quadgenus.constructions import (classify_family, embed_cube,
                                     embed_cube_cycle, embed_cube_cycles,
                                     embed_cube_path, embed_cube_paths,
                                     embed_family, embed_K2r2r,
                                     same_labeled_graph)
from quadgenus.embeddings import (genus_lower_bound, is_quadrilateral,
                                  trace_faces, validate_embedding)
from quadgenus.errors import (InvalidParameterError, UnsupportedFamilyError)
from quadgenus.graphs import build_family
from quadgenus.oracle import certify_minimum
from quadgenus.surgery import check_reservoir


@pytest.mark.parametrize("r,genus,f", [(1, 0, 2), (2, 1, 8), (3, 4, 18)])
def test_base_block_certificates(r, genus, f):
    res = embed_K2r2r(r)
    cert = res.certificate
    assert (cert.genus, cert.f) == (genus, f)
    assert cert.quadrilateral and cert.minimal
    assert validate_embedding(res.embedding) == []


@pytest.mark.parametrize("r", [1, 2, 3, 4, 5, 6])
def test_base_scheme_is_quadrilateral_up_to_r6(r):
    res = embed_K2r2r(r)
    faces = trace_faces(res.embedding)
    assert is_quadrilateral(faces)
    assert len(faces) == 2 * r * r
    assert len(res.reservoir.families) == 2 * r
    check_reservoir(res.embedding, res.reservoir)


def test_cube_two_levels_frozen():
    res = embed_cube(2, 2)
    cert = res.certificate
    assert (cert.n, cert.m, cert.f, cert.genus) == (64, 256, 128, 33)
    assert len(res.reservoir.families) == 4
    assert all(len(f.faces) == 16 for f in res.reservoir.families)


def test_cube_matches_hypercube_specialization():
    res = embed_cube(3, 1)
    assert res.certificate.genus == 17  # the 6-dimensional hypercube
    assert res.certificate.minimal


def test_cube_labels_match_family():
    res = embed_cube(2, 2)
    assert same_labeled_graph(res.embedding.graph, build_family("Q(2,4)"))


@pytest.mark.parametrize("i,r,s,want", [(1, 2, 3, 13), (1, 1, 2, 1),
                                        (2, 1, 2, 17)])
def test_cycle_products_frozen(i, r, s, want):
    res = embed_cube_cycle(i, r, s)
    assert res.certificate.genus == want
    assert res.certificate.quadrilateral and res.certificate.minimal
    assert same_labeled_graph(
        res.embedding.graph, build_family(f"Q({i},{2 * r}) x C({2 * s})"))


def test_cycle_product_rejects_short_cycle():
    with pytest.raises(InvalidParameterError):
        embed_cube_cycle(1, 2, 1)


def test_repeated_cycles_frozen():
    assert embed_cube_cycles(1, 1, [2, 2]).certificate.genus == 17
    assert embed_cube_cycles(1, 2, [2, 2]).certificate.genus == 65


def test_repeated_paths_frozen():
    res = embed_cube_paths(1, 2, [1])
    assert (res.certificate.n, res.certificate.m, res.certificate.genus) \
        == (16, 40, 3)
    assert embed_cube_paths(1, 2, [2, 2]).certificate.genus == 49
    assert embed_cube_paths(1, 1, [2]).certificate.genus == 0


def test_path_routes_agree():
    for i, r, s in ((1, 1, 2), (1, 2, 2), (1, 2, 3)):
        direct = embed_cube_path(i, r, s, route="direct").certificate
        removal = embed_cube_path(i, r, s, route="removal").certificate
        assert (direct.n, direct.m, direct.f, direct.genus) \
            == (removal.n, removal.m, removal.f, removal.genus)


def test_removal_route_multi_level_agrees():
    direct = embed_cube_paths(1, 1, [2, 2], route="direct").certificate
    removal = embed_cube_paths(1, 1, [2, 2], route="removal").certificate
    assert (direct.n, direct.m, direct.genus) \
        == (removal.n, removal.m, removal.genus)


def test_removal_route_rejects_single_link():
    res = embed_cube_path(1, 2, 1, route="removal")
    # s = 1 silently builds directly: there is no cycle to open
    assert res.certificate.genus == 3


def test_reservoirs_survive_every_route():
    for res in (embed_cube_cycle(1, 2, 2),
                embed_cube_path(1, 2, 2, route="removal"),
                embed_cube_path(1, 2, 2, route="direct")):
        check_reservoir(res.embedding, res.reservoir)
        assert len(res.reservoir.families) == 2


def test_certificates_certify_via_oracle_helper():
    res = embed_K2r2r(3)
    cert = certify_minimum(res.embedding.graph, res.embedding)
    assert cert.minimal and cert.genus == 4


def test_trace_is_json_serializable_and_replayable():
    res = embed_cube_cycle(1, 1, 2)
    blob = json.dumps(list(res.trace))
    entries = json.loads(blob)
    assert entries, "expected at least one handle record"
    assert all(len(e["added_edges"]) == 4 for e in entries)
    assert all(e["all_quadrilateral"] for e in entries)
    # handles per link equal a quarter of the base vertex count
    phase0 = [e for e in entries if e["link"] == 0]
    assert len(phase0) == 1  # K(2,2) has 4 vertices, one handle per link


def test_classify_family_normalizes_order():
    shape = classify_family("C(4) x K(4,4) x P(2)")
    assert shape.normalized_expr == "Q(1,4) x C(4) x P(2)"
    assert shape.factor_order == (1, 0, 2)
    assert shape.i == 1 and shape.r == 2


def test_classify_family_merges_cube_factors():
    shape = classify_family("K(4,4) x Q(2,4)")
    assert shape.i == 3 and shape.r == 2


@pytest.mark.parametrize("expr", ["P(4) x P(4)", "C(4) x C(6)", "K(2,3)",
                                  "K(4,4) x P(3)", "K(4,4) x K(2,2)",
                                  "K(3,3)"])
def test_classify_family_rejects_unsupported(expr):
    with pytest.raises(UnsupportedFamilyError):
        classify_family(expr)


def test_classify_family_flags_invalid_before_shape():
    with pytest.raises(InvalidParameterError):
        classify_family("K(4,4) x C(5)")


def test_embed_family_mixed_interleaving():
    result, shape = embed_family("K(4,4) x C(4) x P(2)")
    cert = result.certificate
    assert cert.minimal and cert.quadrilateral
    assert cert.genus == genus_lower_bound(result.embedding.graph)
    assert same_labeled_graph(result.embedding.graph,
                              build_family(shape.normalized_expr))


def test_embed_family_path_then_cycle_order_kept():
    _, shape = embed_family("K(2,2) x P(2) x C(4)")
    assert shape.steps == (("P", 1), ("C", 2))
