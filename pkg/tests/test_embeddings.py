import json

import pytest
from hypothesis import given, strategies as st

from quadgenus.embeddings import (Embedding, canonical_face,
                                  canonical_json_bytes,
                                  certificate_from_json_dict,
                                  certificate_to_json_dict,
                                  components_certificate,
                                  embedding_from_json_dict,
                                  embedding_to_json_dict, euler_genus,
                                  genus_lower_bound, is_quadrilateral, mirror,
                                  subembedding, trace_faces,
                                  validate_embedding)
from quadgenus.errors import (EmbeddingError, InvalidParameterError,
                              NotApplicableError)
from quadgenus.graphs import (Graph, from_edges, make_complete_bipartite,
                              make_cycle, make_path)

K22_ROT = ((2, 3), (3, 2), (0, 1), (1, 0))


def k22_embedding() -> Embedding:
    return Embedding(make_complete_bipartite(2, 2), K22_ROT)


def test_k22_faces_hand_traced():
    # worked out by hand: two square faces on the sphere
    fs = trace_faces(k22_embedding())
    assert [tuple(u for u, _ in fc) for fc in fs.faces] == [
        (0, 2, 1, 3), (0, 3, 1, 2)]
    assert fs.lengths() == [4, 4]


def test_faces_are_canonical_and_indexable():
    fs = trace_faces(k22_embedding())
    for fc in fs.faces:
        assert min(fc) == fc[0]
    idx = fs.index_by_cycle()
    assert idx[fs.faces[1]] == 1
    assert fs.face_vertices(0) == (0, 2, 1, 3)


def test_canonical_face_rotates_to_least_dart():
    darts = [(2, 1), (1, 0), (0, 2)]
    assert canonical_face(darts) == ((0, 2), (2, 1), (1, 0))


def test_each_dart_used_exactly_once():
    e = k22_embedding()
    fs = trace_faces(e)
    darts = [d for fc in fs.faces for d in fc]
    assert len(darts) == 2 * e.graph.m
    assert len(set(darts)) == len(darts)


def test_validate_catches_rotation_mismatch():
    g = make_complete_bipartite(2, 2)
    bad = Embedding(g, ((2, 3), (3, 2), (0, 1), (1, 1)))
    assert validate_embedding(bad)
    with pytest.raises(EmbeddingError):
        trace_faces(bad)


def test_validate_catches_missing_neighbor():
    g = make_complete_bipartite(2, 2)
    bad = Embedding(g, ((2, 3), (3, 2), (0, 1), (0,)))
    assert validate_embedding(bad)


def test_euler_genus_k22_sphere():
    cert = euler_genus(k22_embedding())
    assert (cert.n, cert.m, cert.f, cert.genus) == (4, 4, 2, 0)
    assert cert.quadrilateral and cert.bipartite and cert.minimal


def test_euler_genus_k33_torus():
    # rotation taken from a classic hexagonal torus drawing
    g = make_complete_bipartite(3, 3)
    rot = ((3, 4, 5), (3, 5, 4), (3, 4, 5),
           (0, 1, 2), (0, 2, 1), (0, 1, 2))
    cert = euler_genus(Embedding(g, rot))
    assert cert.genus == 1
    assert cert.bipartite


def test_euler_genus_rejects_disconnected():
    g = from_edges(8, [(0, 1), (1, 2), (2, 3), (3, 0),
                       (4, 5), (5, 6), (6, 7), (7, 4)])
    rot = tuple(tuple(sorted(g.adj[v])) for v in range(8))
    with pytest.raises(InvalidParameterError):
        euler_genus(Embedding(g, rot))


def test_components_certificate_sums_genus():
    g = from_edges(8, [(0, 1), (1, 2), (2, 3), (3, 0),
                       (4, 5), (5, 6), (6, 7), (7, 4)])
    rot = tuple(tuple(sorted(g.adj[v])) for v in range(8))
    parts = components_certificate(Embedding(g, rot))
    assert len(parts) == 2
    assert sum(c.genus for c in parts) == 0


def test_subembedding_requires_whole_components():
    g = from_edges(4, [(0, 1), (2, 3)])
    rot = ((1,), (0,), (3,), (2,))
    e = Embedding(g, rot)
    sub = subembedding(e, [2, 3])
    assert sub.graph.n == 2 and sub.graph.m == 1
    with pytest.raises(InvalidParameterError):
        subembedding(e, [0, 2])


def test_mirror_is_involution_and_reverses_faces():
    e = Embedding(make_complete_bipartite(4, 4),
                  tuple(tuple(sorted(adj)) for adj in
                        make_complete_bipartite(4, 4).adj))
    assert mirror(mirror(e)) == e
    forward = {frozenset(fc) for fc in trace_faces(e).faces}
    backward = {frozenset((v, u) for (u, v) in fc)
                for fc in trace_faces(mirror(e)).faces}
    assert forward == backward


def test_genus_lower_bound_values():
    assert genus_lower_bound(make_complete_bipartite(4, 4)) == 1
    assert genus_lower_bound(make_complete_bipartite(6, 6)) == 4
    assert genus_lower_bound(make_cycle(4)) == 0
    assert genus_lower_bound(make_path(5)) == 0  # forest floor


def test_genus_lower_bound_rejects_nonbipartite():
    c5 = from_edges(5, [(v, (v + 1) % 5) for v in range(5)])
    with pytest.raises(NotApplicableError):
        genus_lower_bound(c5)


def test_quadrilateral_predicate():
    assert is_quadrilateral(trace_faces(k22_embedding()))
    g = make_cycle(4)
    ring = Embedding(g, tuple(tuple(sorted(g.adj[v])) for v in range(4)))
    assert trace_faces(ring).lengths() == [4, 4]
    assert is_quadrilateral(trace_faces(ring))
    edge = make_path(2)
    single = Embedding(edge, ((1,), (0,)))
    assert not is_quadrilateral(trace_faces(single))


def test_embedding_json_round_trip():
    e = k22_embedding()
    data = json.loads(canonical_json_bytes(embedding_to_json_dict(e)))
    back = embedding_from_json_dict(data)
    assert back == e


def test_certificate_json_round_trip():
    cert = euler_genus(k22_embedding(), construction_tag="K(2,2)")
    back = certificate_from_json_dict(
        json.loads(canonical_json_bytes(certificate_to_json_dict(cert))))
    assert back == cert


def test_canonical_json_is_stable():
    blob = {"b": 1, "a": [1, 2]}
    assert canonical_json_bytes(blob) == canonical_json_bytes(dict(blob))
    assert canonical_json_bytes(blob).endswith(b"\n")


# properties over random rotation systems of fixed small graphs


@st.composite
def rotations_of_k33(draw):
    g = make_complete_bipartite(3, 3)
    rot = []
    for v in range(g.n):
        ring = list(g.adj[v])
        perm = draw(st.permutations(ring))
        rot.append(tuple(perm))
    return Embedding(g, tuple(rot))


@given(rotations_of_k33())
def test_random_rotations_trace_consistently(e):
    fs = trace_faces(e)
    darts = [d for fc in fs.faces for d in fc]
    assert len(darts) == 2 * e.graph.m and len(set(darts)) == len(darts)
    cert = euler_genus(e)
    assert cert.genus >= genus_lower_bound(e.graph)


@given(rotations_of_k33())
def test_mirror_preserves_face_count(e):
    assert len(trace_faces(e)) == len(trace_faces(mirror(e)))
