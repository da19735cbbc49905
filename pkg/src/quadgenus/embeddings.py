"""Rotation systems, face tracing, and genus certificates.

An embedding of a graph into an orientable surface is recorded
combinatorially: for each vertex, a cyclic order of its neighbours (a
rotation system).  Faces are recovered by the standard tracing rule

    the dart after (u, v) is (v, w) where w follows u in the rotation at v

so each directed edge (dart) lies on exactly one face and the face count
plugs into Euler's formula n + f - m = 2 - 2g to give the genus of the
surface the rotation system describes.

Rotations are cyclic: two rotations equal up to rotation (not reflection)
describe the same embedding.  Faces are canonicalized to start at their
lexicographically least dart, and trace_faces emits them sorted by that
dart, so face indices are reproducible for a given Embedding.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, replace
from fractions import Fraction
from typing import Optional

from .errors import EmbeddingError, InvalidParameterError, NotApplicableError
from .graphs import (Graph, connected_components, graph_from_json_dict,
                     graph_to_json_dict, is_bipartite)

Dart = tuple[int, int]


@dataclass(frozen=True)
class Embedding:
    graph: Graph
    rotation: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class FaceSet:
    """Faces of an embedding, each a tuple of darts in trace order."""

    faces: tuple[tuple[Dart, ...], ...]

    def __len__(self) -> int:
        return len(self.faces)

    def lengths(self) -> list[int]:
        return [len(f) for f in self.faces]

    def face_vertices(self, idx: int) -> tuple[int, ...]:
        return tuple(u for (u, _) in self.faces[idx])

    def index_by_cycle(self) -> dict[tuple[Dart, ...], int]:
        return {f: i for i, f in enumerate(self.faces)}


@dataclass(frozen=True)
class EmbeddingCertificate:
    n: int
    m: int
    f: int
    genus: int
    quadrilateral: bool
    bipartite: bool
    lower_bound: int
    minimal: bool
    construction_tag: str = ""


def validate_embedding(e: Embedding) -> list[str]:
    """Return a list of violations; empty means the rotation system is a
    permutation of each vertex's neighbourhood."""
    problems: list[str] = []
    if len(e.rotation) != e.graph.n:
        return [f"rotation table has {len(e.rotation)} rows, graph has "
                f"{e.graph.n} vertices"]
    for v in range(e.graph.n):
        rot = e.rotation[v]
        if len(set(rot)) != len(rot):
            problems.append(f"vertex {v}: repeated neighbour in rotation")
            continue
        if sorted(rot) != list(e.graph.adj[v]):
            problems.append(f"vertex {v}: rotation is not a permutation of "
                            f"its neighbourhood")
    return problems


def _require_valid(e: Embedding) -> None:
    problems = validate_embedding(e)
    if problems:
        raise EmbeddingError("; ".join(problems))


def canonical_face(darts) -> tuple[Dart, ...]:
    """Rotate a dart cycle so it starts at its least dart."""
    darts = list(darts)
    k = darts.index(min(darts))
    return tuple(darts[k:] + darts[:k])


def trace_faces(e: Embedding) -> FaceSet:
    """Orbit decomposition of the dart set under the face successor map."""
    _require_valid(e)
    succ_pos = [
        {u: i for i, u in enumerate(rot)} for rot in e.rotation
    ]
    rotation = e.rotation
    visited: set[Dart] = set()
    faces: list[tuple[Dart, ...]] = []
    all_darts = sorted((u, v) for u in range(e.graph.n) for v in rotation[u])
    for start in all_darts:
        if start in visited:
            continue
        face: list[Dart] = []
        dart = start
        while dart not in visited:
            visited.add(dart)
            face.append(dart)
            u, v = dart
            rot = rotation[v]
            dart = (v, rot[(succ_pos[v][u] + 1) % len(rot)])
        if dart != start:
            raise EmbeddingError("face tracing did not close; successor map "
                                 "is not a permutation")
        faces.append(tuple(face))
    # Starting darts are scanned in sorted order, so each face already
    # begins at its least dart.
    return FaceSet(tuple(faces))


def is_quadrilateral(faces: FaceSet) -> bool:
    return all(len(f) == 4 for f in faces.faces)


def mirror(e: Embedding) -> Embedding:
    """Reverse every rotation.  Reverses the orientation of the surface;
    every face comes back with its boundary traced the opposite way."""
    return replace(e, rotation=tuple(tuple(reversed(r)) for r in e.rotation))


def genus_lower_bound(g: Graph) -> int:
    """Quadrilateral lower bound ceil(1 + m/4 - n/2) for connected
    bipartite graphs, exact over the rationals and floored at zero.

    Any embedding of a simple bipartite graph has every face of length at
    least 4, so f <= m/2, and Euler's formula turns that into the bound.
    Forests return 0.  Non-bipartite graphs are rejected: a triangle face
    would beat the bound, so the inequality just does not apply.
    """
    if g.n == 0:
        raise InvalidParameterError("empty graph has no genus")
    if len(connected_components(g)) != 1:
        raise InvalidParameterError("lower bound needs a connected graph")
    if is_bipartite(g) is None:
        raise NotApplicableError(
            "quadrilateral lower bound needs a bipartite graph")
    if g.m < g.n:  # connected with m <= n-1: a tree
        return 0
    bound = Fraction(1) + Fraction(g.m, 4) - Fraction(g.n, 2)
    ceiling = -((-bound.numerator) // bound.denominator)
    return max(0, ceiling)


def euler_genus(e: Embedding, construction_tag: str = "") -> EmbeddingCertificate:
    """Certificate for a connected embedding via n + f - m = 2 - 2g."""
    _require_valid(e)
    g = e.graph
    if g.n == 0:
        raise InvalidParameterError("empty graph has no certificate")
    if len(connected_components(g)) != 1:
        raise InvalidParameterError(
            "euler_genus needs a connected graph; use components_certificate")
    faces = trace_faces(e)
    f = len(faces)
    chi = g.n - g.m + f
    if chi % 2 != 0:
        raise EmbeddingError(
            f"Euler characteristic {chi} is odd; rotation system corrupt")
    genus = (2 - chi) // 2
    if genus < 0:
        raise EmbeddingError(f"negative genus {genus}; rotation system corrupt")
    bip = is_bipartite(g) is not None
    lb = genus_lower_bound(g) if bip else 0
    return EmbeddingCertificate(
        n=g.n, m=g.m, f=f, genus=genus,
        quadrilateral=is_quadrilateral(faces),
        bipartite=bip,
        lower_bound=lb,
        minimal=bip and genus == lb,
        construction_tag=construction_tag,
    )


def subembedding(e: Embedding, vertices: list[int]) -> Embedding:
    """Restriction to a union of components, vertices renumbered in the
    given (sorted) order.  Rotations must not point outside the set."""
    index = {v: i for i, v in enumerate(vertices)}
    adj = []
    rot = []
    for v in vertices:
        if any(w not in index for w in e.graph.adj[v]):
            raise InvalidParameterError(
                "subembedding must take whole components")
        adj.append(tuple(index[w] for w in e.graph.adj[v]))
        rot.append(tuple(index[w] for w in e.rotation[v]))
    labels = None
    if e.graph.labels is not None:
        labels = tuple(e.graph.labels[v] for v in vertices)
    g = Graph(len(vertices), tuple(tuple(sorted(a)) for a in adj), labels)
    return Embedding(g, tuple(rot))


def components_certificate(e: Embedding) -> list[EmbeddingCertificate]:
    """Per-component certificates.  The total genus of a disconnected
    embedding is the sum over components."""
    _require_valid(e)
    comps = connected_components(e.graph)
    return [euler_genus(subembedding(e, comp)) for comp in comps]


# ---------------------------------------------------------------------------
# Serialization.  Embedding files wrap the graph together with the rotation
# table; certificates are flat JSON objects.  Writers emit canonical bytes
# (sorted keys, fixed indentation) so identical runs produce identical files.
# ---------------------------------------------------------------------------


def embedding_to_json_dict(e: Embedding) -> dict:
    return {
        "graph": graph_to_json_dict(e.graph),
        "rotation": [list(r) for r in e.rotation],
    }


def embedding_from_json_dict(data: dict) -> Embedding:
    if not isinstance(data, dict) or "graph" not in data or "rotation" not in data:
        raise InvalidParameterError("embedding JSON needs 'graph' and 'rotation'")
    g = graph_from_json_dict(data["graph"])
    rotation = tuple(tuple(r) for r in data["rotation"])
    e = Embedding(g, rotation)
    _require_valid(e)
    return e


def certificate_to_json_dict(c: EmbeddingCertificate) -> dict:
    return asdict(c)


def certificate_from_json_dict(data: dict) -> EmbeddingCertificate:
    try:
        return EmbeddingCertificate(**data)
    except TypeError as exc:
        raise InvalidParameterError(f"malformed certificate: {exc}") from exc


def canonical_json_bytes(data) -> bytes:
    return (json.dumps(data, sort_keys=True, indent=2) + "\n").encode()


def save_json(path: str, data) -> None:
    with open(path, "wb") as fh:
        fh.write(canonical_json_bytes(data))


def load_json(path: str):
    with open(path, "rb") as fh:
        return json.loads(fh.read().decode())
