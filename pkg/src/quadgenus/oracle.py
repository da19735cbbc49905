"""Independent genus search over rotation systems.

The constructions certify themselves through the quadrilateral lower
bound; this module is the second, construction-free route for small
graphs.  Exhaustive enumeration walks the product of every vertex's
(d-1)! cyclic orders, except that the first vertex's orders are taken up
to reversal: reversing all rotations at once preserves the face
structure, so each orientation class is visited exactly once and the
minimum is still exact.  The stochastic search does seeded random
restarts plus face-count hill climbing with sideways moves, which is
enough to pin down small torus graphs in a few thousand traces.

Both searchers are deterministic for a fixed seed.  Restarts draw their
generators from per-chunk seeds, so chunks could run in any order (or in
parallel) and the merged outcome would not change: the best face count
wins, ties broken by chunk index.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Optional

from .errors import (BudgetExceededError, InvalidParameterError,
                     NotApplicableError)
from .embeddings import (Embedding, EmbeddingCertificate, euler_genus,
                         genus_lower_bound, trace_faces, validate_embedding)
from .graphs import Graph, is_bipartite, is_connected


@dataclass(frozen=True)
class SearchBudget:
    max_rotation_systems: int = 10_000_000
    seed: int = 0
    target_genus: Optional[int] = None
    restart_stall: int = 400  # hill-climb evaluations without improvement


@dataclass(frozen=True)
class OracleResult:
    best_genus: int
    witness: Embedding
    exhaustive: bool
    explored: int

    @property
    def best_faces(self) -> int:
        return len(trace_faces(self.witness))


def _face_count(graph: Graph, rotation: list[tuple[int, ...]]) -> int:
    """Count successor orbits without building Embedding objects."""
    pos = [{u: i for i, u in enumerate(rot)} for rot in rotation]
    visited: set[tuple[int, int]] = set()
    faces = 0
    for u in range(graph.n):
        for v in rotation[u]:
            if (u, v) in visited:
                continue
            faces += 1
            dart = (u, v)
            while dart not in visited:
                visited.add(dart)
                a, b = dart
                rot = rotation[b]
                dart = (b, rot[(pos[b][a] + 1) % len(rot)])
    return faces


def _genus_from_faces(graph: Graph, f: int) -> int:
    return (2 - graph.n + graph.m - f) // 2


def rotation_space_size(graph: Graph) -> int:
    """Rotation systems counted once per orientation class: full (d-1)!
    cyclic orders everywhere except the first vertex, whose orders are
    halved (for degree >= 3) to quotient out global reflection."""
    size = 1
    for v in range(graph.n):
        d = graph.degree(v)
        orders = 1
        for k in range(1, d):
            orders *= k
        if v == 0 and d >= 3:
            orders //= 2
        size *= orders
    return size


def exhaustive_min_genus(graph: Graph,
                         budget: SearchBudget = SearchBudget()) -> OracleResult:
    """True minimum genus by enumerating every rotation system.

    Refuses graphs whose quotient rotation space exceeds the budget cap;
    callers wanting an answer anyway should drop to stochastic_search.
    """
    if graph.n == 0 or not is_connected(graph):
        raise InvalidParameterError("need a non-empty connected graph")
    space = rotation_space_size(graph)
    if space > budget.max_rotation_systems:
        raise BudgetExceededError(
            f"rotation space {space} exceeds cap "
            f"{budget.max_rotation_systems}")

    def cyclic_orders(v: int):
        """All (d-1)! cyclic orders at v, anchored at the first neighbour.
        At the root vertex only one of each reversed pair is emitted:
        mirroring a whole rotation system keeps the genus, so the halved
        root set still meets every orientation class."""
        nbrs = graph.adj[v]
        if len(nbrs) <= 2:
            yield tuple(nbrs)
            return
        first = nbrs[0]
        for perm in itertools.permutations(nbrs[1:]):
            if v == 0 and perm[0] > perm[-1]:
                continue
            yield (first,) + perm

    best_f = -1
    best_rot: Optional[tuple[tuple[int, ...], ...]] = None
    explored = 0
    for rotation in itertools.product(*(cyclic_orders(v)
                                        for v in range(graph.n))):
        f = _face_count(graph, list(rotation))
        explored += 1
        if f > best_f:
            best_f = f
            best_rot = rotation
    assert best_rot is not None
    witness = Embedding(graph, tuple(best_rot))
    return OracleResult(
        best_genus=_genus_from_faces(graph, best_f),
        witness=witness,
        exhaustive=True,
        explored=explored,
    )


def _chunk_rng(seed: int, chunk: int) -> random.Random:
    return random.Random((seed * 1_000_003 + chunk) & 0xFFFFFFFF)


def stochastic_search(graph: Graph,
                      budget: SearchBudget = SearchBudget()) -> OracleResult:
    """Seeded random-restart hill climbing on the face count.

    Within a restart: random rotation system, then repeated single-vertex
    perturbations (swap two neighbours in one rotation), accepting any
    move that does not lose faces.  A restart ends after restart_stall
    evaluations without strict improvement.  Deterministic per seed; the
    result never beats the true minimum, so pair it with a lower bound or
    a target to know when it has won.
    """
    if graph.n == 0 or not is_connected(graph):
        raise InvalidParameterError("need a non-empty connected graph")
    target_f: Optional[int] = None
    if budget.target_genus is not None:
        target_f = 2 - 2 * budget.target_genus - graph.n + graph.m
    movable = [v for v in range(graph.n) if graph.degree(v) >= 3]
    best_f = -1
    best_rot: Optional[list[tuple[int, ...]]] = None
    explored = 0
    chunk = 0
    while explored < budget.max_rotation_systems:
        rng = _chunk_rng(budget.seed, chunk)
        chunk += 1
        rotation = []
        for v in range(graph.n):
            nbrs = list(graph.adj[v])
            rng.shuffle(nbrs)
            rotation.append(tuple(nbrs))
        current_f = _face_count(graph, rotation)
        explored += 1
        stall = 0
        local_best = current_f
        while (stall < budget.restart_stall
               and explored < budget.max_rotation_systems):
            if not movable:
                break
            v = rng.choice(movable)
            rot = list(rotation[v])
            i, j = rng.sample(range(len(rot)), 2)
            rot[i], rot[j] = rot[j], rot[i]
            candidate = rotation[v]
            rotation[v] = tuple(rot)
            f = _face_count(graph, rotation)
            explored += 1
            if f >= current_f:
                current_f = f
                if f > local_best:
                    local_best = f
                    stall = 0
                else:
                    stall += 1
            else:
                rotation[v] = candidate
                stall += 1
            if current_f > best_f:
                best_f = current_f
                best_rot = [r for r in rotation]
                if target_f is not None and best_f >= target_f:
                    break
        if target_f is not None and best_f >= target_f:
            break
        if not movable:
            break
    assert best_rot is not None
    witness = Embedding(graph, tuple(best_rot))
    return OracleResult(
        best_genus=_genus_from_faces(graph, best_f),
        witness=witness,
        exhaustive=False,
        explored=explored,
    )


def certify_minimum(graph: Graph, e: Embedding) -> EmbeddingCertificate:
    """Certificate for an embedding of a bipartite graph: minimal is True
    exactly when the embedding's genus meets the quadrilateral bound."""
    if is_bipartite(graph) is None:
        raise NotApplicableError(
            "certify_minimum uses the quadrilateral bound; graph must be "
            "bipartite")
    if e.graph.n != graph.n or e.graph.adj != graph.adj:
        raise InvalidParameterError("embedding does not embed this graph")
    problems = validate_embedding(e)
    if problems:
        raise InvalidParameterError("; ".join(problems))
    return euler_genus(e)
