"""Simple undirected graphs, standard families, and Cartesian products.

Vertices are integers 0..n-1.  Adjacency is kept sorted per vertex; the
cyclic orderings that define embeddings live in :mod:`quadgenus.embeddings`.
Each vertex optionally carries a label: a tuple of factor coordinates that
survives Cartesian products by concatenation, so a vertex of K(4,4) x C(6)
is labelled e.g. ``("a2", 5)``.  Labels are what make graphs produced by
different vertex numberings comparable.

Product numbering is lexicographic in (first factor index, second factor
index), so ``(u, v)`` becomes ``u * h.n + v``.  Downstream code relies on
this to locate corresponding vertices across factor copies by pure index
arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence, Union

from .errors import ExprSyntaxError, InvalidParameterError

Label = tuple


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph with sorted adjacency lists."""

    n: int
    adj: tuple[tuple[int, ...], ...]
    labels: Optional[tuple[Label, ...]] = None

    @property
    def m(self) -> int:
        return sum(len(nbrs) for nbrs in self.adj) // 2

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges as (u, v) with u < v, lexicographically sorted."""
        for u in range(self.n):
            for v in self.adj[u]:
                if u < v:
                    yield (u, v)

    def label_of(self, v: int) -> Label:
        if self.labels is not None:
            return self.labels[v]
        return (v,)


def from_edges(n: int, edges: Iterable[tuple[int, int]],
               labels: Optional[Sequence[Label]] = None) -> Graph:
    """Build a graph from an edge list, validating simplicity.

    This is the permissive door: anything simple goes, including odd cycles
    and asymmetric complete bipartite graphs, which the search oracle needs
    as non-bipartite and irregular controls.
    """
    if n < 0:
        raise InvalidParameterError("vertex count must be non-negative")
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise InvalidParameterError(f"edge ({u},{v}) out of range for n={n}")
        if u == v:
            raise InvalidParameterError(f"loop at vertex {u} not allowed")
        if v in nbrs[u]:
            raise InvalidParameterError(f"duplicate edge ({u},{v})")
        nbrs[u].add(v)
        nbrs[v].add(u)
    lab = None
    if labels is not None:
        if len(labels) != n:
            raise InvalidParameterError("labels length must equal vertex count")
        lab = tuple(tuple(x) for x in labels)
    return Graph(n, tuple(tuple(sorted(s)) for s in nbrs), lab)


def make_path(n: int) -> Graph:
    """Path on n >= 2 vertices, edges i - i+1."""
    if n < 2:
        raise InvalidParameterError(f"path needs at least 2 vertices, got {n}")
    return from_edges(n, [(i, i + 1) for i in range(n - 1)],
                      labels=[(i,) for i in range(n)])


def make_cycle(n: int) -> Graph:
    """Cycle on n vertices; n must be even and at least 4.

    Odd cycles are non-bipartite and outside every construction here, so
    this builder rejects them; tests that need one use :func:`from_edges`.
    """
    if n < 4 or n % 2 != 0:
        raise InvalidParameterError(
            f"cycle order must be even and >= 4, got {n}")
    return from_edges(n, [(i, (i + 1) % n) for i in range(n)],
                      labels=[(i,) for i in range(n)])


def make_complete_bipartite(s: int, t: int) -> Graph:
    """K(s,t) with part A = vertices 0..s-1, part B = s..s+t-1.

    The part is recorded in the label: "a0".."a{s-1}" and "b0".."b{t-1}".
    """
    if s < 1 or t < 1:
        raise InvalidParameterError("both parts need at least one vertex")
    edges = [(i, s + j) for i in range(s) for j in range(t)]
    labels = [(f"a{i}",) for i in range(s)] + [(f"b{j}",) for j in range(t)]
    return from_edges(s + t, edges, labels=labels)


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """Cartesian product: (u,v) ~ (u',v') iff one coordinate is equal and
    the others are adjacent.  Vertex (u, v) gets index u * h.n + v and
    label = label(u) + label(v)."""
    if g.n == 0 or h.n == 0:
        raise InvalidParameterError("product factors must be non-empty")
    n = g.n * h.n
    edges: list[tuple[int, int]] = []
    for u in range(g.n):
        base = u * h.n
        for (v, w) in h.edges():
            edges.append((base + v, base + w))
    for (u, w) in g.edges():
        for v in range(h.n):
            edges.append((u * h.n + v, w * h.n + v))
    labels = [g.label_of(u) + h.label_of(v)
              for u in range(g.n) for v in range(h.n)]
    return from_edges(n, edges, labels=labels)


def connected_components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    comps: list[list[int]] = []
    for start in range(g.n):
        if seen[start]:
            continue
        comp = [start]
        seen[start] = True
        stack = [start]
        while stack:
            u = stack.pop()
            for v in g.adj[u]:
                if not seen[v]:
                    seen[v] = True
                    comp.append(v)
                    stack.append(v)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1


def is_bipartite(g: Graph) -> Optional[list[int]]:
    """Two-colouring as a list of 0/1, or None if an odd cycle exists."""
    colour: list[int] = [-1] * g.n
    for start in range(g.n):
        if colour[start] != -1:
            continue
        colour[start] = 0
        queue = [start]
        while queue:
            u = queue.pop()
            for v in g.adj[u]:
                if colour[v] == -1:
                    colour[v] = 1 - colour[u]
                    queue.append(v)
                elif colour[v] == colour[u]:
                    return None
    return colour


# ---------------------------------------------------------------------------
# Family expressions.
#
# expr := term ('x' term)*
# term := K '(' int ',' int ')' | C '(' int ')' | P '(' int ')'
#       | Q '(' int ',' int ')'
#
# Q(i, t) abbreviates the i-fold product of K(t,t).  Whitespace is free.
# Parameter validation happens in build_family, not in the parser, so that
# syntax errors and semantic errors stay distinguishable.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KAtom:
    s: int
    t: int

    def __str__(self) -> str:
        return f"K({self.s},{self.t})"


@dataclass(frozen=True)
class CycleAtom:
    n: int

    def __str__(self) -> str:
        return f"C({self.n})"


@dataclass(frozen=True)
class PathAtom:
    n: int

    def __str__(self) -> str:
        return f"P({self.n})"


@dataclass(frozen=True)
class CubeAtom:
    i: int
    t: int

    def __str__(self) -> str:
        return f"Q({self.i},{self.t})"


Atom = Union[KAtom, CycleAtom, PathAtom, CubeAtom]


@dataclass(frozen=True)
class Product:
    left: "FamilyExpr"
    right: "FamilyExpr"

    def __str__(self) -> str:
        return f"{self.left} x {self.right}"


FamilyExpr = Union[Atom, Product]


class _ExprParser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str) -> ExprSyntaxError:
        return ExprSyntaxError(message, self.pos)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        self.skip_ws()
        if self.peek() != ch:
            raise self.error(f"expected {ch!r}")
        self.pos += 1

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise self.error("expected an integer")
        return int(self.text[start:self.pos])

    def term(self) -> Atom:
        self.skip_ws()
        head = self.peek()
        if head not in ("K", "C", "P", "Q"):
            raise self.error("expected one of K, C, P, Q")
        self.pos += 1
        self.expect("(")
        first = self.integer()
        if head in ("K", "Q"):
            self.expect(",")
            second = self.integer()
            self.expect(")")
            return KAtom(first, second) if head == "K" else CubeAtom(first, second)
        self.expect(")")
        return CycleAtom(first) if head == "C" else PathAtom(first)

    def expr(self) -> FamilyExpr:
        node: FamilyExpr = self.term()
        while True:
            self.skip_ws()
            if self.peek() == "x":
                self.pos += 1
                node = Product(node, self.term())
            else:
                break
        self.skip_ws()
        if self.pos != len(self.text):
            raise self.error("unexpected trailing input")
        return node


def parse_family_expr(text: str) -> FamilyExpr:
    """Parse a family expression such as ``"K(4,4) x C(6)"``."""
    return _ExprParser(text).expr()


def format_family_expr(expr: FamilyExpr) -> str:
    return str(expr)


def iter_atoms(expr: FamilyExpr) -> Iterator[Atom]:
    """Atoms of the product chain, left to right."""
    if isinstance(expr, Product):
        yield from iter_atoms(expr.left)
        yield from iter_atoms(expr.right)
    else:
        yield expr


def _atom_graph(atom: Atom) -> Graph:
    if isinstance(atom, KAtom):
        return make_complete_bipartite(atom.s, atom.t)
    if isinstance(atom, CycleAtom):
        return make_cycle(atom.n)
    if isinstance(atom, PathAtom):
        return make_path(atom.n)
    raise InvalidParameterError(f"cannot build atom {atom}")


def build_family(expr: Union[str, FamilyExpr]) -> Graph:
    """Left-fold of cartesian_product over the expression's atoms.

    ``Q(i, t)`` expands in place to i factors of K(t,t) with i >= 1.
    Atom parameters are validated by the underlying builders, so e.g.
    ``C(5)`` parses but is rejected here.
    """
    if isinstance(expr, str):
        expr = parse_family_expr(expr)
    graphs: list[Graph] = []
    for atom in iter_atoms(expr):
        if isinstance(atom, CubeAtom):
            if atom.i < 1:
                raise InvalidParameterError(
                    f"Q needs at least one factor, got i={atom.i}")
            graphs.extend(make_complete_bipartite(atom.t, atom.t)
                          for _ in range(atom.i))
        else:
            graphs.append(_atom_graph(atom))
    result = graphs[0]
    for g in graphs[1:]:
        result = cartesian_product(result, g)
    return result


@dataclass(frozen=True)
class FamilyParams:
    """Parameters of a supported product family.

    i: number of K(2r,2r) factors, r >= 1; m_list: the half-orders of the
    cycle or path factors in application order.
    """

    i: int
    r: int
    m_list: tuple[int, ...] = ()

    @property
    def big_m(self) -> int:
        prod = 1
        for m in self.m_list:
            prod *= m
        return prod

    @property
    def m_inv_sum(self) -> Fraction:
        return sum((Fraction(1, m) for m in self.m_list), Fraction(0))


# ---------------------------------------------------------------------------
# Serialization.  Graph files are JSON objects:
#   {"n": int, "edges": [[u, v], ...], "labels": [[...], ...]?}
# with edges normalized to u < v and sorted lexicographically.
# ---------------------------------------------------------------------------


def graph_to_json_dict(g: Graph) -> dict:
    data: dict = {"n": g.n, "edges": [[u, v] for (u, v) in g.edges()]}
    if g.labels is not None:
        data["labels"] = [list(lab) for lab in g.labels]
    return data


def graph_from_json_dict(data: dict) -> Graph:
    if not isinstance(data, dict) or "n" not in data or "edges" not in data:
        raise InvalidParameterError("graph JSON needs 'n' and 'edges'")
    n = data["n"]
    if not isinstance(n, int):
        raise InvalidParameterError("'n' must be an integer")
    edges = []
    for e in data["edges"]:
        if not (isinstance(e, (list, tuple)) and len(e) == 2
                and all(isinstance(x, int) for x in e)):
            raise InvalidParameterError(f"malformed edge entry {e!r}")
        edges.append((e[0], e[1]))
    labels = None
    if data.get("labels") is not None:
        labels = [tuple(lab) for lab in data["labels"]]
    return from_edges(n, edges, labels=labels)
