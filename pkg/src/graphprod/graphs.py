"""Finite simple graphs and the clique combinatorics of cycles of cliques.

Vertices are hashable ids (strings in practice).  The order in which they
are declared is the canonical total order used everywhere for output and for
tie-breaking, so every function here is deterministic.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import combinations
from typing import Hashable, Iterable, Mapping

from .errors import PresentationMismatch

Vertex = Hashable


class Graph:
    """Immutable finite simple graph with an ordered vertex list."""

    __slots__ = ("vertices", "edges", "adj", "index", "name")

    def __init__(self, vertices: Iterable[Vertex], edges: Iterable[tuple] = (), name: str = ""):
        verts = tuple(vertices)
        if len(set(verts)) != len(verts):
            raise ValueError("duplicate vertex ids")
        index = {v: i for i, v in enumerate(verts)}
        adj: dict = {v: set() for v in verts}
        es = set()
        for e in edges:
            u, v = tuple(e)
            if u not in index or v not in index:
                raise PresentationMismatch(f"edge {u!r}-{v!r} uses an undeclared vertex")
            if u == v:
                raise ValueError(f"self-loop at {u!r}")
            adj[u].add(v)
            adj[v].add(u)
            es.add(frozenset((u, v)))
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "index", index)
        object.__setattr__(self, "adj", {v: frozenset(n) for v, n in adj.items()})
        object.__setattr__(self, "edges", frozenset(es))
        object.__setattr__(self, "name", name)

    def __setattr__(self, key, value):
        raise AttributeError("Graph is immutable")

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<Graph{label} |V|={len(self.vertices)} |E|={len(self.edges)}>"

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self):
        return hash((self.vertices, self.edges))

    def __len__(self):
        return len(self.vertices)

    def __contains__(self, v):
        return v in self.index

    def adjacent(self, u, v) -> bool:
        return v in self.adj[u]

    def sorted(self, vs: Iterable[Vertex]) -> tuple:
        """Vertices of ``vs`` in canonical order."""
        return tuple(sorted(vs, key=self.index.__getitem__))

    def check(self, vs: Iterable[Vertex]) -> frozenset:
        vs = frozenset(vs)
        bad = [v for v in vs if v not in self.index]
        if bad:
            raise PresentationMismatch(f"unknown vertex id(s): {', '.join(map(str, bad))}")
        return vs

    def set_key(self, vs: Iterable[Vertex]) -> tuple:
        return tuple(sorted(self.index[v] for v in vs))

    def induced(self, vs: Iterable[Vertex]) -> "Graph":
        vs = self.check(vs)
        verts = self.sorted(vs)
        return Graph(verts, [tuple(e) for e in self.edges if e <= vs])

    def relabel(self, mapping: Mapping, order: Iterable[Vertex] | None = None) -> "Graph":
        verts = tuple(order) if order is not None else tuple(mapping[v] for v in self.vertices)
        return Graph(verts, [(mapping[u], mapping[v]) for u, v in map(tuple, self.edges)])

    def is_complete(self, vs: Iterable[Vertex]) -> bool:
        vs = list(vs)
        return all(b in self.adj[a] for a, b in combinations(vs, 2))


# ---------------------------------------------------------------- builders

def complete_graph(n: int, prefix: str = "v") -> Graph:
    verts = [f"{prefix}{i}" for i in range(1, n + 1)]
    return Graph(verts, combinations(verts, 2), name=f"K{n}")


def edgeless_graph(vertices: Iterable[Vertex]) -> Graph:
    return Graph(vertices, ())


def flower_graph(n: int) -> Graph:
    """The cycle of ``n`` triangles: base cycle b1..bn, petal wi on bi, b(i+1)."""
    if n < 3:
        raise ValueError("a cycle of triangles needs n >= 3")
    bs = [f"b{i}" for i in range(1, n + 1)]
    ws = [f"w{i}" for i in range(1, n + 1)]
    edges = []
    for i in range(n):
        nxt = bs[(i + 1) % n]
        edges += [(bs[i], nxt), (ws[i], bs[i]), (ws[i], nxt)]
    return Graph(bs + ws, edges, name=f"T{n}")


def triangle_path(n: int) -> Graph:
    """``n`` triangles glued in a path (not closed up into a cycle)."""
    bs = [f"b{i}" for i in range(1, n + 2)]
    ws = [f"w{i}" for i in range(1, n + 1)]
    edges = []
    for i in range(n):
        edges += [(bs[i], bs[i + 1]), (ws[i], bs[i]), (ws[i], bs[i + 1])]
    return Graph(bs + ws, edges, name=f"P{n}")


def inflate(g: Graph, sizes: Mapping[Vertex, int]) -> Graph:
    """Blow each vertex ``v`` up into a clique of ``sizes[v]`` copies ``v_1, v_2, ...``.

    Copies of adjacent vertices are completely interconnected.  Vertices not
    mentioned in ``sizes`` keep a single copy, named ``v_1``.
    """
    blocks = {v: [f"{v}_{k}" for k in range(1, sizes.get(v, 1) + 1)] for v in g.vertices}
    verts = [x for v in g.vertices for x in blocks[v]]
    edges = []
    for v in g.vertices:
        edges += combinations(blocks[v], 2)
    for e in g.edges:
        u, v = tuple(e)
        edges += [(x, y) for x in blocks[u] for y in blocks[v]]
    return Graph(verts, edges, name=f"{g.name}*" if g.name else "")


# ---------------------------------------------------------------- link/star

def link(g: Graph, u: Iterable[Vertex]) -> frozenset:
    """Common neighbours of all of ``u``; the empty set has link V."""
    u = g.check(u)
    out = frozenset(g.vertices)
    for x in u:
        out &= g.adj[x]
    return out


def star(g: Graph, u: Iterable[Vertex]) -> frozenset:
    u = g.check(u)
    return u | link(g, u)


# ---------------------------------------------------------------- cliques

def maximal_cliques(g: Graph) -> list[frozenset]:
    """All maximal complete subgraphs, each once, sorted canonically.

    Bron-Kerbosch with pivoting; candidates are visited in canonical order.
    """
    out = []
    idx = g.index

    def expand(r, p, x):
        if not p and not x:
            out.append(frozenset(r))
            return
        pivot = max(p | x, key=lambda v: (len(g.adj[v] & p), -idx[v]))
        for v in sorted(p - g.adj[pivot], key=idx.__getitem__):
            expand(r + [v], p & g.adj[v], x & g.adj[v])
            p = p - {v}
            x = x | {v}

    expand([], set(g.vertices), set())
    out.sort(key=g.set_key)
    return out


# ---------------------------------------------------------------- CC1

class RejectReason(enum.Enum):
    TOO_FEW_CLIQUES = "too-few-cliques"
    BAD_INTERSECTION_PATTERN = "bad-intersection-pattern"
    EMPTY_INTERIOR = "empty-interior"


@dataclass(frozen=True)
class Rejection:
    reason: RejectReason
    detail: str
    clique_count: int

    def __bool__(self):
        return False


@dataclass(frozen=True)
class CliqueDecomposition:
    """A consecutive enumeration C1..Cn of the cliques of a CC1 graph.

    Indices are 1-based and read modulo n, so ``clique(0)`` is Cn and
    ``clique(n + 1)`` is C1.
    """

    graph: Graph
    cliques: tuple
    _inter: tuple = field(repr=False, compare=False, default=())
    _interior: tuple = field(repr=False, compare=False, default=())

    def __post_init__(self):
        n = len(self.cliques)
        inter = tuple(self.cliques[i] & self.cliques[(i + 1) % n] for i in range(n))
        interior = tuple(self.cliques[i] - inter[i - 1] - inter[i] for i in range(n))
        object.__setattr__(self, "_inter", inter)
        object.__setattr__(self, "_interior", interior)

    @property
    def n(self) -> int:
        return len(self.cliques)

    def _k(self, i: int) -> int:
        return (i - 1) % self.n

    def clique(self, i: int) -> frozenset:
        return self.cliques[self._k(i)]

    def inter(self, i: int) -> frozenset:
        """C_{i,i+1}."""
        return self._inter[self._k(i)]

    def interior(self, i: int) -> frozenset:
        return self._interior[self._k(i)]

    def check_invariants(self):
        n = self.n
        assert n >= 4
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                meet = self.clique(i) & self.clique(j)
                if (j - i) % n in (1, n - 1):
                    assert meet, (i, j)
                else:
                    assert not meet, (i, j)
            assert self.interior(i)
            assert len(self.clique(i)) >= 3

    def as_dict(self) -> dict:
        g = self.graph
        return {
            "n": self.n,
            "cliques": [list(g.sorted(c)) for c in self.cliques],
            "intersections": [list(g.sorted(c)) for c in self._inter],
            "interiors": [list(g.sorted(c)) for c in self._interior],
        }


def recognize_cc1(g: Graph) -> CliqueDecomposition | Rejection:
    """Find the consecutive clique enumeration of ``g`` or say why there is none.

    Base point: C1 is the (canonically least) clique holding the smallest
    vertex.  Orientation: of the two cyclic neighbours of C1, C2 is the one
    whose vertices outside C1 come first in canonical order.
    """
    cliques = maximal_cliques(g)
    n = len(cliques)
    if n < 4:
        return Rejection(RejectReason.TOO_FEW_CLIQUES, f"{n} clique(s); at least 4 needed", n)
    meets = {k: [j for j in range(n) if j != k and cliques[k] & cliques[j]] for k in range(n)}
    for k in range(n):
        if len(meets[k]) != 2:
            c = "{" + ", ".join(map(str, g.sorted(cliques[k]))) + "}"
            return Rejection(
                RejectReason.BAD_INTERSECTION_PATTERN,
                f"clique {c} meets {len(meets[k])} other cliques; a cycle needs exactly 2",
                n,
            )
    first = g.vertices[0]
    start = min((k for k in range(n) if first in cliques[k]), key=lambda k: g.set_key(cliques[k]))
    second = min(meets[start], key=lambda k: g.set_key(cliques[k] - cliques[start]))
    order = [start, second]
    while len(order) < n:
        a, b = meets[order[-1]]
        nxt = a if a != order[-2] else b
        if nxt == start:
            break
        order.append(nxt)
    if len(order) != n or start not in meets[order[-1]]:
        return Rejection(
            RejectReason.BAD_INTERSECTION_PATTERN,
            "clique intersection graph is not a single cycle",
            n,
        )
    d = CliqueDecomposition(g, tuple(cliques[k] for k in order))
    for i in range(1, n + 1):
        if not d.interior(i):
            return Rejection(RejectReason.EMPTY_INTERIOR, f"clique {i} has empty interior", n)
    return d


def retract_to_flower(d: CliqueDecomposition) -> tuple[Graph, dict]:
    """Collapse ``d.graph`` onto the flower graph T_n.

    Returns ``(T_n, phi)`` with ``phi[v]`` the flower vertex whose cluster
    holds ``v``: interiors go to petals wi, intersections C_{i-1,i} to bi.
    """
    n = d.n
    t = flower_graph(n)
    phi = {}
    for i in range(1, n + 1):
        for v in d.interior(i):
            phi[v] = f"w{i}"
        for v in d.inter(i - 1):
            phi[v] = f"b{i}"
    return t, phi


def fibers(g: Graph, phi: Mapping) -> dict:
    out: dict = {}
    for v in g.vertices:
        out.setdefault(phi[v], []).append(v)
    return out


# ---------------------------------------------------------------- isometries

@dataclass(frozen=True)
class GraphIsometry:
    source: Graph
    target: Graph
    mapping: tuple  # pairs (v, sigma(v)) in source canonical order

    def to_dict(self) -> dict:
        return dict(self.mapping)

    def __call__(self, v):
        for a, b in self.mapping:
            if a == v:
                return b
        raise KeyError(v)

    def inverse(self) -> "GraphIsometry":
        inv = {b: a for a, b in self.mapping}
        return GraphIsometry(self.target, self.source, tuple((v, inv[v]) for v in self.target.vertices))

    def is_identity(self) -> bool:
        return all(a == b for a, b in self.mapping)


def is_isometry(g: Graph, h: Graph, mapping: Mapping) -> bool:
    if set(mapping) != set(g.vertices) or set(mapping.values()) != set(h.vertices):
        return False
    if len(set(mapping.values())) != len(mapping):
        return False
    return all(
        (mapping[u] in h.adj[mapping[v]]) == (u in g.adj[v]) for u, v in combinations(g.vertices, 2)
    )


def make_isometry(g: Graph, h: Graph, mapping: Mapping) -> GraphIsometry:
    from .errors import InvalidMorphism

    if not is_isometry(g, h, mapping):
        raise InvalidMorphism("vertex map is not an isometry")
    return GraphIsometry(g, h, tuple((v, mapping[v]) for v in g.vertices))


def isometries(g: Graph, h: Graph) -> list[GraphIsometry]:
    """Every edge-preserving bijection ``g -> h``, by backtracking."""
    if len(g) != len(h) or len(g.edges) != len(h.edges):
        return []
    gv = g.vertices
    out = []
    assign: dict = {}
    used: set = set()
    deg_h = {w: len(h.adj[w]) for w in h.vertices}

    def extend(k):
        if k == len(gv):
            out.append(GraphIsometry(g, h, tuple((v, assign[v]) for v in gv)))
            return
        v = gv[k]
        for w in h.vertices:
            if w in used or deg_h[w] != len(g.adj[v]):
                continue
            if all((assign[u] in h.adj[w]) == (u in g.adj[v]) for u in gv[:k]):
                assign[v] = w
                used.add(w)
                extend(k + 1)
                used.discard(w)
                del assign[v]

    extend(0)
    return out
