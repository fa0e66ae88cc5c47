"""Syllable words over a graph product and their normal forms.

A word is any sequence of ``Syllable(vertex, element)`` pairs.  ``normalize``
runs Green's append procedure one syllable at a time, and ``canonicalize``
picks the lexicographically least shuffle of the result under the graph's
vertex order, which is a complete invariant for equality in the group.

Word text grammar: ``syll (. syll)*`` with ``syll = vertex^literal``; ``e``
is the empty word.
"""

from __future__ import annotations

from typing import Iterable, Mapping, NamedTuple

from .errors import KindMismatch, ParseError, PresentationMismatch
from .graphs import Graph
from .groups import VertexGroup


class Presentation:
    """A graph together with a vertex group for every vertex."""

    __slots__ = ("graph", "group_of", "adj", "order", "name")

    def __init__(self, graph: Graph, group_of: Mapping, name: str = ""):
        missing = [v for v in graph.vertices if v not in group_of]
        if missing:
            raise PresentationMismatch(f"no vertex group for {', '.join(map(str, missing))}")
        extra = [v for v in group_of if v not in graph.index]
        if extra:
            raise PresentationMismatch(f"groups given for unknown vertices {extra}")
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "group_of", {v: group_of[v] for v in graph.vertices})
        object.__setattr__(self, "adj", graph.adj)
        object.__setattr__(self, "order", graph.index)
        object.__setattr__(self, "name", name or graph.name)

    def __setattr__(self, key, value):
        raise AttributeError("Presentation is immutable")

    def __eq__(self, other):
        if not isinstance(other, Presentation):
            return NotImplemented
        return self.graph == other.graph and self.group_of == other.group_of

    def __hash__(self):
        return hash((self.graph, tuple(self.group_of.items())))

    def __repr__(self):
        return f"<Presentation {self.name or ''} over {self.graph!r}>"

    @classmethod
    def uniform(cls, graph: Graph, group: VertexGroup) -> "Presentation":
        return cls(graph, {v: group for v in graph.vertices})

    def group(self, v) -> VertexGroup:
        try:
            return self.group_of[v]
        except KeyError:
            raise PresentationMismatch(f"unknown vertex {v!r}") from None

    @property
    def vertices(self):
        return self.graph.vertices

    def all_finite(self) -> bool:
        return all(g.finite for g in self.group_of.values())

    def generators(self, vs: Iterable | None = None) -> list:
        """Generator syllables of the full subgroup on ``vs`` (default: all)."""
        vs = self.graph.vertices if vs is None else self.graph.sorted(vs)
        return [Syllable(v, x) for v in vs for x in self.group_of[v].generators()]

    def syllables(self, vs: Iterable | None = None) -> list:
        """Every non-identity syllable on ``vs``; finite vertex groups only."""
        vs = self.graph.vertices if vs is None else self.graph.sorted(vs)
        out = []
        for v in vs:
            grp = self.group_of[v]
            out += [Syllable(v, x) for x in grp.elements() if not grp.is_identity(x)]
        return out


class Syllable(NamedTuple):
    vertex: object
    element: object


class NormalWord(tuple):
    """A syllable tuple certified to be in normal form (built only here)."""

    __slots__ = ()


class CanonicalWord(NormalWord):
    """The least shuffle of a normal form; equal iff the group elements are."""

    __slots__ = ()


EMPTY = CanonicalWord()


def check_word(p: Presentation, w: Iterable) -> tuple:
    out = []
    for s in w:
        if not isinstance(s, tuple) or len(s) != 2:
            raise PresentationMismatch(f"{s!r} is not a syllable")
        v, x = s
        grp = p.group(v)
        try:
            grp.validate(x)
        except KindMismatch as exc:
            raise PresentationMismatch(f"bad element at vertex {v!r}: {exc}") from None
        out.append(s if type(s) is Syllable else Syllable(v, x))
    return tuple(out)


def _append(p: Presentation, out: list, v, x):
    """One step of the inductive normal-form procedure (cases i-iv)."""
    grp = p.group_of[v]
    if grp.is_identity(x):
        return  # (i)
    adj = p.adj[v]
    j = len(out) - 1
    while j >= 0:
        u = out[j][0]
        if u == v:
            break
        if u not in adj:
            j = -1
            break
        j -= 1
    if j < 0:
        out.append(Syllable(v, x))  # (iv)
        return
    # out[j] shuffles to the end.  Any other same-vertex syllable further
    # left would have to pass out[j], which it cannot, so out[j] is the
    # unique partner.
    y = grp.mul(out[j][1], x)
    del out[j]
    if not grp.is_identity(y):
        out.append(Syllable(v, y))  # (iii)
    # else (ii)


def normalize(p: Presentation, w: Iterable) -> NormalWord:
    out: list = []
    for v, x in check_word(p, w):
        _append(p, out, v, x)
    return NormalWord(out)


def _least_shuffle(p: Presentation, nf) -> CanonicalWord:
    rest = list(nf)
    order = p.order
    adj = p.adj
    out = []
    while rest:
        best = None
        for k, s in enumerate(rest):
            v = s[0]
            if best is not None and order[v] >= order[rest[best][0]]:
                continue
            a = adj[v]
            if all(r[0] in a for r in rest[:k]):
                best = k
        out.append(rest.pop(best))
    return CanonicalWord(out)


def canonicalize(p: Presentation, w: Iterable) -> CanonicalWord:
    if isinstance(w, CanonicalWord):
        return w
    nf = w if isinstance(w, NormalWord) else normalize(p, w)
    return _least_shuffle(p, nf)


def concat(*ws) -> tuple:
    out: list = []
    for w in ws:
        out.extend(w)
    return tuple(out)


def inverse_word(p: Presentation, u: Iterable) -> tuple:
    """Raw inverse: reversed, each syllable inverted; no normalization."""
    return tuple(Syllable(v, p.group(v).inv(x)) for v, x in reversed(tuple(u)))


def multiply(p: Presentation, *ws) -> CanonicalWord:
    return canonicalize(p, concat(*ws))


def invert(p: Presentation, u: Iterable) -> CanonicalWord:
    return canonicalize(p, inverse_word(p, check_word(p, u)))


def equal(p: Presentation, u: Iterable, v: Iterable) -> bool:
    return canonicalize(p, u) == canonicalize(p, v)


def is_identity(p: Presentation, u: Iterable) -> bool:
    return not normalize(p, u)


def conjugate(p: Presentation, g: Iterable, x: Iterable) -> CanonicalWord:
    """g x g^-1."""
    g = tuple(g)
    return multiply(p, g, x, inverse_word(p, g))


def support(p: Presentation, u: Iterable) -> frozenset:
    return frozenset(s[0] for s in normalize(p, u))


def in_full_subgroup(p: Presentation, u: Iterable, s: Iterable) -> bool:
    return support(p, u) <= frozenset(s)


def syllable_length(p: Presentation, u: Iterable) -> int:
    return len(normalize(p, u))


def is_normal(p: Presentation, w: Iterable) -> bool:
    """No identity syllables and no two same-vertex syllables can meet."""
    w = tuple(w)
    for k, (v, x) in enumerate(w):
        if p.group(v).is_identity(x):
            return False
        a = p.adj[v]
        for j in range(k + 1, len(w)):
            u = w[j][0]
            if u == v:
                return False
            if u not in a:
                break
    return True


# ---------------------------------------------------------------- text form

def format_word(p: Presentation, w: Iterable) -> str:
    w = tuple(w)
    if not w:
        return "e"
    return " . ".join(f"{v}^{p.group(v).format(x)}" for v, x in w)


def parse_word(p: Presentation, text: str) -> tuple:
    text = text.strip()
    if text in ("e", ""):
        return ()
    out = []
    for chunk in text.split("."):
        chunk = chunk.strip()
        v, sep, lit = chunk.partition("^")
        if not sep or not v.strip() or not lit.strip():
            raise ParseError(f"bad syllable {chunk!r}; expected vertex^literal")
        v = v.strip()
        if v not in p.group_of:
            raise ParseError(f"unknown vertex {v!r} in word")
        out.append(Syllable(v, p.group_of[v].parse(lit)))
    return tuple(out)


def ball(p: Presentation, radius: int, vs: Iterable | None = None, letters=None, limit=None) -> list:
    """Distinct elements of the full subgroup on ``vs`` having a representative
    of at most ``radius`` syllables, as canonical words in BFS order.

    ``letters`` overrides the syllable alphabet (needed for infinite vertex
    groups); by default every non-identity syllable of the finite groups on
    ``vs`` is used.  ``limit`` caps the number of elements; exceeding it
    raises ``OverflowError``.
    """
    if letters is None:
        letters = p.syllables(vs)
    seen = {EMPTY}
    out = [EMPTY]
    frontier = [EMPTY]
    for _ in range(radius):
        nxt = []
        for w in frontier:
            for s in letters:
                y = canonicalize(p, w + (s,))
                if y not in seen:
                    seen.add(y)
                    out.append(y)
                    nxt.append(y)
                    if limit is not None and len(out) > limit:
                        raise OverflowError(f"more than {limit} elements within radius {radius}")
        frontier = nxt
    return out
