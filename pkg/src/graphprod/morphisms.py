"""Local and inner automorphisms, characters and phase-twisted images.

A local automorphism is a graph isometry ``sigma`` plus, for every vertex
``v``, an isomorphism ``phi_v: G_v -> G_sigma(v)`` taken from a fixed menu of
descriptors so that validity is decidable:

========================  ==============================================
kind                      descriptor (text form)
========================  ==============================================
any                       ``id``
``Z/n``                   unit multiplier ``u`` with gcd(u, n) = 1
``Z``                     sign ``1`` or ``-1``
``Free(k)``               basis images ``[[x2] [x1 x2]]``
``DirectSum``             componentwise ``(d1, d2, ...)``
``Wreath``                ``{A-descriptor | [perm]}``; the permutation must
                          normalize the acting group
========================  ==============================================

Characters take values in Q/Z, stored as ``Fraction`` in ``[0, 1)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, NamedTuple

from .errors import InvalidMorphism, KindMismatch, ParseError, PresentationMismatch
from .graphs import GraphIsometry, is_isometry, make_isometry, recognize_cc1
from .groups import (
    Cyclic,
    DirectSum,
    Free,
    Integers,
    SplitWreath,
    VertexGroup,
    _format_perm,
    _parse_perm,
    perm_inv,
    perm_mul,
    perm_parity,
    split_top,
)
from .words import CanonicalWord, Presentation, Syllable, canonicalize, check_word, inverse_word, multiply

EXHAUSTIVE_LIMIT = 400  # largest group order checked pair by pair


# ---------------------------------------------------------------- vertex isomorphisms

class GroupIso:
    """An isomorphism ``src -> dst`` between vertex groups."""

    src: VertexGroup
    dst: VertexGroup

    def __call__(self, x):
        raise NotImplementedError

    def inverse(self) -> "GroupIso":
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError

    def _check_structure(self):
        """Kind-specific checks; raise InvalidMorphism."""

    def validate(self):
        self._check_structure()
        G = self.src
        if G.finite and G.order() <= EXHAUSTIVE_LIMIT:
            elems = G.elements()
            images = [self(x) for x in elems]
            for y in images:
                try:
                    self.dst.validate(y)
                except KindMismatch as exc:
                    raise InvalidMorphism(f"{self.describe()} leaves {self.dst}: {exc}") from None
            if len(set(images)) != len(elems) or self.dst.order() != len(elems):
                raise InvalidMorphism(f"{self.describe()} is not a bijection {G} -> {self.dst}")
            table = dict(zip(elems, images))
            for x in elems:
                for y in elems:
                    if table[G.mul(x, y)] != self.dst.mul(table[x], table[y]):
                        raise InvalidMorphism(f"{self.describe()} is not a homomorphism")
        return self

    def __repr__(self):
        return f"<{type(self).__name__} {self.describe()} : {self.src} -> {self.dst}>"


class IdentityIso(GroupIso):
    def __init__(self, group):
        self.src = self.dst = group

    def __call__(self, x):
        return x

    def inverse(self):
        return self

    def describe(self):
        return "id"


class UnitMultiplier(GroupIso):
    """``x -> u x`` on Z/n (u a unit) or on Z (u = +-1)."""

    def __init__(self, group, u: int):
        self.src = self.dst = group
        self.u = u % group.n if isinstance(group, Cyclic) else u

    def _check_structure(self):
        G = self.src
        if isinstance(G, Cyclic):
            if math.gcd(self.u, G.n) != 1:
                raise InvalidMorphism(f"{self.u} is not a unit mod {G.n}")
        elif isinstance(G, Integers):
            if self.u not in (1, -1):
                raise InvalidMorphism("automorphisms of Z are +-1")
        else:
            raise InvalidMorphism(f"unit multiplier on {G}")

    def __call__(self, x):
        if isinstance(self.src, Cyclic):
            return x * self.u % self.src.n
        return x * self.u

    def inverse(self):
        if isinstance(self.src, Cyclic):
            return UnitMultiplier(self.src, pow(self.u, -1, self.src.n))
        return self

    def describe(self):
        return str(self.u)


def _free_len(x) -> int:
    return sum(abs(e) for _, e in x)


def nielsen_inverse(F: Free, images):
    """Inverse basis images of ``x_a -> images[a-1]``, or ``None`` if the greedy
    Nielsen reduction does not end in a signed permutation of the letters.

    Reaching letters proves the images form a basis; a stall proves nothing,
    so the caller treats ``None`` as "cannot certify".
    """
    k = F.k
    cur = [tuple(u) for u in images]
    track = [((a, 1),) for a in range(1, k + 1)]  # cur[i] = phi(track[i])
    while True:
        if any(not u for u in cur):
            return None
        improved = False
        for i in range(k):
            for j in range(k):
                if i == j:
                    continue
                for eps in (1, -1):
                    uj = cur[j] if eps == 1 else F.inv(cur[j])
                    tj = track[j] if eps == 1 else F.inv(track[j])
                    for left in (False, True):
                        cand = F.mul(uj, cur[i]) if left else F.mul(cur[i], uj)
                        if _free_len(cand) < _free_len(cur[i]):
                            cur[i] = cand
                            track[i] = F.mul(tj, track[i]) if left else F.mul(track[i], tj)
                            improved = True
                            break
                    if improved:
                        break
                if improved:
                    break
            if improved:
                break
        if not improved:
            break
    if any(len(u) != 1 or abs(u[0][1]) != 1 for u in cur):
        return None
    letters = sorted(u[0][0] for u in cur)
    if letters != list(range(1, k + 1)):
        return None
    inv = [None] * k
    for u, t in zip(cur, track):
        a, s = u[0]
        inv[a - 1] = t if s == 1 else F.inv(t)
    return tuple(inv)


def free_substitute(F: Free, images, x):
    out = F.identity()
    for a, e in x:
        out = F.mul(out, F.power(images[a - 1], e))
    return out


class FreeBasisMap(GroupIso):
    def __init__(self, group: Free, images):
        self.src = self.dst = group
        self.images = tuple(tuple(u) for u in images)
        self._inv = None

    def _check_structure(self):
        F = self.src
        if len(self.images) != F.k:
            raise InvalidMorphism(f"Free({F.k}) needs {F.k} basis images")
        for u in self.images:
            try:
                F.validate(u)
            except KindMismatch as exc:
                raise InvalidMorphism(str(exc)) from None
        inv = nielsen_inverse(F, self.images)
        if inv is None:
            raise InvalidMorphism(f"could not certify {self.describe()} as a basis (Nielsen reduction stalled)")
        self._inv = inv

    def __call__(self, x):
        return free_substitute(self.src, self.images, x)

    def inverse(self):
        inv = self._inv or nielsen_inverse(self.src, self.images)
        if inv is None:
            raise InvalidMorphism("not invertible")
        return FreeBasisMap(self.src, inv)

    def describe(self):
        return "[" + " ".join(self.src.format(u) for u in self.images) + "]"


class DirectSumIso(GroupIso):
    def __init__(self, src: DirectSum, dst: DirectSum, parts):
        self.src, self.dst = src, dst
        self.parts = tuple(parts)

    def _check_structure(self):
        if len(self.parts) != len(self.src.parts) or len(self.dst.parts) != len(self.src.parts):
            raise InvalidMorphism("componentwise descriptor has the wrong arity")
        for d in self.parts:
            d.validate()

    def __call__(self, x):
        return tuple(d(a) for d, a in zip(self.parts, x))

    def inverse(self):
        return DirectSumIso(self.dst, self.src, [d.inverse() for d in self.parts])

    def describe(self):
        return "(" + ", ".join(d.describe() for d in self.parts) + ")"


class WreathIso(GroupIso):
    """``(f, b) -> (alpha o f o pi^-1, pi b pi^-1)``."""

    def __init__(self, group: SplitWreath, base_iso: GroupIso, perm):
        self.src = self.dst = group
        self.base_iso = base_iso
        self.perm = tuple(perm)

    def _check_structure(self):
        W = self.src
        if sorted(self.perm) != list(range(W.degree)):
            raise InvalidMorphism(f"{self.perm} is not a permutation of the index set")
        self.base_iso.validate()
        acting = set(W.acting)
        pinv = perm_inv(self.perm)
        if any(perm_mul(perm_mul(self.perm, b), pinv) not in acting for b in W.acting):
            raise InvalidMorphism("index permutation does not normalize the acting group")

    def __call__(self, x):
        f, b = x
        W = self.src
        d = {self.perm[i]: self.base_iso(a) for i, a in f}
        return (W._pack(d), perm_mul(perm_mul(self.perm, b), perm_inv(self.perm)))

    def inverse(self):
        return WreathIso(self.src, self.base_iso.inverse(), perm_inv(self.perm))

    def describe(self):
        return "{" + self.base_iso.describe() + " | " + _format_perm(self.perm) + "}"


class ComposedIso(GroupIso):
    """``outer o inner``."""

    def __init__(self, outer: GroupIso, inner: GroupIso):
        self.outer, self.inner = outer, inner
        self.src, self.dst = inner.src, outer.dst

    def __call__(self, x):
        return self.outer(self.inner(x))

    def inverse(self):
        return ComposedIso(self.inner.inverse(), self.outer.inverse())

    def _check_structure(self):
        self.outer.validate()
        self.inner.validate()

    def describe(self):
        return f"{self.outer.describe()} o {self.inner.describe()}"


def parse_iso(src: VertexGroup, dst: VertexGroup, text: str) -> GroupIso:
    t = text.strip()
    if t == "id":
        if src != dst:
            raise ParseError(f"'id' needs equal groups, got {src} and {dst}")
        return IdentityIso(src)
    if src != dst:
        raise ParseError(f"descriptors map a group to itself; got {src} -> {dst}")
    G = src
    if isinstance(G, (Cyclic, Integers)):
        try:
            return UnitMultiplier(G, int(t))
        except ValueError:
            raise ParseError(f"expected an integer multiplier, got {t!r}") from None
    if isinstance(G, Free):
        if not (t.startswith("[") and t.endswith("]")):
            raise ParseError(f"free descriptor must look like [[x2] [x1]]: {t!r}")
        inner = t[1:-1].strip()
        chunks, depth, cur = [], 0, ""
        for ch in inner:
            if ch == "[":
                depth += 1
            cur += ch
            if ch == "]":
                depth -= 1
                if depth == 0:
                    chunks.append(cur.strip())
                    cur = ""
        if cur.strip():
            raise ParseError(f"stray text in free descriptor {t!r}")
        return FreeBasisMap(G, [G.parse(c) for c in chunks])
    if isinstance(G, DirectSum):
        if not (t.startswith("(") and t.endswith(")")):
            raise ParseError(f"direct-sum descriptor must be parenthesized: {t!r}")
        items = split_top(t[1:-1])
        if len(items) != len(G.parts):
            raise ParseError(f"expected {len(G.parts)} component descriptors")
        return DirectSumIso(G, G, [parse_iso(c, c, s) for c, s in zip(G.parts, items)])
    if isinstance(G, SplitWreath):
        if not (t.startswith("{") and t.endswith("}")):
            raise ParseError(f"wreath descriptor must be braced: {t!r}")
        parts = split_top(t[1:-1], "|")
        if len(parts) != 2:
            raise ParseError(f"wreath descriptor needs one '|': {t!r}")
        return WreathIso(G, parse_iso(G.base, G.base, parts[0]), _parse_perm(parts[1], G.degree))
    raise ParseError(f"no descriptor grammar for {G}")


# ---------------------------------------------------------------- automorphisms

class Automorphism:
    """Common surface: call on a word, invert, compose."""

    source: Presentation
    target: Presentation

    def __call__(self, u) -> CanonicalWord:
        raise NotImplementedError

    def inverse(self) -> "Automorphism":
        raise NotImplementedError

    def __matmul__(self, other: "Automorphism") -> "Automorphism":
        return compose(self, other)


class LocalAutomorphism(Automorphism):
    def __init__(self, source: Presentation, target: Presentation, sigma: GraphIsometry, phi: Mapping):
        self.source, self.target = source, target
        self.sigma = sigma
        self.smap = sigma.to_dict()
        self.phi = dict(phi)

    def __call__(self, u):
        u = check_word(self.source, u)
        return canonicalize(self.target, [Syllable(self.smap[v], self.phi[v](x)) for v, x in u])

    def inverse(self):
        inv = self.sigma.inverse()
        phi = {self.smap[v]: self.phi[v].inverse() for v in self.source.vertices}
        return LocalAutomorphism(self.target, self.source, inv, phi)

    def is_identity(self) -> bool:
        return self.sigma.is_identity() and all(isinstance(f, IdentityIso) for f in self.phi.values())

    def __repr__(self):
        moved = [f"{a}->{b}" for a, b in self.sigma.mapping if a != b]
        return f"<LocalAutomorphism sigma=[{', '.join(moved) or 'id'}]>"


def make_local(source: Presentation, sigma, phi: Mapping | None = None, target: Presentation | None = None) -> LocalAutomorphism:
    """Validate and build a local automorphism (or local isomorphism when
    ``target`` differs from ``source``).  Vertices missing from ``phi`` get
    the identity descriptor."""
    target = target or source
    if isinstance(sigma, GraphIsometry):
        smap = sigma.to_dict()
    else:
        smap = dict(sigma)
    if not is_isometry(source.graph, target.graph, smap):
        raise InvalidMorphism("sigma is not an isometry of the underlying graphs")
    iso = make_isometry(source.graph, target.graph, smap)
    phi = dict(phi or {})
    unknown = set(phi) - set(source.vertices)
    if unknown:
        raise InvalidMorphism(f"descriptors given for unknown vertices {sorted(map(str, unknown))}")
    full = {}
    for v in source.vertices:
        src, dst = source.group_of[v], target.group_of[smap[v]]
        f = phi.get(v)
        if f is None:
            if src != dst:
                raise InvalidMorphism(f"vertex {v}: {src} and {dst} differ, an explicit descriptor is needed")
            f = IdentityIso(src)
        if f.src != src or f.dst != dst:
            raise InvalidMorphism(f"vertex {v}: descriptor maps {f.src} -> {f.dst}, need {src} -> {dst}")
        f.validate()
        full[v] = f
    return LocalAutomorphism(source, target, iso, full)


class InnerAutomorphism(Automorphism):
    def __init__(self, p: Presentation, g):
        self.source = self.target = p
        self.g = canonicalize(p, g)
        self._ginv = inverse_word(p, self.g)

    def __call__(self, u):
        return multiply(self.source, self.g, check_word(self.source, u), self._ginv)

    def inverse(self):
        return InnerAutomorphism(self.source, self._ginv)

    def __repr__(self):
        return f"<InnerAutomorphism g={self.g}>"


def inner(p: Presentation, g) -> InnerAutomorphism:
    return InnerAutomorphism(p, g)


class Composite(Automorphism):
    """``outer o inner``."""

    def __init__(self, outer: Automorphism, inner_: Automorphism):
        if inner_.target != outer.source:
            raise PresentationMismatch("cannot compose: target and source presentations differ")
        self.outer, self.inner = outer, inner_
        self.source, self.target = inner_.source, outer.target

    def __call__(self, u):
        return self.outer(self.inner(u))

    def inverse(self):
        return Composite(self.inner.inverse(), self.outer.inverse())


def compose(f: Automorphism, g: Automorphism) -> Automorphism:
    """``f o g``; two local automorphisms compose to a local automorphism."""
    if isinstance(f, LocalAutomorphism) and isinstance(g, LocalAutomorphism):
        if g.target != f.source:
            raise PresentationMismatch("cannot compose: target and source presentations differ")
        smap = {v: f.smap[g.smap[v]] for v in g.source.vertices}
        phi = {v: ComposedIso(f.phi[g.smap[v]], g.phi[v]) for v in g.source.vertices}
        return LocalAutomorphism(g.source, f.target, make_isometry(g.source.graph, f.target.graph, smap), phi)
    if isinstance(f, InnerAutomorphism) and isinstance(g, InnerAutomorphism) and f.source == g.source:
        return InnerAutomorphism(f.source, f.g + g.g)
    return Composite(f, g)


def apply(f: Automorphism, u) -> CanonicalWord:
    return f(u)


# ---------------------------------------------------------------- characters

class PhaseMap:
    """A homomorphism from one vertex group into Q/Z."""

    def __init__(self, group: VertexGroup, data):
        self.group = group
        self.data = data
        self._check()

    def _check(self):
        G, d = self.group, self.data
        if isinstance(G, Cyclic):
            if not isinstance(d, Fraction) or (d * G.n).denominator != 1:
                raise InvalidMorphism(f"phase {d} of a generator of Z/{G.n} must be a multiple of 1/{G.n}")
        elif isinstance(G, Integers):
            if not isinstance(d, Fraction):
                raise InvalidMorphism("phase must be a rational number")
        elif isinstance(G, Free):
            if len(d) != G.k or not all(isinstance(q, Fraction) for q in d):
                raise InvalidMorphism(f"Free({G.k}) needs {G.k} rational phases")
        elif isinstance(G, DirectSum):
            if len(d) != len(G.parts):
                raise InvalidMorphism("componentwise phases have the wrong arity")
        elif isinstance(G, SplitWreath):
            base, sign = d
            if sign not in (Fraction(0), Fraction(1, 2)):
                raise InvalidMorphism("the sign phase of a wreath character is 0 or 1/2")
        if G.finite and G.order() <= EXHAUSTIVE_LIMIT:
            elems = G.elements()
            for x in elems:
                for y in elems:
                    if self(G.mul(x, y)) != (self(x) + self(y)) % 1:
                        raise InvalidMorphism(f"phase map on {G} is not additive")

    def __call__(self, x) -> Fraction:
        G, d = self.group, self.data
        if isinstance(G, (Cyclic, Integers)):
            return (x * d) % 1
        if isinstance(G, Free):
            return sum((e * d[a - 1] for a, e in x), Fraction(0)) % 1
        if isinstance(G, DirectSum):
            return sum((m(a) for m, a in zip(d, x)), Fraction(0)) % 1
        if isinstance(G, SplitWreath):
            base, sign = d
            total = sum((base(a) for _, a in x[0]), Fraction(0))
            return (total + sign * perm_parity(x[1])) % 1
        raise InvalidMorphism(f"no phase maps on {G}")

    def describe(self) -> str:
        G, d = self.group, self.data
        if isinstance(G, (Cyclic, Integers)):
            return str(d)
        if isinstance(G, Free):
            return "[" + " ".join(map(str, d)) + "]"
        if isinstance(G, DirectSum):
            return "(" + ", ".join(m.describe() for m in d) + ")"
        base, sign = d
        return "{" + base.describe() + " | " + str(sign) + "}"


def zero_phase(G: VertexGroup) -> PhaseMap:
    if isinstance(G, (Cyclic, Integers)):
        return PhaseMap(G, Fraction(0))
    if isinstance(G, Free):
        return PhaseMap(G, (Fraction(0),) * G.k)
    if isinstance(G, DirectSum):
        return PhaseMap(G, tuple(zero_phase(c) for c in G.parts))
    if isinstance(G, SplitWreath):
        return PhaseMap(G, (zero_phase(G.base), Fraction(0)))
    raise InvalidMorphism(f"no phase maps on {G}")


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad rational {text!r}") from None


def parse_phase(G: VertexGroup, text: str) -> PhaseMap:
    t = text.strip()
    if isinstance(G, (Cyclic, Integers)):
        return PhaseMap(G, _parse_fraction(t))
    if isinstance(G, Free):
        if not (t.startswith("[") and t.endswith("]")):
            raise ParseError(f"free phases look like [1/2 0]: {t!r}")
        return PhaseMap(G, tuple(_parse_fraction(s) for s in t[1:-1].split()))
    if isinstance(G, DirectSum):
        if not (t.startswith("(") and t.endswith(")")):
            raise ParseError(f"direct-sum phases must be parenthesized: {t!r}")
        items = split_top(t[1:-1])
        if len(items) != len(G.parts):
            raise ParseError("wrong number of component phases")
        return PhaseMap(G, tuple(parse_phase(c, s) for c, s in zip(G.parts, items)))
    if isinstance(G, SplitWreath):
        if not (t.startswith("{") and t.endswith("}")):
            raise ParseError(f"wreath phases look like {{1/2 | 0}}: {t!r}")
        parts = split_top(t[1:-1], "|")
        if len(parts) != 2:
            raise ParseError("wreath phases need one '|'")
        return PhaseMap(G, (parse_phase(G.base, parts[0]), _parse_fraction(parts[1])))
    raise ParseError(f"no phase grammar for {G}")


class Character:
    """A homomorphism from the graph product into Q/Z, given vertex by vertex.

    Any family of vertex characters extends, since Q/Z is abelian and so
    kills every commutator relation.
    """

    def __init__(self, p: Presentation, phases: Mapping | None = None):
        phases = dict(phases or {})
        unknown = set(phases) - set(p.vertices)
        if unknown:
            raise InvalidMorphism(f"phases given for unknown vertices {sorted(map(str, unknown))}")
        self.presentation = p
        self.phases = {}
        for v in p.vertices:
            m = phases.get(v) or zero_phase(p.group_of[v])
            if m.group != p.group_of[v]:
                raise InvalidMorphism(f"vertex {v}: phase map is for {m.group}, not {p.group_of[v]}")
            self.phases[v] = m

    def __call__(self, u) -> Fraction:
        u = check_word(self.presentation, u)
        return sum((self.phases[v](x) for v, x in u), Fraction(0)) % 1

    def is_trivial(self) -> bool:
        return all(m.describe() in ("0",) or not any(m(x) for x in m.group.generators()) for m in self.phases.values())


def character_eval(eta: Character, u) -> Fraction:
    return eta(u)


class PhasedWord(NamedTuple):
    phase: Fraction
    word: CanonicalWord


def phased_mul(p: Presentation, x: PhasedWord, y: PhasedWord) -> PhasedWord:
    return PhasedWord((x.phase + y.phase) % 1, multiply(p, x.word, y.word))


def twisted_apply(eta: Character, delta: Automorphism, u) -> PhasedWord:
    """``u -> (eta(u), delta(u))``, the group-level data of the twisted map."""
    if eta.presentation != delta.source:
        raise PresentationMismatch("character and automorphism live on different presentations")
    return PhasedWord(eta(u), delta(u))


# ---------------------------------------------------------------- Aut structure report

def _euler_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


def _prime_powers(n: int) -> list:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            q = 1
            while n % d == 0:
                n //= d
                q *= d
            out.append(q)
        d += 1
    if n > 1:
        out.append(n)
    return out


def iso_invariant(G: VertexGroup):
    """A complete isomorphism invariant when one is known, else ``None``."""
    if isinstance(G, Integers) or (isinstance(G, Free) and G.k == 1):
        return ("Z",)
    if isinstance(G, Free):
        return ("F", G.k)
    if isinstance(G, Cyclic):
        return ("ab", tuple(sorted(_prime_powers(G.n))))
    if isinstance(G, DirectSum):
        keys = [iso_invariant(c) for c in G.parts]
        if all(k is not None and k[0] == "ab" for k in keys):
            return ("ab", tuple(sorted(q for k in keys for q in k[1])))
    return None


def definitely_non_isomorphic(G: VertexGroup, H: VertexGroup) -> bool:
    kg, kh = iso_invariant(G), iso_invariant(H)
    if kg is not None and kh is not None:
        return kg != kh
    if G.finite != H.finite:
        return True
    if G.finite and H.finite:
        return G.order() != H.order()
    return False


def aut_summary(G: VertexGroup) -> dict:
    if isinstance(G, Integers) or (isinstance(G, Free) and G.k == 1):
        return {"group": str(G), "aut": "Z/2", "order": 2}
    if isinstance(G, Cyclic):
        return {"group": str(G), "aut": f"(Z/{G.n})^x", "order": _euler_phi(G.n)}
    if isinstance(G, Free):
        return {"group": str(G), "aut": f"Aut(F_{G.k})", "order": "infinite"}
    return {"group": str(G), "aut": f"Aut({G})", "order": "not computed"}


def out_structure_report(p: Presentation) -> dict:
    """Instantiate Aut = Inn x| (Loc_0 x| Sym) for a CC1 graph product."""
    d = recognize_cc1(p.graph)
    if not d:
        raise InvalidMorphism(f"graph is not CC1: {d.reason.value}: {d.detail}")
    g = p.graph
    center = frozenset(g.vertices)
    for v in g.vertices:
        center &= g.adj[v] | {v}
    factors = [dict(vertex=str(v), **aut_summary(p.group_of[v])) for v in g.vertices]
    orders = [f["order"] for f in factors]
    if all(isinstance(o, int) for o in orders):
        loc0_order = math.prod(orders)
    elif "infinite" in orders:
        loc0_order = "infinite"
    else:
        loc0_order = "not computed"
    groups = [p.group_of[v] for v in g.vertices]
    pairwise = all(definitely_non_isomorphic(a, b) for k, a in enumerate(groups) for b in groups[k + 1:])
    sizes = [len(c) for c in d.cliques]
    per_clique = all(
        definitely_non_isomorphic(p.group_of[a], p.group_of[b])
        for c in d.cliques
        for k, a in enumerate(g.sorted(c))
        for b in g.sorted(c)[k + 1:]
    )
    if pairwise:
        sym, why = "trivial", "vertex groups pairwise non-isomorphic"
    elif len(set(sizes)) == len(sizes) and per_clique:
        sym, why = "trivial", "clique sizes distinct and groups within each clique pairwise non-isomorphic"
    else:
        sym, why = "finite, not computed", "no triviality criterion applies"
    return {
        "cliques": d.n,
        "inn": "Gamma" if not center else f"Gamma / Z(Gamma), centre on {list(g.sorted(center))}",
        "center_vertices": list(g.sorted(center)),
        "loc0": "+".join(f"Aut({f['group']})" for f in factors),
        "loc0_factors": factors,
        "loc0_order": loc0_order,
        "sym": sym,
        "sym_reason": why,
        "formula": "Aut = Inn x| (Loc0 x| Sym); Out = Loc0 x| Sym",
    }
