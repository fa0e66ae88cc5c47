"""Constructive decompositions in graph products over cycles of cliques.

Clique indices follow the cyclic convention of ``CliqueDecomposition``:
``d.inter(i)`` is C_{i,i+1}, ``d.interior(i)`` is the interior of C_i, and all
indices are read modulo n.  Every routine checks its hypotheses and raises
``HypothesisViolation`` (with a ``which`` tag) rather than returning an
unverified answer.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .errors import BudgetExhausted, HypothesisViolation, SupportViolation
from .graphs import CliqueDecomposition, link, retract_to_flower, star
from .groups import DirectSum
from .words import (
    EMPTY,
    CanonicalWord,
    Presentation,
    Syllable,
    ball,
    canonicalize,
    check_word,
    concat,
    equal,
    in_full_subgroup,
    inverse_word,
    invert,
    multiply,
    normalize,
    support,
)


def _fmt(p, vs):
    return "{" + ", ".join(map(str, p.graph.sorted(vs))) + "}"


# ---------------------------------------------------------------- shuffles

def tail_split(p: Presentation, nf, vs) -> tuple[tuple, tuple]:
    """Split a normal word into ``(rest, tail)`` where ``tail`` is the largest
    run of syllables on ``vs`` that can be shuffled to the end."""
    rest, tail = [], []
    for s in reversed(nf):
        a = p.adj[s[0]]
        if s[0] in vs and all(r[0] in a for r in rest):
            tail.append(s)
        else:
            rest.append(s)
    return tuple(reversed(rest)), tuple(reversed(tail))


def head_split(p: Presentation, nf, vs) -> tuple[tuple, tuple]:
    """Mirror of ``tail_split``: ``(head, rest)`` with ``head`` shuffled to the front."""
    head, rest = [], []
    for s in nf:
        a = p.adj[s[0]]
        if s[0] in vs and all(r[0] in a for r in rest):
            head.append(s)
        else:
            rest.append(s)
    return tuple(head), tuple(rest)


def _restrict(w, vs) -> tuple:
    return tuple(s for s in w if s[0] in vs)


# ---------------------------------------------------------------- amalgams, normalizers

@dataclass(frozen=True)
class AmalgamSplit:
    vertex: object
    left: frozenset  # V \ {w}
    edge: frozenset  # lk(w)
    right: frozenset  # st(w)
    degenerate: bool


def amalgam_split(p: Presentation, w) -> AmalgamSplit:
    g = p.graph
    g.check([w])
    lk = link(g, [w])
    st = star(g, [w])
    left = frozenset(g.vertices) - {w}
    return AmalgamSplit(w, left, lk, st, st == frozenset(g.vertices))


def normalizer_of_full(p: Presentation, t: Iterable) -> frozenset:
    """Vertex set of the normalizer of the full subgroup on ``t``: t u lk(t)."""
    t = p.graph.check(t)
    return t | link(p.graph, t)


@dataclass(frozen=True)
class QNResult:
    member: bool
    witness: Syllable | None = None
    conjugate: CanonicalWord | None = None


def clique_quasinormalizer_witness(p: Presentation, d: CliqueDecomposition, i: int, g) -> QNResult:
    """Either confirm ``g`` lies in the clique subgroup on C_i, or exhibit a
    generator ``x`` of it whose conjugate ``g x g^-1`` leaves C_i.

    Interior generators are tried first; they always suffice because the
    normalizer of the interior subgroup is the clique subgroup itself.
    """
    c = d.clique(i)
    g = check_word(p, g)
    if support(p, g) <= c:
        return QNResult(True)
    order = list(p.graph.sorted(d.interior(i))) + [v for v in p.graph.sorted(c) if v not in d.interior(i)]
    ginv = inverse_word(p, g)
    for x in [y for v in order for y in p.generators([v])]:
        y = multiply(p, g, (x,), ginv)
        if not {s[0] for s in y} <= c:
            return QNResult(False, x, y)
    raise AssertionError("no escaping generator found for an element outside the clique subgroup")


def conjugate_intersection_finite(p: Presentation, s: Iterable, t: Iterable, g, budget: int = 3):
    """Find ``(h, D)`` with ``g G_S g^-1 n G_T = h G_D h^-1``, ``h`` in ``G_T``, ``D`` in ``S n T``.

    Only for finite vertex groups.  The two sides are compared on every
    element of ``G_S`` of at most ``budget`` syllables: ``y`` is in the left
    side iff ``g y g^-1`` is supported in ``T``, and in the right side iff
    ``h^-1 g y g^-1 h`` is supported in ``D``.  Candidates ``h`` range over the
    same ball of ``G_T`` and ``D`` over subsets of ``S n T``, largest first.
    Raises ``BudgetExhausted`` if nothing matches within the budget.
    """
    if not p.all_finite():
        raise HypothesisViolation("finite-vertex-groups", "all vertex groups must be finite")
    gr = p.graph
    s, t = gr.check(s), gr.check(t)
    g = check_word(p, g)
    ginv = inverse_word(p, g)
    ys = ball(p, budget, s)
    conj = [multiply(p, g, y, ginv) for y in ys]
    inside = [frozenset(v for v, _ in c) <= t for c in conj]
    common = gr.sorted(s & t)
    ds = [frozenset(c) for r in range(len(common), -1, -1) for c in combinations(common, r)]
    for h in ball(p, budget, t):
        hinv = inverse_word(p, h)
        back = [frozenset(v for v, _ in multiply(p, hinv, c, h)) for c in conj]
        for dset in ds:
            if all((b <= dset) == ins for b, ins in zip(back, inside)):
                return h, dset
    raise BudgetExhausted(f"no (h, D) matches the intersection on the radius-{budget} ball")


# ---------------------------------------------------------------- cancellation results

@dataclass(frozen=True)
class TriDecomposition:
    a: CanonicalWord
    s: CanonicalWord
    b: CanonicalWord
    a_set: frozenset
    s_set: frozenset
    b_set: frozenset


def _require_support(p, w, vs, which, what):
    sup = support(p, w)
    if not sup <= vs:
        raise HypothesisViolation(which, f"support of {what} {_fmt(p, sup)} not inside {_fmt(p, vs)}")


def prop42_part1(p: Presentation, d: CliqueDecomposition, i: int, g, h) -> TriDecomposition:
    """Split ``g = a s`` and ``h = s^-1 b`` with ``s`` in the interior of C_i.

    Needs ``g`` in C_{i-1} delta C_i, ``h`` in C_i delta C_{i+1} and ``g h``
    avoiding the interior of C_i.  The interior syllables of ``g`` are
    shuffled to its tail; they form ``s``.
    """
    g, h = check_word(p, g), check_word(p, h)
    prev, cur, nxt = d.clique(i - 1), d.clique(i), d.clique(i + 1)
    interior = d.interior(i)
    _require_support(p, g, prev ^ cur, "support-g", "g")
    _require_support(p, h, cur ^ nxt, "support-h", "h")
    if support(p, g + h) & interior:
        raise HypothesisViolation("interior", f"g h meets the interior {_fmt(p, interior)}")
    rest, tail = tail_split(p, normalize(p, g), interior)
    if any(sy[0] in interior for sy in rest):
        raise HypothesisViolation("interior-not-tail", "interior syllables of g do not shuffle to its end")
    a_set = (prev - d.inter(i - 1)) | d.inter(i)
    b_set = (nxt - d.inter(i)) | d.inter(i - 1)
    a, s = canonicalize(p, rest), canonicalize(p, tail)
    b = multiply(p, s, h)
    if not in_full_subgroup(p, a, a_set):
        raise HypothesisViolation("membership-a", f"a escapes {_fmt(p, a_set)}")
    if not in_full_subgroup(p, b, b_set):
        raise HypothesisViolation("membership-b", f"b escapes {_fmt(p, b_set)}")
    return TriDecomposition(a, s, b, a_set, interior, b_set)


def prop42_part2(p: Presentation, d: CliqueDecomposition, i: int, g, h, k) -> TriDecomposition:
    """Split ``g = a s`` and ``k = s^-1 b`` with ``s`` in C_{i,i+1}.

    ``g`` lives on C_{i-2,i-1} u C_{i,i+1}, ``h`` on C_{i-1,i} u C_{i+1,i+2},
    ``k`` on C_{i,i+1} u C_{i+2,i+3}, and ``g h k`` must avoid C_{i,i+1}.
    """
    g, h, k = check_word(p, g), check_word(p, h), check_word(p, k)
    i_m2, i_m1, i_0, i_p1, i_p2 = (d.inter(i + off) for off in (-2, -1, 0, 1, 2))
    _require_support(p, g, i_m2 | i_0, "support-g", "g")
    _require_support(p, h, i_m1 | i_p1, "support-h", "h")
    _require_support(p, k, i_0 | i_p2, "support-k", "k")
    _require_support(p, g + h + k, i_m2 | i_m1 | i_p1 | i_p2, "support-ghk", "g h k")
    rest, tail = tail_split(p, normalize(p, g), i_0)
    if not {sy[0] for sy in rest} <= i_m2:
        raise HypothesisViolation("split", f"g does not split as a s with a on {_fmt(p, i_m2)}")
    a, s = canonicalize(p, rest), canonicalize(p, tail)
    b = multiply(p, s, k)
    if not in_full_subgroup(p, b, i_p2):
        raise HypothesisViolation("membership-b", f"b escapes {_fmt(p, i_p2)}")
    return TriDecomposition(a, s, b, i_m2, i_0, i_p2)


@dataclass(frozen=True)
class SixBlockSplit:
    a: CanonicalWord  # on C_{i-1,i}
    b: CanonicalWord  # on interior of C_i
    c: CanonicalWord  # on C_{i,i+1}
    d: CanonicalWord  # on interior of C_{i+1}
    e: CanonicalWord  # on C_{i+1,i+2}
    f: CanonicalWord  # remainder on C_i u C_{i+1}, starting in C_i \ C_{i+1}
    sets: tuple

    @property
    def blocks(self):
        return (self.a, self.b, self.c, self.d, self.e, self.f)


def six_block_split(p: Presentation, d: CliqueDecomposition, i: int, x) -> SixBlockSplit:
    """Write ``x`` in the full subgroup on C_i u C_{i+1} as a b c d e f.

    C_{i,i+1} is central in that subgroup, so its syllables form ``c``.  The
    rest lives in the free product of C_i \\ C_{i+1} and C_{i+1} \\ C_i: its
    leading C_i-block gives ``a b``, the following C_{i+1}-block gives
    ``d e`` and everything after that is ``f``.
    """
    x = check_word(p, x)
    ci, cj = d.clique(i), d.clique(i + 1)
    union = ci | cj
    sup = support(p, x)
    if not sup <= union:
        raise SupportViolation(f"support {_fmt(p, sup)} not inside {_fmt(p, union)}")
    central = d.inter(i)
    nf = normalize(p, x)
    c = _restrict(nf, central)
    free_part = tuple(s for s in nf if s[0] not in central)
    left, rest = head_split(p, free_part, ci - cj)
    right, f = head_split(p, rest, cj - ci)
    sets = (d.inter(i - 1), d.interior(i), central, d.interior(i + 1), d.inter(i + 1), union)
    blocks = (
        _restrict(left, sets[0]),
        _restrict(left, sets[1]),
        c,
        _restrict(right, sets[3]),
        _restrict(right, sets[4]),
        f,
    )
    return SixBlockSplit(*(canonicalize(p, blk) for blk in blocks), sets=sets)


@dataclass(frozen=True)
class CyclicBlocks:
    """Blocks a_i, b_i, c_i for i = 1..n (stored 0-based)."""

    a: tuple
    b: tuple
    c: tuple

    def block(self, name: str, i: int) -> CanonicalWord:
        seq = getattr(self, name)
        return seq[(i - 1) % len(seq)]


def cyclic_reassemble(p: Presentation, d: CliqueDecomposition, blocks: CyclicBlocks, i: int) -> CanonicalWord:
    """a_i b_i c_i b_{i+1}^-1 a_{i+2}^-1 c_{i+1}^-1."""
    bl = blocks.block
    return multiply(
        p,
        bl("a", i),
        bl("b", i),
        bl("c", i),
        inverse_word(p, bl("b", i + 1)),
        inverse_word(p, bl("a", i + 2)),
        inverse_word(p, bl("c", i + 1)),
    )


def cyclic_decompose(p: Presentation, d: CliqueDecomposition, xs) -> CyclicBlocks:
    """Decompose ``x_{1,2}, ..., x_{n,1}`` whose cyclic product is trivial."""
    n = d.n
    xs = [check_word(p, x) for x in xs]
    if len(xs) != n:
        raise HypothesisViolation("length", f"expected {n} words, got {len(xs)}")
    for k, x in enumerate(xs, start=1):
        u = d.clique(k) | d.clique(k + 1)
        sup = support(p, x)
        if not sup <= u:
            raise HypothesisViolation("support", f"x_{k} has support {_fmt(p, sup)} outside {_fmt(p, u)}")
    if normalize(p, concat(*xs)):
        raise HypothesisViolation("product", "the cyclic product x_{1,2} ... x_{n,1} is not the identity")
    splits = [six_block_split(p, d, k, xs[k - 1]) for k in range(1, n + 1)]

    def sp(k):
        return splits[(k - 1) % n]

    for k in range(1, n + 1):
        if sp(k).f:
            raise HypothesisViolation("remainder", f"x_{k} leaves a non-trivial remainder block")
    for k in range(1, n + 1):
        if sp(k).b != invert(p, sp(k - 1).d):
            raise HypothesisViolation("interior-match", f"interior block of x_{k} does not cancel x_{k - 1}")
        if normalize(p, concat(sp(k).e, sp(k + 1).c, sp(k + 2).a)):
            raise HypothesisViolation("intersection-match", f"C_{{{k + 1},{k + 2}}} blocks do not cancel")
    out = CyclicBlocks(
        tuple(s.a for s in splits),
        tuple(s.b for s in splits),
        tuple(s.c for s in splits),
    )
    for k in range(1, n + 1):
        if not equal(p, cyclic_reassemble(p, d, out, k), xs[k - 1]):
            raise HypothesisViolation("reassembly", f"x_{k} does not reassemble")
    return out


# ---------------------------------------------------------------- regrouping onto T_n

@dataclass(frozen=True)
class FlowerRegrouping:
    """The same group seen as a graph product over T_n with direct-sum vertex groups."""

    presentation: Presentation
    phi: dict
    slot: dict  # original vertex -> (flower vertex, component index)

    def translate(self, w) -> tuple:
        out = []
        for v, x in w:
            fv, k = self.slot[v]
            out.append(Syllable(fv, self.presentation.group_of[fv].embed(k, x)))
        return tuple(out)


def flower_presentation(p: Presentation, d: CliqueDecomposition) -> FlowerRegrouping:
    t, phi = retract_to_flower(d)
    groups, slot = {}, {}
    for fv in t.vertices:
        fiber = [v for v in p.graph.vertices if phi[v] == fv]
        groups[fv] = DirectSum(p.group_of[v] for v in fiber)
        for k, v in enumerate(fiber):
            slot[v] = (fv, k)
    return FlowerRegrouping(Presentation(t, groups), phi, slot)

