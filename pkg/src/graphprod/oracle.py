"""Brute-force checks that gate the main algorithms.

Nothing here calls ``words.normalize``.  Normal forms are found by naive
rewriting to a fixpoint, equality by searching the shuffle class, and each
suite compares the fast path against these slow answers.
"""

from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass, field

from .errors import BudgetExhausted, GraphProdError, HypothesisViolation
from .graphs import flower_graph, recognize_cc1
from .groups import Cyclic, SplitWreath, cyclic_shift, perm_mul
from . import decomp, words
from .words import CanonicalWord, Presentation, Syllable


# ---------------------------------------------------------------- slow normal forms

def oracle_normalize(p: Presentation, w) -> tuple:
    """Rewrite until nothing changes: drop identity syllables, and merge any
    two same-vertex syllables whose in-between syllables all commute with
    them.  Each full scan restarts from the left."""
    w = list(words.check_word(p, w))
    changed = True
    while changed:
        changed = False
        for k, (v, x) in enumerate(w):
            if p.group_of[v].is_identity(x):
                del w[k]
                changed = True
                break
        if changed:
            continue
        for i in range(len(w)):
            v = w[i][0]
            for j in range(i + 1, len(w)):
                u = w[j][0]
                if u == v:
                    grp = p.group_of[v]
                    w[i] = Syllable(v, grp.mul(w[i][1], w[j][1]))
                    del w[j]
                    changed = True
                    break
                if u not in p.adj[v]:
                    break
            if changed:
                break
    return tuple(w)


def shuffle_closure(p: Presentation, w) -> set:
    """All words reachable from ``w`` by swapping neighbouring syllables on
    adjacent vertices."""
    start = tuple(w)
    seen = {start}
    todo = deque([start])
    while todo:
        cur = todo.popleft()
        for k in range(len(cur) - 1):
            if cur[k + 1][0] in p.adj[cur[k][0]]:
                nxt = cur[:k] + (cur[k + 1], cur[k]) + cur[k + 2:]
                if nxt not in seen:
                    seen.add(nxt)
                    todo.append(nxt)
    return seen


def oracle_key(p: Presentation, w) -> tuple:
    """Least member of the shuffle class of the slow normal form, compared by
    vertex order (syllables on one vertex never swap, so vertices decide)."""
    closure = shuffle_closure(p, oracle_normalize(p, w))
    return min(closure, key=lambda u: tuple(p.order[s[0]] for s in u))


def oracle_equal(p: Presentation, u, v) -> bool:
    return oracle_normalize(p, v) in shuffle_closure(p, oracle_normalize(p, u))


def oracle_support(p: Presentation, w) -> frozenset:
    return frozenset(s[0] for s in oracle_normalize(p, w))


# ---------------------------------------------------------------- budgets and enumeration

@dataclass(frozen=True)
class Budget:
    max_syllables: int | None = None  # None: the suite's own default
    max_count: int = 200_000
    seed: int = 0
    trials: int | None = None

    def __post_init__(self):
        for name in ("max_syllables", "trials"):
            val = getattr(self, name)
            if val is not None and val < 0:
                raise ValueError(f"{name} must be non-negative")
        if self.max_count <= 0:
            raise ValueError("max_count must be positive")


def enumerate_elements(p: Presentation, b: Budget, vs=None, letters=None) -> list:
    """Distinct elements with a representative of at most ``b.max_syllables``
    syllables, as canonical words, breadth first."""
    radius = b.max_syllables or 0
    if letters is None:
        vs_ = p.vertices if vs is None else p.graph.sorted(vs)
        if not all(p.group_of[v].finite for v in vs_):
            raise HypothesisViolation("finite-vertex-groups", "give explicit letters for infinite vertex groups")
        letters = [Syllable(v, x) for v in vs_ for x in p.group_of[v].elements() if not p.group_of[v].is_identity(x)]
    seen = {()}
    frontier = [()]
    out = [CanonicalWord()]
    for _ in range(radius):
        nxt = []
        for w in frontier:
            for s in letters:
                key = oracle_key(p, w + (s,))
                if key not in seen:
                    seen.add(key)
                    nxt.append(key)
                    out.append(CanonicalWord(key))
                    if len(out) > b.max_count:
                        raise BudgetExhausted(f"more than {b.max_count} elements within {radius} syllables")
        frontier = nxt
    return out


def all_sequences(letters, max_len):
    for n in range(max_len + 1):
        yield from itertools.product(letters, repeat=n)


# ---------------------------------------------------------------- reports

@dataclass
class SuiteReport:
    name: str
    seed: int
    tested: int = 0
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    counterexample: str | None = None
    notes: list = field(default_factory=list)

    @property
    def vacuous(self) -> bool:
        return self.tested == 0

    @property
    def ok(self) -> bool:
        return self.failed == 0 and not self.vacuous

    def record(self, good: bool, describe=None):
        self.tested += 1
        if good:
            self.passed += 1
            return
        self.failed += 1
        text = describe() if callable(describe) else str(describe)
        if self.counterexample is None or text < self.counterexample:
            self.counterexample = text

    def lines(self) -> list:
        out = [
            f"suite={self.name} tested={self.tested} passed={self.passed} "
            f"failed={self.failed} skipped={self.skipped} seed={self.seed}"
        ]
        if self.vacuous:
            out.append("vacuous: no instance passed the filter; this is not a pass")
        out += [f"note: {n}" for n in self.notes]
        if self.counterexample is not None:
            out.append("counterexample:")
            out += ["  " + ln for ln in self.counterexample.splitlines()]
        return out

    def text(self) -> str:
        return "\n".join(self.lines()) + "\n"

    def to_dict(self) -> dict:
        return {
            "suite": self.name,
            "tested": self.tested,
            "passed": self.passed,
            "failed": self.failed,
            "skipped": self.skipped,
            "seed": self.seed,
            "vacuous": self.vacuous,
            "notes": list(self.notes),
            "counterexample": self.counterexample,
        }


def _fmt(p, w):
    return words.format_word(p, w)


def flower(n: int, group) -> tuple:
    p = Presentation.uniform(flower_graph(n), group)
    return p, recognize_cc1(p.graph)


# ---------------------------------------------------------------- suites

def suite_normal_form(b: Budget) -> SuiteReport:
    """words.equal against oracle_equal on (T4, Z/2): every sequence up to
    ``max_syllables`` (default 4) plus ``trials`` (default 2000) sampled
    sequences of up to 6 syllables, all pairs.

    All-pairs agreement is checked through the two partitions: both sides
    must induce the same equivalence classes on the sample.  A seeded set of
    pairs is also run through oracle_equal directly.
    """
    rep = SuiteReport("normal-form", b.seed)
    radius = 4 if b.max_syllables is None else b.max_syllables
    trials = 2000 if b.trials is None else b.trials
    if radius == 0:
        return rep
    p, _ = flower(4, Cyclic(2))
    letters = p.generators()
    rng = random.Random(b.seed)
    sample = list(all_sequences(letters, radius))
    sample += [tuple(rng.choice(letters) for _ in range(rng.randint(0, 6))) for _ in range(trials)]
    fast, slow = {}, {}
    fwd, back = {}, {}
    for w in sample:
        cf = words.canonicalize(p, w)
        ks = oracle_key(p, w)
        fast[w], slow[w] = cf, ks
        fwd.setdefault(cf, set()).add(ks)
        back.setdefault(ks, set()).add(cf)
    n = len(sample)
    rep.notes.append(f"{n} words, {n * (n - 1) // 2} unordered pairs, {len(fwd)} classes")
    # a pair disagrees iff its words share a class on one side only
    for cf, ks in sorted(fwd.items(), key=lambda kv: _fmt(p, kv[0])):
        rep.record(len(ks) == 1, lambda: f"canonical form {_fmt(p, cf)} covers {len(ks)} oracle classes")
    for ks, cfs in sorted(back.items(), key=lambda kv: _fmt(p, kv[0])):
        rep.record(len(cfs) == 1, lambda: f"oracle class {_fmt(p, ks)} splits into {len(cfs)} canonical forms")
    # canonical word is the least shuffle the oracle finds
    for w in sample:
        rep.record(tuple(fast[w]) == slow[w], lambda: f"{_fmt(p, w)}: canonical {_fmt(p, fast[w])} vs oracle {_fmt(p, slow[w])}")
    by_class = {}
    for w in sample:
        by_class.setdefault(fast[w], []).append(w)
    classes = [ws for ws in by_class.values() if len(ws) > 1]
    for _ in range(min(trials, 2000)):
        if classes and rng.random() < 0.5:
            u, v = rng.sample(rng.choice(classes), 2)
        else:
            u, v = rng.choice(sample), rng.choice(sample)
        same = words.equal(p, u, v)
        rep.record(same == oracle_equal(p, u, v), lambda: f"equal({_fmt(p, u)}, {_fmt(p, v)}) = {same} disagrees with oracle")
    return rep


def suite_minimal_length(b: Budget) -> SuiteReport:
    """No word of at most ``max_syllables`` (default 4) syllables over
    (T4, Z/2) equals a strictly shorter sequence.  Shorter sequences have at
    most ``max_syllables - 1`` letters, so those are enumerated and indexed."""
    rep = SuiteReport("minimal-length", b.seed)
    radius = 4 if b.max_syllables is None else b.max_syllables
    if radius == 0:
        return rep
    p, _ = flower(4, Cyclic(2))
    letters = p.generators()
    shortest = {}
    for w in all_sequences(letters, radius - 1):
        k = oracle_key(p, w)
        if k not in shortest:
            shortest[k] = w
    for w in all_sequences(letters, radius):
        length = words.syllable_length(p, w)
        k = oracle_key(p, w)
        short = shortest.get(k)
        good = short is None or len(short) >= length
        rep.record(good, lambda: f"{_fmt(p, w)} has normal length {length} but equals {_fmt(p, short)}")
    rep.notes.append(f"{len(shortest)} elements reached by at most {radius - 1} syllables")
    return rep


def _ball(p, vs, radius):
    return enumerate_elements(p, Budget(max_syllables=radius), vs=vs)


def suite_part1(b: Budget) -> SuiteReport:
    rep = SuiteReport("part1", b.seed)
    radius = 3 if b.max_syllables is None else b.max_syllables
    if radius == 0:
        return rep
    p, d = flower(4, Cyclic(2))
    for i in range(1, d.n + 1):
        prev, cur, nxt = d.clique(i - 1), d.clique(i), d.clique(i + 1)
        gs = _ball(p, prev ^ cur, radius)
        hs = _ball(p, cur ^ nxt, radius)
        for g in gs:
            for h in hs:
                if oracle_support(p, g + h) & d.interior(i):
                    rep.skipped += 1
                    continue
                rep.record(*_check_part1(p, d, i, g, h))
    return rep


def _check_part1(p, d, i, g, h):
    where = lambda msg: lambda: f"i={i} g={_fmt(p, g)} h={_fmt(p, h)}: {msg}"
    try:
        r = decomp.prop42_part1(p, d, i, g, h)
    except GraphProdError as exc:
        return False, where(f"raised {exc}")
    checks = [
        (oracle_support(p, r.a) <= r.a_set, "a escapes its set"),
        (oracle_support(p, r.s) <= d.interior(i), "s escapes the interior"),
        (oracle_support(p, r.b) <= r.b_set, "b escapes its set"),
        (oracle_equal(p, g, r.a + r.s), "g != a s"),
        (oracle_equal(p, h, words.inverse_word(p, r.s) + r.b), "h != s^-1 b"),
    ]
    for good, msg in checks:
        if not good:
            return False, where(msg)
    return True, None


def suite_part2(b: Budget) -> SuiteReport:
    rep = SuiteReport("part2", b.seed)
    radius = 2 if b.max_syllables is None else b.max_syllables
    if radius == 0:
        return rep
    p, d = flower(6, Cyclic(2))
    for i in range(1, d.n + 1):
        I = {off: d.inter(i + off) for off in (-2, -1, 0, 1, 2)}
        gs = _ball(p, I[-2] | I[0], radius)
        hs = _ball(p, I[-1] | I[1], radius)
        ks = _ball(p, I[0] | I[2], radius)
        allowed = I[-2] | I[-1] | I[1] | I[2]
        for g in gs:
            for h in hs:
                for k in ks:
                    if not oracle_support(p, g + h + k) <= allowed:
                        rep.skipped += 1
                        continue
                    rep.record(*_check_part2(p, d, i, g, h, k, I))
    return rep


def _check_part2(p, d, i, g, h, k, I):
    where = lambda msg: lambda: f"i={i} g={_fmt(p, g)} h={_fmt(p, h)} k={_fmt(p, k)}: {msg}"
    try:
        r = decomp.prop42_part2(p, d, i, g, h, k)
    except GraphProdError as exc:
        return False, where(f"raised {exc}")
    checks = [
        (oracle_support(p, r.a) <= I[-2], "a escapes C_{i-2,i-1}"),
        (oracle_support(p, r.s) <= I[0], "s escapes C_{i,i+1}"),
        (oracle_support(p, r.b) <= I[2], "b escapes C_{i+2,i+3}"),
        (oracle_equal(p, g, r.a + r.s), "g != a s"),
        (oracle_equal(p, k, words.inverse_word(p, r.s) + r.b), "k != s^-1 b"),
    ]
    for good, msg in checks:
        if not good:
            return False, where(msg)
    return True, None


def _random_word(rng, letters, max_len):
    return tuple(rng.choice(letters) for _ in range(rng.randint(0, max_len)))


def random_cyclic_input(p, d, rng, max_len=2):
    """Blocks a_i, b_i, c_i of at most ``max_len`` syllables and the words
    x_i assembled from them."""
    n = d.n
    gen = lambda vs: words.canonicalize(p, _random_word(rng, p.generators(vs), max_len))
    blocks = decomp.CyclicBlocks(
        tuple(gen(d.inter(i - 1)) for i in range(1, n + 1)),
        tuple(gen(d.interior(i)) for i in range(1, n + 1)),
        tuple(gen(d.inter(i)) for i in range(1, n + 1)),
    )
    xs = [decomp.cyclic_reassemble(p, d, blocks, i) for i in range(1, n + 1)]
    return blocks, xs


def perturb(p, d, rng, xs):
    """Append one generator syllable from C_i u C_{i+1} to a random x_i."""
    k = rng.randrange(len(xs))
    letters = p.generators(d.clique(k + 1) | d.clique(k + 2))
    out = list(xs)
    out[k] = words.canonicalize(p, tuple(xs[k]) + (rng.choice(letters),))
    return out


def suite_cyclic(b: Budget) -> SuiteReport:
    rep = SuiteReport("cyclic", b.seed)
    radius = 2 if b.max_syllables is None else b.max_syllables
    trials = 1000 if b.trials is None else b.trials
    if radius == 0:
        return rep
    p, d = flower(4, Cyclic(3))
    n = d.n
    rng = random.Random(b.seed)
    pos_ok = neg_ok = 0
    for t in range(trials):
        _, xs = random_cyclic_input(p, d, rng, radius)
        desc = lambda msg: lambda: f"positive trial {t:05d} xs=[{'; '.join(_fmt(p, x) for x in xs)}]: {msg}"
        try:
            out = decomp.cyclic_decompose(p, d, xs)
        except GraphProdError as exc:
            rep.record(False, desc(f"raised {exc}"))
            continue
        bad = None
        for i in range(1, n + 1):
            if not oracle_support(p, out.block("a", i)) <= d.inter(i - 1):
                bad = f"a_{i} escapes"
            elif not oracle_support(p, out.block("b", i)) <= d.interior(i):
                bad = f"b_{i} escapes"
            elif not oracle_support(p, out.block("c", i)) <= d.inter(i):
                bad = f"c_{i} escapes"
            elif not oracle_equal(p, decomp.cyclic_reassemble(p, d, out, i), xs[i - 1]):
                bad = f"x_{i} does not reassemble"
            if bad:
                break
        if bad is None:
            bad_f = next((i for i in range(1, n + 1) if decomp.six_block_split(p, d, i, xs[i - 1]).f), None)
            if bad_f is not None:
                bad = f"remainder block of x_{bad_f} is not trivial"
        rep.record(bad is None, desc(bad))
        pos_ok += bad is None
    for t in range(trials):
        _, xs = random_cyclic_input(p, d, rng, radius)
        ys = perturb(p, d, rng, xs)
        desc = lambda msg: lambda: f"negative trial {t:05d} xs=[{'; '.join(_fmt(p, x) for x in ys)}]: {msg}"
        if not oracle_normalize(p, words.concat(*ys)):
            rep.record(False, desc("perturbation left the cyclic product trivial"))
            continue
        try:
            decomp.cyclic_decompose(p, d, ys)
        except HypothesisViolation as exc:
            good = exc.which == "product"
            rep.record(good, desc(f"rejected for {exc.which}, not product"))
            neg_ok += good
            continue
        rep.record(False, desc("accepted"))
    rep.notes.append(f"positive {pos_ok}/{trials} decomposed, negative {neg_ok}/{trials} rejected")
    return rep


NORMALIZER_TARGETS = (("{b2}", {"b2"}), ("C1", None), ("{w1}", {"w1"}))


def suite_normalizer(b: Budget) -> SuiteReport:
    """Conjugation test of the normalizer formula over the (T4, Z/2) ball."""
    rep = SuiteReport("normalizer", b.seed)
    radius = 4 if b.max_syllables is None else b.max_syllables
    if radius == 0:
        return rep
    p, d = flower(4, Cyclic(2))
    ball = enumerate_elements(p, Budget(max_syllables=radius, max_count=b.max_count))
    for label, t in NORMALIZER_TARGETS:
        t = frozenset(t) if t is not None else d.clique(1)
        norm = decomp.normalizer_of_full(p, t)
        gens = p.generators(t)
        for g in ball:
            ginv = words.inverse_word(p, g)
            inside = oracle_support(p, g) <= norm
            escapes = [x for x in gens if not oracle_support(p, tuple(g) + (x,) + ginv) <= t]
            good = (not escapes) if inside else bool(escapes)
            what = "a generator conjugate escapes" if inside else "no generator conjugate escapes"
            rep.record(good, lambda: f"T={label} g={_fmt(p, g)}: in normalizer={inside} but {what}")
    rep.notes.append(f"{len(ball)} elements in the ball")
    return rep


WREATH_CASES = ((Cyclic(2), 2), (Cyclic(2), 3))


def suite_wreath(b: Budget) -> SuiteReport:
    """Axioms of the split wreath product A wr B acting on I."""
    rep = SuiteReport("wreath", b.seed)
    if b.max_syllables == 0:
        return rep
    for base, m in WREATH_CASES:
        W = SplitWreath(base, m, [cyclic_shift(m)])
        tag = str(W)
        elems = W.elements()
        eps = lambda x: x[1]
        ident = tuple(range(m))
        rep.record(len(elems) == base.order() ** m * len(W.acting), lambda: f"{tag}: order {len(elems)}")
        hom = all(eps(W.mul(x, y)) == perm_mul(eps(x), eps(y)) for x in elems for y in elems)
        rep.record(hom, lambda: f"{tag}: epsilon is not a homomorphism")
        rep.record({eps(x) for x in elems} == set(W.acting), lambda: f"{tag}: epsilon is not onto")
        kernel = {x for x in elems if eps(x) == ident}
        summands = {
            i: {x for x in elems if x[1] == ident and all(j == i for j, _ in x[0])} for i in range(m)
        }
        generated = set()
        for parts in itertools.product(base.elements(), repeat=m):
            generated.add(W._pack(dict(enumerate(parts))))
        rep.record(kernel == {(f, ident) for f in generated}, lambda: f"{tag}: kernel is not the direct sum")
        for w in elems:
            winv = W.inv(w)
            for i in range(m):
                conj = {W.mul(W.mul(w, a), winv) for a in summands[i]}
                j = eps(w)[i]
                rep.record(conj == summands[j], lambda: f"{tag}: w={W.format(w)} sends A_{i} elsewhere than A_{j}")
    return rep


SUITES = {
    "normal-form": suite_normal_form,
    "minimal-length": suite_minimal_length,
    "part1": suite_part1,
    "part2": suite_part2,
    "cyclic": suite_cyclic,
    "normalizer": suite_normalizer,
    "wreath": suite_wreath,
}


def verify_suite(name: str, b: Budget | None = None) -> SuiteReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return SUITES[name](b or Budget())
