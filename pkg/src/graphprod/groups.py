"""Exact vertex groups.

Each group object is an immutable spec that also knows how to multiply,
invert, compare, enumerate (when finite), parse and print its elements.
Payloads are plain hashable Python values:

* ``Cyclic(n)``: residue ``0 <= r < n``
* ``Integers()``: ``int``
* ``Free(k)``: tuple of ``(letter, exponent)`` runs, freely reduced,
  letters numbered ``1..k``
* ``DirectSum(parts)``: tuple of component payloads
* ``SplitWreath(A, degree, gens)``: ``(f, b)`` with ``f`` a sorted tuple of
  ``(index, a)`` pairs (``a`` never the identity of A) and ``b`` a
  permutation of ``range(degree)`` stored as an image tuple

Nothing here uses floating point.
"""

from __future__ import annotations

import math
import re
from itertools import product

from .errors import KindMismatch, ParseError


class VertexGroup:
    """Interface shared by every kind; subclasses are frozen value objects."""

    finite = False

    def identity(self):
        raise NotImplementedError

    def mul(self, x, y):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def is_identity(self, x) -> bool:
        return x == self.identity()

    def validate(self, x):
        """Raise ``KindMismatch`` unless ``x`` is a canonical payload."""
        raise NotImplementedError

    def contains(self, x) -> bool:
        try:
            self.validate(x)
        except KindMismatch:
            return False
        return True

    def elements(self):
        raise TypeError(f"{self} is infinite; enumeration unsupported")

    def order(self):
        return None

    def generators(self) -> list:
        raise NotImplementedError

    def power(self, x, k: int):
        if k < 0:
            x, k = self.inv(x), -k
        out = self.identity()
        while k:
            if k & 1:
                out = self.mul(out, x)
            x = self.mul(x, x)
            k >>= 1
        return out

    def format(self, x) -> str:
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    def __setattr__(self, key, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def _set(self, **kw):
        for k, v in kw.items():
            object.__setattr__(self, k, v)

    def _key(self):
        raise NotImplementedError

    def __eq__(self, other):
        return type(self) is type(other) and self._key() == other._key()

    def __hash__(self):
        return hash((type(self).__name__, self._key()))

    def __repr__(self):
        return str(self)


def _parse_int(text: str) -> int:
    text = text.strip()
    if not re.fullmatch(r"[+-]?\d+", text):
        raise ParseError(f"expected a signed integer, got {text!r}")
    return int(text)


def split_top(text: str, sep: str = ",") -> list[str]:
    """Split on ``sep`` outside any (), [], {} nesting."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced brackets in {text!r}")
        if ch == sep and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth != 0:
        raise ParseError(f"unbalanced brackets in {text!r}")
    out.append("".join(cur))
    return out


class Cyclic(VertexGroup):
    finite = True

    def __init__(self, n: int):
        if not isinstance(n, int) or n < 2:
            raise ValueError("Cyclic(n) needs n >= 2")
        self._set(n=n)

    def _key(self):
        return self.n

    def __str__(self):
        return f"Z/{self.n}"

    def identity(self):
        return 0

    def mul(self, x, y):
        return (x + y) % self.n

    def inv(self, x):
        return -x % self.n

    def is_identity(self, x):
        return x == 0

    def validate(self, x):
        if type(x) is not int or not 0 <= x < self.n:
            raise KindMismatch(f"{x!r} is not a residue mod {self.n}")

    def elements(self):
        return list(range(self.n))

    def order(self):
        return self.n

    def generators(self):
        return [1]

    def format(self, x):
        return str(x)

    def parse(self, text):
        return _parse_int(text) % self.n


class Integers(VertexGroup):
    def __init__(self):
        pass

    def _key(self):
        return ()

    def __str__(self):
        return "Z"

    def identity(self):
        return 0

    def mul(self, x, y):
        return x + y

    def inv(self, x):
        return -x

    def is_identity(self, x):
        return x == 0

    def validate(self, x):
        if type(x) is not int:
            raise KindMismatch(f"{x!r} is not an integer")

    def generators(self):
        return [1]

    def format(self, x):
        return str(x)

    def parse(self, text):
        return _parse_int(text)


def free_reduce(runs) -> tuple:
    """Freely reduce a sequence of ``(letter, exponent)`` runs (stack based)."""
    out: list = []
    for a, e in runs:
        if e == 0:
            continue
        if out and out[-1][0] == a:
            e += out.pop()[1]
            if e == 0:
                continue
        out.append((a, e))
    return tuple(out)


class Free(VertexGroup):
    def __init__(self, k: int):
        if not isinstance(k, int) or k < 1:
            raise ValueError("Free(k) needs k >= 1")
        self._set(k=k)

    def _key(self):
        return self.k

    def __str__(self):
        return f"Free({self.k})"

    def identity(self):
        return ()

    def mul(self, x, y):
        if not x:
            return y
        if not y:
            return x
        out = list(x)
        i = 0
        while i < len(y) and out and out[-1][0] == y[i][0]:
            e = out[-1][1] + y[i][1]
            out.pop()
            i += 1
            if e != 0:
                out.append((y[i - 1][0], e))
                break
        out.extend(y[i:])
        return tuple(out)

    def inv(self, x):
        return tuple((a, -e) for a, e in reversed(x))

    def is_identity(self, x):
        return not x

    def validate(self, x):
        if type(x) is not tuple:
            raise KindMismatch(f"{x!r} is not a free-group payload")
        prev = None
        for run in x:
            if type(run) is not tuple or len(run) != 2:
                raise KindMismatch(f"bad run {run!r}")
            a, e = run
            if type(a) is not int or not 1 <= a <= self.k or type(e) is not int or e == 0:
                raise KindMismatch(f"bad run {run!r} for Free({self.k})")
            if a == prev:
                raise KindMismatch(f"{x!r} is not freely reduced")
            prev = a

    def generators(self):
        return [((a, 1),) for a in range(1, self.k + 1)]

    def length(self, x) -> int:
        return sum(abs(e) for _, e in x)

    def format(self, x):
        parts = [f"x{a}" if e == 1 else f"x{a}^{e}" for a, e in x]
        return "[" + " ".join(parts) + "]"

    def parse(self, text):
        text = text.strip()
        if not (text.startswith("[") and text.endswith("]")):
            raise ParseError(f"free-group literal must be bracketed: {text!r}")
        runs = []
        for tok in text[1:-1].split():
            m = re.fullmatch(r"x(\d+)(?:\^([+-]?\d+))?", tok)
            if not m:
                raise ParseError(f"bad free-group letter {tok!r}")
            a = int(m.group(1))
            if not 1 <= a <= self.k:
                raise ParseError(f"letter x{a} outside Free({self.k})")
            runs.append((a, int(m.group(2)) if m.group(2) is not None else 1))
        return free_reduce(runs)


class DirectSum(VertexGroup):
    def __init__(self, parts):
        parts = tuple(parts)
        if not parts or not all(isinstance(p, VertexGroup) for p in parts):
            raise ValueError("DirectSum needs at least one VertexGroup")
        self._set(parts=parts, finite=all(p.finite for p in parts))

    def _key(self):
        return self.parts

    def __str__(self):
        return "DirectSum(" + ", ".join(map(str, self.parts)) + ")"

    def identity(self):
        return tuple(p.identity() for p in self.parts)

    def mul(self, x, y):
        return tuple(p.mul(a, b) for p, a, b in zip(self.parts, x, y))

    def inv(self, x):
        return tuple(p.inv(a) for p, a in zip(self.parts, x))

    def is_identity(self, x):
        return all(p.is_identity(a) for p, a in zip(self.parts, x))

    def validate(self, x):
        if type(x) is not tuple or len(x) != len(self.parts):
            raise KindMismatch(f"{x!r} is not a {len(self.parts)}-tuple")
        for p, a in zip(self.parts, x):
            p.validate(a)

    def elements(self):
        return [tuple(t) for t in product(*(p.elements() for p in self.parts))]

    def order(self):
        if not self.finite:
            return None
        return math.prod(p.order() for p in self.parts)

    def embed(self, k: int, a):
        e = list(self.identity())
        e[k] = a
        return tuple(e)

    def generators(self):
        return [self.embed(k, g) for k, p in enumerate(self.parts) for g in p.generators()]

    def format(self, x):
        return "(" + ", ".join(p.format(a) for p, a in zip(self.parts, x)) + ")"

    def parse(self, text):
        text = text.strip()
        if not (text.startswith("(") and text.endswith(")")):
            raise ParseError(f"direct-sum literal must be parenthesized: {text!r}")
        items = split_top(text[1:-1])
        if len(items) != len(self.parts):
            raise ParseError(f"expected {len(self.parts)} components in {text!r}")
        return tuple(p.parse(s) for p, s in zip(self.parts, items))


# ---------------------------------------------------------------- permutations

def perm_mul(p, q):
    """(p q)(i) = p(q(i))."""
    return tuple(p[i] for i in q)


def perm_inv(p):
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def perm_closure(gens, degree):
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = perm_mul(g, x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(seen)


def perm_parity(p) -> int:
    seen, parity = set(), 0
    for i in range(len(p)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            length += 1
        parity ^= (length - 1) & 1
    return parity


def _parse_perm(text: str, degree: int):
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ParseError(f"permutation must be an image list like [1 2 0]: {text!r}")
    try:
        p = tuple(int(t) for t in text[1:-1].split())
    except ValueError:
        raise ParseError(f"bad permutation {text!r}") from None
    if sorted(p) != list(range(degree)):
        raise ParseError(f"{text!r} is not a permutation of 0..{degree - 1}")
    return p


def _format_perm(p) -> str:
    return "[" + " ".join(map(str, p)) + "]"


class SplitWreath(VertexGroup):
    """Generalized wreath product ``A wr_I B`` with ``I = range(degree)``.

    ``B`` is the permutation group generated by ``gens``.  Multiplication is
    ``(f, b)(f', b') = (f * (b . f'), b b')`` where ``(b . f')(i) = f'(b^-1 i)``,
    so conjugation by ``(f, b)`` carries summand ``A_i`` onto ``A_{b(i)}``.
    """

    finite = True

    def __init__(self, base: VertexGroup, degree: int, gens):
        if not base.finite:
            raise ValueError("SplitWreath needs a finite base group")
        gens = tuple(tuple(g) for g in gens)
        for g in gens:
            if sorted(g) != list(range(degree)):
                raise ValueError(f"{g} is not a permutation of range({degree})")
        self._set(base=base, degree=degree, gens=gens)
        object.__setattr__(self, "acting", tuple(perm_closure(gens, degree)))

    def _key(self):
        return (self.base, self.degree, self.gens)

    def __str__(self):
        gens = " ".join(_format_perm(g) for g in self.gens)
        return f"Wreath({self.base}; {self.degree}; {gens})"

    def identity(self):
        return ((), tuple(range(self.degree)))

    def _fdict(self, f):
        return dict(f)

    def _pack(self, d):
        A = self.base
        return tuple(sorted((i, a) for i, a in d.items() if not A.is_identity(a)))

    def mul(self, x, y):
        (f, b), (g, c) = x, y
        A = self.base
        d = dict(f)
        for i, a in g:
            j = b[i]  # (b . g)(j) = g(b^-1 j), i.e. g(i) lands on b(i)
            d[j] = A.mul(d[j], a) if j in d else a
        return (self._pack(d), perm_mul(b, c))

    def inv(self, x):
        f, b = x
        A = self.base
        binv = perm_inv(b)
        # (f, b)^-1 = (b^-1 . f^-1, b^-1)
        d = {binv[i]: A.inv(a) for i, a in f}
        return (self._pack(d), binv)

    def is_identity(self, x):
        return not x[0] and x[1] == tuple(range(self.degree))

    def validate(self, x):
        if type(x) is not tuple or len(x) != 2:
            raise KindMismatch(f"{x!r} is not a wreath payload")
        f, b = x
        if type(f) is not tuple or type(b) is not tuple or b not in self.acting:
            raise KindMismatch(f"{x!r}: bad permutation part")
        prev = -1
        for item in f:
            if type(item) is not tuple or len(item) != 2:
                raise KindMismatch(f"{x!r}: bad support entry")
            i, a = item
            if type(i) is not int or not prev < i < self.degree:
                raise KindMismatch(f"{x!r}: support indices must be sorted in range")
            self.base.validate(a)
            if self.base.is_identity(a):
                raise KindMismatch(f"{x!r}: identity recorded in support")
            prev = i

    def elements(self):
        A = self.base
        out = []
        for vals in product(A.elements(), repeat=self.degree):
            f = tuple((i, a) for i, a in enumerate(vals) if not A.is_identity(a))
            for b in self.acting:
                out.append((f, b))
        return out

    def order(self):
        return self.base.order() ** self.degree * len(self.acting)

    def summand(self, i: int, a):
        """The element ``a`` placed in coordinate ``i`` of the base."""
        if self.base.is_identity(a):
            return self.identity()
        return (((i, a),), tuple(range(self.degree)))

    def generators(self):
        out = [self.summand(i, a) for i in range(self.degree) for a in self.base.generators()]
        out += [((), g) for g in self.gens if g != tuple(range(self.degree))]
        return out

    def format(self, x):
        f, b = x
        body = ", ".join(f"{i}:{self.base.format(a)}" for i, a in f)
        return "{" + body + " | " + _format_perm(b) + "}"

    def parse(self, text):
        text = text.strip()
        if not (text.startswith("{") and text.endswith("}")):
            raise ParseError(f"wreath literal must be braced: {text!r}")
        parts = split_top(text[1:-1], "|")
        if len(parts) != 2:
            raise ParseError(f"wreath literal needs exactly one '|': {text!r}")
        d = {}
        if parts[0].strip():
            for item in split_top(parts[0]):
                k, sep, v = item.partition(":")
                if not sep:
                    raise ParseError(f"bad wreath entry {item!r}")
                i = _parse_int(k)
                if not 0 <= i < self.degree or i in d:
                    raise ParseError(f"bad or repeated index {i} in {text!r}")
                d[i] = self.base.parse(v)
        b = _parse_perm(parts[1], self.degree)
        if b not in self.acting:
            raise ParseError(f"{_format_perm(b)} is not in the acting group")
        return (self._pack(d), b)


# ---------------------------------------------------------------- wreath checks

def gp_mul(spec: VertexGroup, x, y):
    """Validated product; raises ``KindMismatch`` on foreign payloads."""
    spec.validate(x)
    spec.validate(y)
    return spec.mul(x, y)


def wreath_epimorphism(spec: SplitWreath, w):
    """The quotient map onto the acting group: the permutation component."""
    if not isinstance(spec, SplitWreath):
        raise KindMismatch(f"{spec} is not a split wreath product")
    spec.validate(w)
    return w[1]


def wreath_summand_conjugation_check(spec: SplitWreath) -> dict:
    """For every ``(w, i)``: does ``w A_i w^-1`` equal ``A_{eps(w) i}`` exactly?"""
    if not isinstance(spec, SplitWreath):
        raise KindMismatch(f"{spec} is not a split wreath product")
    if not spec.finite:
        raise TypeError("enumeration unsupported for infinite groups")
    A = spec.base
    a_elems = A.elements()
    results = {}
    for w in spec.elements():
        winv = spec.inv(w)
        target_of = w[1]
        for i in range(spec.degree):
            image = {spec.mul(spec.mul(w, spec.summand(i, a)), winv) for a in a_elems}
            expected = {spec.summand(target_of[i], a) for a in a_elems}
            results[(w, i)] = image == expected
    return results


# ---------------------------------------------------------------- spec grammar

def parse_group(text: str) -> VertexGroup:
    """Parse ``Z``, ``Z/n``, ``Cyclic(n)``, ``Integers``, ``Free(k)``,
    ``DirectSum(G, H, ...)`` or ``Wreath(A; degree; [perm] ...)``."""
    t = text.strip()
    if t in ("Z", "Integers"):
        return Integers()
    m = re.fullmatch(r"Z/(\d+)", t) or re.fullmatch(r"Cyclic\((\d+)\)", t)
    if m:
        n = int(m.group(1))
        if n < 2:
            raise ParseError(f"cyclic order must be >= 2 in {text!r}")
        return Cyclic(n)
    m = re.fullmatch(r"Free\((\d+)\)", t)
    if m:
        k = int(m.group(1))
        if k < 1:
            raise ParseError(f"free rank must be >= 1 in {text!r}")
        return Free(k)
    m = re.fullmatch(r"DirectSum\((.*)\)", t, re.S)
    if m:
        return DirectSum(parse_group(s) for s in split_top(m.group(1)))
    m = re.fullmatch(r"Wreath\((.*)\)", t, re.S)
    if m:
        fields = split_top(m.group(1), ";")
        if len(fields) != 3:
            raise ParseError(f"Wreath needs 'base; degree; generators': {text!r}")
        base = parse_group(fields[0])
        if not base.finite:
            raise ParseError("Wreath base group must be finite")
        degree = _parse_int(fields[1])
        if degree < 1:
            raise ParseError("Wreath degree must be >= 1")
        gens = re.findall(r"\[[^\]]*\]", fields[2])
        if re.sub(r"\[[^\]]*\]", "", fields[2]).strip():
            raise ParseError(f"bad generator list {fields[2]!r}")
        return SplitWreath(base, degree, [_parse_perm(g, degree) for g in gens])
    raise ParseError(f"unknown group spec {text!r}")


def cyclic_shift(degree: int) -> tuple:
    return tuple((i + 1) % degree for i in range(degree))


def regular_wreath(base: VertexGroup, m: int) -> SplitWreath:
    """``base wr Z/m`` with Z/m acting on itself by translation."""
    return SplitWreath(base, m, [cyclic_shift(m)])
