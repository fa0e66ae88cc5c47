"""Command-line front end.

Every command builds one payload dict.  ``--json`` prints it as a single
JSON object; otherwise the same dict is rendered as ``key: value`` lines.
Exit codes: 0 success, 1 hypothesis violation / rejection / failed
verification, 2 parse or usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import decomp, morphisms, oracle, words
from .errors import (
    BudgetExhausted,
    GraphProdError,
    HypothesisViolation,
    InvalidMorphism,
    KindMismatch,
    ParseError,
    PresentationMismatch,
)
from .graphs import Graph, isometries, link, maximal_cliques, recognize_cc1, retract_to_flower, star
from .groups import SplitWreath, cyclic_shift, parse_group, perm_mul, wreath_summand_conjugation_check
from .words import Presentation


class UsageError(Exception):
    pass


@dataclass
class CommandResult:
    code: int
    payload: dict
    stdout: str = ""
    stderr: str = ""


# ---------------------------------------------------------------- file formats

def parse_graph_text(text: str, name: str = "") -> Presentation:
    """``graph <name>``, ``vertex <id> group <spec>`` and ``edge <a> <b>`` lines;
    ``#`` starts a comment."""
    vertices, groups, edges, seen_edges = [], {}, [], set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        where = f"line {lineno}"
        if head == "graph":
            name = rest or name
        elif head == "vertex":
            vid, _, tail = rest.partition(" ")
            kw, _, spec = tail.strip().partition(" ")
            if not vid or kw != "group" or not spec.strip():
                raise ParseError(f"{where}: expected 'vertex <id> group <spec>'")
            if any(ch in vid for ch in ".^,") or vid == "e":
                raise ParseError(f"{where}: vertex id {vid!r} clashes with the word grammar")
            if vid in groups:
                raise ParseError(f"{where}: duplicate vertex {vid}")
            try:
                groups[vid] = parse_group(spec.strip())
            except ValueError as exc:
                raise ParseError(f"{where}: {exc}") from None
            vertices.append(vid)
        elif head == "edge":
            ends = rest.split()
            if len(ends) != 2:
                raise ParseError(f"{where}: expected 'edge <a> <b>'")
            a, b = ends
            for v in ends:
                if v not in groups:
                    raise ParseError(f"{where}: edge mentions undeclared vertex {v}")
            if a == b:
                raise ParseError(f"{where}: loop at {a}")
            key = frozenset(ends)
            if key in seen_edges:
                raise ParseError(f"{where}: duplicate edge {a} {b}")
            seen_edges.add(key)
            edges.append((a, b))
        else:
            raise ParseError(f"{where}: unknown directive {head!r}")
    if not vertices:
        raise ParseError("graph file declares no vertices")
    return Presentation(Graph(vertices, edges, name), groups, name)


def load_graph(path) -> Presentation:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return parse_graph_text(text, path.stem)


@dataclass
class AutomorphismFile:
    source: Presentation
    target: Presentation
    local: morphisms.LocalAutomorphism
    character: morphisms.Character


def parse_automorphism_text(text: str, base: Path = Path(".")) -> AutomorphismFile:
    """``source <path>``, optional ``target <path>``, ``sigma: v->w`` lines
    (comma separated pairs allowed), ``phi v: <descriptor>`` and
    ``char v: <phase>``.  Unlisted vertices are fixed with identity maps."""
    src = tgt = None
    sigma, phi_text, char_text = {}, {}, {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"line {lineno}"
        if line.startswith("source "):
            src = load_graph(base / line[7:].strip())
        elif line.startswith("target "):
            tgt = load_graph(base / line[7:].strip())
        elif line.startswith("sigma:"):
            for pair in line[6:].split(","):
                a, arrow, b = pair.partition("->")
                if not arrow or not a.strip() or not b.strip():
                    raise ParseError(f"{where}: expected 'sigma: v->w'")
                if a.strip() in sigma:
                    raise ParseError(f"{where}: sigma given twice for {a.strip()}")
                sigma[a.strip()] = b.strip()
        elif line.startswith("phi ") or line.startswith("char "):
            head, colon, body = line.partition(":")
            if not colon:
                raise ParseError(f"{where}: missing ':'")
            kind, _, v = head.partition(" ")
            table = phi_text if kind == "phi" else char_text
            v = v.strip()
            if v in table:
                raise ParseError(f"{where}: {kind} given twice for {v}")
            table[v] = body.strip()
        else:
            raise ParseError(f"{where}: unknown directive {line.split()[0]!r}")
    if src is None:
        raise ParseError("automorphism file needs a 'source' line")
    tgt = tgt or src
    for v in list(sigma) + list(phi_text) + list(char_text):
        if v not in src.group_of:
            raise ParseError(f"unknown source vertex {v}")
    smap = {v: sigma.get(v, v) for v in src.vertices}
    for v, w in smap.items():
        if w not in tgt.group_of:
            raise ParseError(f"sigma sends {v} to unknown target vertex {w}")
    phi = {v: morphisms.parse_iso(src.group_of[v], tgt.group_of[smap[v]], t) for v, t in phi_text.items()}
    local = morphisms.make_local(src, smap, phi, tgt)
    chars = {v: morphisms.parse_phase(src.group_of[v], t) for v, t in char_text.items()}
    return AutomorphismFile(src, tgt, local, morphisms.Character(src, chars))


def load_automorphism(path) -> AutomorphismFile:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return parse_automorphism_text(text, path.parent)


# ---------------------------------------------------------------- helpers

def _vs(p, vs):
    return list(p.graph.sorted(vs))


def _word(p, text):
    return words.parse_word(p, text)


def _fw(p, w):
    return words.format_word(p, w)


def _cc1(p):
    d = recognize_cc1(p.graph)
    if not d:
        raise HypothesisViolation("cc1", f"{d.reason.value}: {d.detail}")
    return d


def _vertices(p, names):
    for v in names:
        if v not in p.group_of:
            raise ParseError(f"unknown vertex {v!r}")
    return names


# ---------------------------------------------------------------- commands

def cmd_cliques(a):
    p = load_graph(a.graph)
    return 0, {"graph": p.name, "cliques": [_vs(p, c) for c in maximal_cliques(p.graph)]}


def cmd_cc1(a):
    p = load_graph(a.graph)
    d = recognize_cc1(p.graph)
    if not d:
        return 1, {"graph": p.name, "cc1": False, "reason": d.reason.value, "detail": d.detail,
                   "clique_count": d.clique_count}
    return 0, {"graph": p.name, "cc1": True, **d.as_dict()}


def cmd_retract(a):
    p = load_graph(a.graph)
    d = _cc1(p)
    t, phi = retract_to_flower(d)
    fib = {}
    for v in p.vertices:
        fib.setdefault(phi[v], []).append(v)
    return 0, {"graph": p.name, "flower": t.name, "fibers": {w: fib[w] for w in t.vertices}}


def cmd_isometries(a):
    p, q = load_graph(a.graph), load_graph(a.other)
    found = isometries(p.graph, q.graph)
    shown = found[: a.limit]
    return 0, {
        "count": len(found),
        "shown": len(shown),
        "isometries": [" ".join(f"{u}->{w}" for u, w in iso.mapping) for iso in shown],
    }


def cmd_link(a):
    p = load_graph(a.graph)
    return 0, {"set": _vs(p, _vertices(p, a.vertices)), "link": _vs(p, link(p.graph, a.vertices))}


def cmd_star(a):
    p = load_graph(a.graph)
    return 0, {"set": _vs(p, _vertices(p, a.vertices)), "star": _vs(p, star(p.graph, a.vertices))}


def cmd_normalize(a):
    p = load_graph(a.graph)
    return 0, {"word": _fw(p, _word(p, a.word)), "normal": _fw(p, words.normalize(p, _word(p, a.word)))}


def cmd_canonical(a):
    p = load_graph(a.graph)
    return 0, {"word": _fw(p, _word(p, a.word)), "canonical": _fw(p, words.canonicalize(p, _word(p, a.word)))}


def cmd_eq(a):
    p = load_graph(a.graph)
    u, v = _word(p, a.u), _word(p, a.v)
    return 0, {"equal": words.equal(p, u, v), "left": _fw(p, words.canonicalize(p, u)),
               "right": _fw(p, words.canonicalize(p, v))}


def cmd_support(a):
    p = load_graph(a.graph)
    return 0, {"word": _fw(p, _word(p, a.word)), "support": _vs(p, words.support(p, _word(p, a.word)))}


def cmd_length(a):
    p = load_graph(a.graph)
    return 0, {"word": _fw(p, _word(p, a.word)), "length": words.syllable_length(p, _word(p, a.word))}


def cmd_normalizer(a):
    p = load_graph(a.graph)
    t = _vertices(p, a.vertices)
    return 0, {"set": _vs(p, t), "normalizer": _vs(p, decomp.normalizer_of_full(p, t))}


def cmd_amalgam(a):
    p = load_graph(a.graph)
    s = decomp.amalgam_split(p, _vertices(p, [a.vertex])[0])
    return 0, {"vertex": a.vertex, "left": _vs(p, s.left), "edge": _vs(p, s.edge), "right": _vs(p, s.right),
               "degenerate": s.degenerate}


def cmd_qn_witness(a):
    p = load_graph(a.graph)
    d = _cc1(p)
    r = decomp.clique_quasinormalizer_witness(p, d, a.index, _word(p, a.word))
    out = {"clique": _vs(p, d.clique(a.index)), "member": r.member}
    if not r.member:
        out["witness"] = _fw(p, [r.witness])
        out["conjugate"] = _fw(p, r.conjugate)
        out["conjugate_support"] = _vs(p, {s[0] for s in r.conjugate})
    return 0, out


def _tri(p, r):
    return {"a": _fw(p, r.a), "s": _fw(p, r.s), "b": _fw(p, r.b),
            "a_set": _vs(p, r.a_set), "s_set": _vs(p, r.s_set), "b_set": _vs(p, r.b_set)}


def cmd_decompose1(a):
    p = load_graph(a.graph)
    d = _cc1(p)
    return 0, _tri(p, decomp.prop42_part1(p, d, a.index, _word(p, a.g), _word(p, a.h)))


def cmd_decompose2(a):
    p = load_graph(a.graph)
    d = _cc1(p)
    return 0, _tri(p, decomp.prop42_part2(p, d, a.index, _word(p, a.g), _word(p, a.h), _word(p, a.k)))


def cmd_sixblock(a):
    p = load_graph(a.graph)
    d = _cc1(p)
    r = decomp.six_block_split(p, d, a.index, _word(p, a.word))
    names = "abcdef"
    return 0, {**{n: _fw(p, w) for n, w in zip(names, r.blocks)},
               **{f"{n}_set": _vs(p, s) for n, s in zip(names, r.sets)}}


def cmd_cycle(a):
    p = load_graph(a.graph)
    d = _cc1(p)
    r = decomp.cyclic_decompose(p, d, [_word(p, x) for x in a.words])
    return 0, {"blocks": [
        {"i": i, "a": _fw(p, r.block("a", i)), "b": _fw(p, r.block("b", i)), "c": _fw(p, r.block("c", i))}
        for i in range(1, d.n + 1)
    ]}


def _delta(af, conj):
    if not conj:
        return af.local
    return morphisms.compose(morphisms.inner(af.target, _word(af.target, conj)), af.local)


def cmd_apply(a):
    af = load_automorphism(a.aut)
    delta = _delta(af, a.conj)
    u = _word(af.source, a.word)
    return 0, {"word": _fw(af.source, u), "image": _fw(af.target, delta(u))}


def cmd_char(a):
    af = load_automorphism(a.aut)
    u = _word(af.source, a.word)
    return 0, {"word": _fw(af.source, u), "phase": str(af.character(u))}


def cmd_twist(a):
    af = load_automorphism(a.aut)
    u = _word(af.source, a.word)
    r = morphisms.twisted_apply(af.character, _delta(af, a.conj), u)
    return 0, {"word": _fw(af.source, u), "phase": str(r.phase), "image": _fw(af.target, r.word)}


def cmd_out_report(a):
    p = load_graph(a.graph)
    _cc1(p)
    return 0, morphisms.out_structure_report(p)


def cmd_wreath_demo(a):
    base = parse_group(a.base)
    m = a.degree
    W = SplitWreath(base, m, [cyclic_shift(m)])
    elems = W.elements()
    ident = tuple(range(m))
    hom = all(W.mul(x, y)[1] == perm_mul(x[1], y[1]) for x in elems for y in elems)
    onto = {x[1] for x in elems} == set(W.acting)
    kernel = sum(1 for x in elems if x[1] == ident)
    checks = wreath_summand_conjugation_check(W)
    ok = hom and onto and kernel == base.order() ** m and all(checks.values())
    return (0 if ok else 1), {
        "group": str(W),
        "order": len(elems),
        "epsilon_homomorphism": hom,
        "epsilon_onto": onto,
        "kernel_order": kernel,
        "summand_conjugation": f"{sum(checks.values())}/{len(checks)}",
    }


def cmd_verify(a):
    b = oracle.Budget(max_syllables=a.budget, seed=a.seed, trials=a.trials)
    rep = oracle.verify_suite(a.suite, b)
    return (0 if rep.ok else 1), rep.to_dict()


# ---------------------------------------------------------------- parser

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    jp = _Parser(add_help=False)
    jp.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="print one JSON object")
    ap = _Parser(prog="graphprod", description="Graph products of groups over cycles of cliques.")
    ap.add_argument("--json", action="store_true", help="print one JSON object")
    sub = ap.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True

    def add(name, fn, help_, *args):
        sp = sub.add_parser(name, help=help_, parents=[jp])
        for spec in args:
            flags, kw = spec if isinstance(spec, tuple) else ((spec,), {})
            sp.add_argument(*flags, **kw)
        sp.set_defaults(fn=fn)
        return sp

    many = {"nargs": "+"}
    idx = (("index",), {"type": int, "help": "clique index i (mod n)"})
    add("cliques", cmd_cliques, "maximal cliques", "graph")
    add("cc1", cmd_cc1, "recognize a cycle of cliques", "graph")
    add("retract", cmd_retract, "collapse a CC1 graph onto its flower graph", "graph")
    add("isometries", cmd_isometries, "graph isometries between two graphs", "graph", "other",
        (("--limit",), {"type": int, "default": 20}))
    add("link", cmd_link, "link of a vertex set", "graph", (("vertices",), many))
    add("star", cmd_star, "star of a vertex set", "graph", (("vertices",), many))
    add("normalize", cmd_normalize, "a normal form of a word", "graph", "word")
    add("canonical", cmd_canonical, "the canonical word", "graph", "word")
    add("eq", cmd_eq, "compare two words", "graph", "u", "v")
    add("support", cmd_support, "support of a word", "graph", "word")
    add("length", cmd_length, "syllable length", "graph", "word")
    add("normalizer", cmd_normalizer, "vertex set of the normalizer of a full subgroup", "graph",
        (("vertices",), many))
    add("amalgam", cmd_amalgam, "amalgam splitting at a vertex", "graph", "vertex")
    add("qn-witness", cmd_qn_witness, "clique membership or an escaping conjugate", "graph", idx, "word")
    add("decompose1", cmd_decompose1, "g = a s, h = s^-1 b around an interior", "graph", idx, "g", "h")
    add("decompose2", cmd_decompose2, "g = a s, k = s^-1 b around C_{i,i+1}", "graph", idx, "g", "h", "k")
    add("cycle", cmd_cycle, "decompose a trivial cyclic product", "graph", (("words",), many))
    add("sixblock", cmd_sixblock, "six-block split of a word on C_i u C_{i+1}", "graph", idx, "word")
    conj = (("--conj",), {"default": None, "help": "follow with conjugation by this word"})
    add("apply", cmd_apply, "apply an automorphism file to a word", "aut", "word", conj)
    add("char", cmd_char, "evaluate the character of an automorphism file", "aut", "word")
    add("twist", cmd_twist, "phase and image of a word", "aut", "word", conj)
    add("out-report", cmd_out_report, "structure of the automorphism group", "graph")
    add("wreath-demo", cmd_wreath_demo, "check the wreath product axioms",
        (("--base",), {"default": "Z/2"}), (("--degree",), {"type": int, "default": 3}))
    add("verify", cmd_verify, "run a verification suite", (("suite",), {"choices": list(oracle.SUITES)}),
        (("--budget",), {"type": int, "default": None}), (("--seed",), {"type": int, "default": 0}),
        (("--trials",), {"type": int, "default": None}))
    return ap


# ---------------------------------------------------------------- rendering

def render_plain(payload: dict) -> str:
    lines = []
    for key, val in payload.items():
        if isinstance(val, dict):
            lines.append(f"{key}:")
            for k, v in val.items():
                lines.append(f"  {k}: {_plain_value(v)}")
        elif isinstance(val, list) and any(isinstance(x, (list, dict)) or " " in str(x) for x in val):
            lines.append(f"{key}:")
            for item in val:
                lines.append(f"  - {_plain_value(item)}")
        elif key == "counterexample" and isinstance(val, str):
            lines.append(f"{key}:")
            lines += ["  " + ln for ln in val.splitlines()]
        else:
            lines.append(f"{key}: {_plain_value(val)}")
    return "\n".join(lines) + "\n"


def _plain_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "none"
    if isinstance(v, list):
        return "{" + ", ".join(_plain_value(x) for x in v) + "}"
    if isinstance(v, dict):
        return ", ".join(f"{k}={_plain_value(x)}" for k, x in v.items())
    return str(v)


def _error_payload(kind, exc):
    out = {"ok": False, "error": kind, "message": str(exc)}
    if isinstance(exc, HypothesisViolation):
        out["which"] = exc.which
        out["message"] = exc.detail
    return out


def run(argv) -> CommandResult:
    argv = list(argv)
    want_json = "--json" in argv
    try:
        args = build_parser().parse_args(argv)
        code, payload = args.fn(args)
    except UsageError as exc:
        code, payload = 2, _error_payload("usage", exc)
    except (ParseError, PresentationMismatch, KindMismatch) as exc:
        code, payload = 2, _error_payload("parse", exc)
    except HypothesisViolation as exc:
        code, payload = 1, _error_payload("HypothesisViolation", exc)
    except BudgetExhausted as exc:
        code, payload = 1, _error_payload("BudgetExhausted", exc)
    except InvalidMorphism as exc:
        code, payload = 1, _error_payload("InvalidMorphism", exc)
    except GraphProdError as exc:
        code, payload = 1, _error_payload(type(exc).__name__, exc)
    if want_json:
        return CommandResult(code, payload, json.dumps(payload, sort_keys=False) + "\n")
    if payload.get("ok") is False:
        which = f"({payload['which']})" if "which" in payload else ""
        return CommandResult(code, payload, "", f"error: {payload['error']}{which}: {payload['message']}\n")
    if "suite" in payload:
        rep = oracle.SuiteReport(payload["suite"], payload["seed"], payload["tested"], payload["passed"],
                                 payload["failed"], payload["skipped"], payload["counterexample"],
                                 payload["notes"])
        return CommandResult(code, payload, rep.text())
    return CommandResult(code, payload, render_plain(payload))


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    if argv in ([], ["-h"], ["--help"]):
        build_parser().print_help()
        return 0 if argv else 2
    if "-h" in argv or "--help" in argv:
        try:
            build_parser().parse_args(argv)
        except SystemExit as exc:
            return exc.code or 0
        except UsageError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
    res = run(argv)
    sys.stdout.write(res.stdout)
    sys.stderr.write(res.stderr)
    return res.code


if __name__ == "__main__":
    sys.exit(main())
