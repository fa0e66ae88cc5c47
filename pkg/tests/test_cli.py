import json
import subprocess
import sys

import pytest

from graphprod import cli
from graphprod.errors import InvalidMorphism, ParseError
from graphprod.words import parse_word

from conftest import DATA

T4 = str(DATA / "t4.graph")
T4Z3 = str(DATA / "t4z3.graph")
T4Z = str(DATA / "t4z.graph")
T6 = str(DATA / "t6.graph")
K5 = str(DATA / "k5.graph")
ROT = str(DATA / "t4-rotate.aut")
TWIST = str(DATA / "t4-twist.aut")


def run(*argv):
    return cli.run(["--json", *argv])


# (argv, exit code) for success, hypothesis failure and parse failure of each command
CONTRACT = [
    (["cliques", T4], 0),
    (["cliques", "/nonexistent.graph"], 2),
    (["cc1", T4], 0),
    (["cc1", K5], 1),
    (["retract", T4], 0),
    (["retract", K5], 1),
    (["isometries", T4, T6], 0),
    (["link", T4, "w1"], 0),
    (["link", T4, "zz"], 2),
    (["star", T4, "w1", "w2"], 0),
    (["normalize", T4, "w1^1 . b1^1"], 0),
    (["normalize", T4, "w1^[x1]"], 2),
    (["canonical", T4, "w1^1 . b1^1"], 0),
    (["canonical", T4, "w1^"], 2),
    (["eq", T4, "b1^1", "b1^1"], 0),
    (["support", T4, "w1^1"], 0),
    (["length", T4, "w1^1 . w3^1"], 0),
    (["normalizer", T4, "b2"], 0),
    (["amalgam", T4, "w1"], 0),
    (["amalgam", T4, "q"], 2),
    (["qn-witness", T4, "1", "w2^1"], 0),
    (["qn-witness", K5, "1", "e"], 1),
    (["decompose1", T4, "1", "w1^1", "w1^1"], 0),
    (["decompose1", T4, "1", "b1^1", "e"], 1),
    (["decompose2", T6, "3", "e", "e", "e"], 0),
    (["decompose2", T6, "3", "b4^1", "e", "e"], 1),
    (["cycle", T4Z3, "e", "e", "e", "e"], 0),
    (["cycle", T4Z3, "b1^1", "e", "e", "e"], 1),
    (["sixblock", T4Z3, "1", "b2^2"], 0),
    (["sixblock", T4Z3, "1", "w3^1"], 1),
    (["apply", ROT, "w1^1"], 0),
    (["apply", ROT, "zz^1"], 2),
    (["char", TWIST, "b1^1"], 0),
    (["twist", TWIST, "b1^1", "--conj", "w3^1"], 0),
    (["out-report", T4Z], 0),
    (["out-report", K5], 1),
    (["wreath-demo", "--degree", "2"], 0),
    (["wreath-demo", "--base", "Q"], 2),
    (["verify", "wreath", "--budget", "1"], 0),
    (["verify", "wreath", "--budget", "0"], 1),
    (["verify", "nonsense"], 2),
    (["frobnicate"], 2),
    (["normalize", T4], 2),
]


@pytest.mark.parametrize("argv, code", CONTRACT, ids=lambda x: " ".join(map(str, x)).replace(str(DATA) + "/", "") if isinstance(x, list) else str(x))
def test_exit_code_contract(argv, code):
    res = run(*argv)
    assert res.code == code, res.stdout
    payload = json.loads(res.stdout)
    assert (payload.get("ok") is False) == (code != 0) or argv[0] in ("verify", "cc1")


def test_plain_errors_go_to_stderr():
    res = cli.run(["decompose1", T4, "1", "b1^1", "e"])
    assert res.code == 1 and res.stdout == ""
    assert res.stderr.startswith("error: HypothesisViolation(support-g):")
    assert res.stderr.count("\n") == 1


def test_json_flag_anywhere():
    a = cli.run(["--json", "length", T4, "w1^1"])
    b = cli.run(["length", T4, "w1^1", "--json"])
    assert a.stdout == b.stdout
    assert json.loads(a.stdout) == {"word": "w1^1", "length": 1}


def test_plain_rendering():
    res = cli.run(["cc1", T4])
    assert "cc1: true" in res.stdout
    assert "  - {b1, b2, w1}" in res.stdout
    assert "n: 4" in res.stdout


def test_canonical_output_round_trips():
    p = cli.load_graph(T4Z3)
    for text in ["w1^1 . b1^2 . w3^1 . w1^2", "b4^1 . w4^2 . b1^1 . w2^1", "e"]:
        out = json.loads(run("canonical", T4Z3, text).stdout)["canonical"]
        again = json.loads(run("canonical", T4Z3, out).stdout)["canonical"]
        assert again == out
        assert json.loads(run("eq", T4Z3, text, out).stdout)["equal"]
        parse_word(p, out)


def test_rotation_and_conjugation():
    assert json.loads(run("apply", ROT, "w1^1 . b1^2").stdout)["image"] == "b2^2 . w2^1"
    out = json.loads(run("apply", ROT, "w1^1", "--conj", "w3^1").stdout)
    assert out["image"] == "w3^1 . w2^1 . w3^2"


def test_twist_phase_is_additive():
    f = lambda w: json.loads(run("char", TWIST, w).stdout)["phase"]
    assert f("b1^1 . w2^1") == "0"
    assert f("b1^2") == "2/3"
    assert f("w1^1 . w3^2") == "0"


# -- graph files


@pytest.mark.parametrize(
    "text, msg",
    [
        ("vertex a group Z/2\nvertex a group Z/3\n", "duplicate vertex"),
        ("vertex a group Z/2\nvertex b group Z/2\nedge a b\nedge b a\n", "duplicate edge"),
        ("vertex a group Z/2\nedge a a\n", "loop"),
        ("vertex a group Z/2\nedge a b\n", "undeclared"),
        ("vertex a group Z/2\nnode b\n", "unknown directive"),
        ("vertex a.b group Z/2\n", "clashes"),
        ("vertex e group Z/2\n", "clashes"),
        ("vertex a group Q\n", "line 1"),
        ("vertex a Z/2\n", "expected"),
        ("# nothing\n", "no vertices"),
    ],
)
def test_graph_file_errors(text, msg):
    with pytest.raises(ParseError, match=msg):
        cli.parse_graph_text(text)


def test_graph_file_comments_and_name():
    p = cli.parse_graph_text("graph tiny  # a name\nvertex a group Z\nvertex b group Free(2)\nedge a b # edge\n")
    assert p.name == "tiny" and p.graph.adjacent("a", "b")


# -- automorphism files


def _aut(tmp_path, body):
    (tmp_path / "g.graph").write_text((DATA / "t4z3.graph").read_text())
    (tmp_path / "f.aut").write_text("source g.graph\n" + body)
    return tmp_path / "f.aut"


def test_automorphism_file(tmp_path):
    f = cli.load_automorphism(_aut(tmp_path, "sigma: w1->w1\nphi b3: 2\nchar w4: 1/3\n"))
    assert f.local.smap["b3"] == "b3"
    assert f.character(parse_word(f.source, "w4^2")) == __import__("fractions").Fraction(2, 3)


@pytest.mark.parametrize(
    "body, exc, msg",
    [
        ("sigma: b1 b2\n", ParseError, "expected"),
        ("sigma: b1->b2\nsigma: b1->b3\n", ParseError, "twice"),
        ("phi b1 2\n", ParseError, "missing"),
        ("phi b1: 2\nphi b1: 1\n", ParseError, "twice"),
        ("phi zz: 2\n", ParseError, "unknown source vertex"),
        ("sigma: b1->zz\n", ParseError, "unknown target vertex"),
        ("rotate everything\n", ParseError, "unknown directive"),
        ("sigma: w1->w3, w3->w1\n", InvalidMorphism, None),
        ("phi w1: 3\n", InvalidMorphism, None),
        ("char w1: 1/2\n", InvalidMorphism, None),
    ],
)
def test_automorphism_file_errors(tmp_path, body, exc, msg):
    with pytest.raises(exc, match=msg):
        cli.load_automorphism(_aut(tmp_path, body))


def test_automorphism_needs_source(tmp_path):
    path = tmp_path / "f.aut"
    path.write_text("phi w1: 2\n")
    with pytest.raises(ParseError, match="source"):
        cli.load_automorphism(path)


def test_invalid_automorphism_exit_code(tmp_path):
    res = run("apply", str(_aut(tmp_path, "phi w1: 3\n")), "w1^1")
    assert res.code == 1 and json.loads(res.stdout)["error"] == "InvalidMorphism"


# -- entry points


def test_main_direct(capsys):
    assert cli.main(["length", T4, "w1^1 . w3^1"]) == 0
    assert capsys.readouterr().out == "word: w1^1 . w3^1\nlength: 2\n"
    assert cli.main(["--help"]) == 0
    assert cli.main([]) == 2


def test_python_dash_m():
    out = subprocess.run([sys.executable, "-m", "graphprod", "--json", "support", T4, "w1^1 . b3^1"],
                         capture_output=True, text=True, check=False)
    assert out.returncode == 0
    assert json.loads(out.stdout)["support"] == ["b3", "w1"]
    bad = subprocess.run([sys.executable, "-m", "graphprod", "canonical", T4, "b1^x"],
                         capture_output=True, text=True, check=False)
    assert bad.returncode == 2 and bad.stderr.startswith("error: ")
