import pytest

from graphprod import decomp, oracle, words
from graphprod.errors import BudgetExhausted, HypothesisViolation
from graphprod.graphs import flower_graph
from graphprod.groups import Cyclic, Integers
from graphprod.oracle import Budget, enumerate_elements, oracle_equal, shuffle_closure, verify_suite
from graphprod.words import Presentation, Syllable, canonicalize, parse_word

P2 = Presentation.uniform(flower_graph(4), Cyclic(2))


def W(text):
    return parse_word(P2, text)


def test_shuffle_closure_examples():
    assert shuffle_closure(P2, W("w1^1")) == {W("w1^1")}
    assert len(shuffle_closure(P2, W("b1^1 . w1^1"))) == 2
    assert len(shuffle_closure(P2, W("w1^1 . w3^1"))) == 1
    # b1, b2, w1 pairwise adjacent: every order
    assert len(shuffle_closure(P2, W("b1^1 . b2^1 . w1^1"))) == 6


def test_oracle_equal_examples():
    assert oracle_equal(P2, W("w1^1 . w2^1"), W("w1^1 . w2^1"))
    assert oracle_equal(P2, W("b1^1 . w1^1"), W("w1^1 . b1^1"))
    assert not oracle_equal(P2, W("w1^1 . w3^1"), W("w3^1 . w1^1"))
    assert oracle_equal(P2, W("w1^1 . b1^1 . w1^1"), W("b1^1"))


def test_oracle_normalize_shares_no_code_with_words_normalize(monkeypatch):
    def boom(*a, **k):
        raise AssertionError("words.normalize called from the oracle")

    monkeypatch.setattr(words, "normalize", boom)
    monkeypatch.setattr(words, "_append", boom)
    assert oracle_equal(P2, W("b1^1 . w1^1 . b1^1"), W("w1^1"))
    assert len(enumerate_elements(P2, Budget(2))) == 53


def test_enumerate_counts():
    assert enumerate_elements(P2, Budget(0)) == [()]
    assert len(enumerate_elements(P2, Budget(1))) == 9
    e2 = enumerate_elements(P2, Budget(2))
    assert len(e2) == len(set(e2))
    assert set(e2) == set(words.ball(P2, 2))
    # each element once, whatever its number of shuffles
    assert all(canonicalize(P2, w) == w for w in e2)
    with pytest.raises(BudgetExhausted):
        enumerate_elements(P2, Budget(3, max_count=100))


def test_enumerate_needs_letters_for_infinite_groups():
    pz = Presentation.uniform(flower_graph(4), Integers())
    with pytest.raises(HypothesisViolation):
        enumerate_elements(pz, Budget(1))
    letters = [Syllable("b1", 1), Syllable("b1", -1), Syllable("w3", 1)]
    # b1 and w3 do not commute: b1^±2, w3^2, and both orders of b1^±1 with w3
    assert len(enumerate_elements(pz, Budget(2), letters=letters)) == 1 + 3 + 7


def test_budget_validation():
    with pytest.raises(ValueError):
        Budget(-1)
    with pytest.raises(ValueError):
        Budget(max_count=0)


@pytest.mark.parametrize("name", list(oracle.SUITES))
def test_budget_zero_is_vacuous(name):
    rep = verify_suite(name, Budget(0))
    assert rep.vacuous and not rep.ok
    assert "vacuous" in rep.text()


@pytest.mark.parametrize("name", list(oracle.SUITES))
def test_small_budgets_pass_and_are_deterministic(name):
    b = Budget(max_syllables=2, seed=5, trials=50)
    first, second = verify_suite(name, b), verify_suite(name, b)
    assert first.ok, first.text()
    assert first.text() == second.text()
    assert first.tested == first.passed + first.failed


def test_seed_is_reported():
    rep = verify_suite("cyclic", Budget(seed=123, trials=20))
    assert rep.lines()[0].endswith("seed=123")


def test_unknown_suite():
    with pytest.raises(KeyError):
        verify_suite("nope")


# -- mutation checks: the suites must notice a broken fast path


def test_normal_form_suite_catches_broken_shuffle(monkeypatch):
    monkeypatch.setattr(words, "_least_shuffle", lambda p, nf: words.CanonicalWord(nf))
    rep = verify_suite("normal-form", Budget(max_syllables=3, trials=200))
    assert rep.failed > 0 and rep.counterexample


def test_normal_form_suite_catches_lost_merge(monkeypatch):
    real = words._append

    def lazy(p, out, v, x):
        # never merges across a commuting syllable
        if out and out[-1][0] != v:
            out.append(Syllable(v, x))
        else:
            real(p, out, v, x)

    monkeypatch.setattr(words, "_append", lazy)
    rep = verify_suite("normal-form", Budget(max_syllables=3, trials=200))
    assert rep.failed > 0


def test_cyclic_suite_catches_broken_decomposition(monkeypatch):
    real = decomp.six_block_split

    def swapped(p, d, i, x):
        s = real(p, d, i, x)
        return decomp.SixBlockSplit(s.c, s.b, s.a, s.d, s.e, s.f, s.sets)

    monkeypatch.setattr(decomp, "six_block_split", swapped)
    rep = verify_suite("cyclic", Budget(trials=50))
    assert rep.failed > 0


def test_report_counterexample_is_lexicographically_least():
    rep = oracle.SuiteReport("x", 0)
    rep.record(False, "b")
    rep.record(False, lambda: "a")
    rep.record(True)
    assert rep.counterexample == "a" and rep.failed == 2 and rep.passed == 1
    assert rep.lines()[-2:] == ["counterexample:", "  a"]
