import pytest
from hypothesis import given

from belfl.propcore import (
    BOT,
    TOP,
    And,
    Frame,
    Not,
    Or,
    Var,
    Vocabulary,
    VocabularyError,
    evaluate,
    formula_of_set,
    minterm,
    mod_set,
    nonempty_sets,
    submasks,
)
from conftest import PQ, PQR, prop_formulas
from oracles import models, worlds


def world(vocab, **values):
    return vocab.world(values)


def test_world_encoding_puts_variable_i_at_bit_i():
    assert world(PQ, p=1, q=0) == 0b01
    assert world(PQ, p=0, q=1) == 0b10
    assert PQ.assignment(3) == {"p": 1, "q": 1}
    assert PQ.world_label(1) == "p=1,q=0"


def test_vocabulary_limits():
    with pytest.raises(VocabularyError):
        Vocabulary([])
    with pytest.raises(VocabularyError):
        Vocabulary(["p", "p"])
    with pytest.raises(VocabularyError):
        Vocabulary(list("abcde"))
    assert Vocabulary(list("abcde"), max_vars=5).n_worlds == 32


def test_frame_rejects_duplicate_labels():
    with pytest.raises(VocabularyError):
        Frame(["a", "a"])


def test_mod_set_examples():
    p, q = Var("p"), Var("q")
    assert mod_set(Or(p, q), PQ) == (1 << 1) | (1 << 2) | (1 << 3)
    assert mod_set(And(p, Not(p)), PQ) == 0
    assert mod_set(Or(Not(p), p), PQ) == PQ.full


def test_mod_set_unknown_variable():
    with pytest.raises(VocabularyError):
        mod_set(Var("z"), PQ)


def test_minterm_examples():
    p, q = Var("p"), Var("q")
    assert minterm(3, PQ) == And(p, q)
    assert minterm(0, PQ) == And(Not(p), Not(q))
    for w in range(4):
        assert mod_set(minterm(w, PQ), PQ) == 1 << w


def test_formula_of_set_examples():
    assert formula_of_set(1 << 3, PQ) == And(Var("p"), Var("q"))
    assert mod_set(formula_of_set(PQ.full, PQ), PQ) == PQ.full
    assert formula_of_set(0, PQ) == BOT


@pytest.mark.parametrize("vocab", [Vocabulary(["p"]), PQ, PQR])
def test_formula_of_set_round_trip_exhaustive(vocab):
    for E in range(1 << vocab.n_worlds):
        assert mod_set(formula_of_set(E, vocab), vocab) == E


@given(prop_formulas(), prop_formulas())
def test_mod_set_is_boolean_algebra_homomorphism(f, g):
    assert mod_set(Not(f), PQ) == PQ.full & ~mod_set(f, PQ)
    assert mod_set(And(f, g), PQ) == mod_set(f, PQ) & mod_set(g, PQ)


@given(prop_formulas(("p", "q", "r")))
def test_mod_set_matches_oracle_truth_table(f):
    expected = models(f, ("p", "q", "r"))
    got = {w for w in range(8) if mod_set(f, PQR) >> w & 1}
    oracle = {sum(bit << i for i, bit in enumerate(t)) for t in expected}
    assert got == oracle
    assert all(evaluate(f, PQR, w) == (w in got) for w in range(8))


def test_constants():
    assert mod_set(TOP, PQ) == PQ.full
    assert mod_set(BOT, PQ) == 0
    assert str(TOP) == "1" and str(BOT) == "0"


def test_subset_helpers():
    assert sorted(submasks(0b101)) == [0, 1, 4, 5]
    assert list(nonempty_sets(2)) == [1, 2, 3]
    assert len(worlds(("p", "q", "r"))) == 8
