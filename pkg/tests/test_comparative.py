from fractions import Fraction as F

import pytest
from hypothesis import given

from belfl.belief import MassFunction, bel, belief_table
from belfl.comparative import (
    ComparativeRelation,
    NotATotalPreorder,
    check_bw,
    compare_query,
    induced_relation,
    representable,
    total_preorders,
)
from belfl.entail import Theory, entails
from belfl.pformula import B, LImplies, LNot, StrongAnd, StrongOr, TruthConst, p_eval
from belfl.propcore import TOP, BOT, And, Frame, Var, Vocabulary
from belfl.syntax import parse_p
from conftest import PQ, masses, prop_formulas

p, q = Var("p"), Var("q")
X2 = Frame(["a", "b"])
A, Bset, FULL = 0b01, 0b10, 0b11


def cardinality(frame):
    return ComparativeRelation.from_scores(frame, [bin(S).count("1") for S in range(1 << frame.n_worlds)])


def test_induced_examples():
    vac = induced_relation(MassFunction.vacuous(PQ))
    assert all(vac.strictly(PQ.full, S) for S in range(15))
    assert all(vac.equivalent(S, T) for S in range(15) for T in range(15))
    uniform = MassFunction(PQ, {1 << w: F(1, 4) for w in range(4)})
    assert induced_relation(uniform) == cardinality(PQ)
    m = MassFunction(X2, {A: F(3, 10), FULL: F(7, 10)})
    assert induced_relation(m).strictly(A, Bset)


@given(masses())
def test_induced_relations_satisfy_postulates(m):
    report = check_bw(induced_relation(m))
    assert report.ok, report.violations


def test_bw4_violation_reported():
    rel = cardinality(X2).with_pair(0, FULL, True)
    report = check_bw(rel)
    assert report.violations["BW4"] == [("empty-not-above-frame",)]


def test_missing_transitivity_edge_reported():
    rel = cardinality(Frame(["a", "b", "c"])).with_pair(0b111, 0, False)
    report = check_bw(rel)
    assert ("transitivity", 0b111, 0b001, 0) in report.violations["BW1"]
    assert "BW1" in report.failed()


def test_representable_examples():
    witness = representable(cardinality(X2))
    assert witness is not None and induced_relation(witness) == cardinality(X2)
    tied = ComparativeRelation.from_ranks(X2, [[FULL, 0], [A, Bset]])
    assert representable(tied) is None
    with pytest.raises(NotATotalPreorder):
        representable(cardinality(X2).with_pair(A, Bset, False).with_pair(Bset, A, False))


def test_enumerator_finds_ordered_bell_number():
    rels = list(total_preorders(X2))
    assert len(rels) == 75
    assert len(set(rels)) == 75
    assert all(r.is_total_preorder() for r in rels)
    assert len(list(total_preorders(Frame(["a"])))) == 3


def test_representability_agrees_with_postulates_on_two_points():
    for rel in total_preorders(X2):
        witness = representable(rel)
        assert (witness is not None) == check_bw(rel).ok
        if witness is not None:
            assert induced_relation(witness) == rel


def test_ranks_round_trip():
    rel = ComparativeRelation.from_ranks(X2, [[FULL], [A, Bset], [0]])
    assert rel.ranks() == [[FULL], [A, Bset], [0]]
    with pytest.raises(ValueError):
        ComparativeRelation.from_ranks(X2, [[FULL], [A]])
    with pytest.raises(ValueError):
        ComparativeRelation.from_ranks(X2, [[FULL, A], [A, Bset, 0]])


def test_single_three_point_relation():
    m = MassFunction(Frame(["a", "b", "c"]), {0b001: F(1, 5), 0b011: F(3, 10), 0b111: F(1, 2)})
    rel = induced_relation(m)
    witness = representable(rel)
    assert witness is not None and induced_relation(witness) == rel
    assert belief_table(witness)[0b111] == 1


def test_compare_examples():
    T = Theory(PQ, [parse_p("B(p & q) <-> 0.5", PQ)])
    assert compare_query(T, p, And(p, q)).valid
    verdict = compare_query(Theory(PQ), p, q)
    assert not verdict.valid and verdict.countermodel is not None


def test_compare_twice_as_believed():
    T = Theory(PQ, [parse_p("0.3 -> B(q)", PQ), parse_p("B(p) <-> (B(q) (+) B(q))", PQ)])
    assert entails(T, TruthConst(0)).truth_degree == 0  # consistent: some model exists
    assert compare_query(T, p, q, factor=2).valid
    assert compare_query(T, p, q).valid
    assert not compare_query(Theory(PQ, [parse_p("B(p) <-> B(q)", PQ)]), p, q, factor=2).valid
    with pytest.raises(ValueError):
        compare_query(T, p, q, factor=0)


@given(masses(), prop_formulas(), prop_formulas())
def test_twice_pattern_semantics(m, phi, psi):
    value = p_eval(m, LImplies(StrongOr(B(psi), B(psi)), B(phi)))
    assert (value == 1) == (bel(m, phi) >= min(2 * bel(m, psi), 1))


def ge(a, b):
    return LImplies(B(b), B(a))


def test_belief_level_postulate_schemata():
    empty = Theory(PQ)
    r = Var("r")
    # transitivity: (p >= q) and (q >= r) give p >= r
    assert entails(Theory(Vocabulary(["p", "q", "r"])), LImplies(StrongAnd(ge(p, q), ge(q, r)), ge(p, r))).valid
    # monotonicity under a classically valid implication
    assert entails(empty, ge(p, And(p, q))).valid
    # the tautology is strictly above the contradiction
    assert entails(empty, LNot(ge(BOT, TOP))).valid
