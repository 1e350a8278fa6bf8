import random
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from belfl.belief import (
    BeliefTable,
    MassFunction,
    ModelClass,
    NotABeliefFunction,
    NotAProbability,
    bel,
    belief_table,
    mass_from_mu,
    mobius,
    mu_of_mel,
    pl,
    random_mass,
    set_belief,
    set_plausibility,
)
from belfl.mel import Box, characteristic_formula, diamond, mel_valid
from belfl.propcore import BOT, TOP, And, Frame, Iff, Not, Or, Var, Vocabulary, mod_set
from conftest import PQ, any_vocab_mass, masses, prop_formulas
from oracles import belief, models, to_oracle_masses

p, q = Var("p"), Var("q")
P1 = Vocabulary(["p"])
W1, W2 = 1 << 1, 1 << 0  # the p-world and the !p-world of {p}


def test_mass_validation():
    with pytest.raises(ValueError):
        MassFunction(PQ, {1: F(1, 2)})
    with pytest.raises(ValueError):
        MassFunction(PQ, {0: F(1, 2), 1: F(1, 2)})
    with pytest.raises(ValueError):
        MassFunction(PQ, {16: 1})
    with pytest.raises(TypeError):
        MassFunction(PQ, {1: 0.5, 2: 0.5})
    m = MassFunction(PQ, {1: F(1, 2), 2: F(1, 2), 3: 0})
    assert m.focal_sets == [1, 2]
    assert MassFunction(PQ, {1: "3/10", 15: "0.7"})[15] == F(7, 10)


def test_bel_examples():
    vac = MassFunction.vacuous(PQ)
    assert bel(vac, Or(p, Not(p))) == 1 and bel(vac, p) == 0
    m = MassFunction(P1, {W1: F(1, 3), P1.full: F(2, 3)})
    assert (bel(m, p), bel(m, Not(p)), bel(m, Or(p, Not(p)))) == (F(1, 3), 0, 1)
    uniform = MassFunction(PQ, {1 << w: F(1, 4) for w in range(4)})
    assert bel(uniform, p) == F(1, 2)


def test_pl_examples():
    assert pl(MassFunction.vacuous(PQ), p) == 1
    m = MassFunction(P1, {W1: F(1, 3), P1.full: F(2, 3)})
    assert pl(m, Not(p)) == F(2, 3)
    assert pl(m, BOT) == 0


def test_belief_table_and_mobius_examples():
    m = MassFunction(P1, {W1: F(3, 10), P1.full: F(7, 10)})
    table = belief_table(m)
    assert table.values == [0, 0, F(3, 10), 1]
    assert mobius(table) == m
    assert belief_table(MassFunction.vacuous(PQ)).values == [0] * 15 + [1]
    uniform = BeliefTable(PQ, [F(bin(A).count("1"), 4) for A in range(16)])
    assert mobius(uniform) == MassFunction(PQ, {1 << w: F(1, 4) for w in range(4)})


def test_mobius_rejects_non_belief_table():
    with pytest.raises(NotABeliefFunction, match="-1/5"):
        mobius(BeliefTable(P1, [0, F(6, 10), F(6, 10), 1]))
    with pytest.raises(NotABeliefFunction):
        mobius(BeliefTable(P1, [0, 0, 0, F(1, 2)]))
    with pytest.raises(NotABeliefFunction):
        mobius(BeliefTable(P1, [F(1, 10), F(1, 10), F(1, 10), 1]))


def test_mu_examples():
    m = random_mass(PQ, random.Random(1))
    for phi in [p, Or(p, q), Iff(p, q)]:
        assert mu_of_mel(m, Box(phi)) == bel(m, phi)
    assert mu_of_mel(m, Or(Box(p), Not(Box(p)))) == 1
    ignorance = And(diamond(p), diamond(Not(p)))
    assert mu_of_mel(MassFunction.vacuous(P1), ignorance) == 1


def test_mass_from_mu_examples():
    vac_sigma = characteristic_formula(PQ.full, PQ)
    assert mass_from_mu(lambda f: 1 if f == vac_sigma else 0, PQ) == MassFunction.vacuous(PQ)
    with pytest.raises(NotAProbability):
        mass_from_mu(lambda f: F(9, 10) if f == vac_sigma else 0, PQ)


@given(any_vocab_mass())
def test_mobius_round_trip(m):
    assert mobius(belief_table(m)) == m


@given(masses(), prop_formulas())
def test_bel_matches_oracle_and_duality(m, phi):
    oracle = to_oracle_masses(m)
    assert bel(m, phi) == belief(oracle, models(phi, ("p", "q")))
    assert pl(m, phi) == 1 - bel(m, Not(phi))
    assert pl(m, phi) == set_plausibility(m, mod_set(phi, PQ))
    assert bel(m, phi) <= pl(m, phi)


@given(masses(), prop_formulas(), prop_formulas())
def test_b1_b3(m, phi, psi):
    assert bel(m, TOP) == 1 and bel(m, Not(TOP)) == 0
    if mod_set(phi, PQ) == mod_set(psi, PQ):
        assert bel(m, phi) == bel(m, psi)


@given(masses(), prop_formulas(), prop_formulas(), prop_formulas())
def test_b2_orders_two_and_three(m, a, b, c):
    x, y, z = (bel(m, f) for f in (a, b, c))
    assert bel(m, Or(a, b)) >= x + y - bel(m, And(a, b))
    assert bel(m, Or(Or(a, b), c)) >= (
        x + y + z - bel(m, And(a, b)) - bel(m, And(a, c)) - bel(m, And(b, c)) + bel(m, And(And(a, b), c))
    )


@given(masses(Vocabulary(["p"])))
def test_belief_tables_are_totally_monotone(m):
    table = belief_table(m)
    assert table.is_monotone()
    assert table.monotonicity_violations(2) == []
    assert table.monotonicity_violations(3) == []


def test_non_belief_table_fails_order_two():
    table = BeliefTable(P1, [0, F(6, 10), F(6, 10), 1])
    assert table.monotonicity_violations(2)


@given(masses(model_class=ModelClass.NECESSITY), prop_formulas(), prop_formulas())
def test_consonant_masses_are_min_decomposable(m, phi, psi):
    assert m.is_consonant()
    assert bel(m, And(phi, psi)) == min(bel(m, phi), bel(m, psi))


@given(masses(model_class=ModelClass.PROBABILITY), prop_formulas(), prop_formulas())
def test_probabilities_are_additive(m, phi, psi):
    assert m.is_probability()
    assert bel(m, phi) == pl(m, phi)
    if mod_set(phi, PQ) & mod_set(psi, PQ) == 0:
        assert bel(m, Or(phi, psi)) == bel(m, phi) + bel(m, psi)


@given(masses())
def test_mu_mass_bijection(m):
    assert mass_from_mu(lambda f: mu_of_mel(m, f), PQ) == m


@given(masses(), prop_formulas(), prop_formulas())
def test_mu_is_a_probability_on_mel(m, phi, psi):
    A, B = Box(phi), Box(psi)
    assert mu_of_mel(m, Not(A)) == 1 - mu_of_mel(m, A)
    assert mu_of_mel(m, Or(A, B)) == mu_of_mel(m, A) + mu_of_mel(m, B) - mu_of_mel(m, And(A, B))
    if mel_valid(Or(Not(A), B), PQ):
        assert mu_of_mel(m, A) <= mu_of_mel(m, B)


@given(st.integers(0, 10**6), st.sampled_from(list(ModelClass)))
def test_random_mass_respects_class(seed, cls):
    m = random_mass(PQ, random.Random(seed), model_class=cls)
    assert m.belongs_to(cls)
    assert all(v.denominator <= 60 for _, v in m.items())
    assert len(m) <= 8


def test_set_functions_on_abstract_frame():
    frame = Frame(["a", "b", "c"])
    m = MassFunction(frame, {0b001: F(1, 2), 0b111: F(1, 2)})
    assert set_belief(m, 0b011) == F(1, 2)
    assert set_plausibility(m, 0b110) == F(1, 2)
    with pytest.raises(TypeError):
        bel(m, p)
