"""Minimal epistemic logic: boxed propositional atoms under Boolean connectives.

Epistemic models are non-empty world sets ``E``.  Besides the one-model
evaluator :func:`mel_sat`, :func:`mel_models` computes the whole model class of
a formula as a bitset indexed by ``E`` (bit ``E`` set iff ``E |= Phi``).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from .propcore import (
    And,
    Const,
    Iff,
    Implies,
    Not,
    Or,
    Var,
    Vocabulary,
    _Binary,
    conj,
    formula_of_set,
    is_subset,
    minterm,
    mod_set,
    nonempty_sets,
)


@dataclass(frozen=True)
class Box:
    arg: object  # a propositional formula

    def __str__(self):
        return f"[]({self.arg})"

    def negated_str(self):
        # !([](!phi)) is how a diamond is stored
        if isinstance(self.arg, Not):
            return f"<>({self.arg.arg})"
        return None


def diamond(phi):
    return Not(Box(Not(phi)))


def box_atoms(formula) -> list[Box]:
    match formula:
        case Box():
            return [formula]
        case Not(arg):
            return box_atoms(arg)
        case _Binary(left=l, right=r):
            return box_atoms(l) + box_atoms(r)
    raise TypeError(f"not a MEL formula: {formula!r}")


def mel_sat(E: int, formula, vocab: Vocabulary) -> bool:
    """``E |= formula`` by direct recursion; ``E`` must be non-empty."""
    if E == 0:
        raise ValueError("epistemic models are non-empty")
    match formula:
        case Box(arg):
            return is_subset(E, mod_set(arg, vocab))
        case Not(arg):
            return not mel_sat(E, arg, vocab)
        case And(l, r):
            return mel_sat(E, l, vocab) and mel_sat(E, r, vocab)
        case Or(l, r):
            return mel_sat(E, l, vocab) or mel_sat(E, r, vocab)
        case Implies(l, r):
            return not mel_sat(E, l, vocab) or mel_sat(E, r, vocab)
        case Iff(l, r):
            return mel_sat(E, l, vocab) == mel_sat(E, r, vocab)
        case Var() | Const():
            raise TypeError(f"bare propositional atom {formula} outside a box")
    raise TypeError(f"not a MEL formula: {formula!r}")


@lru_cache(maxsize=4096)
def downset(worlds: int, n_worlds: int) -> int:
    """Bitset over subsets ``E`` of the frame with bit ``E`` set iff ``E`` is a subset of ``worlds``."""
    bits = 1
    for w in range(n_worlds):
        if worlds >> w & 1:
            bits |= bits << (1 << w)
    return bits


def all_models(n_worlds: int) -> int:
    """Bitset of every non-empty ``E``."""
    return ((1 << (1 << n_worlds)) - 1) & ~1


def mel_models(formula, vocab: Vocabulary) -> int:
    """Bitset of all epistemic models of ``formula`` (the empty set never included)."""
    everything = all_models(vocab.n_worlds)

    def go(f) -> int:
        match f:
            case Box(arg):
                return downset(mod_set(arg, vocab), vocab.n_worlds) & everything
            case Not(arg):
                return everything ^ go(arg)
            case And(l, r):
                return go(l) & go(r)
            case Or(l, r):
                return go(l) | go(r)
            case Implies(l, r):
                return (everything ^ go(l)) | go(r)
            case Iff(l, r):
                return everything ^ (go(l) ^ go(r))
            case Var() | Const():
                raise TypeError(f"bare propositional atom {f} outside a box")
        raise TypeError(f"not a MEL formula: {f!r}")

    return go(formula)


def mel_valid(formula, vocab: Vocabulary) -> bool:
    return mel_models(formula, vocab) == all_models(vocab.n_worlds)


@dataclass(frozen=True)
class Consequence:
    holds: bool
    countermodel: Optional[int] = None

    def __bool__(self):
        return self.holds


def mel_consequence(premises: Sequence, conclusion, vocab: Vocabulary) -> Consequence:
    """Decide ``premises |= conclusion``.

    On failure the countermodel is the numerically smallest world-set mask
    satisfying every premise but not the conclusion.
    """
    models = all_models(vocab.n_worlds)
    for premise in premises:
        models &= mel_models(premise, vocab)
    bad = models & ~mel_models(conclusion, vocab)
    if not bad:
        return Consequence(True)
    return Consequence(False, (bad & -bad).bit_length() - 1)


def characteristic_formula(E: int, vocab: Vocabulary):
    """A MEL formula whose only model is ``E``."""
    if E == 0 or not is_subset(E, vocab.full):
        raise ValueError(f"not a non-empty world set: {E}")
    phi_e = formula_of_set(E, vocab)
    excluded = [Not(Box(And(phi_e, Not(minterm(w, vocab))))) for w in vocab.worlds_of(E)]
    return And(Box(phi_e), conj(excluded))


def models_of(formula, vocab: Vocabulary) -> list[int]:
    bits = mel_models(formula, vocab)
    return [E for E in nonempty_sets(vocab.n_worlds) if bits >> E & 1]
