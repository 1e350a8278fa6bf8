"""Reference semantics written independently of the package internals.

Worlds are tuples of 0/1 in vocabulary order, world sets are frozensets, and
formulas are walked directly.  Nothing here touches bitmasks or the MILP.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import chain, combinations, product

from belfl.mel import Box
from belfl.pformula import (
    LEquiv,
    LImplies,
    LNot,
    Minus,
    PAtom,
    StrongAnd,
    StrongOr,
    TruthConst,
    WeakAnd,
    WeakOr,
)
from belfl.propcore import And, Const, Iff, Implies, Not, Or, Var

ONE, ZERO = Fraction(1), Fraction(0)


def worlds(names):
    return [tuple(bits) for bits in product((0, 1), repeat=len(names))]


def nonempty_subsets(items):
    items = list(items)
    return [
        frozenset(c) for c in chain.from_iterable(combinations(items, k) for k in range(1, len(items) + 1))
    ]


def prop_true(f, names, world) -> bool:
    if isinstance(f, Var):
        return world[names.index(f.name)] == 1
    if isinstance(f, Const):
        return f.value
    if isinstance(f, Not):
        return not prop_true(f.arg, names, world)
    a, b = prop_true(f.left, names, world), prop_true(f.right, names, world)
    if isinstance(f, And):
        return a and b
    if isinstance(f, Or):
        return a or b
    if isinstance(f, Implies):
        return (not a) or b
    if isinstance(f, Iff):
        return a == b
    raise TypeError(f)


@lru_cache(maxsize=None)
def models(f, names) -> frozenset:
    return frozenset(w for w in worlds(names) if prop_true(f, names, w))


@lru_cache(maxsize=None)
def mel_true(f, names, state: frozenset) -> bool:
    if isinstance(f, Box):
        return state <= models(f.arg, names)
    if isinstance(f, Const):
        return f.value
    if isinstance(f, Not):
        return not mel_true(f.arg, names, state)
    a, b = mel_true(f.left, names, state), mel_true(f.right, names, state)
    if isinstance(f, And):
        return a and b
    if isinstance(f, Or):
        return a or b
    if isinstance(f, Implies):
        return (not a) or b
    if isinstance(f, Iff):
        return a == b
    raise TypeError(f)


def belief(masses: dict, event: frozenset) -> Fraction:
    return sum((v for E, v in masses.items() if E <= event), ZERO)


def luk(f, atom_value) -> Fraction:
    """Łukasiewicz value of a graded formula, textbook truth tables."""
    if isinstance(f, PAtom):
        return atom_value(f.mel)
    if isinstance(f, TruthConst):
        return f.value
    if isinstance(f, LNot):
        return ONE - luk(f.arg, atom_value)
    x, y = luk(f.left, atom_value), luk(f.right, atom_value)
    table = {
        LImplies: lambda: min(ONE, ONE - x + y),
        StrongOr: lambda: min(ONE, x + y),
        StrongAnd: lambda: max(ZERO, x + y - ONE),
        Minus: lambda: max(ZERO, x - y),
        WeakAnd: lambda: min(x, y),
        WeakOr: lambda: max(x, y),
        LEquiv: lambda: ONE - abs(x - y),
    }
    return table[type(f)]()


def graded_value(f, names, masses: dict) -> Fraction:
    names = tuple(names)

    def atom(mel):
        return sum((v for E, v in masses.items() if mel_true(mel, names, E)), ZERO)

    return luk(f, atom)


def to_oracle_masses(m) -> dict:
    """Convert a package mass function into the oracle's frozenset form."""
    vocab = m.frame
    names = list(vocab.names)
    out = {}
    for E, v in m.items():
        out[frozenset(tuple(vocab.assignment(w)[n] for n in names) for w in vocab.worlds_of(E))] = v
    return out


def grid_masses(names, denominator: int = 6, max_focal: int = 3, model_class: str = "general"):
    """Every mass function with values in multiples of 1/denominator and at most max_focal focal sets."""
    sets = nonempty_subsets(worlds(names))
    if model_class == "probability":
        sets = [E for E in sets if len(E) == 1]
    for k in range(1, max_focal + 1):
        # compositions of denominator into k positive parts
        splits = [
            c for c in product(range(1, denominator + 1), repeat=k) if sum(c) == denominator
        ]
        for focal in combinations(sets, k):
            if model_class == "necessity" and not all(a <= b or b <= a for a, b in combinations(focal, 2)):
                continue
            for parts in splits:
                yield {E: Fraction(x, denominator) for E, x in zip(focal, parts)}


def grid_minimum(names, theory, query, model_class="general", denominator=6, max_focal=3):
    """Minimum of the query over grid models of the theory, or None if the grid has none."""
    names = tuple(names)
    best = None
    for masses in grid_masses(names, denominator, max_focal, model_class):
        cache: dict = {}

        def atom(mel, masses=masses, cache=cache):
            if mel not in cache:
                cache[mel] = sum((v for E, v in masses.items() if mel_true(mel, names, E)), ZERO)
            return cache[mel]

        if all(luk(f, atom) == 1 for f in theory):
            value = luk(query, atom)
            if best is None or value < best:
                best = value
    return best
