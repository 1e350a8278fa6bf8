"""Mass functions, belief and plausibility, and probabilities on MEL formulas.

Every number here is a :class:`fractions.Fraction`; nothing is ever rounded.
"""

from __future__ import annotations

import enum
import random
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from typing import Callable, Iterable, Iterator, Mapping

from .mel import characteristic_formula, mel_models
from .propcore import Frame, Not, Vocabulary, is_subset, mod_set, nonempty_sets, popcount


class NotABeliefFunction(ValueError):
    pass


class NotAProbability(ValueError):
    pass


class ModelClass(enum.Enum):
    GENERAL = "general"
    PROBABILITY = "probability"
    NECESSITY = "necessity"

    @classmethod
    def parse(cls, text: str) -> "ModelClass":
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise ValueError(
                f"unknown model class {text!r} (expected general, probability or necessity)"
            ) from None


def as_fraction(value) -> Fraction:
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass a Fraction, int or a string like '3/10'")
    return Fraction(value)


class MassFunction:
    """A normalized basic probability assignment on the non-empty subsets of a frame.

    ``masses`` maps world-set bitmasks to their mass; zero entries are dropped,
    so the keys are exactly the focal sets.
    """

    __slots__ = ("frame", "_masses")

    def __init__(self, frame: Frame, masses: Mapping[int, object]):
        self.frame = frame
        clean: dict[int, Fraction] = {}
        for E, value in masses.items():
            value = as_fraction(value)
            if not 0 < E <= frame.full:
                if E == 0 and value == 0:
                    continue
                raise ValueError(f"mass on invalid world set {E} (frame has {frame.n_worlds} worlds)")
            if not 0 <= value <= 1:
                raise ValueError(f"mass {value} of {frame.set_label(E)} outside [0, 1]")
            if value:
                clean[E] = clean.get(E, Fraction(0)) + value
        total = sum(clean.values(), Fraction(0))
        if total != 1:
            raise ValueError(f"masses sum to {total}, not 1")
        self._masses = dict(sorted(clean.items()))

    @classmethod
    def vacuous(cls, frame: Frame) -> "MassFunction":
        return cls(frame, {frame.full: 1})

    @property
    def focal_sets(self) -> list[int]:
        return list(self._masses)

    def items(self) -> Iterable[tuple[int, Fraction]]:
        return self._masses.items()

    def __getitem__(self, E: int) -> Fraction:
        return self._masses.get(E, Fraction(0))

    def __iter__(self) -> Iterator[int]:
        return iter(self._masses)

    def __len__(self) -> int:
        return len(self._masses)

    def __eq__(self, other):
        if not isinstance(other, MassFunction):
            return NotImplemented
        return self.frame.n_worlds == other.frame.n_worlds and self._masses == other._masses

    __hash__ = None

    def __repr__(self):
        body = ", ".join(f"{self.frame.set_label(E)}: {v}" for E, v in self._masses.items())
        return f"MassFunction({body})"

    def is_probability(self) -> bool:
        return all(popcount(E) == 1 for E in self._masses)

    def is_consonant(self) -> bool:
        focal = self.focal_sets
        return all(
            is_subset(a, b) or is_subset(b, a) for i, a in enumerate(focal) for b in focal[i + 1 :]
        )

    def belongs_to(self, model_class: ModelClass) -> bool:
        if model_class is ModelClass.PROBABILITY:
            return self.is_probability()
        if model_class is ModelClass.NECESSITY:
            return self.is_consonant()
        return True


def set_belief(m: MassFunction, A: int) -> Fraction:
    """Bel(A) = total mass of the focal sets inside ``A``."""
    return sum((v for E, v in m.items() if is_subset(E, A)), Fraction(0))


def set_plausibility(m: MassFunction, A: int) -> Fraction:
    return sum((v for E, v in m.items() if E & A), Fraction(0))


def _vocab(m: MassFunction) -> Vocabulary:
    if not isinstance(m.frame, Vocabulary):
        raise TypeError("formula queries need a mass function over a propositional vocabulary")
    return m.frame


def bel(m: MassFunction, phi) -> Fraction:
    return set_belief(m, mod_set(phi, _vocab(m)))


def pl(m: MassFunction, phi) -> Fraction:
    """Plausibility, computed as ``1 - bel(!phi)``."""
    return 1 - bel(m, Not(phi))


class BeliefTable:
    """Bel tabulated on every subset of the frame, indexed by bitmask."""

    def __init__(self, frame: Frame, values: list):
        if len(values) != 1 << frame.n_worlds:
            raise ValueError(f"expected {1 << frame.n_worlds} values, got {len(values)}")
        self.frame = frame
        self.values = [as_fraction(v) for v in values]

    def __getitem__(self, A: int) -> Fraction:
        return self.values[A]

    def __eq__(self, other):
        if not isinstance(other, BeliefTable):
            return NotImplemented
        return self.values == other.values

    __hash__ = None

    def __repr__(self):
        return f"BeliefTable({self.values})"

    def is_monotone(self) -> bool:
        n = len(self.values)
        return all(
            self.values[A] <= self.values[A | (1 << w)]
            for A in range(n)
            for w in range(self.frame.n_worlds)
        )

    def monotonicity_violations(self, order: int) -> list[tuple[int, ...]]:
        """Tuples of sets where the inclusion-exclusion inequality of the given order fails."""
        bad = []
        sets = range(len(self.values))
        for family in combinations_with_replacement(sets, order):
            union = 0
            for A in family:
                union |= A
            rhs = Fraction(0)
            for k in range(1, order + 1):
                for sub in combinations(family, k):
                    inter = self.frame.full
                    for A in sub:
                        inter &= A
                    rhs += (-1) ** (k + 1) * self.values[inter]
            if self.values[union] < rhs:
                bad.append(family)
        return bad


def belief_table(m: MassFunction) -> BeliefTable:
    n = m.frame.n_worlds
    values = [Fraction(0)] * (1 << n)
    for E, v in m.items():
        values[E] = v
    # zeta transform over subsets
    for w in range(n):
        bit = 1 << w
        for A in range(1 << n):
            if A & bit:
                values[A] += values[A ^ bit]
    return BeliefTable(m.frame, values)


def mobius(table: BeliefTable) -> MassFunction:
    """Recover the unique mass function with ``Bel(A) = sum of m(E) for E inside A``.

    Raises :class:`NotABeliefFunction` when the inversion yields a negative mass,
    mass on the empty set, or a total other than 1.
    """
    n = table.frame.n_worlds
    values = list(table.values)
    for w in range(n):
        bit = 1 << w
        for A in range(1 << n):
            if A & bit:
                values[A] -= values[A ^ bit]
    if values[0] != 0:
        raise NotABeliefFunction(f"Bel(empty set) = {values[0]}, expected 0")
    negative = {A: v for A, v in enumerate(values) if v < 0}
    if negative:
        shown = ", ".join(f"{table.frame.set_label(A)}: {v}" for A, v in negative.items())
        raise NotABeliefFunction(f"negative recovered masses: {shown}")
    if table.values[-1] != 1:
        raise NotABeliefFunction(f"Bel(frame) = {table.values[-1]}, expected 1")
    return MassFunction(table.frame, {A: v for A, v in enumerate(values) if v})


def mu_of_mel(m: MassFunction, formula) -> Fraction:
    """Probability of a MEL formula: mass of the focal sets that are models of it."""
    models = mel_models(formula, _vocab(m))
    return sum((v for E, v in m.items() if models >> E & 1), Fraction(0))


def mass_from_mu(mu: Callable[[object], object], vocab: Vocabulary) -> MassFunction:
    """Rebuild a mass function from a probability on MEL formulas via characteristic formulas."""
    masses = {}
    for E in nonempty_sets(vocab.n_worlds):
        value = as_fraction(mu(characteristic_formula(E, vocab)))
        if value < 0:
            raise NotAProbability(f"value {value} of the characteristic formula of {vocab.set_label(E)} is negative")
        masses[E] = value
    total = sum(masses.values(), Fraction(0))
    if total != 1:
        raise NotAProbability(f"characteristic-formula values sum to {total}, not 1")
    return MassFunction(vocab, masses)


def random_mass(
    frame: Frame,
    rng: random.Random,
    max_focal: int = 8,
    max_den: int = 60,
    model_class: ModelClass = ModelClass.GENERAL,
) -> MassFunction:
    """A random mass function whose masses share a denominator of at most ``max_den``."""
    den = rng.randint(1, max_den)
    k = rng.randint(1, min(max_focal, den))
    if model_class is ModelClass.PROBABILITY:
        pool = [1 << w for w in range(frame.n_worlds)]
        focal = rng.sample(pool, min(k, len(pool)))
    elif model_class is ModelClass.NECESSITY:
        # a random maximal chain, then a random sub-chain of it
        order = rng.sample(range(frame.n_worlds), frame.n_worlds)
        chain, acc = [], 0
        for w in order:
            acc |= 1 << w
            chain.append(acc)
        focal = rng.sample(chain, min(k, len(chain)))
    else:
        focal = rng.sample(range(1, frame.full + 1), min(k, frame.full))
    cuts = sorted(rng.sample(range(1, den), len(focal) - 1)) if len(focal) > 1 else []
    parts = [b - a for a, b in zip([0] + cuts, cuts + [den])]
    return MassFunction(frame, {E: Fraction(p, den) for E, p in zip(focal, parts)})
