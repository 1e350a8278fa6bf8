"""Classical propositional layer: vocabularies, formulas and model sets.

Worlds are integers in ``range(2**n)`` with variable ``i`` stored at bit ``i``.
Sets of worlds are plain ``int`` bitmasks of width ``2**n``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Iterator, Sequence, Union

DEFAULT_MAX_VARS = 4


class VocabularyError(ValueError):
    pass


class Frame:
    """A finite set of labelled points (the worlds a mass function lives on)."""

    def __init__(self, labels: Sequence[str]):
        if not labels:
            raise VocabularyError("a frame needs at least one point")
        if len(set(labels)) != len(labels):
            raise VocabularyError(f"duplicate labels in {list(labels)}")
        self._labels = tuple(labels)

    @property
    def n_worlds(self) -> int:
        return len(self._labels)

    @property
    def full(self) -> int:
        return (1 << self.n_worlds) - 1

    def world_label(self, w: int) -> str:
        return self._labels[w]

    def worlds_of(self, mask: int) -> list[int]:
        return [w for w in range(self.n_worlds) if mask >> w & 1]

    def set_label(self, mask: int) -> str:
        return "{" + ", ".join(self.world_label(w) for w in self.worlds_of(mask)) + "}"

    def __eq__(self, other):
        return type(self) is type(other) and self._labels == other._labels

    def __hash__(self):
        return hash((type(self).__name__, self._labels))

    def __repr__(self):
        return f"{type(self).__name__}({list(self._labels)!r})"


class Vocabulary(Frame):
    """Ordered propositional variables; its worlds are the 2**n truth assignments."""

    def __init__(self, names: Sequence[str], max_vars: int = DEFAULT_MAX_VARS):
        names = tuple(names)
        if not 1 <= len(names) <= max_vars:
            raise VocabularyError(
                f"vocabulary must have between 1 and {max_vars} variables, got {len(names)}"
            )
        if len(set(names)) != len(names):
            raise VocabularyError(f"duplicate variable names in {list(names)}")
        self.names = names
        self._index = {name: i for i, name in enumerate(names)}
        super().__init__([self._assignment_label(w) for w in range(1 << len(names))])

    def _assignment_label(self, w: int) -> str:
        return ",".join(f"{name}={w >> i & 1}" for i, name in enumerate(self.names))

    @property
    def n(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self._index[name]

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def assignment(self, w: int) -> dict[str, int]:
        return {name: w >> i & 1 for i, name in enumerate(self.names)}

    def world(self, assignment: dict[str, int | bool]) -> int:
        """Inverse of :meth:`assignment`; every variable must be given."""
        missing = [name for name in self.names if name not in assignment]
        unknown = [name for name in assignment if name not in self._index]
        if missing or unknown:
            raise VocabularyError(f"bad assignment {assignment!r} for {list(self.names)}")
        return sum(1 << i for i, name in enumerate(self.names) if assignment[name])

    def variable_mask(self, name: str) -> int:
        """Worlds in which ``name`` is true."""
        bit = self._index[name]
        return sum(1 << w for w in range(self.n_worlds) if w >> bit & 1)

    def __repr__(self):
        return f"Vocabulary({list(self.names)!r})"


# -- formulas ---------------------------------------------------------------
# The connective classes are shared with the MEL layer, whose atoms are Box nodes.


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Const:
    value: bool

    def __str__(self):
        return "1" if self.value else "0"


TOP = Const(True)
BOT = Const(False)


@dataclass(frozen=True)
class Not:
    arg: "Formula"

    def __str__(self):
        special = getattr(self.arg, "negated_str", None)
        text = special() if special else None
        return text or "!" + _wrap(self.arg)


@dataclass(frozen=True)
class _Binary:
    left: "Formula"
    right: "Formula"
    symbol = "?"

    def __str__(self):
        return f"{_wrap(self.left)} {self.symbol} {_wrap(self.right)}"


class And(_Binary):
    symbol = "&"


class Or(_Binary):
    symbol = "|"


class Implies(_Binary):
    symbol = "->"


class Iff(_Binary):
    symbol = "<->"


Formula = Union[Var, Const, Not, And, Or, Implies, Iff]
PropFormula = Formula


def _wrap(f) -> str:
    return f"({f})" if isinstance(f, _Binary) else str(f)


def conj(items: Sequence) -> object:
    """Left-nested conjunction; the empty conjunction is ``1``."""
    return reduce(And, items) if items else TOP


def disj(items: Sequence) -> object:
    """Left-nested disjunction; the empty disjunction is ``0``."""
    return reduce(Or, items) if items else BOT


def variables(f) -> set[str]:
    match f:
        case Var(name):
            return {name}
        case Const():
            return set()
        case Not(arg):
            return variables(arg)
        case _Binary(left=l, right=r):
            return variables(l) | variables(r)
    raise TypeError(f"not a propositional formula: {f!r}")


def evaluate(f, vocab: Vocabulary, w: int) -> bool:
    """Truth value of ``f`` in world ``w`` (reference semantics, one world at a time)."""
    match f:
        case Var(name):
            return bool(w >> vocab.index(name) & 1)
        case Const(value):
            return value
        case Not(arg):
            return not evaluate(arg, vocab, w)
        case And(l, r):
            return evaluate(l, vocab, w) and evaluate(r, vocab, w)
        case Or(l, r):
            return evaluate(l, vocab, w) or evaluate(r, vocab, w)
        case Implies(l, r):
            return not evaluate(l, vocab, w) or evaluate(r, vocab, w)
        case Iff(l, r):
            return evaluate(l, vocab, w) == evaluate(r, vocab, w)
    raise TypeError(f"not a propositional formula: {f!r}")


def mod_set(f, vocab: Vocabulary) -> int:
    """Bitmask of the worlds satisfying ``f``, evaluated on all worlds at once."""
    full = vocab.full
    match f:
        case Var(name):
            if name not in vocab:
                raise VocabularyError(f"unknown variable {name!r}")
            return vocab.variable_mask(name)
        case Const(value):
            return full if value else 0
        case Not(arg):
            return full ^ mod_set(arg, vocab)
        case And(l, r):
            return mod_set(l, vocab) & mod_set(r, vocab)
        case Or(l, r):
            return mod_set(l, vocab) | mod_set(r, vocab)
        case Implies(l, r):
            return (full ^ mod_set(l, vocab)) | mod_set(r, vocab)
        case Iff(l, r):
            return full ^ (mod_set(l, vocab) ^ mod_set(r, vocab))
    raise TypeError(f"not a propositional formula: {f!r}")


def minterm(w: int, vocab: Vocabulary):
    """The maximal elementary conjunction whose only model is ``w``."""
    if not 0 <= w < vocab.n_worlds:
        raise ValueError(f"world {w} out of range for {vocab!r}")
    literals = [Var(name) if w >> i & 1 else Not(Var(name)) for i, name in enumerate(vocab.names)]
    return conj(literals)


def formula_of_set(worlds: int, vocab: Vocabulary):
    """Disjunction of the minterms of ``worlds``; ``0`` for the empty set."""
    return disj([minterm(w, vocab) for w in vocab.worlds_of(worlds)])


# -- bitset helpers ---------------------------------------------------------


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask`` (including 0 and ``mask``), in decreasing order."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def nonempty_sets(n_worlds: int) -> range:
    return range(1, 1 << n_worlds)
