"""Graded formulas: Łukasiewicz combinations of P-atoms and rational truth constants."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .belief import MassFunction, mu_of_mel
from .mel import Box, diamond, mel_valid
from .propcore import (
    BOT,
    TOP,
    And,
    Iff,
    Implies,
    Not,
    Or,
    Var,
    Vocabulary,
    disj,
)


@dataclass(frozen=True)
class PAtom:
    mel: object

    def __str__(self):
        if isinstance(self.mel, Box):
            return f"B({self.mel.arg})"
        return f"P({self.mel})"


def B(phi) -> PAtom:
    return PAtom(Box(phi))


@dataclass(frozen=True)
class TruthConst:
    value: Fraction

    def __post_init__(self):
        value = Fraction(self.value)
        if not 0 <= value <= 1:
            raise ValueError(f"truth constant {value} outside [0, 1]")
        object.__setattr__(self, "value", value)

    def __str__(self):
        return f"{self.value.numerator}/{self.value.denominator}"


@dataclass(frozen=True)
class LNot:
    arg: object

    def __str__(self):
        return "!" + _wrap(self.arg)


@dataclass(frozen=True)
class _LBinary:
    left: object
    right: object
    symbol = "?"
    op = "?"

    def __str__(self):
        return f"{_wrap(self.left)} {self.symbol} {_wrap(self.right)}"


class LImplies(_LBinary):
    symbol, op = "->", "imp"


class StrongAnd(_LBinary):
    symbol, op = "&&", "sand"


class StrongOr(_LBinary):
    symbol, op = "(+)", "sor"


class Minus(_LBinary):
    symbol, op = "(-)", "minus"


class WeakAnd(_LBinary):
    symbol, op = "/\\", "wand"


class WeakOr(_LBinary):
    symbol, op = "\\/", "wor"


class LEquiv(_LBinary):
    symbol, op = "<->", "equiv"


BINARY_CONNECTIVES = {cls.op: cls for cls in (LImplies, StrongAnd, StrongOr, Minus, WeakAnd, WeakOr, LEquiv)}


def _wrap(f) -> str:
    return f"({f})" if isinstance(f, _LBinary) else str(f)


def luk_apply(conn: str, args: Sequence[Fraction]) -> Fraction:
    """Standard MV-algebra truth function of a connective, by name."""
    if conn == "neg":
        (x,) = args
        return 1 - x
    x, y = args
    match conn:
        case "imp":
            return min(Fraction(1), 1 - x + y)
        case "sor":
            return min(Fraction(1), x + y)
        case "sand":
            return max(Fraction(0), x + y - 1)
        case "minus":
            return max(Fraction(0), x - y)
        case "equiv":
            return 1 - abs(x - y)
        case "wand":
            return min(x, y)
        case "wor":
            return max(x, y)
    raise ValueError(f"unknown connective {conn!r}")


def p_eval(m: MassFunction, formula) -> Fraction:
    match formula:
        case PAtom(mel):
            return mu_of_mel(m, mel)
        case TruthConst(value):
            return value
        case LNot(arg):
            return luk_apply("neg", [p_eval(m, arg)])
        case _LBinary(left=l, right=r):
            return luk_apply(formula.op, [p_eval(m, l), p_eval(m, r)])
    raise TypeError(f"not a P-formula: {formula!r}")


def p_atoms(formula) -> list[PAtom]:
    match formula:
        case PAtom():
            return [formula]
        case TruthConst():
            return []
        case LNot(arg):
            return p_atoms(arg)
        case _LBinary(left=l, right=r):
            return p_atoms(l) + p_atoms(r)
    raise TypeError(f"not a P-formula: {formula!r}")


ZERO = TruthConst(Fraction(0))


def to_primitive(formula):
    """Rewrite every connective into the base {->, 0} by its textbook definition.

    The result is usually much larger; it exists so the truth functions used by
    :func:`p_eval` can be checked against the definitions.
    """
    match formula:
        case PAtom() | TruthConst():
            return formula
        case LNot(arg):
            return LImplies(to_primitive(arg), ZERO)
    a, b = to_primitive(formula.left), to_primitive(formula.right)

    def neg(x):
        return LImplies(x, ZERO)

    def sor(x, y):
        return LImplies(neg(x), y)

    def sand(x, y):
        return neg(sor(neg(x), neg(y)))

    match formula:
        case LImplies():
            return LImplies(a, b)
        case StrongOr():
            return sor(a, b)
        case StrongAnd():
            return sand(a, b)
        case Minus():
            return sand(a, neg(b))
        case LEquiv():
            return sand(LImplies(a, b), LImplies(b, a))
        case WeakAnd():
            return sand(a, LImplies(a, b))
        case WeakOr():
            na, nb = neg(a), neg(b)
            return neg(sand(na, LImplies(na, nb)))
    raise TypeError(f"not a P-formula: {formula!r}")


# -- axiom schemes ----------------------------------------------------------


def random_prop(vocab: Vocabulary, rng: random.Random, depth: int = 2):
    if depth == 0 or rng.random() < 0.3:
        roll = rng.random()
        if roll < 0.08:
            return TOP
        if roll < 0.12:
            return BOT
        return Var(rng.choice(vocab.names))
    kind = rng.choice([Not, And, Or, Implies, Iff])
    if kind is Not:
        return Not(random_prop(vocab, rng, depth - 1))
    return kind(random_prop(vocab, rng, depth - 1), random_prop(vocab, rng, depth - 1))


def random_mel(vocab: Vocabulary, rng: random.Random, depth: int = 2):
    if depth == 0 or rng.random() < 0.35:
        return Box(random_prop(vocab, rng))
    kind = rng.choice([Not, And, Or, Implies, Iff])
    if kind is Not:
        return Not(random_mel(vocab, rng, depth - 1))
    return kind(random_mel(vocab, rng, depth - 1), random_mel(vocab, rng, depth - 1))


@dataclass
class AxiomInstance:
    scheme: str
    formula: object


@dataclass
class AxiomReport:
    values: list[tuple[str, str, Fraction]] = field(default_factory=list)

    @property
    def failures(self) -> list[tuple[str, str, Fraction]]:
        return [row for row in self.values if row[2] != 1]

    @property
    def ok(self) -> bool:
        return not self.failures


def mel_theorems(vocab: Vocabulary, rng: random.Random, count: int = 12) -> list:
    """Instances of K, D and Nec plus random MEL formulas that turn out to be valid."""
    pool = []
    for _ in range(count):
        phi, psi = random_prop(vocab, rng), random_prop(vocab, rng)
        pool.append(Implies(Box(Implies(phi, psi)), Implies(Box(phi), Box(psi))))
        pool.append(Implies(Box(phi), diamond(phi)))
        pool.append(Box(Implies(phi, phi)))
    tries = 0
    found = 0
    while found < count and tries < 50 * count:
        tries += 1
        candidate = random_mel(vocab, rng)
        if mel_valid(candidate, vocab):
            pool.append(candidate)
            found += 1
    return pool


def axiom_instances(vocab: Vocabulary, rng: random.Random, count: int = 12) -> list[AxiomInstance]:
    """A sample of instances of every axiom scheme and derived theorem checked by the suite."""
    out = [AxiomInstance("FP0", PAtom(t)) for t in mel_theorems(vocab, rng, count)]
    for _ in range(count):
        Phi, Psi = random_mel(vocab, rng), random_mel(vocab, rng)
        P = PAtom
        out += [
            AxiomInstance("FP1", LImplies(P(Implies(Phi, Psi)), LImplies(P(Phi), P(Psi)))),
            AxiomInstance("FP2", LEquiv(P(Not(Phi)), LNot(P(Phi)))),
            AxiomInstance(
                "FP3", LEquiv(P(Or(Phi, Psi)), LImplies(LImplies(P(Phi), P(And(Phi, Psi))), P(Psi)))
            ),
            AxiomInstance(
                "FP3-additive", LEquiv(P(Or(Phi, Psi)), StrongOr(P(Phi), Minus(P(Psi), P(And(Phi, Psi)))))
            ),
        ]
        phis = [random_prop(vocab, rng) for _ in range(rng.randint(2, 4))]
        out.append(
            AxiomInstance("B-union", LImplies(P(disj([Box(f) for f in phis])), B(disj(phis))))
        )
        phi, psi = random_prop(vocab, rng), random_prop(vocab, rng)
        out += [
            AxiomInstance("B-K", LImplies(B(Implies(phi, psi)), LImplies(B(phi), B(psi)))),
            AxiomInstance("B-D", LImplies(B(Not(phi)), LNot(B(phi)))),
            AxiomInstance("B-Nec", B(Or(phi, Not(phi)))),
        ]
    return out


def axiom_suite(m: MassFunction, rng: random.Random, count: int = 12) -> AxiomReport:
    """Evaluate sampled axiom instances under ``m``; every value should be 1."""
    report = AxiomReport()
    for inst in axiom_instances(m.frame, rng, count):
        report.values.append((inst.scheme, str(inst.formula), p_eval(m, inst.formula)))
    return report

