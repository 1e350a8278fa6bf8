"""Recursive-descent parsers for propositional, MEL and graded formulas.

Precedence, tightest first: negation, conjunctions, disjunctions, then the
right-associative implication/equivalence level.  In graded formulas ``&&``,
``(-)`` and ``/\\`` share the conjunction level and ``(+)``, ``\\/`` the
disjunction level.  Unicode spellings are accepted alongside ASCII.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .mel import Box
from .pformula import (
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
from .propcore import BOT, TOP, And, Iff, Implies, Not, Or, Var, Vocabulary


class ParseError(ValueError):
    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}")


class UnknownVariable(ParseError):
    pass


class ConstantRangeError(ParseError):
    pass


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


# Unicode spellings map onto ASCII kinds.  "∧"/"∨" stay distinct because their
# meaning depends on the layer (Boolean vs weak Łukasiewicz).
_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:\.\d+)?(?:/\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<sym><->|->|\(\+\)|\(-\)|&&|/\\|\\/|\[\]|<>|[()!&|¬∧∨→↔≡⊕⊖⊙⊗□◇◊⊤⊥])
    """,
    re.VERBOSE,
)

_UNICODE = {
    "¬": "!",
    "→": "->",
    "↔": "<->",
    "≡": "<->",
    "⊕": "(+)",
    "⊖": "(-)",
    "⊙": "&&",
    "⊗": "&&",
    "□": "[]",
    "◇": "<>",
    "◊": "<>",
    "⊤": "1",
    "⊥": "0",
}


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if not match:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        kind = match.lastgroup
        value = match.group()
        if kind != "ws":
            if kind == "sym":
                value = _UNICODE.get(value, value)
                kind = value
            tokens.append(Token(kind, value, pos))
        pos = match.end()
    tokens.append(Token("eof", "", len(text)))
    return tokens


def parse_rational(text: str) -> Fraction:
    return Fraction(text)


class _Parser:
    def __init__(self, text: str, vocab: Optional[Vocabulary]):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0
        self.vocab = vocab
        self.seen: list[str] = []

    # -- token plumbing
    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def at(self, *kinds: str) -> bool:
        return self.tok.kind in kinds

    def take(self) -> Token:
        tok = self.tok
        self.i += 1
        return tok

    def expect(self, kind: str) -> Token:
        if self.tok.kind != kind:
            self.fail(f"expected {kind!r}")
        return self.take()

    def fail(self, message: str, cls=ParseError):
        tok = self.tok
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise cls(f"{message}, found {found}", tok.pos, self.text)

    def finish(self, result):
        if not self.at("eof"):
            self.fail("unexpected trailing input")
        return result

    def _binary_chain(self, operand, levels):
        """Generic precedence climbing: ``levels`` is a list of (kinds -> ctor, right_assoc)."""

        def level(k):
            if k == len(levels):
                return operand()
            ops, right_assoc = levels[k]
            left = level(k + 1)
            if right_assoc:
                if self.tok.kind in ops:
                    ctor = ops[self.take().kind]
                    return ctor(left, level(k))
                return left
            while self.tok.kind in ops:
                ctor = ops[self.take().kind]
                left = ctor(left, level(k + 1))
            return left

        return level(0)

    # -- propositional layer
    _PROP_LEVELS = [
        ({"->": Implies, "<->": Iff}, True),
        ({"|": Or, "∨": Or}, False),
        ({"&": And, "∧": And}, False),
    ]

    def prop(self):
        return self._binary_chain(self.prop_unary, self._PROP_LEVELS)

    def prop_unary(self):
        tok = self.tok
        if tok.kind == "!":
            self.take()
            return Not(self.prop_unary())
        if tok.kind == "(":
            self.take()
            inner = self.prop()
            self.expect(")")
            return inner
        if tok.kind == "num":
            if tok.text in ("0", "1"):
                self.take()
                return TOP if tok.text == "1" else BOT
            self.fail("propositional constants are 0 and 1")
        if tok.kind == "ident":
            self.take()
            if self.vocab is not None and tok.text not in self.vocab:
                raise UnknownVariable(f"unknown variable {tok.text!r}", tok.pos, self.text)
            if tok.text not in self.seen:
                self.seen.append(tok.text)
            return Var(tok.text)
        self.fail("expected a propositional formula")

    # -- MEL layer
    def mel(self):
        return self._binary_chain(self.mel_unary, self._PROP_LEVELS)

    def mel_unary(self):
        tok = self.tok
        if tok.kind == "!":
            self.take()
            return Not(self.mel_unary())
        if tok.kind in ("[]", "<>"):
            self.take()
            # "[]p" and "[]!p" box a single literal; anything larger needs parentheses
            inner = self.prop_unary()
            return Box(inner) if tok.kind == "[]" else Not(Box(Not(inner)))
        if tok.kind == "(":
            self.take()
            inner = self.mel()
            self.expect(")")
            return inner
        if tok.kind == "ident" and tok.text in ("P", "B"):
            self.fail("graded atoms cannot be nested inside MEL formulas")
        self.fail("expected a MEL formula ([](...), <>(...), ! or parenthesis)")

    # -- graded layer
    _P_LEVELS = [
        ({"->": LImplies, "<->": LEquiv}, True),
        ({"(+)": StrongOr, "\\/": WeakOr, "∨": WeakOr}, False),
        ({"&&": StrongAnd, "(-)": Minus, "/\\": WeakAnd, "∧": WeakAnd}, False),
    ]

    def pf(self):
        return self._binary_chain(self.pf_unary, self._P_LEVELS)

    def pf_unary(self):
        tok = self.tok
        if tok.kind == "!":
            self.take()
            return LNot(self.pf_unary())
        if tok.kind == "num":
            self.take()
            value = parse_rational(tok.text)
            if not 0 <= value <= 1:
                raise ConstantRangeError(
                    f"truth constant {tok.text} outside [0, 1]", tok.pos, self.text
                )
            return TruthConst(value)
        if tok.kind == "ident" and tok.text in ("P", "B") and self.tokens[self.i + 1].kind == "(":
            self.take()
            self.expect("(")
            inner = self.mel() if tok.text == "P" else Box(self.prop())
            self.expect(")")
            return PAtom(inner)
        if tok.kind == "(":
            self.take()
            inner = self.pf()
            self.expect(")")
            return inner
        self.fail("expected a graded formula (constant, P(...), B(...), ! or parenthesis)")


def parse_prop(text: str, vocab: Optional[Vocabulary] = None):
    """Parse a classical formula; with ``vocab`` given, unknown variables are rejected."""
    p = _Parser(text, vocab)
    return p.finish(p.prop())


def parse_mel(text: str, vocab: Optional[Vocabulary] = None):
    p = _Parser(text, vocab)
    return p.finish(p.mel())


def parse_p(text: str, vocab: Optional[Vocabulary] = None):
    p = _Parser(text, vocab)
    return p.finish(p.pf())


def variables_in(text: str, layer: str = "p") -> list[str]:
    """Variable names in order of first appearance (used to infer a vocabulary)."""
    p = _Parser(text, None)
    p.finish({"prop": p.prop, "mel": p.mel, "p": p.pf}[layer]())
    return p.seen
