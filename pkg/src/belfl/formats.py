"""Text and JSON formats for masses, comparative relations and theory files."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .belief import MassFunction, ModelClass
from .comparative import ComparativeRelation
from .propcore import DEFAULT_MAX_VARS, Frame, Vocabulary, VocabularyError
from .syntax import ParseError, parse_p, parse_prop


class FormatError(ValueError):
    """Malformed input file, located by 1-based line and column when known."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line, self.column = line, column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


def fmt_rational(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(value) -> Fraction:
    """Exact rational from "n/d", a decimal string, an int or a Fraction; floats are refused."""
    if isinstance(value, bool) or isinstance(value, float):
        raise FormatError(f"expected an exact rational, got {value!r}")
    try:
        return Fraction(value)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise FormatError(f"bad rational {value!r}") from exc


def _position(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    column = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, column


def _strip_comments(text: str) -> str:
    # blanked rather than removed so offsets still point into the original text
    return re.sub(r"#[^\n]*", lambda m: " " * len(m.group()), text)


# -- masses -----------------------------------------------------------------

_VARS_RE = re.compile(r"^\s*vars\s+([^;]*);?\s*$")
_MASS_RE = re.compile(r'^\s*mass\s*\{\s*w\s*:\s*"([^"]*)"\s*,\s*value\s*:\s*"([^"]*)"\s*\}\s*;?\s*$')


def _world_from_text(text: str, vocab: Vocabulary) -> int:
    assignment = {}
    for part in text.split(","):
        name, eq, value = part.partition("=")
        name, value = name.strip(), value.strip()
        if not eq or value not in ("0", "1"):
            raise FormatError(f"bad world {text!r}, expected name=0|1 pairs")
        assignment[name] = int(value)
    return vocab.world(assignment)


def parse_mass_text(text: str, max_vars: int = DEFAULT_MAX_VARS) -> MassFunction:
    """Read the line format::

        vars p q;
        mass {w: "p=1,q=0; p=1,q=1", value: "3/10"}

    Worlds of one focal set are separated by ``;``.  Repeated focal sets add up.
    """
    vocab = None
    masses: dict[int, Fraction] = {}
    for lineno, line in enumerate(_strip_comments(text).splitlines(), 1):
        if not line.strip():
            continue
        if m := _VARS_RE.match(line):
            try:
                vocab = Vocabulary(m.group(1).replace(",", " ").split(), max_vars)
            except VocabularyError as exc:
                raise FormatError(str(exc), lineno, 1) from exc
            continue
        m = _MASS_RE.match(line)
        if not m:
            raise FormatError("expected 'vars ...;' or 'mass {w: \"...\", value: \"...\"}'", lineno, 1)
        if vocab is None:
            raise FormatError("'vars' must come before the first mass line", lineno, 1)
        try:
            E = 0
            for world in m.group(1).split(";"):
                if world.strip():
                    E |= 1 << _world_from_text(world, vocab)
            value = parse_rational(m.group(2))
        except (FormatError, VocabularyError) as exc:
            raise FormatError(str(exc), lineno, m.start(1) + 1) from exc
        if E == 0:
            raise FormatError("focal sets must be non-empty", lineno, m.start(1) + 1)
        masses[E] = masses.get(E, Fraction(0)) + value
    if vocab is None:
        raise FormatError("no 'vars' declaration")
    try:
        return MassFunction(vocab, masses)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def mass_to_text(m: MassFunction) -> str:
    lines = [f"vars {' '.join(m.frame.names)};"]
    for E, value in m.items():
        worlds = "; ".join(m.frame.world_label(w) for w in m.frame.worlds_of(E))
        lines.append(f'mass {{w: "{worlds}", value: "{fmt_rational(value)}"}}')
    return "\n".join(lines) + "\n"


def mass_to_records(m: MassFunction) -> list[dict]:
    vocab = m.frame
    return [
        {"worlds": [vocab.assignment(w) for w in vocab.worlds_of(E)], "mass": fmt_rational(value)}
        for E, value in m.items()
    ]


def mass_to_json(m: MassFunction) -> dict:
    return {"vars": list(m.frame.names), "masses": mass_to_records(m)}


def mass_from_json(data: dict, max_vars: int = DEFAULT_MAX_VARS) -> MassFunction:
    """Inverse of :func:`mass_to_json`; a ``countermodel`` key is accepted in place of ``masses``."""
    try:
        vocab = Vocabulary(data["vars"], max_vars)
        records = data["masses"] if "masses" in data else data["countermodel"]
        masses: dict[int, Fraction] = {}
        for rec in records:
            E = 0
            for world in rec["worlds"]:
                E |= 1 << vocab.world(world)
            if E == 0:
                raise FormatError("focal sets must be non-empty")
            masses[E] = masses.get(E, Fraction(0)) + parse_rational(rec["mass"])
        return MassFunction(vocab, masses)
    except KeyError as exc:
        raise FormatError(f"missing key {exc.args[0]!r} in mass JSON") from exc
    except FormatError:
        raise
    except (ValueError, TypeError) as exc:
        raise FormatError(str(exc)) from exc


def load_mass(path: str, max_vars: int = DEFAULT_MAX_VARS) -> MassFunction:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        try:
            data = json.loads(text, parse_float=Fraction)
        except json.JSONDecodeError as exc:
            raise FormatError(exc.msg, exc.lineno, exc.colno) from exc
        return mass_from_json(data, max_vars)
    return parse_mass_text(text, max_vars)


# -- comparative relations --------------------------------------------------

_RANK_RE = re.compile(r"^rank\s+(\d+)\s*:(.*)$", re.S)
_SET_RE = re.compile(r"\{([^{}]*)\}")


def parse_relation(text: str) -> ComparativeRelation:
    """Read ``rank 1: {p,q}; rank 2: {p} {q}; rank 3: {}``.

    Lower rank numbers are more believed.  The points of the frame are taken
    from an optional ``elements a b;`` statement, otherwise from the sets in
    order of first appearance.
    """
    clean = _strip_comments(text)
    elements: Optional[list[str]] = None
    ranked: list[tuple[int, list[frozenset]]] = []
    offset = 0
    for stmt in clean.split(";"):
        start = offset + len(stmt) - len(stmt.lstrip())
        offset += len(stmt) + 1
        body = stmt.strip()
        if not body:
            continue
        if body.startswith("elements"):
            elements = body[len("elements"):].replace(",", " ").split()
            continue
        m = _RANK_RE.match(body)
        if not m:
            raise FormatError("expected 'rank N: {...} ...'", *_position(text, start))
        rest = m.group(2)
        if _SET_RE.sub("", rest).strip():
            raise FormatError("only {...} sets may follow a rank label", *_position(text, start))
        sets = [
            frozenset(x.strip() for x in s.split(",") if x.strip()) for s in _SET_RE.findall(rest)
        ]
        ranked.append((int(m.group(1)), sets))
    if elements is None:
        elements = []
        for _, sets in ranked:
            for s in sets:
                elements += sorted(x for x in s if x not in elements)
    try:
        frame = Frame(elements)
    except VocabularyError as exc:
        raise FormatError(str(exc)) from exc
    index = {x: i for i, x in enumerate(elements)}
    groups: dict[int, list[int]] = {}
    for k, sets in ranked:
        for s in sets:
            unknown = sorted(s - index.keys())
            if unknown:
                raise FormatError(f"unknown elements {unknown}")
            groups.setdefault(k, []).append(sum(1 << index[x] for x in s))
    try:
        return ComparativeRelation.from_ranks(frame, [groups[k] for k in sorted(groups)])
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def relation_to_text(rel: ComparativeRelation) -> str:
    frame = rel.frame
    parts = []
    for k, group in enumerate(rel.ranks(), 1):
        sets = " ".join(
            "{" + ",".join(frame.world_label(w) for w in frame.worlds_of(A)) + "}" for A in group
        )
        parts.append(f"rank {k}: {sets}")
    return "; ".join(parts)


# -- theory files -----------------------------------------------------------


@dataclass
class Query:
    kind: str  # "degree", "entails" or "compare"
    text: str
    formula: object = None
    left: object = None
    right: object = None
    factor: int = 1
    expect: Optional[str] = None
    line: int = 0


@dataclass
class Session:
    vocab: Optional[Vocabulary] = None
    model_class: ModelClass = ModelClass.GENERAL
    assertions: list = field(default_factory=list)
    queries: list[Query] = field(default_factory=list)


_EXPECT_RE = re.compile(r"\s+expect\s+(\S+)\s*$")
_FACTOR_RE = re.compile(r"\s+factor\s+(\d+)\s*$")


def parse_theory(text: str, max_vars: int = DEFAULT_MAX_VARS) -> Session:
    """Parse a theory file into a :class:`Session`.

    Statements end with ``;`` and ``#`` starts a comment::

        vars p q;
        class general;
        assert 0.8 -> B(p);
        query degree B(q) expect 1/2;
        query entails 0.5 -> B(q) expect valid;
        query compare p >= p & q expect valid;
    """
    session = Session()
    clean = _strip_comments(text)
    offset = 0
    for stmt in clean.split(";"):
        lead = len(stmt) - len(stmt.lstrip())
        start = offset + lead
        offset += len(stmt) + 1
        body = stmt.strip()
        if not body:
            continue
        keyword, rest, rest_start = _split_head(body, start)
        line, column = _position(text, start)

        def located(exc: ParseError, base: int = rest_start):
            return FormatError(str(exc).rsplit(" at position", 1)[0], *_position(text, base + exc.pos))

        if keyword == "vars":
            if session.vocab is not None:
                raise FormatError("vocabulary declared twice", line, column)
            try:
                session.vocab = Vocabulary(rest.replace(",", " ").split(), max_vars)
            except VocabularyError as exc:
                raise FormatError(str(exc), line, column) from exc
        elif keyword == "class":
            try:
                session.model_class = ModelClass.parse(rest)
            except ValueError as exc:
                raise FormatError(str(exc), line, column) from exc
        elif keyword in ("assert", "query"):
            if session.vocab is None:
                raise FormatError("'vars' must be declared before any formula", line, column)
            if keyword == "assert":
                try:
                    session.assertions.append(parse_p(rest, session.vocab))
                except ParseError as exc:
                    raise located(exc) from exc
            else:
                session.queries.append(_parse_query(rest, rest_start, text, session.vocab, line, located))
        else:
            raise FormatError(f"unknown statement {keyword!r}", line, column)
    if session.vocab is None:
        raise FormatError("no 'vars' declaration")
    return session


def _split_head(body: str, start: int) -> tuple[str, str, int]:
    """First word, the remainder, and the remainder's offset in the file."""
    m = re.match(r"(\S+)\s*", body)
    return m.group(1), body[m.end():].rstrip(), start + m.end()


def _parse_query(rest: str, rest_start: int, text: str, vocab: Vocabulary, line: int, located) -> Query:
    kind, body, body_start = _split_head(rest, rest_start)
    expect = None
    if m := _EXPECT_RE.search(body):
        expect = m.group(1)
        body = body[: m.start()]
        if kind == "degree":
            try:
                expect = fmt_rational(parse_rational(expect))
            except FormatError as exc:
                raise FormatError(str(exc), *_position(text, body_start + m.start(1))) from exc
        elif expect not in ("valid", "invalid", "inconsistent"):
            raise FormatError(f"bad expectation {expect!r}", *_position(text, body_start + m.start(1)))
    if kind in ("degree", "entails"):
        try:
            return Query(kind, body, formula=parse_p(body, vocab), expect=expect, line=line)
        except ParseError as exc:
            raise located(exc, body_start) from exc
    if kind == "compare":
        factor = 1
        if m := _FACTOR_RE.search(body):
            factor = int(m.group(1))
            body = body[: m.start()]
        lhs, sep, rhs = body.partition(">=")
        if not sep:
            raise FormatError("compare needs 'phi >= psi'", *_position(text, body_start))
        try:
            left = parse_prop(lhs, vocab)
        except ParseError as exc:
            raise located(exc, body_start) from exc
        try:
            right = parse_prop(rhs, vocab)
        except ParseError as exc:
            raise located(exc, body_start + len(lhs) + 2) from exc
        if factor < 1:
            raise FormatError("factor must be at least 1", *_position(text, body_start))
        shown = body.strip() + (f" factor {factor}" if factor > 1 else "")
        return Query(kind, shown, left=left, right=right, factor=factor, expect=expect, line=line)
    raise FormatError(f"unknown query kind {kind!r}", *_position(text, rest_start))
