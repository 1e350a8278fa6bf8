"""Semantic consequence and truth degrees for graded belief formulas.

A theory and a query are compiled into one exact MILP whose continuous part
is a mass assignment over every non-empty world set.  Truncated Łukasiewicz
operations get one binary each; all big-M constants are 1 because every truth
value lives in [0, 1].
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional

from .belief import MassFunction, ModelClass
from .lpcore import LinearExpr, RationalMILP, SolveResult, solve_milp
from .mel import mel_models
from .pformula import (
    B,
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
    p_eval,
)
from .propcore import (
    DEFAULT_MAX_VARS,
    Implies,
    Vocabulary,
    VocabularyError,
    is_subset,
    nonempty_sets,
)


class InconsistentTheory(ValueError):
    pass


@dataclass(frozen=True)
class Theory:
    vocab: Vocabulary
    formulas: tuple = ()
    model_class: ModelClass = ModelClass.GENERAL

    def __post_init__(self):
        object.__setattr__(self, "formulas", tuple(self.formulas))

    def extend(self, *formulas) -> "Theory":
        return Theory(self.vocab, self.formulas + tuple(formulas), self.model_class)

    def with_class(self, model_class: ModelClass) -> "Theory":
        return Theory(self.vocab, self.formulas, model_class)

    def is_model(self, m: MassFunction) -> bool:
        return m.belongs_to(self.model_class) and all(p_eval(m, f) == 1 for f in self.formulas)


@dataclass
class EntailmentVerdict:
    valid: bool
    truth_degree: Fraction
    countermodel: Optional[MassFunction] = None
    witness: Optional[MassFunction] = None
    inconsistent: bool = False
    nodes: int = 0

    @property
    def label(self) -> str:
        if self.inconsistent:
            return "inconsistent"
        return "valid" if self.valid else "invalid"


@dataclass
class Encoding:
    """The compiled problem plus the bookkeeping needed to read a model back out."""

    milp: RationalMILP
    mass_vars: dict = field(default_factory=dict)  # world-set mask -> variable name
    objective: Optional[LinearExpr] = None


def mass_var(E: int) -> str:
    return f"m{E}"


class _Encoder:
    def __init__(self, vocab: Vocabulary):
        self.vocab = vocab
        self.p = RationalMILP()
        self.cache: dict = {}
        self.counter = 0
        self.mass: dict[int, LinearExpr] = {}

    def fresh(self, prefix: str, lo=0, hi=1, binary=False) -> LinearExpr:
        self.counter += 1
        return self.p.add_var(f"{prefix}{self.counter}", lo, hi, binary)

    def masses(self) -> None:
        total = LinearExpr()
        for E in nonempty_sets(self.vocab.n_worlds):
            # the upper bound 1 follows from non-negativity and the normalization row
            self.mass[E] = self.p.add_var(mass_var(E), 0, None)
            total = total + self.mass[E]
        self.p.add_constraint(total, "==", 1, "normalization")

    def truncate_above(self, s: LinearExpr) -> LinearExpr:
        """t = min(1, s) for s in [0, 2]."""
        t, b = self.fresh("t"), self.fresh("b", binary=True)
        self.p.add_constraint(t, "<=", s)
        self.p.add_constraint(t, ">=", s - b)
        self.p.add_constraint(t, ">=", b)
        return t

    def truncate_below(self, s: LinearExpr) -> LinearExpr:
        """t = max(0, s) for s in [-1, 1]."""
        # s is materialized as its own variable so only its bounds are widened
        sv = self.fresh("s", lo=-1, hi=1)
        self.p.add_constraint(sv, "==", s)
        t, b = self.fresh("t"), self.fresh("b", binary=True)
        self.p.add_constraint(t, ">=", sv)
        self.p.add_constraint(t, "<=", sv + b)
        self.p.add_constraint(t, "<=", 1 - b)
        return t

    def weak(self, x: LinearExpr, y: LinearExpr, use_min: bool) -> LinearExpr:
        t, b = self.fresh("t"), self.fresh("b", binary=True)
        if use_min:
            self.p.add_constraint(t, "<=", x)
            self.p.add_constraint(t, "<=", y)
            self.p.add_constraint(t, ">=", x - b)
            self.p.add_constraint(t, ">=", y - (1 - b))
        else:
            self.p.add_constraint(t, ">=", x)
            self.p.add_constraint(t, ">=", y)
            self.p.add_constraint(t, "<=", x + b)
            self.p.add_constraint(t, "<=", y + (1 - b))
        return t

    def equiv(self, x: LinearExpr, y: LinearExpr) -> LinearExpr:
        """1 - |x - y| through a positive/negative split of x - y."""
        pos, neg = self.fresh("dp"), self.fresh("dn")
        b = self.fresh("b", binary=True)
        self.p.add_constraint(pos - neg, "==", x - y)
        self.p.add_constraint(pos, "<=", b)
        self.p.add_constraint(neg, "<=", 1 - b)
        return 1 - pos - neg

    def atom(self, mel) -> LinearExpr:
        models = mel_models(mel, self.vocab)
        value = LinearExpr()
        for E, m in self.mass.items():
            if models >> E & 1:
                value = value + m
        a = self.fresh("a")
        self.p.add_constraint(a, "==", value)
        return a

    def encode(self, formula) -> LinearExpr:
        if formula in self.cache:
            return self.cache[formula]
        match formula:
            case PAtom(mel):
                out = self.atom(mel)
            case TruthConst(value):
                out = LinearExpr(constant=value)
            case LNot(arg):
                out = 1 - self.encode(arg)
            case LImplies(l, r):
                out = self.truncate_above(1 - self.encode(l) + self.encode(r))
            case StrongOr(l, r):
                out = self.truncate_above(self.encode(l) + self.encode(r))
            case StrongAnd(l, r):
                out = self.truncate_below(self.encode(l) + self.encode(r) - 1)
            case Minus(l, r):
                out = self.truncate_below(self.encode(l) - self.encode(r))
            case WeakAnd(l, r):
                out = self.weak(self.encode(l), self.encode(r), use_min=True)
            case WeakOr(l, r):
                out = self.weak(self.encode(l), self.encode(r), use_min=False)
            case LEquiv(l, r):
                out = self.equiv(self.encode(l), self.encode(r))
            case _:
                raise TypeError(f"not a P-formula: {formula!r}")
        self.cache[formula] = out
        return out

    def restrict(self, model_class: ModelClass) -> None:
        if model_class is ModelClass.PROBABILITY:
            for E, m in self.mass.items():
                if E & (E - 1):
                    self.p.add_constraint(m, "==", 0, f"singleton_{E}")
        elif model_class is ModelClass.NECESSITY:
            y = {E: self.p.add_var(f"y{E}", binary=True) for E in self.mass}
            for E, m in self.mass.items():
                self.p.add_constraint(y[E], ">=", m, f"focal_{E}")
            for E, F in combinations(self.mass, 2):
                if not (is_subset(E, F) or is_subset(F, E)):
                    self.p.add_constraint(y[E] + y[F], "<=", 1, f"chain_{E}_{F}")


def encode(theory: Theory, query=None, max_vars: int = DEFAULT_MAX_VARS) -> Encoding:
    """Build the MILP whose feasible points are the class-conforming models of ``theory``.

    With a query, the objective minimizes the query's truth value.
    """
    if theory.vocab.n > max_vars:
        raise VocabularyError(f"{theory.vocab.n} variables exceed the cap of {max_vars}")
    enc = _Encoder(theory.vocab)
    enc.masses()
    enc.restrict(theory.model_class)
    for i, f in enumerate(theory.formulas):
        enc.p.add_constraint(enc.encode(f), "==", 1, f"assert_{i}")
    objective = None
    if query is not None:
        objective = enc.encode(query)
        enc.p.minimize(objective)
    return Encoding(enc.p, {E: mass_var(E) for E in enc.mass}, objective)


def _mass_from(enc: Encoding, result: SolveResult, vocab: Vocabulary) -> MassFunction:
    return MassFunction(vocab, {E: result.assignment[name] for E, name in enc.mass_vars.items()})


def entails(theory: Theory, query, *, node_budget: int = 10**6, max_binaries: int = 64,
            max_vars: int = DEFAULT_MAX_VARS) -> EntailmentVerdict:
    """Decide whether every class-conforming model of ``theory`` gives ``query`` value 1.

    The returned degree is the exact minimum of the query over all models.  An
    inconsistent theory comes back valid with ``inconsistent`` set.
    """
    enc = encode(theory, query, max_vars)
    result = solve_milp(enc.milp, node_budget=node_budget, max_binaries=max_binaries)
    if not result.optimal:
        return EntailmentVerdict(True, Fraction(1), inconsistent=True, nodes=result.nodes)
    witness = _mass_from(enc, result, theory.vocab)
    degree = result.optimum
    valid = degree == 1
    return EntailmentVerdict(valid, degree, None if valid else witness, witness, nodes=result.nodes)


def truth_degree(theory: Theory, query, **options) -> Fraction:
    verdict = entails(theory, query, **options)
    if verdict.inconsistent:
        raise InconsistentTheory("the theory has no model in the selected class")
    return verdict.truth_degree


def find_model(theory: Theory, **options) -> Optional[MassFunction]:
    """Some class-conforming model of ``theory``, or None."""
    enc = encode(theory, None, options.pop("max_vars", DEFAULT_MAX_VARS))
    result = solve_milp(enc.milp, **options)
    return _mass_from(enc, result, theory.vocab) if result.optimal else None


@dataclass
class GradedMPReport:
    bound: Fraction
    valid: bool
    degree: Fraction
    tight: bool
    countermodel: Optional[MassFunction] = None
    witness: Optional[MassFunction] = None  # a model attaining the degree


def graded_mp_bound(r: Fraction, s: Fraction, model_class: ModelClass) -> Fraction:
    if model_class is ModelClass.NECESSITY:
        return min(r, s)
    return max(r + s - 1, Fraction(0))


def check_graded_mp(r, s, phi, psi, model_class: ModelClass, vocab: Vocabulary,
                    bound: Optional[Fraction] = None, **options) -> GradedMPReport:
    """Check the graded modus ponens conclusion ``bound -> B(psi)``.

    ``bound`` defaults to the rule's own bound for the class: ``max(r+s-1, 0)``
    in general and ``min(r, s)`` for necessity measures.
    """
    r, s = Fraction(r), Fraction(s)
    if bound is None:
        bound = graded_mp_bound(r, s, model_class)
    theory = Theory(
        vocab,
        [LImplies(TruthConst(r), B(phi)), LImplies(TruthConst(s), B(Implies(phi, psi)))],
        model_class,
    )
    verdict = entails(theory, LImplies(TruthConst(bound), B(psi)), **options)
    lowest = entails(theory, B(psi), **options)
    if lowest.inconsistent:
        raise InconsistentTheory("the premises have no model in the selected class")
    degree = lowest.truth_degree
    return GradedMPReport(bound, verdict.valid, degree, degree == bound, verdict.countermodel,
                          lowest.witness)
