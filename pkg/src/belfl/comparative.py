"""Comparative belief: relations on events, the BW postulates and representability."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, Optional, Sequence

from .belief import MassFunction, belief_table
from .entail import EntailmentVerdict, Theory, entails
from .lpcore import LinearExpr, RationalMILP, solve_lp
from .pformula import B, LImplies, StrongOr
from .propcore import Frame, is_subset, nonempty_sets


class NotATotalPreorder(ValueError):
    pass


class ComparativeRelation:
    """A relation ``A >= B`` on all subsets of a frame, stored as a boolean matrix."""

    def __init__(self, frame: Frame, ge: Sequence[Sequence[bool]]):
        size = 1 << frame.n_worlds
        if len(ge) != size or any(len(row) != size for row in ge):
            raise ValueError(f"relation matrix must be {size}x{size}")
        self.frame = frame
        self.ge = tuple(tuple(bool(x) for x in row) for row in ge)

    @property
    def size(self) -> int:
        return len(self.ge)

    @classmethod
    def from_ranks(cls, frame: Frame, ranks: Sequence[Sequence[int]]) -> "ComparativeRelation":
        """Build a total preorder from ranked groups, most believed first."""
        level = {}
        for k, group in enumerate(ranks):
            for A in group:
                if A in level:
                    raise ValueError(f"{frame.set_label(A)} appears in more than one rank")
                level[A] = k
        missing = [A for A in range(1 << frame.n_worlds) if A not in level]
        if missing:
            raise ValueError(f"unranked sets: {', '.join(frame.set_label(A) for A in missing)}")
        n = 1 << frame.n_worlds
        return cls(frame, [[level[A] <= level[B_] for B_ in range(n)] for A in range(n)])

    @classmethod
    def from_scores(cls, frame: Frame, score: Sequence) -> "ComparativeRelation":
        n = len(score)
        return cls(frame, [[score[A] >= score[B_] for B_ in range(n)] for A in range(n)])

    def with_pair(self, A: int, B_: int, value: bool) -> "ComparativeRelation":
        ge = [list(row) for row in self.ge]
        ge[A][B_] = value
        return ComparativeRelation(self.frame, ge)

    def strictly(self, A: int, B_: int) -> bool:
        return self.ge[A][B_] and not self.ge[B_][A]

    def equivalent(self, A: int, B_: int) -> bool:
        return self.ge[A][B_] and self.ge[B_][A]

    def is_total_preorder(self) -> bool:
        return not check_bw(self).violations["BW1"]

    def ranks(self) -> list[list[int]]:
        """Equivalence classes, most believed first (only meaningful for total preorders)."""
        if not self.is_total_preorder():
            raise NotATotalPreorder("ranks are defined for total preorders only")
        above = {A: sum(self.strictly(C, A) for C in range(self.size)) for A in range(self.size)}
        groups: dict[int, list[int]] = {}
        for A, k in above.items():
            groups.setdefault(k, []).append(A)
        return [groups[k] for k in sorted(groups)]

    def __eq__(self, other):
        if not isinstance(other, ComparativeRelation):
            return NotImplemented
        return self.ge == other.ge

    def __hash__(self):
        return hash(self.ge)

    def __repr__(self):
        try:
            shown = " > ".join(" ~ ".join(self.frame.set_label(A) for A in g) for g in self.ranks())
        except NotATotalPreorder:
            shown = "not a total preorder"
        return f"ComparativeRelation({shown})"


def induced_relation(m: MassFunction) -> ComparativeRelation:
    return ComparativeRelation.from_scores(m.frame, belief_table(m).values)


@dataclass
class BWReport:
    violations: dict = field(
        default_factory=lambda: {"BW1": [], "BW2": [], "BW3": [], "BW4": []}
    )

    @property
    def ok(self) -> bool:
        return not any(self.violations.values())

    def failed(self) -> list[str]:
        return [k for k, v in self.violations.items() if v]


def check_bw(rel: ComparativeRelation) -> BWReport:
    """Check BW1 (total preorder), BW2 (monotonicity), BW3 and BW4, listing every violation.

    Violations are tagged tuples, e.g. ``("transitivity", A, B, C)``.
    """
    report = BWReport()
    ge, n, full = rel.ge, rel.size, rel.frame.full
    v = report.violations
    for A in range(n):
        if not ge[A][A]:
            v["BW1"].append(("reflexivity", A))
        for B_ in range(n):
            if A < B_ and not (ge[A][B_] or ge[B_][A]):
                v["BW1"].append(("totality", A, B_))
            if ge[A][B_]:
                for C in range(n):
                    if ge[B_][C] and not ge[A][C]:
                        v["BW1"].append(("transitivity", A, B_, C))
            if is_subset(B_, A) and not ge[A][B_]:
                v["BW2"].append(("monotonicity", A, B_))
    for A in range(n):
        for B_ in _submasks(A):
            for C in _submasks(full & ~A):
                if ge[B_ | C][A | C] and not ge[B_][A]:
                    v["BW3"].append(("equivalence-preservation", A, B_, C))
    if ge[0][full]:
        v["BW4"].append(("empty-not-above-frame",))
    return report


def _submasks(mask: int) -> Iterator[int]:
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def representable(rel: ComparativeRelation) -> Optional[MassFunction]:
    """A mass function whose belief ranks events exactly as ``rel`` does, if one exists.

    Solves max eps subject to Bel(A) = Bel(B) for equivalent pairs and
    Bel(A) >= Bel(B) + eps for strict pairs; representable iff eps > 0.
    """
    if not rel.is_total_preorder():
        raise NotATotalPreorder("representability is only decided for total preorders")
    frame = rel.frame
    p = RationalMILP()
    mass = {E: p.add_var(f"m{E}", 0, None) for E in nonempty_sets(frame.n_worlds)}
    p.add_constraint(sum(mass.values(), LinearExpr()), "==", 1)
    eps = p.add_var("eps", 0, 1)

    def bel(A: int) -> LinearExpr:
        return sum((m for E, m in mass.items() if is_subset(E, A)), LinearExpr())

    for A in range(rel.size):
        for B_ in range(rel.size):
            if A < B_ and rel.equivalent(A, B_):
                p.add_constraint(bel(A), "==", bel(B_))
            elif rel.strictly(A, B_):
                p.add_constraint(bel(A) - bel(B_) - eps, ">=", 0)
    p.maximize(eps)
    result = solve_lp(p)
    if not result.optimal or result.optimum <= 0:
        return None
    return MassFunction(frame, {E: result.assignment[f"m{E}"] for E in mass})


def total_preorders(frame: Frame) -> Iterator[ComparativeRelation]:
    """Every total preorder on the power set, each exactly once (ordered set partitions)."""
    n = 1 << frame.n_worlds
    for levels in product(range(n), repeat=n):
        used = set(levels)
        if used != set(range(len(used))):
            continue
        yield ComparativeRelation(
            frame, [[levels[A] <= levels[B_] for B_ in range(n)] for A in range(n)]
        )


def compare_query(theory: Theory, phi, psi, factor: int = 1, **options) -> EntailmentVerdict:
    """Is ``phi`` at least as believed as ``psi`` (``factor`` times as much, capped at 1)?

    Decided as ``B(psi) (+) ... (+) B(psi) -> B(phi)`` with ``factor`` copies.
    """
    if factor < 1:
        raise ValueError("factor must be a positive integer")
    lhs = B(psi)
    for _ in range(factor - 1):
        lhs = StrongOr(lhs, B(psi))
    return entails(theory, LImplies(lhs, B(phi)), **options)
