"""Exact rational linear programming and 0/1 branch-and-bound.

The LP solver is a two-phase tableau simplex over :class:`~fractions.Fraction`
with Bland's rule, storing tableau rows as sparse dicts.  Pivoting runs on
gmpy2's ``mpq`` when it is installed; results always come back as Fractions.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Union

try:
    from gmpy2 import mpq as _Q  # same exact rationals, several times faster in the pivot loop
except ImportError:  # pragma: no cover
    _Q = Fraction

Number = Union[int, Fraction]


class SolverBudgetExceeded(RuntimeError):
    pass


class LinearExpr:
    """``sum(coeffs[v] * v) + constant`` with the zero coefficients removed."""

    __slots__ = ("coeffs", "constant")

    def __init__(self, coeffs: Optional[Mapping[str, Number]] = None, constant: Number = 0):
        self.coeffs = {v: Fraction(c) for v, c in (coeffs or {}).items() if c != 0}
        self.constant = Fraction(constant)

    @classmethod
    def var(cls, name: str) -> "LinearExpr":
        return cls({name: 1})

    @staticmethod
    def lift(x) -> "LinearExpr":
        return x if isinstance(x, LinearExpr) else LinearExpr(constant=x)

    def __add__(self, other):
        other = LinearExpr.lift(other)
        coeffs = dict(self.coeffs)
        for v, c in other.coeffs.items():
            coeffs[v] = coeffs.get(v, 0) + c
        return LinearExpr(coeffs, self.constant + other.constant)

    __radd__ = __add__

    def __neg__(self):
        return LinearExpr({v: -c for v, c in self.coeffs.items()}, -self.constant)

    def __sub__(self, other):
        return self + (-LinearExpr.lift(other))

    def __rsub__(self, other):
        return LinearExpr.lift(other) - self

    def __mul__(self, k: Number):
        k = Fraction(k)
        return LinearExpr({v: c * k for v, c in self.coeffs.items()}, self.constant * k)

    __rmul__ = __mul__

    def value(self, assignment: Mapping[str, Fraction]) -> Fraction:
        return self.constant + sum(
            (c * assignment[v] for v, c in self.coeffs.items()), Fraction(0)
        )

    def is_constant(self) -> bool:
        return not self.coeffs

    def __repr__(self):
        terms = [f"{c} {v}" for v, c in self.coeffs.items()]
        if self.constant or not terms:
            terms.append(str(self.constant))
        return " + ".join(terms)


@dataclass(frozen=True)
class Variable:
    name: str
    lo: Optional[Fraction]
    hi: Optional[Fraction]
    binary: bool = False


@dataclass(frozen=True)
class Constraint:
    coeffs: dict
    sense: str  # "<=", ">=", "=="
    rhs: Fraction
    name: str = ""

    def holds(self, assignment: Mapping[str, Fraction]) -> bool:
        lhs = sum((c * assignment[v] for v, c in self.coeffs.items()), Fraction(0))
        if self.sense == "<=":
            return lhs <= self.rhs
        if self.sense == ">=":
            return lhs >= self.rhs
        return lhs == self.rhs


class RationalMILP:
    def __init__(self):
        self.variables: dict[str, Variable] = {}
        self.constraints: list[Constraint] = []
        self.objective = LinearExpr()
        self.sense = "min"

    def add_var(self, name: str, lo: Optional[Number] = 0, hi: Optional[Number] = None,
                binary: bool = False) -> LinearExpr:
        if name in self.variables:
            raise ValueError(f"duplicate variable {name!r}")
        if binary:
            lo, hi = 0, 1
        lo = None if lo is None else Fraction(lo)
        hi = None if hi is None else Fraction(hi)
        self.variables[name] = Variable(name, lo, hi, binary)
        return LinearExpr.var(name)

    def add_constraint(self, lhs, sense: str, rhs=0, name: str = "") -> None:
        if sense not in ("<=", ">=", "=="):
            raise ValueError(f"bad constraint sense {sense!r}")
        expr = LinearExpr.lift(lhs) - LinearExpr.lift(rhs)
        unknown = set(expr.coeffs) - set(self.variables)
        if unknown:
            raise ValueError(f"constraint uses undeclared variables {sorted(unknown)}")
        self.constraints.append(Constraint(dict(expr.coeffs), sense, -expr.constant, name))

    def minimize(self, expr) -> None:
        self.objective, self.sense = LinearExpr.lift(expr), "min"

    def maximize(self, expr) -> None:
        self.objective, self.sense = LinearExpr.lift(expr), "max"

    @property
    def binaries(self) -> list[str]:
        return [v.name for v in self.variables.values() if v.binary]

    def dump(self) -> str:
        """LP-format-like text, for eyeballing or feeding to another solver."""
        lines = ["Maximize" if self.sense == "max" else "Minimize", f"  obj: {_fmt_expr(self.objective)}"]
        lines.append("Subject To")
        for i, c in enumerate(self.constraints):
            op = {"==": "="}.get(c.sense, c.sense)
            lines.append(f"  {c.name or f'c{i}'}: {_fmt_expr(LinearExpr(c.coeffs))} {op} {c.rhs}")
        lines.append("Bounds")
        for v in self.variables.values():
            if v.binary:
                continue
            lo = "-inf" if v.lo is None else v.lo
            hi = "+inf" if v.hi is None else v.hi
            lines.append(f"  {lo} <= {v.name} <= {hi}")
        if self.binaries:
            lines.append("Binary")
            lines.append("  " + " ".join(self.binaries))
        lines.append("End")
        return "\n".join(lines)


def _fmt_expr(expr: LinearExpr) -> str:
    parts = []
    for v, c in expr.coeffs.items():
        sign = "-" if c < 0 else "+"
        parts.append(f"{sign} {abs(c)} {v}")
    if expr.constant:
        parts.append(f"{'-' if expr.constant < 0 else '+'} {abs(expr.constant)}")
    text = " ".join(parts) or "0"
    return text[2:] if text.startswith("+ ") else text


class Status(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass
class SolveResult:
    status: Status
    optimum: Optional[Fraction] = None
    assignment: dict = field(default_factory=dict)
    nodes: int = 0

    @property
    def optimal(self) -> bool:
        return self.status is Status.OPTIMAL


# -- simplex ----------------------------------------------------------------


class _Tableau:
    """Rows ``sum(row[j] x_j) = rhs`` with one basic column per row; all x_j >= 0."""

    def __init__(self, rows: list[dict], rhs: list[Fraction], basis: list[int]):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.obj: dict[int, Fraction] = {}
        self.obj_value = _Q(0)

    def set_objective(self, cost: Mapping[int, Fraction]) -> None:
        """Express ``sum(cost_j x_j)`` in terms of the current non-basic columns."""
        obj = {j: c for j, c in cost.items() if c}
        value = _Q(0)
        for r, b in enumerate(self.basis):
            cb = obj.get(b)
            if not cb:
                continue
            value += cb * self.rhs[r]
            for j, a in self.rows[r].items():
                obj[j] = obj.get(j, 0) - cb * a
        self.obj = {j: c for j, c in obj.items() if c}
        self.obj_value = value

    def pivot(self, r: int, e: int) -> None:
        row = self.rows[r]
        a = row[e]
        if a != 1:
            row = {j: v / a for j, v in row.items()}
            self.rows[r] = row
            self.rhs[r] /= a
        b = self.rhs[r]
        for i, other in enumerate(self.rows):
            if i == r:
                continue
            f = other.get(e)
            if f:
                for j, v in row.items():
                    nv = other.get(j, 0) - f * v
                    if nv:
                        other[j] = nv
                    else:
                        other.pop(j, None)
                self.rhs[i] -= f * b
        d = self.obj.get(e)
        if d:
            for j, v in row.items():
                nv = self.obj.get(j, 0) - d * v
                if nv:
                    self.obj[j] = nv
                else:
                    self.obj.pop(j, None)
            self.obj_value += d * b
        self.basis[r] = e

    def run(self, allowed: Optional[int] = None) -> bool:
        """Minimize the objective with Bland's rule; False if unbounded.

        Only columns below ``allowed`` may enter the basis.
        """
        while True:
            entering = None
            for j in sorted(self.obj):
                if self.obj[j] < 0 and (allowed is None or j < allowed):
                    entering = j
                    break
            if entering is None:
                return True
            best = None
            for r, row in enumerate(self.rows):
                a = row.get(entering)
                if a is not None and a > 0:
                    ratio = self.rhs[r] / a
                    key = (ratio, self.basis[r])
                    if best is None or key < best[0]:
                        best = (key, r)
            if best is None:
                return False
            self.pivot(best[1], entering)


def _standardize(p: RationalMILP, fixed: Mapping[str, Fraction]):
    """Shift/split variables to x' >= 0 and return (rows, senses, rhs, cost, decode)."""
    columns: dict[str, list[tuple[int, Fraction]]] = {}
    offset: dict[str, Fraction] = {}
    ncol = 0
    bound_rows = []
    for v in p.variables.values():
        lo, hi = v.lo, v.hi
        if v.name in fixed:
            offset[v.name] = Fraction(fixed[v.name])
            columns[v.name] = []
            continue
        if lo is not None and hi is not None and lo > hi:
            return None
        if lo is not None and hi is not None and lo == hi:
            offset[v.name] = lo
            columns[v.name] = []
        elif lo is not None:
            offset[v.name] = lo
            columns[v.name] = [(ncol, Fraction(1))]
            if hi is not None:
                bound_rows.append(({ncol: Fraction(1)}, "<=", hi - lo))
            ncol += 1
        elif hi is not None:
            offset[v.name] = hi
            columns[v.name] = [(ncol, Fraction(-1))]
            ncol += 1
        else:
            offset[v.name] = Fraction(0)
            columns[v.name] = [(ncol, Fraction(1)), (ncol + 1, Fraction(-1))]
            ncol += 2

    rows = []
    for c in p.constraints:
        row: dict[int, Fraction] = {}
        rhs = c.rhs
        for name, coef in c.coeffs.items():
            rhs -= coef * offset[name]
            for j, s in columns[name]:
                row[j] = row.get(j, 0) + coef * s
        row = {j: a for j, a in row.items() if a}
        rows.append((row, c.sense, rhs))
    rows.extend(bound_rows)

    sign = -1 if p.sense == "max" else 1
    cost: dict[int, Fraction] = {}
    const = p.objective.constant
    for name, coef in p.objective.coeffs.items():
        const += coef * offset[name]
        for j, s in columns[name]:
            cost[j] = cost.get(j, 0) + sign * coef * s

    def decode(x: list[Fraction]) -> dict:
        return {
            name: offset[name] + sum((s * x[j] for j, s in columns[name]), Fraction(0))
            for name in p.variables
        }

    return ncol, rows, cost, const, decode


def _simplex(ncol: int, rows, cost) -> tuple[Status, Optional[list[Fraction]]]:
    trows, rhs, basis = [], [], []
    art_rows = []
    next_col = ncol
    one = _Q(1)
    for row, sense, b in rows:
        row = {j: _Q(a) for j, a in row.items()}
        b = _Q(b)
        if not row:
            ok = b == 0 if sense == "==" else (b >= 0 if sense == "<=" else b <= 0)
            if not ok:
                return Status.INFEASIBLE, None
            continue
        if b < 0 or (b == 0 and sense == ">="):
            row = {j: -a for j, a in row.items()}
            b = -b
            sense = {"<=": ">=", ">=": "<=", "==": "=="}[sense]
        if sense == "<=":
            row[next_col] = one
            basis.append(next_col)
            next_col += 1
        else:
            if sense == ">=":
                row[next_col] = -one
                next_col += 1
            basis.append(None)
            art_rows.append(len(trows))
        trows.append(row)
        rhs.append(b)
    first_art = next_col
    for r in art_rows:
        trows[r][next_col] = one
        basis[r] = next_col
        next_col += 1

    tab = _Tableau(trows, rhs, basis)
    if art_rows:
        tab.set_objective({j: 1 for j in range(first_art, next_col)})
        tab.run()
        if tab.obj_value != 0:
            return Status.INFEASIBLE, None
        # drive zero-level artificials out of the basis, dropping redundant rows
        r = 0
        while r < len(tab.rows):
            if tab.basis[r] >= first_art:
                pivot_col = next((j for j in sorted(tab.rows[r]) if j < first_art), None)
                if pivot_col is None:
                    del tab.rows[r], tab.rhs[r], tab.basis[r]
                    continue
                tab.pivot(r, pivot_col)
            r += 1
        for row in tab.rows:
            for j in [j for j in row if j >= first_art]:
                del row[j]
    tab.set_objective({j: _Q(c) for j, c in cost.items()})
    if not tab.run(allowed=first_art):
        return Status.UNBOUNDED, None
    x = [Fraction(0)] * ncol
    for r, b in enumerate(tab.basis):
        if b < ncol:
            q = tab.rhs[r]
            x[b] = Fraction(int(q.numerator), int(q.denominator))
    return Status.OPTIMAL, x


def _solve_relaxation(p: RationalMILP, fixed: Mapping[str, Fraction]) -> SolveResult:
    std = _standardize(p, fixed)
    if std is None:
        return SolveResult(Status.INFEASIBLE)
    ncol, rows, cost, const, decode = std
    status, x = _simplex(ncol, rows, cost)
    if status is not Status.OPTIMAL:
        return SolveResult(status)
    assignment = decode(x)
    return SolveResult(Status.OPTIMAL, p.objective.value(assignment), assignment)


def solve_lp(p: RationalMILP) -> SolveResult:
    """Solve the continuous relaxation (binary variables range over [0, 1])."""
    return _solve_relaxation(p, {})


def solve_milp(p: RationalMILP, node_budget: int = 10**6, max_binaries: int = 64) -> SolveResult:
    """Depth-first branch and bound on the binary variables.

    Branches on the lowest-index fractional binary, exploring the 0 branch
    first.  Raises :class:`SolverBudgetExceeded` past ``node_budget`` nodes.
    """
    binaries = p.binaries
    if len(binaries) > max_binaries:
        raise SolverBudgetExceeded(
            f"{len(binaries)} binary variables exceed the configured cap of {max_binaries}"
        )
    better = (lambda a, b: a > b) if p.sense == "max" else (lambda a, b: a < b)
    incumbent: Optional[SolveResult] = None
    stack: list[dict] = [{}]
    nodes = 0
    while stack:
        nodes += 1
        if nodes > node_budget:
            raise SolverBudgetExceeded(f"branch and bound exceeded {node_budget} nodes")
        fixed = stack.pop()
        res = _solve_relaxation(p, fixed)
        if res.status is Status.UNBOUNDED:
            return SolveResult(Status.UNBOUNDED, nodes=nodes)
        if res.status is Status.INFEASIBLE:
            continue
        if incumbent is not None and not better(res.optimum, incumbent.optimum):
            continue
        frac = next((b for b in binaries if res.assignment[b].denominator != 1), None)
        if frac is None:
            incumbent = res
            continue
        stack.append({**fixed, frac: Fraction(1)})
        stack.append({**fixed, frac: Fraction(0)})
    if incumbent is None:
        return SolveResult(Status.INFEASIBLE, nodes=nodes)
    incumbent.nodes = nodes
    return incumbent


def check_assignment(p: RationalMILP, assignment: Mapping[str, Fraction]) -> list[Constraint]:
    """Constraints (and bound/integrality violations as pseudo-constraints) that fail."""
    failed = [c for c in p.constraints if not c.holds(assignment)]
    for v in p.variables.values():
        x = assignment[v.name]
        if (v.lo is not None and x < v.lo) or (v.hi is not None and x > v.hi) or (
            v.binary and x not in (0, 1)
        ):
            failed.append(Constraint({v.name: Fraction(1)}, "==", x, f"bound:{v.name}"))
    return failed
