"""Exact two-phase simplex with Bland's rule.

The tableau is kept in :class:`~fractions.Fraction` arithmetic.  Objective
coefficients may be floats (the fidelity LP has irrational costs); pivoting
stays exact because only reduced costs see the floats.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple, Sequence

from ..errors import Infeasible, Unbounded
from .types import HSystem, Point

_FLOAT_TOL = 1e-12
_MAX_PIVOTS = 100_000


class LPResult(NamedTuple):
    value: Fraction | float
    optimizer: Point


class _Tableau:
    def __init__(self, a_eq: Sequence[Sequence[Fraction]], b_eq: Sequence[Fraction], n: int):
        rows, rhs = [], []
        for row, b in zip(a_eq, b_eq):
            row = list(row)
            if b < 0:
                row, b = [-x for x in row], -b
            rows.append(row)
            rhs.append(b)
        m = len(rows)
        self.n = n
        # artificial columns n..n+m-1 start basic
        self.rows = [row + [Fraction(int(i == j)) for j in range(m)] for i, row in enumerate(rows)]
        self.rhs = rhs
        self.basis = [n + i for i in range(m)]

    def pivot(self, r: int, c: int) -> None:
        row = self.rows[r]
        inv = 1 / row[c]
        row = [x * inv for x in row]
        self.rows[r] = row
        self.rhs[r] *= inv
        for i, other in enumerate(self.rows):
            if i != r:
                f = other[c]
                if f:
                    self.rows[i] = [x - f * y for x, y in zip(other, row)]
                    self.rhs[i] -= f * self.rhs[r]
        self.basis[r] = c

    def reduced_costs(self, cost: Sequence, columns: Sequence[int]) -> dict[int, object]:
        cb = [cost[b] if b < len(cost) else 0 for b in self.basis]
        out = {}
        for j in columns:
            r = cost[j] if j < len(cost) else 0
            for cbi, row in zip(cb, self.rows):
                if cbi and row[j]:
                    r = r - cbi * row[j]
            out[j] = r
        return out

    def run(self, cost: Sequence, columns: list[int], tol) -> str:
        """Minimise ``cost`` pivoting only on ``columns``; Bland's rule."""
        for _ in range(_MAX_PIVOTS):
            basic = set(self.basis)
            rc = self.reduced_costs(cost, [j for j in columns if j not in basic])
            entering = next((j for j in sorted(rc) if rc[j] < -tol), None)
            if entering is None:
                return "optimal"
            best = None
            for i, row in enumerate(self.rows):
                if row[entering] > 0:
                    key = (self.rhs[i] / row[entering], self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return "unbounded"
            self.pivot(best[1], entering)
        raise RuntimeError("simplex pivot limit exceeded")

    def solution(self) -> list[Fraction]:
        x = [Fraction(0)] * self.n
        for b, v in zip(self.basis, self.rhs):
            if b < self.n:
                x[b] = v
        return x


def _is_float_cost(cost: Sequence) -> bool:
    return any(isinstance(c, float) for c in cost)


def simplex(
    cost: Sequence,
    a_eq: Sequence[Sequence[Fraction]],
    b_eq: Sequence[Fraction],
    secondary: Sequence[Sequence] = (),
) -> LPResult:
    """Minimise ``cost . x`` subject to ``A x = b, x >= 0``.

    ``secondary`` objectives break ties lexicographically: each is minimised
    over the optimal face of the previous ones.  Raises ``Infeasible`` or
    ``Unbounded``.
    """
    n = len(cost)
    tab = _Tableau(a_eq, b_eq, n)
    m = len(tab.rows)

    if m:
        phase1 = [0] * n + [1] * m
        status = tab.run(phase1, list(range(n)), 0)
        assert status == "optimal"
        infeas = sum((v for b, v in zip(tab.basis, tab.rhs) if b >= n), Fraction(0))
        if infeas > 0:
            raise Infeasible("constraint system has no nonnegative solution")
        # drive remaining (zero-valued) artificials out of the basis
        r = 0
        while r < len(tab.rows):
            if tab.basis[r] >= n:
                c = next((j for j in range(n) if tab.rows[r][j] != 0), None)
                if c is None:
                    del tab.rows[r], tab.rhs[r], tab.basis[r]
                    continue
                tab.pivot(r, c)
            r += 1
        tab.rows = [row[:n] for row in tab.rows]

    primary = cost
    columns = list(range(n))
    tol = _FLOAT_TOL if _is_float_cost(cost) else 0
    if tab.run(cost, columns, tol) == "unbounded":
        raise Unbounded("objective is unbounded below")

    for obj in secondary:
        basic = set(tab.basis)
        rc = tab.reduced_costs(cost, [j for j in columns if j not in basic])
        columns = [j for j in columns if j in basic or abs(rc[j]) <= tol]
        stage_tol = _FLOAT_TOL if _is_float_cost(obj) else 0
        if tab.run(obj, columns, stage_tol) == "unbounded":
            break
        cost = obj
        tol = stage_tol

    x = tuple(tab.solution())
    return LPResult(_objective_value(primary, x), x)


def _objective_value(cost: Sequence, x: Sequence[Fraction]):
    zero = 0.0 if _is_float_cost(cost) else Fraction(0)
    return sum((c * xi for c, xi in zip(cost, x) if xi), zero)


def minimize(
    cost: Sequence,
    a_eq: Sequence[Sequence[Fraction]],
    b_eq: Sequence[Fraction],
    lexicographic: bool = True,
) -> LPResult:
    """Standard-form LP over nonnegative variables with lex-min tie-breaking."""
    n = len(cost)
    secondary = []
    if lexicographic:
        secondary = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    return simplex(cost, a_eq, b_eq, secondary)


def feasible_point(a_eq: Sequence[Sequence[Fraction]], b_eq: Sequence[Fraction], n: int) -> Point:
    """Some nonnegative solution of ``A x = b`` or ``Infeasible``."""
    return simplex([Fraction(0)] * n, a_eq, b_eq).optimizer


def lp_solve(objective: Sequence, sense: str, system: HSystem, lexicographic: bool = True) -> LPResult:
    """Optimise ``objective . x`` over ``system`` (free variables).

    Returns ``(value, optimizer)``; the optimizer is the lexicographically
    smallest optimal point when ``lexicographic`` is set and the optimal face
    is bounded.
    """
    if sense not in ("max", "min"):
        raise ValueError("sense must be 'max' or 'min'")
    n = system.dim
    objective = list(objective)
    if len(objective) != n:
        raise ValueError("objective length does not match the system dimension")
    n_ineq = len(system.inequalities)
    ncols = 2 * n + n_ineq
    a_eq, b_eq = [], []
    for coeffs, rhs in system.equalities:
        a_eq.append(list(coeffs) + [-x for x in coeffs] + [Fraction(0)] * n_ineq)
        b_eq.append(rhs)
    for k, (coeffs, rhs) in enumerate(system.inequalities):
        slack = [Fraction(0)] * n_ineq
        slack[k] = Fraction(-1)
        a_eq.append(list(coeffs) + [-x for x in coeffs] + slack)
        b_eq.append(rhs)

    sign = -1 if sense == "max" else 1
    cost = [sign * c for c in objective] + [-sign * c for c in objective] + [0] * n_ineq
    if not _is_float_cost(cost):
        cost = [Fraction(c) for c in cost]
    secondary = []
    if lexicographic:
        for i in range(n):
            obj = [Fraction(0)] * ncols
            obj[i] = Fraction(1)
            obj[n + i] = Fraction(-1)
            secondary.append(obj)
    res = simplex(cost, a_eq, b_eq, secondary)
    z = res.optimizer
    x = tuple(z[i] - z[n + i] for i in range(n))
    return LPResult(_objective_value(objective, x), x)
