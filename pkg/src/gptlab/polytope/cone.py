"""Extreme rays of pointed polyhedral cones by the double description method."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ..errors import NotPointed
from .linalg import dot, independent_subset, inverse, matvec, nullspace, primitive, rank, transpose
from .types import HSystem, Point


def _double_description(rows: Sequence[Sequence[Fraction]], m: int) -> list[list[Fraction]]:
    """Rays of ``{y in R^m : rows . y >= 0}``, assumed pointed (rank m)."""
    if m == 0:
        return []
    order = independent_subset(rows)
    if len(order) < m:
        raise NotPointed("cone contains a line")
    basis_rows = [list(rows[i]) for i in order]
    inv = inverse(basis_rows)
    rays = [list(primitive(col)) for col in transpose(inv)]
    processed = list(order)
    remaining = [i for i in range(len(rows)) if i not in set(order)]

    for idx in remaining:
        a = rows[idx]
        vals = [dot(a, r) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        zero = [i for i, v in enumerate(vals) if v == 0]
        new = [rays[i] for i in pos] + [rays[i] for i in zero]
        if neg and pos:
            tight = [frozenset(j for j in processed if dot(rows[j], r) == 0) for r in rays]
            for p in pos:
                for q in neg:
                    common = tight[p] & tight[q]
                    if len(common) < m - 2:
                        continue
                    # combinatorial pre-filter passed; confirm algebraically
                    if rank([rows[j] for j in common]) != m - 2:
                        continue
                    combo = [vals[p] * x - vals[q] * y for x, y in zip(rays[q], rays[p])]
                    new.append(list(primitive(combo)))
        rays = new
        processed.append(idx)
    return rays


def extreme_rays(cone: HSystem) -> list[Point]:
    """Irredundant generators of ``{x : E x = 0, A x >= 0}``.

    Each ray is scaled to coprime integer coordinates; output is sorted.
    Raises ``NotPointed`` if the cone contains a line.
    """
    if any(rhs != 0 for _, rhs in cone.equalities + cone.inequalities):
        raise ValueError("extreme_rays needs a homogeneous system (all rhs zero)")
    n = cone.dim
    eq_rows = [list(c) for c, _ in cone.equalities]
    basis = nullspace(eq_rows, n) if eq_rows else nullspace([], n)
    m = len(basis)
    if m == 0:
        return []
    cols = transpose(basis)  # n x m, x = cols . y
    reduced = [tuple(matvec(transpose(cols), list(a))) for a, _ in cone.inequalities]
    if rank(reduced) < m:
        raise NotPointed("cone contains a line")
    rays_y = _double_description(reduced, m)
    out = {primitive(matvec(cols, y)) for y in rays_y}
    return sorted(out)
