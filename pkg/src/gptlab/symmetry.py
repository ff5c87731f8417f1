"""Affine automorphisms, symmetric spaces and strong equality of pure states."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from typing import Sequence

from .distinguish import rays_of
from .entropy import s1
from .errors import DegenerateSpace, Infeasible, TooLarge
from .model import StateSpace
from .polytope import AffineMap, feasible_point
from .polytope.linalg import matmul, matvec, sub, transpose
from .reports import Report

ZERO = Fraction(0)
ONE = Fraction(1)
DEFAULT_MAX_VERTICES = 12
DEFAULT_MAX_TUPLE = 4


def max_vertices() -> int:
    return int(os.environ.get("GPTLAB_MAX_VERTICES", DEFAULT_MAX_VERTICES))


def _check_size(space: StateSpace) -> None:
    bound = max_vertices()
    if len(space) > bound:
        raise TooLarge(f"{len(space)} vertices exceed the search bound {bound} (GPTLAB_MAX_VERTICES)")


@dataclass(frozen=True)
class AutomorphismGroup:
    space: StateSpace
    elements: tuple[AffineMap, ...]
    vertex_permutations: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def orbits(self) -> list[tuple[int, ...]]:
        seen: set[int] = set()
        out = []
        for i in range(len(self.space)):
            if i in seen:
                continue
            orb = tuple(sorted({perm[i] for perm in self.vertex_permutations}))
            seen.update(orb)
            out.append(orb)
        return out

    def verify(self) -> None:
        """Closure, identity and inverses on the induced permutations."""
        perms = set(self.vertex_permutations)
        ident = tuple(range(len(self.space)))
        assert ident in perms
        for p in perms:
            inv = tuple(sorted(range(len(p)), key=lambda i: p[i]))
            assert inv in perms
            for q in perms:
                assert tuple(p[q[i]] for i in range(len(p))) in perms


def automorphisms(space: StateSpace) -> AutomorphismGroup:
    """All affine bijections of the state space, found by mapping the affine basis.

    Each element is listed with the permutation ``perm`` it induces,
    ``f(vertices[i]) = vertices[perm[i]]``; the identity comes first.
    """
    _check_size(space)
    verts = space.vertices
    index = {v: i for i, v in enumerate(verts)}
    c = space.chart
    found = []
    for images in permutations(range(len(verts)), len(space.basis_indices)):
        w = [verts[i] for i in images]
        perm = []
        for b in space.vertex_barycentric:
            img = tuple(sum((bi * wi[j] for bi, wi in zip(b, w)), ZERO) for j in range(space.ambient_dim))
            if img not in index:
                break
            perm.append(index[img])
        else:
            if len(set(perm)) == len(verts):
                found.append((tuple(perm), w))
    found.sort()
    elements, perms = [], []
    for perm, w in found:
        if c.dim:
            cols = [sub(wi, w[0]) for wi in w[1:]]
            m = matmul(transpose(cols), c.projector)
        else:
            m = [[ZERO] * space.ambient_dim for _ in range(space.ambient_dim)]
        offset = sub(w[0], matvec(m, c.base))
        elements.append(AffineMap(tuple(map(tuple, m)), offset))
        perms.append(perm)
    return AutomorphismGroup(space, tuple(elements), tuple(perms))


@dataclass(frozen=True)
class SymmetryReport:
    symmetric: bool
    order: int
    orbits: list[tuple[tuple[Fraction, ...], ...]]

    def __bool__(self) -> bool:
        return self.symmetric

    def to_dict(self) -> dict:
        return {
            "symmetric": self.symmetric,
            "group_order": self.order,
            "orbits": [[[str(x) for x in v] for v in orb] for orb in self.orbits],
        }


def is_symmetric(space: StateSpace, group: AutomorphismGroup | None = None) -> SymmetryReport:
    """Does the automorphism group act transitively on the pure states?"""
    group = group or automorphisms(space)
    orbits = group.orbits()
    named = [tuple(space.vertices[i] for i in orb) for orb in orbits]
    return SymmetryReport(len(orbits) == 1, group.order, named)


def _distinguishable(space: StateSpace, idx: Sequence[int]) -> bool:
    """LP feasibility of ``e_i >= 0, sum e_i <= u, e_i(s_j) = delta_ij``.

    Each ``e_i`` is written as a nonnegative combination of the rays that
    vanish on the other ``s_j`` (the rays generate the nonnegative cone), so
    the LP is in standard form with a slack per vertex.
    """
    if len(space) < 2:
        return len(idx) <= 1
    rays = [r.vertex_values for r in rays_of(space).rays]
    cols = []  # (effect index, ray values)
    for i in range(len(idx)):
        others = [v for j, v in enumerate(idx) if j != i]
        cols.extend((i, r) for r in rays if all(r[v] == 0 for v in others))
    nv = len(space)
    ncols = len(cols) + nv
    a_eq, b_eq = [], []
    for i, v in enumerate(idx):
        a_eq.append([r[v] if ci == i else ZERO for ci, r in cols] + [ZERO] * nv)
        b_eq.append(ONE)
    for w in range(nv):
        a_eq.append([r[w] for _, r in cols] + [ONE if w == t else ZERO for t in range(nv)])
        b_eq.append(ONE)
    try:
        feasible_point(a_eq, b_eq, ncols)
    except Infeasible:
        return False
    return True


def distinguishable_index_sets(space: StateSpace, n: int) -> list[tuple[int, ...]]:
    if n > len(space):
        raise ValueError("tuple size exceeds the number of pure states")
    return [c for c in combinations(range(len(space)), n) if _distinguishable(space, c)]


def distinguishable_pure_tuples(space: StateSpace, n: int) -> list[tuple[tuple[Fraction, ...], ...]]:
    """Sets of ``n`` distinct pure states admitting a perfectly discriminating measurement."""
    return [tuple(space.vertices[i] for i in c) for c in distinguishable_index_sets(space, n)]


@dataclass
class StrongEqualityReport:
    ordered: bool
    unordered: bool
    checked_sizes: list[int]
    ordered_counterexamples: list[tuple] = field(default_factory=list)
    unordered_counterexamples: list[tuple] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ordered

    def to_dict(self) -> dict:
        def fmt(pair):
            return [[[str(x) for x in v] for v in t] for t in pair]

        return {
            "ordered": self.ordered,
            "unordered": self.unordered,
            "checked_sizes": self.checked_sizes,
            "ordered_counterexamples": [fmt(p) for p in self.ordered_counterexamples],
            "unordered_counterexamples": [fmt(p) for p in self.unordered_counterexamples],
        }


def _orbit_split(items: list[tuple[int, ...]], act) -> list[list[tuple[int, ...]]]:
    remaining = list(items)
    orbits = []
    while remaining:
        head = remaining[0]
        orb = act(head)
        orbits.append([t for t in remaining if t in orb])
        remaining = [t for t in remaining if t not in orb]
    return orbits


def satisfies_strong_equality(
    space: StateSpace, max_size: int = DEFAULT_MAX_TUPLE, group: AutomorphismGroup | None = None
) -> StrongEqualityReport:
    """Check strong equality for distinguishable pure-state tuples up to ``max_size``.

    Prefixes of distinguishable tuples are distinguishable, so the ordered
    condition holds iff, for each size ``m``, all ordered distinguishable
    ``m``-tuples form a single orbit.  The unordered variant compares sets.
    Every cross-orbit pair is listed as a counterexample.
    """
    group = group or automorphisms(space)
    perms = group.vertex_permutations
    verts = space.vertices
    rep = StrongEqualityReport(True, True, [])
    for m in range(1, min(max_size, len(space)) + 1):
        sets = distinguishable_index_sets(space, m)
        if not sets:
            break
        rep.checked_sizes.append(m)
        ordered = sorted(p for c in sets for p in permutations(c))
        o_orbits = _orbit_split(ordered, lambda t: {tuple(p[i] for i in t) for p in perms})
        u_orbits = _orbit_split(sets, lambda t: {tuple(sorted(p[i] for i in t)) for p in perms})
        for orbits, bucket, flag in (
            (o_orbits, rep.ordered_counterexamples, "ordered"),
            (u_orbits, rep.unordered_counterexamples, "unordered"),
        ):
            if len(orbits) > 1:
                setattr(rep, flag, False)
                for a, b in combinations(range(len(orbits)), 2):
                    for s in orbits[a]:
                        for t in orbits[b]:
                            bucket.append((tuple(verts[i] for i in s), tuple(verts[i] for i in t)))
    return rep


def check_sgpt_s1(space: StateSpace, tol: float = 1e-9) -> Report:
    """Some pure state has ``S1 = 0``; in a symmetric space all of them do."""
    if len(space) < 2:
        raise DegenerateSpace("need at least two states")
    vals = [s1(v).value for v in space.pure_states()]
    rep = Report("sgpt-s1", notes={"S1_at_vertices": vals})
    rep.add("min_v S1(v) <= 0", min(vals), 0.0, tol)
    sym = is_symmetric(space)
    rep.notes["symmetric"] = sym.symmetric
    if sym.symmetric:
        rep.add("max_v S1(v) <= 0", max(vals), 0.0, tol)
    return rep
