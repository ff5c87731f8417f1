"""Effect polytope, pure and indecomposable effects, complete measurements.

Effects are handled in value coordinates ``z`` (values at the affine-basis
vertices).  A vertex ``v`` with barycentric row ``b_v`` contributes the
constraints ``0 <= b_v . z <= 1``; the nonnegative cone ``b_v . z >= 0`` has
the indecomposable effects as its extreme rays.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .errors import DegenerateSpace, Infeasible, NotInCone, ZeroEffect
from .model import Effect, Measurement, StateSpace, _same
from .polytope import HSystem, extreme_rays, minimize, vertex_enumeration
from .polytope.linalg import rank

ZERO = Fraction(0)
ONE = Fraction(1)


def effect_polytope(space: StateSpace) -> HSystem:
    """``{z : 0 <= e_z(v) <= 1 for every vertex v}`` in value coordinates."""
    rows = []
    for b in space.vertex_barycentric:
        rows.append((b, ZERO))
        rows.append((tuple(-x for x in b), -ONE))
    return HSystem(space.affine_dim + 1, (), tuple(rows))


def nonnegative_cone(space: StateSpace) -> HSystem:
    return HSystem(space.affine_dim + 1, (), tuple((b, ZERO) for b in space.vertex_barycentric))


def pure_effects(space: StateSpace) -> list[Effect]:
    """Extreme points of the effect polytope, ordered by vertex values."""
    effects = [Effect.from_basis_values(space, z) for z in vertex_enumeration(effect_polytope(space))]
    return sorted(effects, key=lambda e: e.vertex_values)


@dataclass(frozen=True)
class RaySystem:
    """Normalised indecomposable effects of a state space.

    ``facet_of[k]`` is the set of vertex indices where ray ``k`` vanishes.
    """

    space: StateSpace
    rays: tuple[Effect, ...]
    facet_of: tuple[frozenset[int], ...]

    def __len__(self) -> int:
        return len(self.rays)

    def verify(self) -> None:
        """Assert the ray invariants (vanishing somewhere, maximum 1, indecomposable)."""
        for e in self.rays:
            vals = e.vertex_values
            assert min(vals) == 0, "ray does not vanish on the state space"
            assert max(vals) == 1, "ray is not normalised"
            assert is_indecomposable(e)

    @cached_property
    def weights(self) -> "WeightPolytope":
        return weight_polytope(self)


def indecomposable_rays(space: StateSpace) -> RaySystem:
    """Extreme rays of the nonnegative affine cone, each scaled to maximum 1.

    Ordered ascending by their tuple of vertex values.
    """
    if len(space) < 2:
        raise DegenerateSpace("a single-state space has only constant effects")
    rays = []
    for z in extreme_rays(nonnegative_cone(space)):
        raw = Effect.from_basis_values(space, z, check=False)
        top = max(raw.vertex_values)
        rays.append(raw * (1 / top))
    rays.sort(key=lambda e: e.vertex_values)
    facets = tuple(frozenset(i for i, v in enumerate(e.vertex_values) if v == 0) for e in rays)
    return RaySystem(space, tuple(rays), facets)


def _zero_rank(e: Effect, level: Fraction) -> int:
    return rank([b for b, v in zip(e.space.vertex_barycentric, e.vertex_values) if v == level])


def is_indecomposable(e: Effect) -> bool:
    """Does ``e`` lie on an extreme ray of the nonnegative cone?"""
    if e.is_zero():
        raise ZeroEffect("the zero effect is excluded from indecomposability")
    if min(e.vertex_values) < 0:
        return False
    rows = [b for b, v in zip(e.space.vertex_barycentric, e.vertex_values) if v == 0]
    return rank(rows) == e.space.affine_dim if rows else e.space.affine_dim == 0


def is_indecomposable_by_definition(e: Effect) -> bool:
    """Definitional test: ``{f : 0 <= f <= e}`` is the segment ``[0, e]``.

    Every ``f`` with ``e = f + (e - f)`` and both parts nonnegative lies in
    this set, so ``e`` is indecomposable iff its only vertices are 0 and e.
    """
    if e.is_zero():
        raise ZeroEffect("the zero effect is excluded from indecomposability")
    space = e.space
    rows = []
    for b, v in zip(space.vertex_barycentric, e.vertex_values):
        rows.append((b, ZERO))
        rows.append((tuple(-x for x in b), -v))
    try:
        verts = vertex_enumeration(HSystem(space.affine_dim + 1, (), tuple(rows)))
    except Infeasible:
        return False
    return set(verts) == {tuple(ZERO for _ in e.values), e.values}


def is_pure_effect(e: Effect) -> bool:
    """Is ``e`` an extreme point of the effect polytope (active-constraint rank)?"""
    space = e.space
    active = [b for b, v in zip(space.vertex_barycentric, e.vertex_values) if v == 0 or v == 1]
    return bool(active) and rank(active) == space.affine_dim + 1


def decompose_effect(e: Effect, rays: RaySystem) -> tuple[Fraction, ...]:
    """Lexicographically smallest ``lam >= 0`` with ``e = sum lam_k ray_k``."""
    _same(e.space, rays.space)
    cols = [r.values for r in rays.rays]
    a_eq = [[c[i] for c in cols] for i in range(len(e.values))]
    try:
        return minimize([ZERO] * len(cols), a_eq, list(e.values)).optimizer
    except Infeasible as exc:  # pragma: no cover
        raise NotInCone("nonnegative functional outside the ray cone") from exc


@dataclass(frozen=True)
class WeightPolytope:
    """``{lam >= 0 : sum lam_k ray_k = u}``; each point is an indecomposable measurement."""

    ray_system: RaySystem
    hsystem: HSystem
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def vertices(self) -> list[tuple[Fraction, ...]]:
        if "v" not in self._cache:
            self._cache["v"] = vertex_enumeration(self.hsystem)
        return self._cache["v"]

    def measurement(self, lam: Sequence[Fraction]) -> Measurement:
        return Measurement(w * r for w, r in zip(lam, self.ray_system.rays) if w)

    def ray_values(self, s) -> tuple[Fraction, ...]:
        """``a_k = ray_k(s)`` for a state ``s``."""
        return tuple(r(s) for r in self.ray_system.rays)


def weight_polytope(rays: RaySystem) -> WeightPolytope:
    k = len(rays.rays)
    dim = rays.space.affine_dim + 1
    eqs = tuple((tuple(r.values[i] for r in rays.rays), ONE) for i in range(dim))
    ineqs = tuple((tuple(Fraction(int(i == j)) for j in range(k)), ZERO) for i in range(k))
    return WeightPolytope(rays, HSystem(k, eqs, ineqs))


@dataclass(frozen=True)
class CompleteSearch:
    """Result of the exhaustive complete-measurement search.

    ``multiplicities[k]`` counts copies of ray ``k`` when found; ``bounds`` are
    the per-ray multiplicity caps that make the search exhaustive, and
    ``nodes`` the number of partial multisets visited.
    """

    found: bool
    measurement: Measurement | None
    multiplicities: tuple[int, ...] | None
    bounds: tuple[int, ...]
    nodes: int

    def __bool__(self) -> bool:
        return self.found

    @property
    def ray_indices(self) -> tuple[int, ...]:
        if not self.multiplicities:
            return ()
        return tuple(k for k, m in enumerate(self.multiplicities) for _ in range(m))


def find_complete_measurement(space: StateSpace, rays: RaySystem | None = None) -> CompleteSearch:
    """Depth-first search for a multiset of normalised rays summing to ``u``."""
    if len(space) < 2:
        raise DegenerateSpace("complete measurements need at least two states")
    rays = rays or indecomposable_rays(space)
    values = [r.vertex_values for r in rays.rays]
    bounds = tuple(min(int(1 / v) for v in vals if v > 0) for vals in values)
    nv = len(space)
    nodes = 0
    chosen: list[int] = []

    def dfs(k: int, residual: list[Fraction]) -> bool:
        nonlocal nodes
        nodes += 1
        if not any(residual):
            chosen.extend([0] * (len(values) - k))
            return True
        if k == len(values):
            return False
        for m in range(bounds[k] + 1):
            nxt = [residual[i] - m * values[k][i] for i in range(nv)]
            if min(nxt) < 0:
                break
            chosen.append(m)
            if dfs(k + 1, nxt):
                return True
            chosen.pop()
        return False

    if dfs(0, [ONE] * nv):
        mult = tuple(chosen)
        meas = Measurement(rays.rays[k] for k, m in enumerate(mult) for _ in range(m))
        return CompleteSearch(True, meas, mult, bounds, nodes)
    return CompleteSearch(False, None, None, bounds, nodes)
