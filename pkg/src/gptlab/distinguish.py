"""Kolmogorov distance and fidelity between states of a polytopic GPT."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .effects import RaySystem, effect_polytope, indecomposable_rays
from .errors import InvariantViolation, LengthMismatch
from .model import Effect, Measurement, State, StateSpace, _same
from .polytope import lp_solve, minimize
from .polytope.linalg import sub, vec
from .reports import Report

ZERO = Fraction(0)
ONE = Fraction(1)


def prob_vector(p: Sequence) -> tuple[Fraction, ...]:
    """Validate an exact probability vector."""
    p = vec(p)
    if any(x < 0 for x in p) or sum(p, ZERO) != 1:
        raise InvariantViolation("probability-vector", "entries must be nonnegative and sum to 1")
    return p


def _pair(p, q):
    p, q = prob_vector(p), prob_vector(q)
    if len(p) != len(q):
        raise LengthMismatch(f"lengths {len(p)} and {len(q)} differ")
    return p, q


def d_c(p: Sequence, q: Sequence) -> Fraction:
    """Total variation distance ``1/2 sum |p_i - q_i|``."""
    p, q = _pair(p, q)
    return sum((abs(a - b) for a, b in zip(p, q)), ZERO) / 2


def f_c(p: Sequence, q: Sequence) -> float:
    """Bhattacharyya coefficient ``sum sqrt(p_i q_i)``."""
    p, q = _pair(p, q)
    return math.fsum(math.sqrt(a * b) for a, b in zip(p, q))


@lru_cache(maxsize=64)
def rays_of(space: StateSpace) -> RaySystem:
    """Cached :func:`indecomposable_rays`."""
    return indecomposable_rays(space)


@dataclass(frozen=True)
class DistanceResult:
    value: Fraction
    optimal_effect: Effect
    optimal_two_outcome_measurement: Measurement

    def __float__(self) -> float:
        return float(self.value)


def kolmogorov_distance(s1: State, s2: State) -> DistanceResult:
    """``max_e e(s1) - e(s2)`` over the effect polytope, solved exactly.

    The maximiser is the lexicographically smallest optimal vertex in value
    coordinates.
    """
    _same(s1.space, s2.space)
    space = s1.space
    if s1 == s2:
        e = space.zero()
    else:
        objective = sub(s1.barycentric, s2.barycentric)
        res = lp_solve(objective, "max", effect_polytope(space))
        e = Effect.from_basis_values(space, res.optimizer)
    value = e(s1) - e(s2)
    assert 0 <= value <= 1
    return DistanceResult(value, e, Measurement([e, e.complement()]))


def success_probability(s1: State, s2: State) -> Fraction:
    return (1 + kolmogorov_distance(s1, s2).value) / 2


@dataclass(frozen=True)
class FidelityResult:
    """``weights`` index the rays of :func:`rays_of`; ``certified`` marks that
    the reduction to the weight polytope is exact (the log is float)."""

    value: float
    weights: tuple[Fraction, ...]
    certified: bool = True

    def __float__(self) -> float:
        return self.value


def fidelity_cost(rays: RaySystem, s1: State, s2: State) -> list[float]:
    return [math.sqrt(r(s1) * r(s2)) for r in rays.rays]


def fidelity(s1: State, s2: State) -> FidelityResult:
    """Minimum Bhattacharyya coefficient over all measurements.

    Splitting an effect into indecomposable pieces never increases
    ``sum sqrt(e(s1) e(s2))`` (Cauchy-Schwarz), and splitting a ray's weight
    leaves it unchanged, so the minimum is an LP over the weight polytope.
    """
    _same(s1.space, s2.space)
    rays = rays_of(s1.space)
    wp = rays.weights
    if s1 == s2:
        # no LP noise: any valid weight vector attains 1
        lam = minimize([ZERO] * len(rays), _eq_matrix(wp), _eq_rhs(wp)).optimizer
        return FidelityResult(1.0, lam)
    cost = fidelity_cost(rays, s1, s2)
    res = minimize(cost, _eq_matrix(wp), _eq_rhs(wp))
    value = math.fsum(c * float(w) for c, w in zip(cost, res.optimizer))
    return FidelityResult(value, res.optimizer)


def _eq_matrix(wp) -> list[list[Fraction]]:
    return [list(a) for a, _ in wp.hsystem.equalities]


def _eq_rhs(wp) -> list[Fraction]:
    return [b for _, b in wp.hsystem.equalities]


def check_distance_fidelity_relation(s1: State, s2: State, tol: float = 1e-9) -> Report:
    """``1 - F <= D <= sqrt(1 - F^2)`` within ``tol``."""
    d = float(kolmogorov_distance(s1, s2).value)
    f = fidelity(s1, s2).value
    rep = Report("distance-fidelity")
    rep.add("1-F <= D", 1.0 - f, d, tol)
    rep.add("D <= sqrt(1-F^2)", d, math.sqrt(max(0.0, 1.0 - f * f)), tol)
    return rep
