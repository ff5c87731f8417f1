"""Entropy-like quantities S1, S2, S3 and their inequalities.

All logarithms are base 2.  ``S1`` and ``S3`` minimise concave functions over
polytopes, so enumerating vertices is exact.  For ``S2`` the mutual
information of a pure-state ensemble ``p`` and an indecomposable measurement
``lam`` reduces to ``sum_k lam_k [g(a_k(s)) - sum_x p_x g(a_k(v_x))]`` with
``g(t) = -t log t``: the ``g(lam_k)`` terms cancel because the ensemble
averages to ``s``.  The expression is bilinear in ``(lam, p)``, so its
maximum sits on a pair of vertices; a seeded hill-climb over the two
polytopes re-checks that claim and its gap is reported.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Sequence

import numpy as np

from .distinguish import rays_of
from .errors import DegenerateSpace, OutOfRange
from .model import Ensemble, Measurement, State, StateSpace, _same
from .polytope import HSystem, facet_enumeration, vertex_enumeration
from .polytope.linalg import dot, to_fraction
from .reports import Report

ZERO = Fraction(0)
ONE = Fraction(1)
LOG_BASE = 2.0


def _g(t) -> float:
    t = float(t)
    return -t * math.log2(t) if t > 0 else 0.0


def shannon_entropy(p: Sequence) -> float:
    """``-sum p_i log2 p_i`` with ``0 log 0 = 0``."""
    return math.fsum(_g(x) for x in p)


def binary_entropy(c) -> float:
    c = float(c)
    return _g(c) + _g(1.0 - c)


@dataclass(frozen=True)
class EntropyValue:
    value: float
    method: str
    witness: dict[str, Any] = field(default_factory=dict)

    def __float__(self) -> float:
        return self.value


@dataclass(frozen=True)
class MutualInfoInstance:
    ensemble: Ensemble
    measurement: Measurement
    joint: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def build(cls, ensemble: Ensemble, measurement: Measurement) -> "MutualInfoInstance":
        _same(ensemble.space, measurement.space)
        joint = tuple(tuple(w * e(s) for e in measurement.effects) for w, s in ensemble.items)
        assert sum(map(sum, joint), ZERO) == 1
        return cls(ensemble, measurement, joint)

    @property
    def value(self) -> float:
        rows = [sum(r, ZERO) for r in self.joint]
        cols = [sum(c, ZERO) for c in zip(*self.joint)]
        flat = [x for r in self.joint for x in r]
        return shannon_entropy(rows) + shannon_entropy(cols) - shannon_entropy(flat)


def mutual_information(ensemble: Ensemble, measurement: Measurement) -> float:
    """``H(X:J)`` of the joint distribution ``p_x m_j(s_x)``."""
    return MutualInfoInstance.build(ensemble, measurement).value


def _needs_two(space: StateSpace) -> None:
    if len(space) < 2:
        raise DegenerateSpace("S1 and S2 need a space with at least two states")


def _clamp(x: float) -> float:
    return 0.0 if -1e-12 < x < 0 else x


# S1 --------------------------------------------------------------------------


def s1(s: State) -> EntropyValue:
    """Minimum outcome entropy over indecomposable measurements."""
    _needs_two(s.space)
    wp = rays_of(s.space).weights
    a = wp.ray_values(s)
    best = None
    for lam in wp.vertices:
        h = shannon_entropy([w * x for w, x in zip(lam, a)])
        if best is None or h < best[0]:
            best = (h, lam)
    return EntropyValue(_clamp(best[0]), "vertex-exact", {"weights": best[1]})


# S3 --------------------------------------------------------------------------


@lru_cache(maxsize=64)
def _decomposition_rows(space: StateSpace) -> tuple:
    cols = space.vertex_barycentric
    return tuple(tuple(c[i] for c in cols) for i in range(space.affine_dim + 1))


def decomposition_vertices(s: State) -> list[tuple[Fraction, ...]]:
    """Vertices of ``{p >= 0 : sum p_x v_x = s}`` over the distinct pure states."""
    rows = _decomposition_rows(s.space)
    n = len(s.space)
    eqs = tuple((r, b) for r, b in zip(rows, s.barycentric))
    ineqs = tuple((tuple(Fraction(int(i == j)) for j in range(n)), ZERO) for i in range(n))
    return vertex_enumeration(HSystem(n, eqs, ineqs))


def s3(s: State) -> EntropyValue:
    """Minimum preparation entropy over pure-state decompositions."""
    best = None
    for p in decomposition_vertices(s):
        h = shannon_entropy(p)
        if best is None or h < best[0]:
            best = (h, p)
    return EntropyValue(_clamp(best[0]), "vertex-exact", {"ensemble": best[1]})


# S2 --------------------------------------------------------------------------


def _mi_matrix(s: State) -> tuple[np.ndarray, np.ndarray, list, list]:
    """``C[x, k] = g(a_k(s)) - g(a_k(v_x))`` and ray values at vertices."""
    rays = rays_of(s.space)
    a_s = [r(s) for r in rays.rays]
    a_v = np.array([[float(v) for v in r.vertex_values] for r in rays.rays]).T  # V x K
    gs = np.array([_g(x) for x in a_s])
    gv = np.vectorize(_g)(a_v) if a_v.size else a_v
    return gs[None, :] - gv, a_v, rays.weights.vertices, decomposition_vertices(s)


def _mi_direct(p: np.ndarray, lam: np.ndarray, a_v: np.ndarray) -> float:
    joint = p[:, None] * a_v * lam[None, :]

    def h(x):
        x = x[x > 0]
        return float(-(x * np.log2(x)).sum())

    return h(joint.sum(axis=1)) + h(joint.sum(axis=0)) - h(joint.ravel())


def _hill_climb(wv: np.ndarray, dv: np.ndarray, a_v: np.ndarray, rng, restarts: int, steps: int) -> float:
    """Maximise MI over convex combinations of the vertex lists."""
    best = 0.0
    nw, nd = len(wv), len(dv)
    for _ in range(restarts):
        cw, cd = rng.dirichlet(np.ones(nw)), rng.dirichlet(np.ones(nd))
        cur = _mi_direct(cd @ dv, cw @ wv, a_v)
        step = 0.5
        for _ in range(steps):
            tw = np.abs(cw + step * rng.normal(size=nw))
            td = np.abs(cd + step * rng.normal(size=nd))
            tw, td = tw / tw.sum(), td / td.sum()
            val = _mi_direct(td @ dv, tw @ wv, a_v)
            if val > cur:
                cw, cd, cur = tw, td, val
            else:
                step = max(step * 0.9, 1e-3)
        best = max(best, cur)
    return best


def s2(s: State, *, search: bool = True, seed: int = 0, restarts: int = 3, steps: int = 60) -> EntropyValue:
    """Maximum accessible information over pure-state preparations of ``s``.

    ``witness`` holds the optimal ensemble (over ``space.vertices``) and ray
    weights, plus ``vertex_max``, ``search_max`` and their ``gap``.
    """
    _needs_two(s.space)
    c, a_v, wverts, dverts = _mi_matrix(s)
    best = None
    for p in dverts:
        pf = np.array([float(x) for x in p])
        row = pf @ c
        for lam in wverts:
            val = float(row @ np.array([float(x) for x in lam]))
            if best is None or val > best[0]:
                best = (val, p, lam)
    witness: dict[str, Any] = {"ensemble": best[1], "weights": best[2], "vertex_max": best[0]}
    if search:
        rng = np.random.default_rng(seed)
        wv = np.array([[float(x) for x in v] for v in wverts])
        dv = np.array([[float(x) for x in v] for v in dverts])
        found = _hill_climb(wv, dv, a_v, rng, restarts, steps)
        witness["search_max"] = found
        witness["gap"] = found - best[0]
    # attained by the witness, so a certified lower bound; optimality is unproven
    return EntropyValue(_clamp(best[0]), "heuristic", witness)


def reevaluate(kind: str, ev: EntropyValue, s: State) -> float:
    """Recompute an entropy value from its witness, independently of the optimiser."""
    space = s.space
    if kind == "s1":
        m = rays_of(space).weights.measurement(ev.witness["weights"])
        return shannon_entropy(m.probabilities(s))
    if kind == "s3":
        p = ev.witness["ensemble"]
        recon = [sum((w * v[i] for w, v in zip(p, space.vertices)), ZERO) for i in range(space.ambient_dim)]
        assert tuple(recon) == s.coords
        return shannon_entropy(p)
    if kind == "s2":
        p = ev.witness["ensemble"]
        ens = Ensemble((w, State(space, v)) for w, v in zip(p, space.vertices) if w)
        m = rays_of(space).weights.measurement(ev.witness["weights"])
        return mutual_information(ens, m)
    raise ValueError(kind)


# closed forms ----------------------------------------------------------------


def square_closed_forms(c1, c2) -> tuple[float, float, float]:
    """``(S1, S2, S3)`` on the square at ``(c1, c2)``."""
    c1, c2 = to_fraction(c1), to_fraction(c2)
    if not (0 <= c1 <= 1 and 0 <= c2 <= 1):
        raise OutOfRange("square coordinates must lie in [0, 1]")
    h1, h2 = binary_entropy(c1), binary_entropy(c2)
    p_lo, p_hi = max(ZERO, c1 + c2 - 1), min(c1, c2)
    s3v = min(shannon_entropy([p, c1 - p, c2 - p, 1 - c1 - c2 + p]) for p in (p_lo, p_hi))
    return min(h1, h2), max(h1, h2), s3v


# checks ----------------------------------------------------------------------


def check_weak_concavity(ensemble: Ensemble, tol: float = 1e-6) -> Report:
    """The four weak-concavity bounds on ``S2`` of a mixture."""
    lhs = s2(ensemble.barycenter, search=False).value
    p = [float(w) for w in ensemble.weights]
    vals = [s2(x, search=False).value for x in ensemble.states]
    total = math.fsum(pi * v for pi, v in zip(p, vals))
    rep = Report("weak-concavity")
    rhs1 = math.fsum(pi * pi * v * v for pi, v in zip(p, vals)) / total if total > 0 else 0.0
    rep.add("S2 >= sum p^2 S2^2 / sum p S2", rhs1, lhs, tol)
    rep.add("S2 >= sum p^2 S2", math.fsum(pi * pi * v for pi, v in zip(p, vals)), lhs, tol)
    rep.add("S2 >= (1/|X|) sum p S2", total / len(p), lhs, tol)
    rep.add("S2 >= max p S2", max(pi * v for pi, v in zip(p, vals)), lhs, tol)
    return rep


def check_s3_subadditivity(ensemble: Ensemble, tol: float = 1e-9) -> Report:
    lhs = s3(ensemble.barycenter).value
    p = [float(w) for w in ensemble.weights]
    rhs = shannon_entropy(ensemble.weights) + math.fsum(pi * s3(x).value for pi, x in zip(p, ensemble.states))
    rep = Report("s3-subadditivity")
    rep.add("S3(sum p s) <= H(p) + sum p S3(s)", lhs, rhs, tol)
    return rep


def check_s1_concavity(ensemble: Ensemble, tol: float = 1e-6) -> Report:
    lhs = s1(ensemble.barycenter).value
    rhs = math.fsum(float(w) * s1(x).value for w, x in ensemble.items)
    rep = Report("s1-concavity")
    rep.add("sum p S1(s) <= S1(sum p s)", rhs, lhs, tol)
    return rep


@lru_cache(maxsize=64)
def _facets(space: StateSpace):
    return facet_enumeration(space.polytope).inequalities


def facet_slacks(s: State) -> list[Fraction]:
    return [dot(a, s.coords) - b for a, b in _facets(s.space)]


def check_boundary(s: State, threshold: float = 1e-9) -> Report:
    """If ``S1(s)`` vanishes, some facet inequality must be tight at ``s``."""
    val = s1(s).value
    rep = Report("s1-boundary", notes={"S1": val, "claim": val < threshold})
    if val < threshold:
        rep.add("min facet slack <= 0", min(facet_slacks(s)), ZERO)
    return rep
