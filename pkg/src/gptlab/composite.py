"""Minimal tensor products, channels and the cloning construction.

Product states are embedded homogeneously: ``(1, x) (x) (1, y)`` flattened
with the leading 1 dropped, so a point of ``R^n (x) R^m`` becomes a point of
``R^{(n+1)(m+1)-1}``.  Unlike the plain Kronecker product of the ambient
coordinates this keeps both marginals recoverable for any state space.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .distinguish import fidelity, kolmogorov_distance
from .errors import DegenerateSpace, SpaceMismatch
from .model import (
    Effect,
    Measurement,
    State,
    StateSpace,
    _same,
    apply_map,
    to_document,
    verify_channel,
)
from .polytope import AffineMap, VPolytope
from .reports import Report

ZERO = Fraction(0)
ONE = Fraction(1)


def _embed(x: Sequence[Fraction], y: Sequence[Fraction]) -> tuple[Fraction, ...]:
    xh, yh = (ONE,) + tuple(x), (ONE,) + tuple(y)
    return tuple(a * b for a in xh for b in yh)[1:]


@dataclass(frozen=True)
class ProductSpace:
    factor_a: StateSpace
    factor_b: StateSpace
    product: StateSpace

    def embed(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> tuple[Fraction, ...]:
        return _embed(x, y)

    def _index(self, i: int, j: int) -> int:
        return i * (self.factor_b.ambient_dim + 1) + j - 1


def min_tensor(a: StateSpace, b: StateSpace) -> ProductSpace:
    """Convex hull of all product vertices ``v (x) w``."""
    verts = tuple(_embed(v, w) for v in a.vertices for w in b.vertices)
    return ProductSpace(a, b, StateSpace(VPolytope(verts), f"{a.name}*{b.name}"))


def product_state(s: State, t: State, p: ProductSpace) -> State:
    _same(s.space, p.factor_a)
    _same(t.space, p.factor_b)
    cert = tuple(x * y for x in s.certificate for y in t.certificate)
    return State(p.product, _embed(s.coords, t.coords), cert)


def product_effect(e: Effect, f: Effect, p: ProductSpace) -> Effect:
    """The functional ``(e (x) f)(x (x) y) = e(x) f(y)``."""
    _same(e.space, p.factor_a)
    _same(f.space, p.factor_b)
    he = (e.constant,) + tuple(e.linear)
    hf = (f.constant,) + tuple(f.linear)
    coeffs = [a * b for a in he for b in hf]
    return Effect(p.product, coeffs[1:], coeffs[0])


def product_measurement(m: Measurement, n: Measurement, p: ProductSpace) -> Measurement:
    return Measurement(product_effect(e, f, p) for e in m.effects for f in n.effects)


def marginal(omega: State, side: str, p: ProductSpace) -> State:
    """Reduced state on factor ``"A"`` or ``"B"``."""
    _same(omega.space, p.product)
    x = omega.coords
    if side == "A":
        return State(p.factor_a, [x[p._index(i, 0)] for i in range(1, p.factor_a.ambient_dim + 1)])
    if side == "B":
        return State(p.factor_b, [x[p._index(0, j)] for j in range(1, p.factor_b.ambient_dim + 1)])
    raise ValueError("side must be 'A' or 'B'")


@dataclass(frozen=True)
class Channel:
    """Affine map sending every source vertex into the target space."""

    map: AffineMap
    source: StateSpace
    target: StateSpace
    verified: bool = field(default=False)

    def __post_init__(self):
        verify_channel(self.map, self.source, self.target)
        object.__setattr__(self, "verified", True)

    def __call__(self, s: State) -> State:
        return apply_map(self.map, self.source, self.target, s)

    def compose(self, inner: "Channel") -> "Channel":
        """``self o inner``."""
        _same(inner.target, self.source)
        return Channel(self.map.compose(inner.map), inner.source, self.target)

    def to_document(self) -> dict:
        doc = to_document(self.map)
        doc.update(type="channel", source=self.source.name, target=self.target.name)
        return doc


@dataclass(frozen=True)
class CannotClone:
    """No channel clones the pair: ``0 < D < 1`` and ``0 < F < 1``."""

    fidelity: float
    distance: Fraction

    def __bool__(self) -> bool:
        return False


def build_cloner(s1: State, s2: State, p: ProductSpace | None = None) -> Channel | CannotClone:
    """A channel with ``L(s_i) = s_i (x) s_i`` when one exists.

    Equal states use the preparation ``s -> s (x) s1``; perfectly
    distinguishable ones use measure-and-prepare with the optimal effect.
    """
    _same(s1.space, s2.space)
    space = s1.space
    p = p or min_tensor(space, space)
    n = space.ambient_dim
    if s1 == s2:
        # (1, x) (x) (1, s1): row (i, j) reads x_i * s1h_j
        s1h = (ONE,) + s1.coords
        rows, offset = [], []
        for i in range(n + 1):
            for j in range(n + 1):
                if (i, j) == (0, 0):
                    continue
                rows.append([s1h[j] if c == i - 1 else ZERO for c in range(n)])
                offset.append(s1h[j] if i == 0 else ZERO)
        ch = Channel(AffineMap(tuple(map(tuple, rows)), tuple(offset)), space, p.product)
    else:
        dist = kolmogorov_distance(s1, s2)
        if dist.value != 1:
            return CannotClone(fidelity(s1, s2).value, dist.value)
        e = dist.optimal_effect
        t1, t2 = _embed(s1.coords, s1.coords), _embed(s2.coords, s2.coords)
        diff = [a - b for a, b in zip(t1, t2)]
        lin, c = e.linear, e.constant
        rows = tuple(tuple(d * l for l in lin) for d in diff)
        offset = tuple(b + c * d for b, d in zip(t2, diff))
        ch = Channel(AffineMap(rows, offset), space, p.product)
    assert ch(s1) == product_state(s1, s1, p)
    assert ch(s2) == product_state(s2, s2, p)
    return ch


def universal_pure_cloner(space: StateSpace, p: ProductSpace | None = None) -> Channel | None:
    """One channel cloning every pure state, or None when none exists.

    Such a channel needs a measurement with ``m_i(v_j) = delta_ij`` on all
    vertices (at least two); this exists exactly when the vertices are
    affinely independent, i.e. the space is a simplex.
    """
    from .symmetry import distinguishable_index_sets

    p = p or min_tensor(space, space)
    n = len(space)
    if not space.is_simplex():
        assert not distinguishable_index_sets(space, n)
        return None
    effs = [Effect.from_vertex_values(space, [Fraction(int(i == j)) for j in range(n)]) for i in range(n)]
    from .sampling import measure_and_prepare

    outs = [product_state(v, v, p) for v in space.pure_states()]
    ch = measure_and_prepare(Measurement(effs), outs, space, p.product)
    for v, o in zip(space.pure_states(), outs):
        assert ch(v) == o
    return ch


@dataclass(frozen=True)
class Witness:
    s1: State
    s: State
    fidelity: float
    bound: float = 0.5


def non_distinguishable_witness(space: StateSpace) -> Witness:
    """A pure state and its midpoint with another pure state; ``F >= 1/2``."""
    if len(space) < 2:
        raise DegenerateSpace("need at least two states")
    a = State(space, space.vertices[0])
    b = State(space, space.vertices[-1])
    mid = State.from_mixture([Fraction(1, 2), Fraction(1, 2)], [a, b])
    return Witness(a, mid, fidelity(a, mid).value)


def check_fidelity_product_laws(s1: State, s2: State, t1: State, t2: State, tol: float = 1e-6) -> Report:
    """Bipartite fidelity laws on product states of ``A (x) B``."""
    if s1.space != s2.space or t1.space != t2.space:
        raise SpaceMismatch("pairs must share their spaces")
    p = min_tensor(s1.space, t1.space)
    w1, w2 = product_state(s1, t1, p), product_state(s2, t2, p)
    fs, ft, fw = fidelity(s1, s2).value, fidelity(t1, t2).value, fidelity(w1, w2).value
    rep = Report("fidelity-product")
    rep.add("F(w) <= F(marginal A)", fw, fidelity(marginal(w1, "A", p), marginal(w2, "A", p)).value, tol)
    rep.add("F(w) <= F(marginal B)", fw, fidelity(marginal(w1, "B", p), marginal(w2, "B", p)).value, tol)
    rep.add("F(s1 t1, s2 t2) <= F(s1,s2) F(t1,t2)", fw, fs * ft, tol)
    if t1 == t2:
        rep.add("F(s1 t, s2 t) >= F(s1,s2)", fs, fw, tol)
        rep.add("F(s1 t, s2 t) <= F(s1,s2)", fw, fs, tol)
    if s1.space == t1.space:
        q = p if (s1.space == t1.space) else min_tensor(s1.space, s1.space)
        fss = fidelity(product_state(s1, s1, q), product_state(s2, s2, q)).value
        rep.add("F(s s, t t) <= F(s,t)^2", fss, fs * fs, tol)
    return rep
