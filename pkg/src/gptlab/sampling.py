"""Seeded random instances: rational states, ensembles, measurements, channels."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .composite import Channel
from .distinguish import rays_of
from .model import Effect, Ensemble, Measurement, State, StateSpace
from .polytope import AffineMap
from .polytope.linalg import combination

ZERO = Fraction(0)
ONE = Fraction(1)


def random_weights(rng: random.Random, n: int, denom: int = 12, positive: bool = False) -> list[Fraction]:
    """Random rational probability vector of length ``n``."""
    lo = 1 if positive else 0
    while True:
        ks = [rng.randint(lo, denom) for _ in range(n)]
        total = sum(ks)
        if total:
            return [Fraction(k, total) for k in ks]


def random_state(space: StateSpace, rng: random.Random, denom: int = 12, mixed: bool = False) -> State:
    """Random convex combination of the vertices; ``mixed`` uses all of them with positive weight."""
    w = random_weights(rng, len(space), denom, positive=mixed)
    return State(space, combination(w, space.vertices), tuple(w))


def random_pair(space: StateSpace, rng: random.Random) -> tuple[State, State]:
    """Two states, sometimes pure, sometimes equal, mostly generic."""
    kind = rng.random()
    a = random_state(space, rng)
    if kind < 0.1:
        return a, a
    if kind < 0.3:
        v = space.pure_states()
        return rng.choice(v), rng.choice(v)
    return a, random_state(space, rng)


def random_ensemble(space: StateSpace, rng: random.Random, size: int | None = None) -> Ensemble:
    size = size or rng.randint(1, 4)
    w = random_weights(rng, size, positive=True)
    return Ensemble((wi, random_state(space, rng)) for wi in w)


def random_indecomposable_measurement(space: StateSpace, rng: random.Random) -> Measurement:
    wp = rays_of(space).weights
    verts = wp.vertices
    c = random_weights(rng, len(verts))
    return wp.measurement(combination(c, verts))


def random_measurement(space: StateSpace, rng: random.Random) -> Measurement:
    """An indecomposable measurement whose effects are randomly split and merged."""
    effects = list(random_indecomposable_measurement(space, rng).effects)
    pieces: list[Effect] = []
    for e in effects:
        if rng.random() < 0.5:
            q = Fraction(rng.randint(1, 5), 6)
            pieces.extend([e * q, e * (1 - q)])
        else:
            pieces.append(e)
    rng.shuffle(pieces)
    merged: list[Effect] = []
    while pieces:
        e = pieces.pop()
        if pieces and rng.random() < 0.4:
            e = e + pieces.pop()
        merged.append(e)
    return Measurement(merged)


def measure_and_prepare(m: Measurement, outputs: Sequence[State], source: StateSpace, target: StateSpace) -> Channel:
    """``x -> sum_j m_j(x) t_j``."""
    n = target.ambient_dim
    matrix = [[ZERO] * source.ambient_dim for _ in range(n)]
    offset = [ZERO] * n
    for e, t in zip(m.effects, outputs):
        lin, c = e.linear, e.constant
        for i in range(n):
            offset[i] += c * t.coords[i]
            for j in range(source.ambient_dim):
                matrix[i][j] += lin[j] * t.coords[i]
    return Channel(AffineMap(tuple(map(tuple, matrix)), tuple(offset)), source, target)


def contraction(space: StateSpace, q: Fraction, centre: State) -> Channel:
    """``x -> q x + (1 - q) centre``."""
    n = space.ambient_dim
    m = tuple(tuple(q if i == j else ZERO for j in range(n)) for i in range(n))
    off = tuple((1 - q) * c for c in centre.coords)
    return Channel(AffineMap(m, off), space, space)


def random_channel(source: StateSpace, target: StateSpace, rng: random.Random) -> Channel:
    """Measure-and-prepare, contraction, automorphism or coordinate projection."""
    kind = rng.random()
    if source == target and kind < 0.25:
        return contraction(source, Fraction(rng.randint(0, 6), 6), random_state(source, rng))
    if source == target and kind < 0.45 and len(source) <= 8:
        from .symmetry import automorphisms

        g = automorphisms(source)
        return Channel(rng.choice(g.elements), source, source)
    if source == target and kind < 0.6 and source.name.startswith(("square", "hypercuboid")):
        n = source.ambient_dim
        keep = rng.randrange(n)
        m = tuple(tuple(ONE if (i == j and i != keep) else ZERO for j in range(n)) for i in range(n))
        return Channel(AffineMap(m, (ZERO,) * n), source, source)
    meas = random_measurement(source, rng)
    outs = [random_state(target, rng) for _ in meas.effects]
    return measure_and_prepare(meas, outs, source, target)


def random_qubit(rng: random.Random, pure: bool = False) -> tuple[float, float, float]:
    while True:
        v = [rng.uniform(-1, 1) for _ in range(3)]
        n = sum(x * x for x in v) ** 0.5
        if 0 < n <= 1:
            break
    if pure:
        return tuple(x / n for x in v)
    return tuple(v)
