from __future__ import annotations

import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.linalg import sqrtm

from gptlab.distinguish import d_c, f_c
from gptlab.errors import InvalidState
from gptlab.qoracle import QubitState, fidelity_q, holevo_chi, trace_distance, von_neumann_entropy
from gptlab.sampling import random_qubit

seeds = st.integers(0, 2**32 - 1)


def qubits(seed, n=2):
    rng = random.Random(seed)
    return [random_qubit(rng, pure=rng.random() < 0.3) for _ in range(n)]


def dense_trace_distance(a, b) -> float:
    diff = QubitState(a).density() - QubitState(b).density()
    return 0.5 * float(np.abs(np.linalg.eigvalsh(diff)).sum())


def dense_fidelity(a, b) -> float:
    ra = sqrtm(QubitState(a).density())
    m = ra @ QubitState(b).density() @ ra
    return float(np.real(np.trace(sqrtm(m))))


def dense_entropy(a) -> float:
    lam = np.linalg.eigvalsh(QubitState(a).density())
    return float(-sum(x * math.log2(x) for x in lam if x > 1e-15))


@given(seeds)
def test_trace_distance_matches_matrices(seed):
    a, b = qubits(seed)
    assert trace_distance(a, b) == pytest.approx(dense_trace_distance(a, b), abs=1e-12)


@given(seeds)
def test_fidelity_matches_matrices(seed):
    a, b = qubits(seed)
    assert fidelity_q(a, b) == pytest.approx(dense_fidelity(a, b), abs=1e-6)


@given(seeds)
def test_entropy_matches_eigenvalues(seed):
    (a,) = qubits(seed, 1)
    assert von_neumann_entropy(a) == pytest.approx(dense_entropy(a), abs=1e-9)


def test_examples():
    up, down, plus = (0, 0, 1), (0, 0, -1), (1, 0, 0)
    assert trace_distance(up, down) == 1.0
    assert fidelity_q(up, down) == 0.0
    assert fidelity_q(up, plus) == pytest.approx(math.sqrt(0.5), abs=1e-15)
    assert von_neumann_entropy((0, 0, 0)) == 1.0
    assert von_neumann_entropy(up) == 0.0
    assert holevo_chi([0.5, 0.5], [up, down]) == 1.0
    with pytest.raises(InvalidState):
        QubitState((1, 1, 0))


@given(seeds)
def test_fuchs_van_de_graaf(seed):
    a, b = qubits(seed)
    d, f = trace_distance(a, b), fidelity_q(a, b)
    assert 1 - f <= d + 1e-9
    assert d <= math.sqrt(max(0.0, 1 - f * f)) + 1e-9


@given(seeds, st.integers(1, 4))
def test_holevo_bounds(seed, n):
    rng = random.Random(seed)
    states = [random_qubit(rng) for _ in range(n)]
    w = [rng.random() + 0.01 for _ in range(n)]
    w = [x / sum(w) for x in w]
    chi = holevo_chi(w, states)
    bary = tuple(sum(p * s[i] for p, s in zip(w, states)) for i in range(3))
    assert -1e-12 <= chi <= von_neumann_entropy(bary) + 1e-12
    pure = [random_qubit(rng, pure=True) for _ in range(n)]
    bary = tuple(sum(p * s[i] for p, s in zip(w, pure)) for i in range(3))
    assert holevo_chi(w, pure) == pytest.approx(von_neumann_entropy(bary), abs=1e-9)


# dyadic spectra keep the float Bloch vectors exact
dyadic = st.integers(0, 2**20).map(lambda k: Fraction(k, 2**20))


@given(dyadic, dyadic)
def test_commuting_pairs_are_classical(p, q):
    a, b = (0, 0, float(2 * p - 1)), (0, 0, float(2 * q - 1))
    assert trace_distance(a, b) == pytest.approx(float(d_c([p, 1 - p], [q, 1 - q])), abs=1e-12)
    assert fidelity_q(a, b) == pytest.approx(f_c([p, 1 - p], [q, 1 - q]), abs=1e-12)
