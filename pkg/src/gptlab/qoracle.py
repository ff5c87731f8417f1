"""Closed-form qubit quantities, used only to cross-check GPT formulas.

Qubits are given by Bloch vectors ``r`` with ``rho = (I + r . sigma) / 2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InvalidState

_TOL = 1e-12


@dataclass(frozen=True)
class QubitState:
    bloch: tuple[float, float, float]

    def __post_init__(self):
        r = tuple(float(x) for x in self.bloch)
        if len(r) != 3 or not all(math.isfinite(x) for x in r):
            raise InvalidState("a Bloch vector has three finite components")
        if math.hypot(*r) > 1 + _TOL:
            raise InvalidState(f"|r| = {math.hypot(*r)} exceeds 1")
        object.__setattr__(self, "bloch", r)

    @property
    def radius(self) -> float:
        return min(1.0, math.hypot(*self.bloch))

    @property
    def det(self) -> float:
        """``det rho = (1 - |r|)(1 + |r|) / 4``; the factored form keeps
        precision for nearly pure states."""
        r = self.radius
        return max(0.0, (1.0 - r) * (1.0 + r) / 4.0)

    def is_pure(self, tol: float = 1e-9) -> bool:
        return abs(self.radius - 1.0) <= tol

    def density(self) -> np.ndarray:
        x, y, z = self.bloch
        return 0.5 * np.array([[1 + z, x - 1j * y], [x + 1j * y, 1 - z]])


def _q(x) -> QubitState:
    return x if isinstance(x, QubitState) else QubitState(tuple(x))


def trace_distance(rho, sigma) -> float:
    """``tr|rho - sigma| / 2`` = half the Bloch distance."""
    a, b = _q(rho), _q(sigma)
    return min(1.0, 0.5 * math.dist(a.bloch, b.bloch))


def fidelity_q(rho, sigma) -> float:
    """``tr|sqrt(rho) sqrt(sigma)| = sqrt(tr(rho sigma) + 2 sqrt(det rho det sigma))``."""
    a, b = _q(rho), _q(sigma)
    overlap = 0.5 * (1.0 + sum(x * y for x, y in zip(a.bloch, b.bloch)))
    return min(1.0, math.sqrt(max(0.0, overlap + 2.0 * math.sqrt(a.det * b.det))))


def von_neumann_entropy(rho) -> float:
    """Entropy in bits from the eigenvalues ``(1 +- |r|) / 2``."""
    r = _q(rho).radius
    out = 0.0
    for lam in ((1 + r) / 2, (1 - r) / 2):
        if lam > 0:
            out -= lam * math.log2(lam)
    return out


def holevo_chi(weights: Sequence[float], states: Sequence) -> float:
    """``S(sum p rho) - sum p S(rho)``."""
    states = [_q(s) for s in states]
    p = [float(w) for w in weights]
    if len(p) != len(states) or any(w < 0 for w in p) or abs(sum(p) - 1) > 1e-9:
        raise InvalidState("weights must be nonnegative and sum to 1")
    bary = tuple(sum(w * s.bloch[i] for w, s in zip(p, states)) for i in range(3))
    return von_neumann_entropy(bary) - math.fsum(w * von_neumann_entropy(s) for w, s in zip(p, states))
