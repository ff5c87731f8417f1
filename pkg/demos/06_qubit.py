"""Qubit reference values next to the classical bit.

Commuting qubit states behave like coins, so trace distance and fidelity
reduce to their classical counterparts.
"""

from __future__ import annotations

from fractions import Fraction as Fr

from gptlab.distinguish import d_c, f_c
from gptlab.qoracle import fidelity_q, holevo_chi, trace_distance, von_neumann_entropy

up, plus = (0.0, 0.0, 1.0), (1.0, 0.0, 0.0)
a, b = (0.0, 0.0, 0.5), (0.0, 0.0, -0.25)
# Bloch z = 2p - 1
p, q = [Fr(3, 4), Fr(1, 4)], [Fr(3, 8), Fr(5, 8)]
print(f"|0> vs |+>: T = {trace_distance(up, plus):.6f}, F = {fidelity_q(up, plus):.6f}")
print(f"commuting pair: T = {trace_distance(a, b):.6f} vs d_c = {float(d_c(p, q)):.6f}")
print(f"                F = {fidelity_q(a, b):.6f} vs f_c = {f_c(p, q):.6f}")
print(f"S(maximally mixed) = {von_neumann_entropy((0, 0, 0))}, chi(|0>,|+>) = {holevo_chi([0.5, 0.5], [up, plus]):.6f}")
