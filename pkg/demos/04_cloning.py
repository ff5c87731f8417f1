"""Cloning in the minimal tensor product.

A pair of states can be cloned exactly when it is identical or perfectly
distinguishable. A single channel cloning every pure state exists only on a
simplex.
"""

from __future__ import annotations

from fractions import Fraction as Fr

from gptlab.composite import build_cloner, min_tensor, universal_pure_cloner
from gptlab.model import State, build_classical, build_hypercuboid

sq = build_hypercuboid(2)
p = min_tensor(sq, sq)
print(f"square x square: {len(p.product)} vertices, affine dimension {p.product.affine_dim}")
for a, b in (((0, 0), (1, 1)), ((0, 0), (1, 0)), ((0, 0), (Fr(1, 2), Fr(1, 2)))):
    res = build_cloner(State(sq, a), State(sq, b), p)
    verdict = "cloner found" if res else f"no cloner (D = {res.distance}, F = {res.fidelity:.6f})"
    print(f"  {tuple(map(str, a))}, {tuple(map(str, b))}: {verdict}")

for space in (build_classical(3), sq):
    ch = universal_pure_cloner(space)
    print(f"universal pure cloner on {space.name}: {'yes' if ch is not None else 'none'}")
