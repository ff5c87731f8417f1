"""Automorphisms, distinguishable tuples and strong equality.

The square is symmetric: all eight dihedral maps permute its vertices and act
transitively on them. Its distinguishable pure pairs nonetheless fall into two
orbits (edges and diagonals), so strong equality fails.
"""

from __future__ import annotations

from gptlab.model import build_classical, build_hypercuboid, build_skew_square
from gptlab.symmetry import automorphisms, distinguishable_pure_tuples, is_symmetric, satisfies_strong_equality

for space in (build_classical(3), build_hypercuboid(2), build_skew_square()):
    g = automorphisms(space)
    sym = is_symmetric(space, g)
    print(f"{space.name}: group order {g.order}, symmetric {bool(sym)}")

sq = build_hypercuboid(2)
pairs = distinguishable_pure_tuples(sq, 2)
print(f"square: {len(pairs)} distinguishable pure pairs")
rep = satisfies_strong_equality(sq)
print(f"strong equality (ordered) {rep.ordered}, (unordered) {rep.unordered}")
print("first counterexample:", rep.to_dict()["ordered_counterexamples"][0])
