"""Distance and fidelity between square states.

D is an exact LP over the effect polytope and comes back as a Fraction with
its optimal effect. F minimises a classical fidelity over indecomposable
measurements; it is bounded by 1 - F <= D <= sqrt(1 - F^2).
"""

from __future__ import annotations

from fractions import Fraction as Fr

from gptlab.distinguish import check_distance_fidelity_relation, fidelity, kolmogorov_distance, success_probability
from gptlab.model import State, build_hypercuboid

sq = build_hypercuboid(2)
pairs = [
    ((0, 0), (1, 1)),
    ((0, 0), (1, 0)),
    ((0, 0), (Fr(1, 2), Fr(1, 2))),
    ((Fr(1, 4), Fr(1, 3)), (Fr(2, 3), Fr(1, 5))),
]
for a, b in pairs:
    s, t = State(sq, a), State(sq, b)
    d = kolmogorov_distance(s, t)
    f = fidelity(s, t)
    rep = check_distance_fidelity_relation(s, t)
    print(f"{tuple(map(str, a))} vs {tuple(map(str, b))}:")
    print(f"  D = {d.value}  (optimal effect values {[str(x) for x in d.optimal_effect.vertex_values]})")
    print(f"  Ps = {success_probability(s, t)}  F = {f.value:.6f}  bounds hold: {rep.passed}")
