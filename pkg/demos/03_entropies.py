"""Three entropies on the square.

S1 is the least measurement entropy, S3 the least preparation entropy and S2
the largest accessible information. On the square they have closed forms in
terms of the binary entropy, which this script prints next to the computed
values on a coarse grid.
"""

from __future__ import annotations

from fractions import Fraction as Fr

from gptlab.entropy import s1, s2, s3, square_closed_forms
from gptlab.model import State, build_hypercuboid, build_skew_square

sq = build_hypercuboid(2)
print(" c1   c2    S1      S2      S3     (closed forms)")
for i in range(0, 5):
    for j in range(i, 5):
        c1, c2 = Fr(i, 4), Fr(j, 4)
        st = State(sq, (c1, c2))
        vals = (s1(st).value, s2(st).value, s3(st).value)
        ref = square_closed_forms(c1, c2)
        print(f"{str(c1):>4} {str(c2):>4}  " + "  ".join(f"{v:.4f}" for v in vals) + "   " + " ".join(f"{v:.4f}" for v in ref))

centre = State(build_skew_square(), (0, 0))
ev = s1(centre)
print(f"\nskew square at the origin: S1 = {ev.value:.12f} via {ev.method}")
print(f"optimal measurement weights on the rays: {[str(x) for x in ev.witness['weights']]}")
