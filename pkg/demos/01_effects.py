"""Effects on the square and the skew square.

The square is the state space of a gbit. Its effect polytope has six vertices:
the zero and unit effects plus four indecomposable rays, one per edge.
"""

from __future__ import annotations

from gptlab.effects import find_complete_measurement, indecomposable_rays, pure_effects
from gptlab.model import build_hypercuboid, build_skew_square

for space in (build_hypercuboid(2), build_skew_square()):
    print(f"== {space.name}: vertices {[tuple(map(str, v)) for v in space.vertices]}")
    print(f"pure effects: {len(pure_effects(space))}")
    rays = indecomposable_rays(space)
    for k, r in enumerate(rays.rays):
        print(f"  ray {k}: values on vertices {[str(x) for x in r.vertex_values]}")
    # every point of the weight polytope is an indecomposable measurement
    print(f"weight polytope vertices: {[[str(x) for x in v] for v in rays.weights.vertices]}")
    search = find_complete_measurement(space, rays)
    print(f"complete measurement: {search.found} (multiplicities {search.multiplicities}, {search.nodes} nodes)")
