from __future__ import annotations

from fractions import Fraction as Fr
from itertools import combinations

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st
from scipy.optimize import linprog
from scipy.spatial import ConvexHull

from gptlab.errors import Empty, Infeasible, NotPointed, Unbounded
from gptlab.polytope import (
    HSystem,
    VPolytope,
    affine_hull,
    convex_coefficients,
    extreme_indices,
    extreme_rays,
    facet_enumeration,
    feasible_point,
    lp_solve,
    membership,
    vertex_enumeration,
)
from gptlab.polytope.linalg import dot, inverse, matmul, nullspace, primitive, rank, solve, to_fraction

coord = st.integers(-4, 4)


def cloud(dim: int, lo: int = 4, hi: int = 9):
    return st.lists(st.tuples(*[coord] * dim), min_size=lo, max_size=hi, unique=True)


def full_dim(points, dim) -> bool:
    a = np.array(points, dtype=float)
    return np.linalg.matrix_rank(a[1:] - a[0]) == dim


def scipy_facets(points) -> set[tuple[float, ...]]:
    hull = ConvexHull(np.array(points, dtype=float))
    out = set()
    for eq in hull.equations:  # n . x + c <= 0 inside
        n, c = -eq[:-1], eq[-1]  # a . x >= c
        k = np.abs(n).max()
        out.add(tuple(np.round(np.append(n, c) / k, 9) + 0.0))
    return out


def our_facets(points) -> set[tuple[float, ...]]:
    h = facet_enumeration(VPolytope(points))
    out = set()
    for a, b in h.inequalities:  # a . x >= b
        k = max(abs(x) for x in a)
        out.add(tuple(np.round(np.array([float(x / k) for x in a] + [float(b / k)]), 9) + 0.0))
    return out


# linear algebra --------------------------------------------------------------


def test_to_fraction_rejects_floats():
    assert to_fraction("3/4") == Fr(3, 4)
    assert to_fraction(2) == 2
    with pytest.raises(TypeError):
        to_fraction(0.5)
    with pytest.raises(TypeError):
        to_fraction(True)


@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=3, max_size=3))
def test_inverse_and_solve(rows):
    m = [[Fr(x) for x in r] for r in rows]
    assume(rank(m) == 3)
    inv = inverse(m)
    assert matmul(m, inv) == [[Fr(int(i == j)) for j in range(3)] for i in range(3)]
    b = [Fr(1), Fr(-2), Fr(3)]
    x = solve(m, b)
    assert [dot(r, x) for r in m] == b


@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=3))
def test_nullspace_matches_numpy_rank(rows):
    m = [[Fr(x) for x in r] for r in rows]
    ns = nullspace(m, 4)
    assert len(ns) == 4 - np.linalg.matrix_rank(np.array(rows, dtype=float))
    assert all(dot(r, v) == 0 for r in m for v in ns)


def test_primitive():
    assert primitive([Fr(2, 3), Fr(-4, 3), 0]) == (1, -2, 0)


# hulls -----------------------------------------------------------------------


@given(cloud(2))
def test_facets_match_scipy_2d(points):
    assume(full_dim(points, 2))
    assert our_facets(points) == scipy_facets(points)


@given(cloud(3, 5, 8))
def test_facets_match_scipy_3d(points):
    assume(full_dim(points, 3))
    assert our_facets(points) == scipy_facets(points)


@given(cloud(2))
def test_extreme_points_match_scipy(points):
    assume(full_dim(points, 2))
    hull = ConvexHull(np.array(points, dtype=float))
    assert sorted(extreme_indices([tuple(map(Fr, p)) for p in points])) == sorted(hull.vertices)


@given(st.one_of(cloud(2), cloud(3, 4, 7)))
def test_facet_vertex_round_trip(points):
    pts = [tuple(map(Fr, p)) for p in points]
    verts = sorted(pts[i] for i in extreme_indices(pts))
    h = facet_enumeration(VPolytope(pts))
    assert vertex_enumeration(h) == verts
    assert all(h.contains(p) for p in pts)


def test_lower_dimensional_hull():
    seg = VPolytope(((0, 0, 0), (1, 1, 1), (2, 2, 2)))
    h = facet_enumeration(seg)
    assert len(h.equalities) == 2
    assert vertex_enumeration(h) == [(0, 0, 0), (2, 2, 2)]
    dim, basis = affine_hull(seg.vertices)
    assert dim == 1 and len(basis) == 1


@given(st.lists(st.tuples(coord, coord, coord, coord), min_size=1, max_size=6))
def test_affine_hull_dimension(points):
    a = np.array(points, dtype=float)
    dim, _ = affine_hull([tuple(map(Fr, p)) for p in points])
    assert dim == (np.linalg.matrix_rank(a[1:] - a[0]) if len(points) > 1 else 0)


def test_square_facets_exact():
    h = facet_enumeration(VPolytope(((0, 0), (1, 0), (0, 1), (1, 1))))
    assert set(h.inequalities) == {((1, 0), 0), ((0, 1), 0), ((-1, 0), -1), ((0, -1), -1)}


def test_vertex_enumeration_errors():
    with pytest.raises(Empty):
        vertex_enumeration(HSystem(1, (), (((1,), 2), ((-1,), 0))))
    with pytest.raises(Unbounded):
        vertex_enumeration(HSystem(2, (), (((1, 0), 0),)))


# membership ------------------------------------------------------------------


@given(cloud(2), st.lists(st.integers(0, 5), min_size=9, max_size=9))
def test_membership_inside(points, ks):
    pts = [tuple(map(Fr, p)) for p in points]
    ks = ks[: len(pts)]
    assume(sum(ks) > 0)
    w = [Fr(k, sum(ks)) for k in ks]
    x = tuple(sum((wi * p[j] for wi, p in zip(w, pts)), Fr(0)) for j in range(2))
    res = membership(x, VPolytope(pts))
    assert res.inside
    verts = VPolytope(pts).vertices
    assert all(c >= 0 for c in res.coefficients) and sum(res.coefficients) == 1
    assert tuple(sum((c * v[j] for c, v in zip(res.coefficients, verts)), Fr(0)) for j in range(2)) == x


@given(cloud(2), st.tuples(st.integers(-9, 9), st.integers(-9, 9)))
def test_membership_separator(points, x):
    pts = [tuple(map(Fr, p)) for p in points]
    x = tuple(Fr(v, 2) for v in x)
    res = membership(x, VPolytope(pts))
    if res.inside:
        return
    a, b = res.separator
    assert all(dot(a, p) >= b for p in pts)
    assert dot(a, x) < b


def test_membership_lexmin_certificate():
    sq = VPolytope(((0, 0), (1, 0), (0, 1), (1, 1)))
    assert membership((Fr(1, 2), Fr(1, 2)), sq).coefficients == (0, Fr(1, 2), Fr(1, 2), 0)
    assert convex_coefficients((Fr(2), Fr(0)), sq.vertices) is None


# linear programming ----------------------------------------------------------


lp_rows = st.lists(st.tuples(st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4), st.integers(-8, 0)), min_size=0, max_size=5)


@given(lp_rows, st.tuples(st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5)), st.sampled_from(["min", "max"]))
def test_lp_matches_scipy(rows, c, sense):
    box = HSystem.box([-3, -3, -3], [3, 3, 3])
    h = box.with_rows(inequalities=[((a, b, cc), r) for a, b, cc, r in rows])
    sign = 1 if sense == "min" else -1
    ref = linprog(
        [sign * x for x in c],
        A_ub=[[-float(x) for x in a] for a, _ in h.inequalities],
        b_ub=[-float(r) for _, r in h.inequalities],
        bounds=[(None, None)] * 3,
        method="highs",
    )
    try:
        res = lp_solve(c, sense, h)
    except Infeasible:
        assert ref.status == 2
        return
    assert ref.status == 0
    assert h.contains(res.optimizer)
    assert dot(c, res.optimizer) == res.value
    assert abs(float(res.value) - sign * ref.fun) <= 1e-7


def test_lp_unbounded_and_infeasible():
    with pytest.raises(Unbounded):
        lp_solve([1, 0], "max", HSystem(2, (), (((1, 0), 0),)))
    with pytest.raises(Infeasible):
        lp_solve([1], "max", HSystem(1, (), (((1,), 1), ((-1,), 0))))


def test_lp_lexicographic_tie_break():
    # every point of the top edge is optimal; the lex-min one is returned
    h = HSystem.box([0, 0], [1, 1])
    assert lp_solve([0, 1], "max", h).optimizer == (0, 1)


def test_lp_deterministic():
    h = HSystem.box([0, 0, 0], [2, 1, 3]).with_rows(inequalities=[((-1, -1, -1), -4)])
    a = lp_solve([1, 2, 1], "max", h)
    assert all(lp_solve([1, 2, 1], "max", h) == a for _ in range(3))


# cones -----------------------------------------------------------------------


def brute_rays(rows, m):
    """Rays from every (m-1)-subset of tight constraints; an independent oracle."""
    found = set()
    for sub in combinations(rows, m - 1):
        ns = nullspace([list(r) for r in sub], m)
        if len(ns) != 1:
            continue
        for v in (ns[0], [-x for x in ns[0]]):
            if all(dot(r, v) >= 0 for r in rows):
                found.add(primitive(v))
    return sorted(found)


cone_rows = st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3)), min_size=0, max_size=4)


@given(cone_rows)
def test_extreme_rays_match_brute_force(extra):
    rows = [(1, 0, 0), (0, 1, 0), (0, 0, 1)] + [r for r in extra if any(r)]
    cone = HSystem(3, (), tuple((r, 0) for r in rows))
    rows_f = [tuple(map(Fr, r)) for r in rows]
    try:
        rays = extreme_rays(cone)
    except Empty:
        return
    assert sorted(rays) == brute_rays(rows_f, 3)


@given(cone_rows)
def test_extreme_rays_irredundant_and_generating(extra):
    rows = [(1, 0, 0), (0, 1, 0), (0, 0, 1)] + [r for r in extra if any(r)]
    cone = HSystem(3, (), tuple((r, 0) for r in rows))
    rays = extreme_rays(cone)
    for i, r in enumerate(rays):
        others = [q for j, q in enumerate(rays) if j != i]
        if not others:
            continue
        a_eq = [[q[k] for q in others] for k in range(3)]
        with pytest.raises(Infeasible):
            feasible_point(a_eq, list(r), len(others))
    # a random cone point is a nonnegative combination of the rays
    res = lp_solve([1, 2, 3], "max", cone.with_rows(inequalities=[((-1, -1, -1), -5)]))
    if rays and any(res.optimizer):
        a_eq = [[q[k] for q in rays] for k in range(3)]
        feasible_point(a_eq, list(res.optimizer), len(rays))


def test_not_pointed():
    with pytest.raises(NotPointed):
        extreme_rays(HSystem(2, (), (((1, 0), 0),)))


def test_cone_with_equalities():
    cone = HSystem(3, (((1, 1, 1), 0),), (((1, 0, 0), 0), ((0, 1, 0), 0)))
    assert extreme_rays(cone) == [(0, 1, -1), (1, 0, -1)]
