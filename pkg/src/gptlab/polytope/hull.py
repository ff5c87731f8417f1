"""Affine hulls, facets, vertices and membership certificates."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import NamedTuple, Sequence

from ..errors import Empty, Infeasible, NotPointed, Unbounded
from .cone import extreme_rays
from .linalg import (
    dot,
    independent_subset,
    inverse,
    matmul,
    matvec,
    nullspace,
    primitive,
    rank,
    sub,
    transpose,
    vec,
)
from .lp import lp_solve, minimize
from .types import HSystem, Point, Row, VPolytope

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class Chart:
    """Affine coordinates ``y = P (x - base)`` on the hull of a point set.

    ``basis`` holds displacement vectors ``v_i - base``; ``P`` is the
    left inverse ``(B^T B)^{-1} B^T`` so lifted functionals are canonical
    (orthogonal to the hull normals).
    """

    base: Point
    basis: tuple[Point, ...]
    basis_indices: tuple[int, ...]
    projector: tuple[Point, ...]
    normals: tuple[Point, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def ambient_dim(self) -> int:
        return len(self.base)

    def coords(self, x: Sequence[Fraction]) -> Point:
        return matvec(self.projector, sub(x, self.base))

    def point(self, y: Sequence[Fraction]) -> Point:
        out = list(self.base)
        for c, b in zip(y, self.basis):
            if c:
                for j, bj in enumerate(b):
                    out[j] += c * bj
        return tuple(out)

    def contains(self, x: Sequence[Fraction]) -> bool:
        """Is ``x`` in the affine hull?"""
        return all(dot(n, x) == dot(n, self.base) for n in self.normals)

    def equalities(self) -> tuple[Row, ...]:
        return tuple((n, dot(n, self.base)) for n in self.normals)

    def lift(self, a: Sequence[Fraction], b: Fraction) -> Row:
        """Ambient row equivalent to ``a . y >= b`` on the hull."""
        coeffs = matvec(transpose(self.projector), a) if self.dim else (ZERO,) * self.ambient_dim
        return coeffs, b + dot(coeffs, self.base)


def chart(points: Sequence[Sequence[Fraction]]) -> Chart:
    if not points:
        raise ValueError("affine chart of an empty point set")
    pts = [vec(p) for p in points]
    base = pts[0]
    disp = [sub(p, base) for p in pts[1:]]
    idx = independent_subset(disp)
    basis = tuple(disp[i] for i in idx)
    n = len(base)
    if basis:
        gram = matmul(basis, transpose(basis))
        proj = tuple(tuple(r) for r in matmul(inverse(gram), basis))
        normals = tuple(primitive(v) for v in nullspace([list(b) for b in basis], n))
    else:
        proj = ()
        normals = tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))
    return Chart(base, basis, tuple(i + 1 for i in idx), proj, normals)


def affine_hull(points: Sequence[Sequence[Fraction]]) -> tuple[int, list[Point]]:
    """Affine dimension and a basis of the displacement space."""
    c = chart(points)
    return c.dim, list(c.basis)


def _normalise_row(coeffs: Sequence[Fraction], rhs: Fraction) -> Row:
    full = primitive(tuple(coeffs) + (rhs,))
    return full[:-1], full[-1]


def facet_enumeration(poly: VPolytope) -> HSystem:
    """Facets of ``poly`` relative to its affine hull.

    Returns an ``HSystem`` whose equalities cut out the affine hull and whose
    inequalities ``a . x >= b`` are the facets, in primitive integer form and
    sorted.  Brute force over affinely independent vertex subsets.
    """
    c = chart(poly.vertices)
    n, k = poly.ambient_dim, c.dim
    eqs = c.equalities()
    if k == 0:
        return HSystem(n, eqs, ())
    ys = [c.coords(v) for v in poly.vertices]
    found: set[Row] = set()
    for subset in combinations(range(len(ys)), k):
        rows = [list(ys[i]) + [ONE] for i in subset]
        if rank(rows) < k:
            continue
        (normal,) = nullspace(rows, k + 1)
        a, b = normal[:k], -normal[k]
        vals = [dot(a, y) - b for y in ys]
        if all(v >= 0 for v in vals):
            pass
        elif all(v <= 0 for v in vals):
            a, b = tuple(-x for x in a), -b
        else:
            continue
        found.add(_normalise_row(*c.lift(a, b)))
    return HSystem(n, eqs, tuple(sorted(found)))


def vertex_enumeration(system: HSystem) -> list[Point]:
    """Vertices of a bounded nonempty polyhedron, sorted lexicographically.

    Raises ``Empty`` if infeasible and ``Unbounded`` if a ray exists.
    """
    n = system.dim
    try:
        lp_solve([ZERO] * n, "min", system, lexicographic=False)
    except Infeasible as exc:
        raise Empty("polyhedron is empty") from exc
    # homogenise: (x, t) with t >= 0
    eqs = [(tuple(a) + (-b,), ZERO) for a, b in system.equalities]
    ineqs = [(tuple(a) + (-b,), ZERO) for a, b in system.inequalities]
    ineqs.append(((ZERO,) * n + (ONE,), ZERO))
    try:
        rays = extreme_rays(HSystem(n + 1, tuple(eqs), tuple(ineqs)))
    except NotPointed as exc:
        raise Unbounded("polyhedron contains a line") from exc
    verts = []
    for r in rays:
        t = r[-1]
        if t == 0:
            raise Unbounded("polyhedron has a recession direction")
        verts.append(tuple(x / t for x in r[:-1]))
    return sorted(set(verts))


class Membership(NamedTuple):
    """Outcome of :func:`membership`.

    ``coefficients`` are convex weights over the vertices when ``inside``;
    otherwise ``separator = (a, b)`` with ``a . v >= b`` on the polytope and
    ``a . x < b``.
    """

    inside: bool
    coefficients: tuple[Fraction, ...] | None
    separator: Row | None

    def __bool__(self) -> bool:
        return self.inside


def convex_coefficients(x: Sequence[Fraction], points: Sequence[Sequence[Fraction]]) -> tuple[Fraction, ...] | None:
    """Lexicographically smallest convex weights reproducing ``x``, or None."""
    m = len(points)
    a_eq = [[p[j] for p in points] for j in range(len(x))] + [[ONE] * m]
    b_eq = list(x) + [ONE]
    try:
        return minimize([ZERO] * m, a_eq, b_eq).optimizer
    except Infeasible:
        return None


def membership(x: Sequence[Fraction], poly: VPolytope) -> Membership:
    x = vec(x)
    if len(x) != poly.ambient_dim:
        raise ValueError("point and polytope dimensions differ")
    lam = convex_coefficients(x, poly.vertices)
    if lam is not None:
        return Membership(True, lam, None)
    c = chart(poly.vertices)
    for a, b in c.equalities():
        val = dot(a, x)
        if val != b:
            if val > b:
                a, b = tuple(-t for t in a), -b
            return Membership(False, None, (a, b))
    for a, b in facet_enumeration(poly).inequalities:
        if dot(a, x) < b:
            return Membership(False, None, (a, b))
    raise AssertionError("outside point without a violated facet")  # pragma: no cover


def extreme_indices(points: Sequence[Sequence[Fraction]]) -> list[int]:
    """Indices of points that are not convex combinations of the others."""
    pts = [vec(p) for p in points]
    keep = []
    for i, p in enumerate(pts):
        others = [q for j, q in enumerate(pts) if j != i and q != p]
        if not others or convex_coefficients(p, others) is None:
            keep.append(i)
    return keep
