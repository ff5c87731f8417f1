"""Value types of the polyhedral kernel: points, V- and H-descriptions, affine maps."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .linalg import matvec, to_fraction, vec

Point = tuple[Fraction, ...]
Row = tuple[tuple[Fraction, ...], Fraction]


def point(xs: Iterable) -> Point:
    return vec(xs)


@dataclass(frozen=True)
class VPolytope:
    """Convex hull of a finite vertex list (duplicates removed, order kept)."""

    vertices: tuple[Point, ...]
    ambient_dim: int = field(default=-1)

    def __post_init__(self):
        seen, verts = set(), []
        for v in self.vertices:
            v = point(v)
            if v not in seen:
                seen.add(v)
                verts.append(v)
        if not verts:
            raise ValueError("a polytope needs at least one vertex")
        dim = len(verts[0])
        if any(len(v) != dim for v in verts):
            raise ValueError("vertices have inconsistent dimensions")
        if self.ambient_dim not in (-1, dim):
            raise ValueError("ambient_dim does not match the vertex coordinates")
        object.__setattr__(self, "vertices", tuple(verts))
        object.__setattr__(self, "ambient_dim", dim)

    def __len__(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class HSystem:
    """``{x : E x = e, A x >= b}``; rows are ``(coefficients, rhs)`` pairs."""

    dim: int
    equalities: tuple[Row, ...] = ()
    inequalities: tuple[Row, ...] = ()

    def __post_init__(self):
        def norm(rows):
            out = []
            for coeffs, rhs in rows:
                coeffs = vec(coeffs)
                if len(coeffs) != self.dim:
                    raise ValueError(f"row of length {len(coeffs)} in a {self.dim}-dimensional system")
                out.append((coeffs, to_fraction(rhs)))
            return tuple(out)

        object.__setattr__(self, "equalities", norm(self.equalities))
        object.__setattr__(self, "inequalities", norm(self.inequalities))

    @classmethod
    def box(cls, lower: Sequence, upper: Sequence) -> "HSystem":
        """Axis-aligned box ``lower <= x <= upper``."""
        n = len(lower)
        rows = []
        for i in range(n):
            e = [0] * n
            e[i] = 1
            rows.append((e, lower[i]))
            rows.append(([-x for x in e], -to_fraction(upper[i])))
        return cls(n, (), tuple(rows))

    def contains(self, x: Sequence[Fraction]) -> bool:
        from .linalg import dot

        return all(dot(a, x) == b for a, b in self.equalities) and all(
            dot(a, x) >= b for a, b in self.inequalities
        )

    def with_rows(self, equalities=(), inequalities=()) -> "HSystem":
        return HSystem(self.dim, self.equalities + tuple(equalities), self.inequalities + tuple(inequalities))


@dataclass(frozen=True)
class AffineMap:
    """``x -> M x + offset`` with exact rational entries."""

    matrix: tuple[tuple[Fraction, ...], ...]
    offset: Point

    def __post_init__(self):
        m = tuple(vec(r) for r in self.matrix)
        off = vec(self.offset)
        if len(m) != len(off):
            raise ValueError("matrix rows and offset length differ")
        if m and len({len(r) for r in m}) != 1:
            raise ValueError("ragged matrix")
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "offset", off)

    @property
    def source_dim(self) -> int:
        return len(self.matrix[0]) if self.matrix else 0

    @property
    def target_dim(self) -> int:
        return len(self.offset)

    def __call__(self, x: Sequence[Fraction]) -> Point:
        y = matvec(self.matrix, x)
        return tuple(a + b for a, b in zip(y, self.offset))

    def compose(self, inner: "AffineMap") -> "AffineMap":
        """``self o inner``."""
        from .linalg import matmul

        m = matmul(self.matrix, inner.matrix)
        return AffineMap(tuple(map(tuple, m)), self(inner.offset))

    @classmethod
    def identity(cls, n: int) -> "AffineMap":
        return cls(tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)), (Fraction(0),) * n)

    @classmethod
    def constant(cls, source_dim: int, value: Sequence) -> "AffineMap":
        value = vec(value)
        return cls(tuple((Fraction(0),) * source_dim for _ in value), value)
