"""Exact linear algebra over the rationals.

Matrices are lists of rows; every entry is a :class:`fractions.Fraction`.
Nothing here rounds, so rank and solvability decisions are exact.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Rational = Fraction
Vector = tuple[Fraction, ...]
Matrix = list[list[Fraction]]


def to_fraction(x) -> Fraction:
    """Convert ints, Fractions and ``"p/q"`` strings; floats are refused."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError(f"float {x!r} rejected; pass an exact rational")
    # numpy integers and similar
    if hasattr(x, "__index__"):
        return Fraction(int(x))
    raise TypeError(f"cannot interpret {x!r} as a rational")


def vec(xs: Iterable) -> Vector:
    return tuple(to_fraction(x) for x in xs)


def mat(rows: Iterable[Iterable]) -> Matrix:
    return [list(vec(r)) for r in rows]


def dot(a: Sequence[Fraction], b: Sequence[Fraction]):
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def sub(a: Sequence[Fraction], b: Sequence[Fraction]) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def add(a: Sequence[Fraction], b: Sequence[Fraction]) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def scale(c, a: Sequence[Fraction]) -> Vector:
    return tuple(c * x for x in a)


def combination(weights: Sequence[Fraction], points: Sequence[Sequence[Fraction]]) -> Vector:
    """Return ``sum_i weights[i] * points[i]``."""
    dim = len(points[0])
    out = [Fraction(0)] * dim
    for w, p in zip(weights, points):
        if w:
            for j in range(dim):
                out[j] += w * p[j]
    return tuple(out)


def transpose(m: Sequence[Sequence[Fraction]]) -> Matrix:
    return [list(col) for col in zip(*m)] if m else []


def matmul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> Matrix:
    bt = transpose(b)
    return [[dot(row, col) for col in bt] for row in a]


def matvec(a: Sequence[Sequence[Fraction]], x: Sequence[Fraction]) -> Vector:
    return tuple(dot(row, x) for row in a)


def rref(rows: Sequence[Sequence[Fraction]]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the pivot columns."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    if not rows:
        return 0
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int | None = None) -> list[Vector]:
    """Basis of ``{x : A x = 0}``, one vector per free column."""
    if not rows:
        n = ncols or 0
        return [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    n = len(rows[0])
    r, pivots = rref(rows)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, pc in zip(r, pivots):
            v[pc] = -row[f]
        basis.append(tuple(v))
    return basis


def solve(a: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> Vector | None:
    """A particular solution of ``A x = b`` (free variables zero), or None."""
    if not a:
        return None if any(b) else ()
    n = len(a[0])
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    r, pivots = rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row, pc in zip(r, pivots):
        x[pc] = row[n]
    return tuple(x)


def inverse(a: Sequence[Sequence[Fraction]]) -> Matrix:
    n = len(a)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    r, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in r]


def independent_subset(vectors: Sequence[Sequence[Fraction]]) -> list[int]:
    """Indices of a greedily chosen maximal linearly independent subset."""
    chosen: list[int] = []
    basis: list[list[Fraction]] = []
    pivots: list[int] = []
    for idx, v in enumerate(vectors):
        w = list(v)
        for row, pc in zip(basis, pivots):
            if w[pc] != 0:
                f = w[pc]
                w = [x - f * y for x, y in zip(w, row)]
        pc = next((j for j, x in enumerate(w) if x != 0), None)
        if pc is None:
            continue
        inv = 1 / w[pc]
        w = [x * inv for x in w]
        for i, row in enumerate(basis):
            if row[pc] != 0:
                f = row[pc]
                basis[i] = [x - f * y for x, y in zip(row, w)]
        basis.append(w)
        pivots.append(pc)
        chosen.append(idx)
    return chosen


def primitive(v: Sequence[Fraction]) -> Vector:
    """Scale ``v`` by a positive factor to coprime integer coordinates."""
    if not any(v):
        return tuple(Fraction(0) for _ in v)
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for i in ints:
        g = gcd(g, abs(i))
    return tuple(Fraction(i // g) for i in ints)


def fmt(x: Fraction) -> str:
    """Render a rational as ``"p/q"`` (or ``"p"`` for integers)."""
    return str(x)
