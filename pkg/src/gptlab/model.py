"""State spaces, states, effects, measurements and ensembles.

An effect is stored by its values at an affine basis of the state space
(``space.basis_vertices``), which pins down the affine functional on the hull
exactly; the ambient ``(linear, constant)`` form is derived on demand.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import product as iproduct
from typing import Any, Iterable, Mapping, Sequence

from .errors import (
    BadDimension,
    EmptyInput,
    InvalidState,
    InvariantViolation,
    NotAChannel,
    ParseError,
    SpaceMismatch,
)
from .polytope import AffineMap, Chart, VPolytope, chart, extreme_indices, membership
from .polytope.linalg import combination, dot, matvec, to_fraction, transpose, vec

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class StateSpace:
    """A polytope given by its pure states."""

    polytope: VPolytope
    name: str = field(default="custom", compare=False)

    @property
    def vertices(self) -> tuple[tuple[Fraction, ...], ...]:
        return self.polytope.vertices

    @property
    def ambient_dim(self) -> int:
        return self.polytope.ambient_dim

    @cached_property
    def chart(self) -> Chart:
        return chart(self.vertices)

    @property
    def affine_dim(self) -> int:
        return self.chart.dim

    @cached_property
    def basis_indices(self) -> tuple[int, ...]:
        """Vertex indices of the affine basis ``v_0, v_{i_1}, ...``."""
        return (0,) + self.chart.basis_indices

    @property
    def basis_vertices(self):
        return tuple(self.vertices[i] for i in self.basis_indices)

    def barycentric(self, x: Sequence[Fraction]) -> tuple[Fraction, ...]:
        """Affine coordinates of ``x`` with respect to the basis vertices."""
        y = self.chart.coords(x)
        return (ONE - sum(y, ZERO),) + tuple(y)

    @cached_property
    def vertex_barycentric(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(self.barycentric(v) for v in self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)

    def state(self, coords: Iterable) -> "State":
        return State(self, coords)

    def pure_states(self) -> list["State"]:
        return [State(self, v) for v in self.vertices]

    def unit(self) -> "Effect":
        return Effect.from_basis_values(self, [ONE] * (self.affine_dim + 1))

    def zero(self) -> "Effect":
        return Effect.from_basis_values(self, [ZERO] * (self.affine_dim + 1))

    def is_simplex(self) -> bool:
        return len(self.vertices) == self.affine_dim + 1

    def __repr__(self) -> str:
        return f"StateSpace({self.name!r}, {len(self.vertices)} vertices, dim {self.affine_dim})"


class State:
    """A point of a state space with its convex certificate."""

    __slots__ = ("space", "coords", "certificate", "_bary")

    def __init__(self, space: StateSpace, coords: Iterable, certificate: Sequence[Fraction] | None = None):
        coords = vec(coords)
        if len(coords) != space.ambient_dim:
            raise BadDimension(f"state has {len(coords)} coordinates, space needs {space.ambient_dim}")
        if certificate is None:
            if coords in space.vertices:
                i = space.vertices.index(coords)
                certificate = tuple(Fraction(int(j == i)) for j in range(len(space)))
            else:
                res = membership(coords, space.polytope)
                if not res.inside:
                    raise InvalidState(f"{_fmt_point(coords)} lies outside {space.name}")
                certificate = res.coefficients
        self.space = space
        self.coords = coords
        self.certificate = tuple(certificate)
        self._bary = None

    @classmethod
    def from_mixture(cls, weights: Sequence, states: Sequence["State"]) -> "State":
        if not states:
            raise EmptyInput("mixture of no states")
        space = states[0].space
        for s in states:
            _same(space, s.space)
        w = vec(weights)
        cert = combination(w, [s.certificate for s in states])
        return cls(space, combination(w, [s.coords for s in states]), cert)

    @property
    def barycentric(self) -> tuple[Fraction, ...]:
        if self._bary is None:
            self._bary = self.space.barycentric(self.coords)
        return self._bary

    def is_pure(self) -> bool:
        return self.coords in self.space.vertices

    def __eq__(self, other) -> bool:
        return isinstance(other, State) and self.space == other.space and self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def __repr__(self) -> str:
        return f"State({_fmt_point(self.coords)})"


class Effect:
    """Affine functional with values in ``[0, 1]``; pass ``check=False`` for
    an arbitrary affine functional (used for unnormalised cone elements)."""

    __slots__ = ("space", "values", "_vertex_values")

    def __init__(self, space: StateSpace, linear: Iterable, constant, *, check: bool = True):
        linear = vec(linear)
        if len(linear) != space.ambient_dim:
            raise BadDimension("linear part does not match the ambient dimension")
        c = to_fraction(constant)
        vals = tuple(dot(linear, v) + c for v in space.basis_vertices)
        self._init(space, vals, check)

    def _init(self, space: StateSpace, values: tuple[Fraction, ...], check: bool) -> None:
        self.space = space
        self.values = values
        self._vertex_values = None
        if check:
            bad = [v for v in self.vertex_values if v < 0 or v > 1]
            if bad:
                raise InvariantViolation("effect-range", f"value {bad[0]} at a vertex is outside [0, 1]")

    @classmethod
    def from_basis_values(cls, space: StateSpace, values: Iterable, *, check: bool = True) -> "Effect":
        vals = vec(values)
        if len(vals) != space.affine_dim + 1:
            raise BadDimension("need one value per affine-basis vertex")
        e = cls.__new__(cls)
        e._init(space, vals, check)
        return e

    @classmethod
    def from_vertex_values(cls, space: StateSpace, values: Iterable, *, check: bool = True) -> "Effect":
        """Effect with the given value at each vertex; the values must be affine."""
        vals = vec(values)
        if len(vals) != len(space):
            raise BadDimension("need one value per vertex")
        e = cls.from_basis_values(space, [vals[i] for i in space.basis_indices], check=False)
        if e.vertex_values != vals:
            raise InvariantViolation("effect-affinity", "vertex values are not those of an affine functional")
        if check:
            e._init(space, e.values, True)
        return e

    @property
    def vertex_values(self) -> tuple[Fraction, ...]:
        if self._vertex_values is None:
            self._vertex_values = tuple(dot(b, self.values) for b in self.space.vertex_barycentric)
        return self._vertex_values

    @property
    def linear(self) -> tuple[Fraction, ...]:
        c = self.space.chart
        if c.dim == 0:
            return (ZERO,) * self.space.ambient_dim
        z0 = self.values[0]
        return matvec(transpose(c.projector), [z - z0 for z in self.values[1:]])

    @property
    def constant(self) -> Fraction:
        return self.values[0] - dot(self.linear, self.space.chart.base)

    def at(self, x: Sequence[Fraction]) -> Fraction:
        return dot(self.space.barycentric(vec(x)), self.values)

    def __call__(self, s: State) -> Fraction:
        return effect_value(self, s)

    def _coerce(self, other: "Effect") -> None:
        if not isinstance(other, Effect):
            raise TypeError("effects combine only with effects")
        _same(self.space, other.space)

    def __add__(self, other: "Effect") -> "Effect":
        self._coerce(other)
        return Effect.from_basis_values(self.space, [a + b for a, b in zip(self.values, other.values)], check=False)

    def __sub__(self, other: "Effect") -> "Effect":
        self._coerce(other)
        return Effect.from_basis_values(self.space, [a - b for a, b in zip(self.values, other.values)], check=False)

    def __mul__(self, c) -> "Effect":
        c = to_fraction(c)
        return Effect.from_basis_values(self.space, [c * a for a in self.values], check=False)

    __rmul__ = __mul__

    def complement(self) -> "Effect":
        """``u - e``."""
        return Effect.from_basis_values(self.space, [ONE - a for a in self.values], check=False)

    def is_valid(self) -> bool:
        return all(0 <= v <= 1 for v in self.vertex_values)

    def is_zero(self) -> bool:
        return not any(self.values)

    def __eq__(self, other) -> bool:
        return isinstance(other, Effect) and self.space == other.space and self.values == other.values

    def __hash__(self) -> int:
        return hash(self.values)

    def __repr__(self) -> str:
        return f"Effect(vertex values {_fmt_point(self.vertex_values)})"


class Measurement:
    """Effect list summing to the unit effect; outcome index = list position."""

    __slots__ = ("effects",)

    def __init__(self, effects: Iterable[Effect]):
        effects = tuple(effects)
        if not effects:
            raise EmptyInput("a measurement needs at least one effect")
        space = effects[0].space
        for e in effects:
            _same(space, e.space)
            if not e.is_valid():
                raise InvariantViolation("effect-range", f"{e!r} is not an effect")
        total = [sum(col, ZERO) for col in zip(*(e.values for e in effects))]
        if any(t != 1 for t in total):
            raise InvariantViolation("measurement-normalisation", "effects do not sum to the unit effect")
        self.effects = effects

    @property
    def space(self) -> StateSpace:
        return self.effects[0].space

    def probabilities(self, s: State) -> tuple[Fraction, ...]:
        return tuple(effect_value(e, s) for e in self.effects)

    def __len__(self) -> int:
        return len(self.effects)

    def __iter__(self):
        return iter(self.effects)

    def __repr__(self) -> str:
        return f"Measurement({list(self.effects)!r})"


class Ensemble:
    """Weighted list of states; repeated states are allowed."""

    __slots__ = ("items", "barycenter")

    def __init__(self, items: Iterable[tuple[Any, State]]):
        items = tuple((to_fraction(w), s) for w, s in items)
        if not items:
            raise EmptyInput("empty ensemble")
        space = items[0][1].space
        for w, s in items:
            _same(space, s.space)
            if w < 0 or w > 1:
                raise InvariantViolation("ensemble-weights", f"weight {w} outside [0, 1]")
        if sum((w for w, _ in items), ZERO) != 1:
            raise InvariantViolation("ensemble-weights", "weights do not sum to 1")
        self.items = items
        self.barycenter = State.from_mixture([w for w, _ in items], [s for _, s in items])

    @property
    def weights(self) -> tuple[Fraction, ...]:
        return tuple(w for w, _ in self.items)

    @property
    def states(self) -> tuple[State, ...]:
        return tuple(s for _, s in self.items)

    @property
    def space(self) -> StateSpace:
        return self.items[0][1].space

    def merged(self) -> "Ensemble":
        """Combine repeated states and drop zero weights."""
        acc: dict[tuple, Fraction] = {}
        order: list[State] = []
        for w, s in self.items:
            if s.coords not in acc:
                acc[s.coords] = ZERO
                order.append(s)
            acc[s.coords] += w
        return Ensemble((acc[s.coords], s) for s in order if acc[s.coords])

    def __len__(self) -> int:
        return len(self.items)

    def __repr__(self) -> str:
        return f"Ensemble({[(str(w), s) for w, s in self.items]})"


def _same(a: StateSpace, b: StateSpace) -> None:
    if a is not b and a != b:
        raise SpaceMismatch(f"objects live on different state spaces ({a.name} vs {b.name})")


def _fmt_point(p: Sequence[Fraction]) -> str:
    return "(" + ",".join(str(x) for x in p) + ")"


# builders --------------------------------------------------------------------


def build_classical(d: int) -> StateSpace:
    """Probability simplex in ``R^d``."""
    if d < 1:
        raise BadDimension("classical systems need d >= 1")
    verts = tuple(tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d))
    return StateSpace(VPolytope(verts), f"classical-{d}")


def build_hypercuboid(d: int) -> StateSpace:
    """Unit cube ``[0,1]^d``; ``d = 2`` is named ``square``."""
    if d < 1:
        raise BadDimension("hypercuboid systems need d >= 1")
    verts = tuple(tuple(Fraction(b) for b in reversed(bits)) for bits in iproduct((0, 1), repeat=d))
    return StateSpace(VPolytope(verts), "square" if d == 2 else f"hypercuboid-{d}")


def build_skew_square() -> StateSpace:
    return StateSpace(VPolytope(((0, 0), (1, 0), (0, 1), (2, 2))), "skew-square")


def build_custom(vertices: Sequence[Sequence], name: str = "custom") -> StateSpace:
    """Deduplicate and keep only the extreme points of ``vertices``."""
    pts: list = []
    for v in vertices:
        v = vec(v)
        if v not in pts:
            pts.append(v)
    if not pts:
        raise EmptyInput("no vertices given")
    if len({len(p) for p in pts}) != 1:
        raise BadDimension("vertices have inconsistent dimensions")
    keep = extreme_indices(pts)
    return StateSpace(VPolytope(tuple(pts[i] for i in keep)), name)


_BUILDERS = {
    "square": lambda: build_hypercuboid(2),
    "skew-square": build_skew_square,
    "bit": lambda: build_classical(2),
}
_PATTERN = re.compile(r"^(classical|hypercuboid|cuboid)-(\d+)$")


def builder(name: str) -> StateSpace:
    """Look up a named builder: ``square``, ``skew-square``, ``classical-d``, ``cuboid-d``."""
    if name in _BUILDERS:
        return _BUILDERS[name]()
    m = _PATTERN.match(name)
    if m:
        d = int(m.group(2))
        return build_classical(d) if m.group(1) == "classical" else build_hypercuboid(d)
    raise KeyError(f"unknown model {name!r}")


# evaluation and channels -----------------------------------------------------


def effect_value(e: Effect, s: State) -> Fraction:
    _same(e.space, s.space)
    return dot(s.barycentric, e.values)


@lru_cache(maxsize=256)
def _verify_channel(f: AffineMap, source: StateSpace, target: StateSpace) -> None:
    if f.source_dim != source.ambient_dim or f.target_dim != target.ambient_dim:
        raise NotAChannel("map dimensions do not match the spaces")
    for v in source.vertices:
        if not membership(f(v), target.polytope).inside:
            raise NotAChannel(f"vertex {_fmt_point(v)} maps outside {target.name}")


def verify_channel(f: AffineMap, source: StateSpace, target: StateSpace) -> None:
    """Raise ``NotAChannel`` unless ``f`` maps every source vertex into target."""
    _verify_channel(f, source, target)


def apply_map(f: AffineMap, source: StateSpace, target: StateSpace, s: State) -> State:
    _same(source, s.space)
    _verify_channel(f, source, target)
    return State(target, f(s.coords))


# JSON ------------------------------------------------------------------------


def _rat(x) -> str:
    return str(to_fraction(x))


def to_document(obj) -> dict:
    if hasattr(obj, "to_document"):
        return obj.to_document()
    if isinstance(obj, StateSpace):
        return {
            "type": "state_space",
            "name": obj.name,
            "ambient_dim": obj.ambient_dim,
            "vertices": [[_rat(x) for x in v] for v in obj.vertices],
        }
    if isinstance(obj, State):
        return {"type": "state", "space": obj.space.name, "coords": [_rat(x) for x in obj.coords]}
    if isinstance(obj, Effect):
        return {
            "type": "effect",
            "space": obj.space.name,
            "linear": [_rat(x) for x in obj.linear],
            "constant": _rat(obj.constant),
        }
    if isinstance(obj, Measurement):
        return {"type": "measurement", "effects": [to_document(e) for e in obj.effects]}
    if isinstance(obj, Ensemble):
        return {
            "type": "ensemble",
            "space": obj.space.name,
            "items": [{"weight": _rat(w), "coords": [_rat(x) for x in s.coords]} for w, s in obj.items],
        }
    if isinstance(obj, AffineMap):
        return {
            "type": "affine_map",
            "matrix": [[_rat(x) for x in row] for row in obj.matrix],
            "offset": [_rat(x) for x in obj.offset],
        }
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def serialize(obj, spaces: Sequence[StateSpace] = ()) -> str:
    """JSON text for a model object; ``spaces`` are embedded under ``"spaces"``
    so the document is self-contained."""
    doc = to_document(obj)
    if spaces:
        doc["spaces"] = [to_document(s) for s in spaces]
    return json.dumps(doc, indent=2) + "\n"


def _locate(text: str, needle: str) -> tuple[int | None, int | None]:
    i = text.find(needle)
    if i < 0:
        return None, None
    line = text.count("\n", 0, i) + 1
    col = i - (text.rfind("\n", 0, i) + 1) + 1
    return line, col


class _Reader:
    def __init__(self, text: str, spaces: Mapping[str, StateSpace]):
        self.text = text
        self.spaces = dict(spaces)

    def fail(self, message: str, needle: str | None = None) -> ParseError:
        line, col = _locate(self.text, needle) if needle else (None, None)
        return ParseError(message, line, col)

    def rational(self, x) -> Fraction:
        if isinstance(x, bool) or not isinstance(x, (str, int)):
            raise self.fail(f"expected a rational string, got {x!r}", json.dumps(x))
        try:
            return to_fraction(x)
        except (ValueError, ZeroDivisionError) as exc:
            raise self.fail(f"malformed rational {x!r}", json.dumps(x)) from exc

    def rationals(self, xs) -> tuple[Fraction, ...]:
        if not isinstance(xs, list):
            raise self.fail(f"expected a list of rationals, got {xs!r}")
        return tuple(self.rational(x) for x in xs)

    def field(self, doc: dict, key: str):
        if key not in doc:
            raise self.fail(f"missing field {key!r} in {doc.get('type', 'document')}")
        return doc[key]

    def space(self, ref) -> StateSpace:
        if isinstance(ref, dict):
            return self.read(ref)
        if not isinstance(ref, str):
            raise self.fail(f"bad space reference {ref!r}")
        if ref in self.spaces:
            return self.spaces[ref]
        try:
            return builder(ref)
        except KeyError:
            raise self.fail(f"unknown space {ref!r}", json.dumps(ref)) from None

    def read(self, doc):
        if not isinstance(doc, dict):
            raise self.fail("document must be a JSON object")
        for sub_doc in doc.get("spaces", ()):
            sp = self.read(sub_doc)
            self.spaces[sp.name] = sp
        kind = self.field(doc, "type")
        if kind == "state_space":
            verts = [self.rationals(v) for v in self.field(doc, "vertices")]
            if not verts:
                raise InvariantViolation("nonempty", "state space without vertices")
            n = doc.get("ambient_dim", len(verts[0]))
            if any(len(v) != n for v in verts):
                raise InvariantViolation("ambient-dimension", "vertex length differs from ambient_dim")
            if len(set(verts)) != len(verts) or len(extreme_indices(verts)) != len(verts):
                raise InvariantViolation("irredundant-vertices", "vertex list contains a non-extreme point")
            sp = StateSpace(VPolytope(tuple(verts)), str(doc.get("name", "custom")))
            self.spaces.setdefault(sp.name, sp)
            return sp
        if kind == "state":
            sp = self.space(self.field(doc, "space"))
            try:
                return State(sp, self.rationals(self.field(doc, "coords")))
            except InvalidState as exc:
                raise InvariantViolation("state-membership", str(exc)) from exc
            except BadDimension as exc:
                raise InvariantViolation("ambient-dimension", str(exc)) from exc
        if kind == "effect":
            sp = self.space(self.field(doc, "space"))
            try:
                return Effect(sp, self.rationals(self.field(doc, "linear")), self.rational(self.field(doc, "constant")))
            except BadDimension as exc:
                raise InvariantViolation("ambient-dimension", str(exc)) from exc
        if kind == "measurement":
            effects = [self.read(e) for e in self.field(doc, "effects")]
            return Measurement(effects)
        if kind == "ensemble":
            sp = self.space(self.field(doc, "space"))
            items = []
            for it in self.field(doc, "items"):
                try:
                    items.append((self.rational(self.field(it, "weight")), State(sp, self.rationals(self.field(it, "coords")))))
                except InvalidState as exc:
                    raise InvariantViolation("state-membership", str(exc)) from exc
            return Ensemble(items)
        if kind == "affine_map":
            return AffineMap(
                tuple(self.rationals(r) for r in self.field(doc, "matrix")),
                self.rationals(self.field(doc, "offset")),
            )
        if kind == "channel":
            from .composite import Channel

            f = AffineMap(
                tuple(self.rationals(r) for r in self.field(doc, "matrix")),
                self.rationals(self.field(doc, "offset")),
            )
            src, tgt = self.space(self.field(doc, "source")), self.space(self.field(doc, "target"))
            try:
                return Channel(f, src, tgt)
            except NotAChannel as exc:
                raise InvariantViolation("channel", str(exc)) from exc
        raise self.fail(f"unknown document type {kind!r}", json.dumps(kind))


def deserialize(text: str, spaces: Mapping[str, StateSpace] | Sequence[StateSpace] = ()):
    """Parse a JSON document produced by :func:`serialize`.

    Space references are resolved against ``spaces``, then the documents
    embedded under ``"spaces"``, then the named builders.
    """
    if not isinstance(spaces, Mapping):
        spaces = {s.name: s for s in spaces}
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from exc
    return _Reader(text, spaces).read(doc)
