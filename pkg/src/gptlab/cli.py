"""Command-line front end: ``gptlab compute | sweep | check | model``.

Exit codes: 0 success, 1 property failure, 2 parse or validation error,
3 computation error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import random
import re
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Sequence

from . import composite, distinguish, effects, entropy, qoracle, sampling, symmetry
from .errors import GptlabError, InvariantViolation, ParseError
from .model import State, StateSpace, builder, deserialize, serialize, to_document

EXIT_OK, EXIT_PROPERTY, EXIT_PARSE, EXIT_COMPUTE = 0, 1, 2, 3
_RATIONAL = re.compile(r"^\s*-?\d+(/\d+)?\s*$")


class UsageError(Exception):
    pass


def _round(x: Any) -> Any:
    if isinstance(x, float):
        return round(x, 12) + 0.0
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {k: _round(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_round(v) for v in x]
    return x


def _dump(obj: Any) -> str:
    return json.dumps(_round(obj), indent=2) + "\n"


def parse_rational(text: str) -> Fraction:
    if not _RATIONAL.match(text):
        raise ParseError(f"not an exact rational: {text!r} (use p/q, floats are rejected)")
    try:
        return Fraction(text.strip())
    except ZeroDivisionError as exc:
        raise ParseError(f"zero denominator in {text!r}") from exc


def parse_point(text: str) -> tuple[Fraction, ...]:
    return tuple(parse_rational(t) for t in text.split(","))


def load_model(ref: str) -> StateSpace:
    try:
        return builder(ref)
    except KeyError:
        pass
    path = Path(ref)
    if not path.exists():
        raise ParseError(f"unknown model {ref!r} (not a builder name or a file)")
    obj = deserialize(path.read_text(encoding="utf-8"))
    if not isinstance(obj, StateSpace):
        raise ParseError(f"{ref} does not contain a state_space document")
    return obj


def _state(space: StateSpace, text: str) -> State:
    try:
        return State(space, parse_point(text))
    except GptlabError as exc:
        if isinstance(exc, ParseError):
            raise
        raise InvariantViolation("state-membership", str(exc)) from exc


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# compute ---------------------------------------------------------------------


def cmd_compute(args) -> int:
    space = load_model(args.model)
    out: dict[str, Any] = {}
    if args.state:
        s = _state(space, args.state)
        for name, fn in (("s1", entropy.s1), ("s2", entropy.s2), ("s3", entropy.s3)):
            if getattr(args, name):
                ev = fn(s)
                out[name] = ev.value
                out["method"] = ev.method
                if args.witness:
                    out[f"{name}_witness"] = ev.witness
    if args.states:
        if len(args.states) != 2:
            raise UsageError("--states needs exactly two states")
        a, b = (_state(space, t) for t in args.states)
        if args.d:
            res = distinguish.kolmogorov_distance(a, b)
            out["d"] = res.value
            out["optimal_effect"] = [str(x) for x in res.optimal_effect.vertex_values]
        if args.ps:
            out["success_probability"] = distinguish.success_probability(a, b)
        if args.f:
            fr = distinguish.fidelity(a, b)
            out["f"] = fr.value
            out["certified"] = fr.certified
        if args.clone:
            ch = composite.build_cloner(a, b)
            out["clonable"] = bool(ch)
            if not ch:
                out["fidelity_obstruction"] = ch.fidelity
    if args.complete_measurement:
        res = effects.find_complete_measurement(space)
        out["found"] = res.found
        out["bounds"] = list(res.bounds)
        out["nodes"] = res.nodes
        if res.found:
            out["ray_indices"] = list(res.ray_indices)
    if args.rays:
        rs = distinguish.rays_of(space)
        out["rays"] = [[str(x) for x in r.vertex_values] for r in rs.rays]
    if args.pure_effects:
        out["pure_effects"] = [[str(x) for x in e.vertex_values] for e in effects.pure_effects(space)]
    if args.symmetric:
        out["symmetry"] = symmetry.is_symmetric(space).to_dict()
    if not out:
        raise UsageError("nothing to compute; pass a quantity flag")
    _emit(_dump(out), args.out)
    return EXIT_OK


# sweep -----------------------------------------------------------------------

_QUANT: dict[str, Callable[[State], float]] = {
    "s1": lambda s: entropy.s1(s).value,
    "s2": lambda s: entropy.s2(s, search=False).value,
    "s3": lambda s: entropy.s3(s).value,
}


def sweep_rows(space: StateSpace, quantity: str, n: int, ref: State | None = None) -> tuple[list[str], list[list]]:
    if n < 2:
        raise UsageError("grid needs N >= 2")
    if space.affine_dim != 2 or space.ambient_dim != 2:
        raise UsageError("sweeps need a two-dimensional state space")
    if quantity in ("d", "f") and ref is None:
        raise UsageError("d/f sweeps need --ref")
    lo = [min(v[i] for v in space.vertices) for i in range(2)]
    hi = [max(v[i] for v in space.vertices) for i in range(2)]
    cols = {"all": ["S1", "S2", "S3"], "d": ["D"], "f": ["F"]}.get(quantity, [quantity.upper()])
    rows = []
    for i in range(n):
        for j in range(n):
            c = (lo[0] + (hi[0] - lo[0]) * Fraction(i, n - 1), lo[1] + (hi[1] - lo[1]) * Fraction(j, n - 1))
            try:
                s = State(space, c)
            except GptlabError:
                rows.append([c[0], c[1]] + [None] * len(cols))
                continue
            if quantity == "all":
                vals = [_QUANT[q](s) for q in ("s1", "s2", "s3")]
            elif quantity == "d":
                vals = [float(distinguish.kolmogorov_distance(ref, s).value)]
            elif quantity == "f":
                vals = [distinguish.fidelity(ref, s).value]
            else:
                vals = [_QUANT[quantity](s)]
            rows.append([c[0], c[1]] + [round(v, 12) + 0.0 for v in vals])
    return ["c1", "c2"] + cols, rows


def rows_to_csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow(["" if x is None else str(x) for x in r])
    return buf.getvalue()


def rows_to_svg(header: list[str], rows: list[list], n: int, cell: int = 12) -> str:
    panels = header[2:]
    width = len(panels) * (n * cell + 20) + 20
    height = n * cell + 60
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">']
    for k, name in enumerate(panels):
        vals = [r[2 + k] for r in rows if r[2 + k] is not None]
        lo, hi = (min(vals), max(vals)) if vals else (0.0, 1.0)
        span = hi - lo or 1.0
        x0 = 20 + k * (n * cell + 20)
        parts.append(f'<text x="{x0}" y="14" font-size="11">{name} [{lo:.4g}, {hi:.4g}]</text>')
        for idx, r in enumerate(rows):
            i, j = divmod(idx, n)
            v = r[2 + k]
            fill = "none" if v is None else "rgb({0},{0},{0})".format(int(round(255 * (v - lo) / span)))
            parts.append(
                f'<rect x="{x0 + i * cell}" y="{20 + (n - 1 - j) * cell}" width="{cell}" height="{cell}" fill="{fill}"/>'
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def cmd_sweep(args) -> int:
    space = load_model(args.model)
    ref = _state(space, args.ref) if args.ref else None
    header, rows = sweep_rows(space, args.quantity, args.grid, ref)
    fmt = args.format or "csv"
    if fmt == "csv":
        text = rows_to_csv(header, rows)
    elif fmt == "json":
        text = _dump({"model": space.name, "grid": args.grid, "columns": header, "rows": rows})
    else:
        text = rows_to_svg(header, rows, args.grid)
    _emit(text, args.out)
    return EXIT_OK


# check -----------------------------------------------------------------------


def _prop(name: str, passed: bool, counterexample: Any = None) -> dict:
    out = {"property": name, "pass": bool(passed)}
    if not passed and counterexample is not None:
        out["counterexample"] = counterexample
    return out


def _pt(s: State) -> list[str]:
    return [str(x) for x in s.coords]


def suite_distances(rng: random.Random, tol: float, n: int) -> list[dict]:
    res = []
    spaces = [builder("square"), builder("cuboid-3"), builder("classical-3")]
    for sp in spaces:
        metric = fvdg = prob = True
        cx = None
        for _ in range(n):
            a, b = sampling.random_pair(sp, rng)
            c = sampling.random_state(sp, rng)
            dab = distinguish.kolmogorov_distance(a, b).value
            dba = distinguish.kolmogorov_distance(b, a).value
            dac = distinguish.kolmogorov_distance(a, c).value
            dbc = distinguish.kolmogorov_distance(b, c).value
            if not (dab == dba and dac <= dab + dbc and (dab == 0) == (a == b)):
                metric, cx = False, [_pt(a), _pt(b), _pt(c)]
            if dab != 2 * distinguish.success_probability(a, b) - 1:
                prob, cx = False, [_pt(a), _pt(b)]
            if not distinguish.check_distance_fidelity_relation(a, b, tol):
                fvdg, cx = False, [_pt(a), _pt(b)]
        res.append(_prop(f"{sp.name}: metric axioms for D", metric, cx))
        res.append(_prop(f"{sp.name}: D = 2 Ps - 1", prob, cx))
        res.append(_prop(f"{sp.name}: 1-F <= D <= sqrt(1-F^2)", fvdg, cx))
    qubit = True
    cx = None
    for _ in range(n):
        a, b = sampling.random_qubit(rng), sampling.random_qubit(rng)
        d, f = qoracle.trace_distance(a, b), qoracle.fidelity_q(a, b)
        if 1 - f > d + tol or d > math.sqrt(max(0.0, 1 - f * f)) + tol:
            qubit, cx = False, [list(a), list(b)]
    res.append(_prop("qubit: 1-F <= D <= sqrt(1-F^2)", qubit, cx))
    sq = builder("square")
    mono = True
    cx = None
    for _ in range(n):
        ch = sampling.random_channel(sq, sq, rng)
        a, b = sampling.random_pair(sq, rng)
        d0, d1 = distinguish.kolmogorov_distance(a, b).value, distinguish.kolmogorov_distance(ch(a), ch(b)).value
        f0, f1 = distinguish.fidelity(a, b).value, distinguish.fidelity(ch(a), ch(b)).value
        if d1 > d0 or f1 < f0 - tol:
            mono, cx = False, [_pt(a), _pt(b)]
    res.append(_prop("square: monotonicity of D and F under channels", mono, cx))
    conv = True
    cx = None
    for _ in range(n):
        k = rng.randint(1, 3)
        p = sampling.random_weights(rng, k, positive=True)
        q = sampling.random_weights(rng, k, positive=True)
        ss = [sampling.random_state(sq, rng) for _ in range(k)]
        ts = [sampling.random_state(sq, rng) for _ in range(k)]
        lhs = distinguish.kolmogorov_distance(State.from_mixture(p, ss), State.from_mixture(q, ts)).value
        rhs = distinguish.d_c(p, q) + sum(pi * distinguish.kolmogorov_distance(a, b).value for pi, a, b in zip(p, ss, ts))
        if lhs > rhs:
            conv, cx = False, [[_pt(a) for a in ss], [_pt(b) for b in ts]]
    res.append(_prop("square: strong convexity of D", conv, cx))
    orth = True
    for a in sq.pure_states():
        for b in sq.pure_states():
            d = distinguish.kolmogorov_distance(a, b).value
            f = distinguish.fidelity(a, b).value
            if (d == 1) != (abs(f) <= tol):
                orth = False
    res.append(_prop("square: D = 1 iff F = 0 on pure pairs", orth))
    return res


def suite_entropies(rng: random.Random, tol: float, n: int) -> list[dict]:
    res = []
    sq = builder("square")
    order = closed = True
    cx = None
    for i in range(5):
        for j in range(5):
            s = State(sq, (Fraction(i, 4), Fraction(j, 4)))
            v = (entropy.s1(s).value, entropy.s2(s, search=False).value, entropy.s3(s).value)
            cf = entropy.square_closed_forms(Fraction(i, 4), Fraction(j, 4))
            if not (v[0] <= v[1] + tol and v[1] <= v[2] + tol):
                order, cx = False, _pt(s)
            if max(abs(x - y) for x, y in zip(v, cf)) > 1e-9:
                closed, cx = False, _pt(s)
    res.append(_prop("square: S1 <= S2 <= S3", order, cx))
    res.append(_prop("square: closed forms", closed, cx))
    for d in (2, 3):
        sp = builder(f"classical-{d}")
        ok = True
        cx = None
        for _ in range(n):
            s = sampling.random_state(sp, rng)
            h = entropy.shannon_entropy(s.coords)
            vals = (entropy.s1(s).value, entropy.s2(s, search=False).value, entropy.s3(s).value)
            if max(abs(v - h) for v in vals) > 1e-9:
                ok, cx = False, _pt(s)
        res.append(_prop(f"classical-{d}: S1 = S2 = S3 = H", ok, cx))
    for sp in (sq, builder("skew-square")):
        wc = sub = conc = bnd = True
        cx = None
        for _ in range(n):
            ens = sampling.random_ensemble(sp, rng)
            if not entropy.check_weak_concavity(ens, 1e-6):
                wc, cx = False, [_pt(s) for s in ens.states]
            if not entropy.check_s3_subadditivity(ens, 1e-6):
                sub, cx = False, [_pt(s) for s in ens.states]
            if not entropy.check_s1_concavity(ens, 1e-6):
                conc, cx = False, [_pt(s) for s in ens.states]
            if not entropy.check_boundary(sampling.random_state(sp, rng)):
                bnd = False
        res.append(_prop(f"{sp.name}: weak concavity of S2", wc, cx))
        res.append(_prop(f"{sp.name}: S3 subadditivity", sub, cx))
        res.append(_prop(f"{sp.name}: S1 concavity", conc, cx))
        res.append(_prop(f"{sp.name}: S1 = 0 only on the boundary", bnd))
    acc = True
    cx = None
    for _ in range(n):
        ens = sampling.random_ensemble(sq, rng)
        m = sampling.random_measurement(sq, rng)
        if entropy.mutual_information(ens, m) > entropy.s2(ens.barycenter, search=False).value + 1e-6:
            acc, cx = False, [_pt(s) for s in ens.states]
    res.append(_prop("square: accessible information <= S2", acc, cx))
    return res


def suite_cloning(rng: random.Random, tol: float, n: int) -> list[dict]:
    res = []
    for name in ("square", "cuboid-3", "skew-square", "classical-3"):
        sp = builder(name)
        w = composite.non_distinguishable_witness(sp)
        res.append(_prop(f"{sp.name}: witness F >= 1/2", w.fidelity >= 0.5 - 1e-9, [_pt(w.s1), _pt(w.s)]))
    sq = builder("square")
    ok = True
    cx = None
    p = composite.min_tensor(sq, sq)
    for _ in range(n):
        a, b = sampling.random_pair(sq, rng)
        d = distinguish.kolmogorov_distance(a, b).value
        ch = composite.build_cloner(a, b, p)
        if bool(ch) != (d in (0, 1)):
            ok, cx = False, [_pt(a), _pt(b)]
    res.append(_prop("square: cloner exists iff D in {0, 1}", ok, cx))
    cc = composite.build_cloner(State(sq, (0, 0)), State(sq, (Fraction(1, 2), Fraction(1, 2))), p)
    res.append(
        {
            "property": "square: CannotClone witness (0,0) vs (1/2,1/2)",
            "pass": (not cc) and abs(cc.fidelity - math.sqrt(0.5)) <= 1e-9,
            "fidelity": cc.fidelity,
        }
    )
    for name in ("classical-3", "square", "skew-square"):
        sp = builder(name)
        uni = composite.universal_pure_cloner(sp) is not None
        res.append(_prop(f"{sp.name}: universal pure cloner exists iff simplex", uni == sp.is_simplex()))
    return res


def suite_symmetry(rng: random.Random, tol: float, n: int) -> list[dict]:
    res = []
    for name, expect in (("classical-3", True), ("square", True), ("cuboid-3", True), ("skew-square", False)):
        sp = builder(name)
        rep = symmetry.is_symmetric(sp)
        item = _prop(f"{sp.name}: symmetric is {expect}", rep.symmetric == expect)
        item["report"] = rep.to_dict()
        res.append(item)
    sq = builder("square")
    se = symmetry.satisfies_strong_equality(sq)
    target = tuple(tuple(tuple(Fraction(x) for x in v) for v in t) for t in (((0, 0), (0, 1)), ((0, 0), (1, 1))))
    hits = [pr for pr in se.ordered_counterexamples if pr in (target, target[::-1])]
    item = _prop("square: strong equality fails", (not se.ordered) and bool(hits))
    item["counterexample"] = hits[0] if hits else None
    item["counterexamples_found"] = len(se.ordered_counterexamples)
    item["ordered"], item["unordered"] = se.ordered, se.unordered
    res.append(item)
    for name in ("classical-2", "classical-3"):
        res.append(_prop(f"{name}: strong equality holds", bool(symmetry.satisfies_strong_equality(builder(name)))))
    return res


SUITES = {
    "distances": suite_distances,
    "entropies": suite_entropies,
    "cloning": suite_cloning,
    "symmetry": suite_symmetry,
}


def cmd_check(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    report = {"seed": args.seed, "suites": {}}
    ok = True
    for name in names:
        rng = random.Random(f"{args.seed}-{name}")
        props = SUITES[name](rng, args.tol, args.samples)
        report["suites"][name] = props
        ok = ok and all(p["pass"] for p in props)
    report["pass"] = ok
    _emit(_dump(report), args.out)
    return EXIT_OK if ok else EXIT_PROPERTY


# model -----------------------------------------------------------------------


def cmd_model(args) -> int:
    if args.action == "build":
        sp = load_model(args.target)
        _emit(serialize(sp), args.out)
        return EXIT_OK
    path = Path(args.target)
    if not path.exists():
        raise ParseError(f"no such file: {args.target}")
    obj = deserialize(path.read_text(encoding="utf-8"))
    if args.action == "validate":
        _emit(_dump({"valid": True, "type": to_document(obj)["type"]}), args.out)
    else:
        _emit(serialize(obj), args.out)
    return EXIT_OK


# entry point -----------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--model", default=argparse.SUPPRESS, help="builder name or JSON path")
    p.add_argument("--out", default=argparse.SUPPRESS, help="write output to this path")
    p.add_argument("--format", choices=["csv", "json", "svg"], default=argparse.SUPPRESS)
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    p.add_argument("--tol", type=float, default=argparse.SUPPRESS)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="gptlab", parents=[common], description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", parents=[common], help="evaluate quantities for given states")
    c.add_argument("--state", help="one state, e.g. 1/2,1/4")
    c.add_argument("--states", nargs="+", help="two states")
    for flag in ("s1", "s2", "s3", "d", "f", "ps", "clone", "witness", "rays", "symmetric"):
        c.add_argument(f"--{flag}", action="store_true")
    c.add_argument("--complete-measurement", action="store_true")
    c.add_argument("--pure-effects", action="store_true")
    c.set_defaults(func=cmd_compute)

    s = sub.add_parser("sweep", parents=[common], help="grid data for two-dimensional spaces")
    s.add_argument("--quantity", choices=["s1", "s2", "s3", "all", "d", "f"], default="all")
    s.add_argument("--grid", type=int, default=21)
    s.add_argument("--ref", help="reference state for d/f sweeps")
    s.set_defaults(func=cmd_sweep)

    k = sub.add_parser("check", parents=[common], help="run property suites")
    k.add_argument("suite", choices=[*SUITES, "all"])
    k.add_argument("--samples", type=int, default=20)
    k.set_defaults(func=cmd_check)

    m = sub.add_parser("model", parents=[common], help="build, validate or convert JSON models")
    m.add_argument("action", choices=["build", "validate", "convert"])
    m.add_argument("target", help="builder name (build) or JSON file")
    m.set_defaults(func=cmd_model)
    return parser


_DEFAULTS = {"model": "square", "out": None, "format": None, "seed": 0, "tol": 1e-9}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    for key, val in _DEFAULTS.items():
        if not hasattr(args, key):
            setattr(args, key, val)
    try:
        return args.func(args)
    except (ParseError, InvariantViolation, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except GptlabError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
