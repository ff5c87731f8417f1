"""Acceptance criteria, one test per criterion.

Each test logs a PASS/FAIL line through the ``record`` fixture; the lines are
repeated in the terminal summary.  Run ``pytest tests/test_acceptance.py``.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction as Fr
from itertools import product

import pytest

from gptlab import qoracle, sampling
from gptlab.composite import CannotClone, build_cloner, min_tensor, non_distinguishable_witness, product_state
from gptlab.distinguish import d_c, fidelity, kolmogorov_distance
from gptlab.effects import find_complete_measurement, indecomposable_rays
from gptlab.entropy import (
    check_boundary,
    check_s1_concavity,
    check_s3_subadditivity,
    check_weak_concavity,
    mutual_information,
    s1,
    s2,
    s3,
    shannon_entropy,
    square_closed_forms,
)
from gptlab.model import (
    Measurement,
    State,
    build_classical,
    build_hypercuboid,
    build_skew_square,
)
from gptlab.symmetry import automorphisms, is_symmetric, satisfies_strong_equality

pytestmark = pytest.mark.acceptance

N = 21
GRID = [(Fr(i, N - 1), Fr(j, N - 1)) for i in range(N) for j in range(N)]


def _values_at(ray, named: dict) -> tuple:
    return tuple(ray(State(ray.space, p)) for p in named)


@pytest.fixture(scope="module")
def grid_values():
    sq = build_hypercuboid(2)
    out = []
    for c in GRID:
        s = State(sq, c)
        out.append((c, s1(s), s2(s, restarts=2, steps=40), s3(s)))
    return out


def test_criterion_01_square_rays(record):
    sq = build_hypercuboid(2)
    rays = indecomposable_rays(sq)
    cols = [(0, 0), (0, 1), (1, 0), (1, 1)]
    table = {
        "e1": (0, 0, 1, 1),
        "e2": (1, 1, 0, 0),
        "e3": (0, 1, 0, 1),
        "e4": (1, 0, 1, 0),
    }
    got = {_values_at(r, [tuple(map(Fr, c)) for c in cols]) for r in rays.rays}
    want = {tuple(Fr(x) for x in row) for row in table.values()}
    exact = all(type(x) is Fr for r in rays.rays for x in r.vertex_values)
    ok = len(rays) == 4 and got == want and exact
    assert record(1, "square rays match the reference ray table (alpha=1)", ok, f"{len(rays)} rays")


def test_criterion_02_skew_rays(record):
    sk = build_skew_square()
    rays = indecomposable_rays(sk)
    cols = [(0, 0), (1, 0), (0, 1), (2, 2)]
    h, t = Fr(1, 2), Fr(2, 3)
    want = {(0, 0, h, 1), (0, h, 0, 1), (t, 0, 1, 0), (t, 1, 0, 0)}
    want = {tuple(Fr(x) for x in row) for row in want}
    got = {_values_at(r, [tuple(map(Fr, c)) for c in cols]) for r in rays.rays}
    ok = len(rays) == 4 and got == want
    assert record(2, "skew-square rays match the reference ray table", ok, f"{len(rays)} rays")


def test_criterion_03_complete_measurements(record):
    skew = find_complete_measurement(build_skew_square())
    spaces = [build_hypercuboid(2)] + [build_classical(d) for d in (2, 3, 4)]
    found = [find_complete_measurement(sp) for sp in spaces]
    ok = not skew.found and skew.nodes > 0 and skew.measurement is None
    for sp, res in zip(spaces, found):
        ok &= res.found
        if res.found:
            m = res.measurement
            ok &= all(sum((e(v) for e in m.effects), Fr(0)) == 1 for v in sp.pure_states())
    assert record(3, "skew square NotFound, square/classical(2..4) found", ok, f"skew searched {skew.nodes} nodes")


def test_criterion_04_closed_forms(record, grid_values):
    worst = [0.0, 0.0, 0.0]
    for c, a, b, d in grid_values:
        ref = square_closed_forms(*c)
        for k, v in enumerate((a.value, b.value, d.value)):
            worst[k] = max(worst[k], abs(v - ref[k]))
        # the hill-climb never beats the vertex maximum
        worst[1] = max(worst[1], b.witness["gap"])
    ok = worst[0] <= 1e-9 and worst[2] <= 1e-9 and worst[1] <= 1e-6
    assert record(4, "s1/s2/s3 match square closed forms on 21x21 grid", ok, "max err " + ", ".join(f"{w:.1e}" for w in worst))


def test_criterion_05_ordering(record, grid_values):
    bad = [c for c, a, b, d in grid_values if not (a.value <= b.value + 1e-9 and b.value <= d.value + 1e-9)]
    assert record(5, "S1 <= S2 <= S3 on the grid", not bad, f"{len(bad)} violations")


def test_criterion_06_classical(record):
    rng = random.Random(6)
    worst = 0.0
    for d in (2, 3, 4):
        sp = build_classical(d)
        for _ in range(50):
            s = sampling.random_state(sp, rng)
            h = shannon_entropy(s.barycentric)
            for ev in (s1(s), s2(s, search=False), s3(s)):
                worst = max(worst, abs(ev.value - h))
    assert record(6, "S1=S2=S3=H on classical(2..4)", worst <= 1e-9, f"max err {worst:.1e}")


def test_criterion_07_distance_fidelity(record):
    rng = random.Random(7)
    worst = math.inf
    for sp in (build_hypercuboid(2), build_hypercuboid(3), build_classical(3)):
        for _ in range(200):
            a, b = sampling.random_pair(sp, rng)
            d, f = float(kolmogorov_distance(a, b).value), fidelity(a, b).value
            worst = min(worst, d - (1 - f), math.sqrt(max(0.0, 1 - f * f)) - d)
    for _ in range(200):
        r, t = sampling.random_qubit(rng, pure=rng.random() < 0.3), sampling.random_qubit(rng)
        d, f = qoracle.trace_distance(r, t), qoracle.fidelity_q(r, t)
        worst = min(worst, d - (1 - f), math.sqrt(max(0.0, 1 - f * f)) - d)
    assert record(7, "1-F <= D <= sqrt(1-F^2)", worst >= -1e-9, f"min slack {worst:.1e}")


def test_criterion_08_monotonicity(record):
    rng = random.Random(8)
    spaces = [build_hypercuboid(2), build_hypercuboid(3), build_classical(3), build_skew_square()]
    worst = math.inf
    for _ in range(100):
        src = rng.choice(spaces)
        tgt = src if rng.random() < 0.7 else rng.choice(spaces)
        ch = sampling.random_channel(src, tgt, rng)
        a, b = sampling.random_pair(src, rng)
        la, lb = ch(a), ch(b)
        dd = float(kolmogorov_distance(a, b).value - kolmogorov_distance(la, lb).value)
        df = fidelity(la, lb).value - fidelity(a, b).value
        worst = min(worst, dd, df)
    assert record(8, "D non-increasing, F non-decreasing under channels", worst >= -1e-9, f"min slack {worst:.1e}")


def test_criterion_09_strong_convexity(record):
    rng = random.Random(9)
    spaces = [build_hypercuboid(2), build_classical(3), build_skew_square(), build_hypercuboid(3)]
    worst_d, worst_f = math.inf, math.inf
    for _ in range(100):
        sp = rng.choice(spaces)
        k = rng.randint(1, 3)
        p = sampling.random_weights(rng, k, positive=True)
        q = sampling.random_weights(rng, k, positive=True)
        ss = [sampling.random_state(sp, rng) for _ in range(k)]
        ts = [sampling.random_state(sp, rng) for _ in range(k)]
        mix_s, mix_t = State.from_mixture(p, ss), State.from_mixture(q, ts)
        lhs = kolmogorov_distance(mix_s, mix_t).value
        rhs = d_c(p, q) + sum((pi * kolmogorov_distance(a, b).value for pi, a, b in zip(p, ss, ts)), Fr(0))
        worst_d = min(worst_d, float(rhs - lhs))
        flhs = fidelity(mix_s, mix_t).value
        frhs = math.fsum(math.sqrt(pi * qi) * fidelity(a, b).value for pi, qi, a, b in zip(p, q, ss, ts))
        worst_f = min(worst_f, flhs - frhs)
    ok = worst_d >= -1e-9 and worst_f >= -1e-6
    assert record(9, "strong convexity of D, strong concavity of F", ok, f"slacks {worst_d:.1e}, {worst_f:.1e}")


def test_criterion_10_cloning(record):
    rng = random.Random(10)
    ok, tried, cloned = True, 0, 0
    for sp in (build_hypercuboid(2), build_classical(3), build_skew_square()):
        p = min_tensor(sp, sp)
        pairs = [(State(sp, a), State(sp, b)) for a, b in product(sp.vertices, repeat=2)]
        pairs += [sampling.random_pair(sp, rng) for _ in range(15)]
        for a, b in pairs:
            tried += 1
            d = kolmogorov_distance(a, b).value
            res = build_cloner(a, b, p)
            if isinstance(res, CannotClone):
                ok &= d not in (0, 1)
                continue
            cloned += 1
            ok &= d in (0, 1)
            ok &= res(a) == product_state(a, a, p) and res(b) == product_state(b, b, p)
    wit = [non_distinguishable_witness(sp) for sp in (build_hypercuboid(2), build_hypercuboid(3), build_skew_square(), build_classical(3))]
    ok &= all(w.fidelity >= 0.5 for w in wit)
    assert record(10, "cloner exists iff D in {0,1}; witnesses have F >= 1/2", ok, f"{cloned}/{tried} pairs cloned")


def test_criterion_11_entropy_inequalities(record):
    rng = random.Random(11)
    fails = 0
    for sp in (build_hypercuboid(2), build_hypercuboid(3)):
        for _ in range(100):
            ens = sampling.random_ensemble(sp, rng)
            fails += len(check_weak_concavity(ens, 1e-6).failures())
            fails += len(check_s3_subadditivity(ens, 1e-6).failures())
    sq = build_hypercuboid(2)
    for _ in range(100):
        fails += len(check_s1_concavity(sampling.random_ensemble(sq, rng), 1e-6).failures())
    assert record(11, "weak concavity, S3 subadditivity, S1 concavity", fails == 0, f"{fails} failures")


def test_criterion_12_pureness(record):
    rng = random.Random(12)
    spaces = [build_classical(d) for d in (2, 3, 4)] + [build_hypercuboid(d) for d in (1, 2, 3)] + [build_skew_square()]
    ok = True
    for sp in spaces:
        for v in sp.pure_states():
            ok &= s2(v, search=False).value <= 1e-9 and s3(v).value <= 1e-9
        for _ in range(5):
            s = sampling.random_state(sp, rng, mixed=True)
            ok &= s2(s, search=False).value > 1e-3 and s3(s).value > 1e-3
    boundary = 0
    for sp in (build_hypercuboid(2), build_hypercuboid(3), build_skew_square()):
        pts = [sampling.random_state(sp, rng) for _ in range(20)]
        pts += list(sp.pure_states())
        pts += [State.from_mixture([Fr(1, 3), Fr(2, 3)], [a, b]) for a, b in zip(sp.pure_states(), sp.pure_states()[1:])]
        for s in pts:
            rep = check_boundary(s)
            boundary += rep.notes["claim"]
            ok &= rep.passed
    assert record(12, "pureness of S2/S3, S1=0 only on the boundary", ok, f"{boundary} zero-S1 states checked")


def test_criterion_13_skew_values(record):
    sk = build_skew_square()
    val = s1(State(sk, (Fr(0), Fr(0)))).value
    target = math.log2(3) - 2 / 3
    some_zero = min(s1(v).value for v in sk.pure_states()) <= 1e-9
    ok = abs(val - target) <= 1e-9 and val > 0 and some_zero
    assert record(13, "skew S1(0,0) = log2(3) - 2/3; some vertex has S1 = 0", ok, f"S1(0,0) = {val:.12f}")


def test_criterion_14_symmetry(record):
    rng = random.Random(14)
    ok = all(is_symmetric(build_classical(d)).symmetric for d in (2, 3, 4))
    ok &= all(is_symmetric(build_hypercuboid(d)).symmetric for d in (1, 2, 3))
    ok &= not is_symmetric(build_skew_square()).symmetric
    rep = satisfies_strong_equality(build_hypercuboid(2))
    a = ((Fr(0), Fr(0)), (Fr(0), Fr(1)))
    b = ((Fr(0), Fr(0)), (Fr(1), Fr(1)))
    ok &= not rep.ordered and ((a, b) in rep.ordered_counterexamples or (b, a) in rep.ordered_counterexamples)
    worst = 0.0
    for sp in (build_hypercuboid(2), build_skew_square(), build_classical(3), build_hypercuboid(3)):
        group = automorphisms(sp)
        maps = group.elements if len(group.elements) <= 8 else rng.sample(group.elements, 8)
        for _ in range(3):
            s, t = sampling.random_pair(sp, rng)
            base = (kolmogorov_distance(s, t).value, fidelity(s, t).value, s1(s).value, s2(s, search=False).value, s3(s).value)
            for f in maps:
                fs, ft = State(sp, f(s.coords)), State(sp, f(t.coords))
                ok &= kolmogorov_distance(fs, ft).value == base[0]
                now = (fidelity(fs, ft).value, s1(fs).value, s2(fs, search=False).value, s3(fs).value)
                worst = max(worst, max(abs(x - y) for x, y in zip(now, base[1:])))
    ok &= worst <= 1e-9
    assert record(14, "symmetric spaces, strong-equality counterexample, invariance", ok, f"max drift {worst:.1e}")


def test_criterion_15_holevo_bound(record):
    rng = random.Random(15)
    sq = build_hypercuboid(2)
    worst = math.inf
    for _ in range(100):
        ens = sampling.random_ensemble(sq, rng, size=rng.randint(2, 4))
        if rng.random() < 0.5:
            m = sampling.random_measurement(sq, rng)
        else:
            e = rng.choice(list(indecomposable_rays(sq).rays)) * Fr(rng.randint(1, 6), 6)
            m = Measurement([e, e.complement()])
        bound = s2(ens.barycenter, search=False).value
        worst = min(worst, bound + 1e-6 - mutual_information(ens, m))
    assert record(15, "H(X:J) <= S2(barycenter)", worst >= 0, f"min slack {worst:.1e}")

