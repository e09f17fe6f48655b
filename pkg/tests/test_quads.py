"""Pointwise equivalence of every quadruple rewrite over the enumerated
ideal-point family, in both gamma/delta orientations."""

import pytest

from modec.card import INF
from modec.model import PpPair
from modec.quads import (
    Quad,
    aux_to_quads,
    quad_and,
    quad_clean,
    quad_shift,
    sort_ideal,
    sort_quotient,
    trivial_quad,
)
from modec.rings import Z
from modec.rings.integers import vp
from modec.verify import (
    IdealPoint,
    enum_ideal_points,
    eval_ideal_point,
    eval_quotient_point,
    quad_holds,
    quads_hold,
)

POINTS = enum_ideal_points([2, 3], 4)
POINTS_BIG = enum_ideal_points([2, 3, 5], 6)


def equiv_on_points(points, lhs_fn, quads):
    for pt in points:
        assert lhs_fn(pt) == quads_hold(Z, pt, quads), pt.pretty()


def test_quad_holds_examples():
    pt = IdealPoint(3, ("pk", 2))
    assert quad_holds(Z, pt, Quad(3, 9, 2, 5))
    ptu = IdealPoint(3, ("unit",))
    assert quad_holds(Z, ptu, Quad(1, 9, 2, 5))
    # unit ideal: delta must avoid the maximal ideal by the hash convention
    assert not quad_holds(Z, ptu, Quad(1, 9, 2, 3))
    pt0 = IdealPoint(3, ("zero",))
    assert quad_holds(Z, pt0, Quad(0, 0, 1, 1))
    assert not quad_holds(Z, pt0, Quad(0, 0, 0, 1))


SAMPLE_QUADS = [
    Quad(1, 0, 1, 1),
    Quad(2, 4, 3, 5),
    Quad(3, 9, 2, 5),
    Quad(0, 0, 1, 6),
    Quad(4, 0, 1, 2),
    Quad(6, 12, 5, 2),
    Quad(2, 6, 3, 2),
    Quad(9, 0, 2, 3),
]


@pytest.mark.parametrize("q1", SAMPLE_QUADS)
@pytest.mark.parametrize("q2", SAMPLE_QUADS)
def test_quad_and_pointwise(q1, q2):
    out = quad_and(Z, q1, q2)
    for pt in POINTS:
        want = quad_holds(Z, pt, q1) and quad_holds(Z, pt, q2)
        assert quads_hold(Z, pt, out) == want
        want_sw = quad_holds(Z, pt, q1.swapped()) and quad_holds(Z, pt, q2.swapped())
        assert quads_hold(Z, pt, [q.swapped() for q in out]) == want_sw


def test_quad_and_idempotent_and_unit():
    q = Quad(2, 4, 3, 5)
    equiv_on_points(POINTS, lambda pt: quad_holds(Z, pt, q), quad_and(Z, q, q))
    out = quad_and(Z, q, trivial_quad(Z))
    equiv_on_points(POINTS, lambda pt: quad_holds(Z, pt, q), out)


def _shifted_point(pt, lam):
    """The point (p, lam*I)."""
    if pt.p is None or pt.ideal[0] == "zero":
        return pt
    v = vp(pt.p, lam)
    k = (0 if pt.ideal[0] == "unit" else pt.ideal[1]) + v
    return IdealPoint(pt.p, ("unit",) if k == 0 else ("pk", k))


@pytest.mark.parametrize("lam", [1, 2, 6])
@pytest.mark.parametrize("q", SAMPLE_QUADS)
def test_quad_shift_pointwise(q, lam):
    out = quad_shift(Z, q, lam)
    for pt in POINTS:
        assert quads_hold(Z, pt, out) == quad_holds(Z, _shifted_point(pt, lam), q)
        assert quads_hold(Z, pt, [o.swapped() for o in out]) == quad_holds(
            Z, _shifted_point(pt, lam), q.swapped()
        )


@pytest.mark.parametrize("q", SAMPLE_QUADS)
def test_quad_clean_pointwise(q):
    out = quad_clean(Z, q)
    for c in out:
        if c.a != 0:
            assert c.a % c.r == 0  # cleaned form a = r*a'
    equiv_on_points(POINTS, lambda pt: quad_holds(Z, pt, q), out)
    equiv_on_points(
        POINTS,
        lambda pt: quad_holds(Z, pt, q.swapped()),
        [c.swapped() for c in out],
    )


def test_quad_clean_a0_passthrough():
    assert quad_clean(Z, Quad(5, 0, 2, 3)) == [Quad(5, 0, 2, 3)]


AUX_SETS = [
    [],
    [PpPair.div(Z, 2)],
    [PpPair.ann(Z, 3, 5)],
    [PpPair.ann(Z, 0, 2)],
    [PpPair.ann(Z, 4, 0)],
    [PpPair.div(Z, 6), PpPair.ann(Z, 2, 3)],
    [PpPair.ann(Z, 2, 2), PpPair.ann(Z, 0, 3)],
]


@pytest.mark.parametrize("lam", [1, 2, 6])
@pytest.mark.parametrize("pairs", AUX_SETS)
def test_aux_to_quads_pointwise(pairs, lam):
    quads = aux_to_quads(Z, pairs, lam)
    for pt in POINTS:
        want = all(eval_quotient_point(Z, pt, lam, p) == 1 for p in pairs)
        assert quads_hold(Z, pt, quads) == want, (pt.pretty(), lam)
        want_dual = all(
            eval_quotient_point(Z, pt, lam, p.dual(Z)) == 1 for p in pairs
        )
        assert quads_hold(Z, pt, [q.swapped() for q in quads]) == want_dual
    for q in quads:
        if q.a != 0:
            assert q.a % q.r == 0


def test_aux_to_quads_empty_always_true():
    quads = aux_to_quads(Z, [], 6)
    for pt in POINTS:
        assert quads_hold(Z, pt, quads)


# ---- coded sizes -----------------------------------------------------------


def _k(pt):
    if pt.ideal[0] == "zero":
        return INF
    return 0 if pt.ideal[0] == "unit" else pt.ideal[1]


def sz_R_over_xI(pt, x):
    """|R_p / x*I|"""
    if pt.p is None:
        return 1 if (pt.ideal[0] == "unit" and x != 0) else INF
    k = _k(pt)
    if x == 0 or k == INF:
        return INF
    return pt.p ** (k + vp(pt.p, x))


def sz_xR_over_I(pt, x):
    """|x*R_p / I|, assuming x*R_p >= I"""
    if pt.p is None:
        if pt.ideal[0] == "zero":
            return 1 if x == 0 else INF
        return 1
    k = _k(pt)
    if k == INF:
        return 1 if x == 0 else INF
    return pt.p ** (k - vp(pt.p, x))


def sz_R_over_xR(pt, x):
    """|R_p / x*R_p|"""
    if x == 0:
        return INF
    if pt.p is None:
        return 1
    return pt.p ** vp(pt.p, x)


def sz_I_over_xR(pt, x):
    """|I / x*R_p|, assuming x in I"""
    if pt.p is None:
        if pt.ideal[0] == "zero":
            return 1
        return INF if x == 0 else 1
    k = _k(pt)
    if k == INF:
        return 1
    if x == 0:
        return INF
    return pt.p ** (vp(pt.p, x) - k)


def sz_I_over_xI(pt, x):
    """|I / x*I|"""
    if pt.ideal[0] == "zero":
        return 1
    if pt.p is None:
        return INF if x == 0 else 1
    if x == 0:
        return INF
    return pt.p ** vp(pt.p, x)


Z_SETS = [
    [PpPair.div(Z, 2)],
    [PpPair.ann(Z, 2, 3)],
    [PpPair.ann(Z, 0, 2), PpPair.div(Z, 4)],
    [PpPair.ann(Z, 2, 0)],
    [PpPair.div(Z, 2), PpPair.ann(Z, 2, 2)],
]


def _coded_quotient_value(entry, pair, pt, lam):
    code, s = entry.code(pair), entry.s(pair)
    if pair.kind == "div":
        return {1: lambda: sz_R_over_xI(pt, s), 2: lambda: sz_xR_over_I(pt, s),
                3: lambda: 1}[code]()
    return {
        1: lambda: sz_R_over_xI(pt, lam),
        2: lambda: sz_R_over_xR(pt, pair.y),
        3: lambda: sz_I_over_xI(pt, pair.x),
        4: lambda: 1,
        5: lambda: sz_I_over_xR(pt, s),
    }[code]()


@pytest.mark.parametrize("lam", [2, 6])
@pytest.mark.parametrize("zset", Z_SETS)
def test_sort_quotient_complete_and_correct(zset, lam):
    table = sort_quotient(Z, lam, zset)
    for pt in POINTS:
        fired = [e for e in table if quad_holds(Z, pt, e.quad)]
        assert fired, f"no entry fires at {pt.pretty()}"
        for e in fired:
            for pair in zset:
                code = e.code(pair)
                if pair.kind == "div" and code == 2:
                    assert quad_holds(Z, pt, Quad(e.s(pair), 0, 1, 1))
                if pair.kind == "ann" and code == 5:
                    assert quad_holds(Z, pt, Quad(1, e.s(pair), 1, 1))
                want = eval_quotient_point(Z, pt, lam, pair)
                got = _coded_quotient_value(e, pair, pt, lam)
                assert got == want, (pt.pretty(), pair, code, got, want)


def test_sort_quotient_empty_z():
    table = sort_quotient(Z, 2, [])
    for pt in POINTS:
        assert any(quad_holds(Z, pt, e.quad) for e in table)


def _coded_ideal_value(entry, pair, pt, lam):
    code, s = entry.code(pair), entry.s(pair)
    if pair.kind == "div":
        return {1: lambda: sz_I_over_xR(pt, s), 2: lambda: 1}[code]()
    return {
        1: lambda: sz_I_over_xR(pt, lam),
        2: lambda: sz_I_over_xI(pt, pair.y),
        3: lambda: sz_R_over_xR(pt, pair.x),
        4: lambda: 1,
        5: lambda: sz_xR_over_I(pt, s),
        6: lambda: sz_R_over_xI(pt, s),
    }[code]()


@pytest.mark.parametrize("lam", [6, 4])
@pytest.mark.parametrize("zset", Z_SETS)
def test_sort_ideal_complete_correct(zset, lam):
    table = sort_ideal(Z, lam, zset)
    for pt in POINTS_BIG:
        gate = quad_holds(Z, pt, Quad(1, lam, 1, 1))  # lam in I
        fired = [e for e in table if quad_holds(Z, pt, e.quad)]
        if not gate:
            assert not fired, pt.pretty()
            continue
        assert fired, pt.pretty()
        for e in fired:
            for pair in zset:
                code = e.code(pair)
                if pair.kind == "div" and code == 1:
                    assert quad_holds(Z, pt, Quad(1, e.s(pair), 1, 1))  # s in I
                if pair.kind == "ann" and code == 5:
                    assert quad_holds(Z, pt, Quad(e.s(pair), 0, 1, 1))  # sR >= I
                want = eval_ideal_point(Z, pt, lam, pair)
                got = _coded_ideal_value(e, pair, pt, lam)
                assert got == want, (pt.pretty(), pair, code, got, want)


def test_table_sizes_stay_reasonable():
    zset = [PpPair.ann(Z, 2, 3), PpPair.div(Z, 4), PpPair.ann(Z, 6, 2)]
    tq = sort_quotient(Z, 6, zset)
    ti = sort_ideal(Z, 6, zset)
    assert len(tq) < 3000 and len(ti) < 3000
