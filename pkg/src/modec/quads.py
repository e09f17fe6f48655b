"""The (p, I) |= (r, a, gamma, delta) calculus.

A quadruple holds at a prime p and ideal I <| R_p when rR_p contains I, a
lies in I, gamma avoids p and delta avoids the hash ideal I^#.  Auxiliary
value-1 conditions on quotients R_p/lambda*I rewrite to finite disjunctions
of quadruples, preserving the gamma/delta swap orientation throughout so
the same lists serve the dual sentences.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .model import PpPair, Shape


@dataclass(frozen=True)
class Quad:
    r: object
    a: object
    gamma: object
    delta: object

    def swapped(self) -> "Quad":
        return Quad(self.r, self.a, self.delta, self.gamma)


def make_quad(ring, r, a, gamma, delta) -> Optional[Quad]:
    """Canonicalize slots and drop syntactically unsatisfiable quadruples.

    r and a keep their associate class; gamma and delta only matter through
    their prime support, so they are kept squarefree for dedup power."""
    r, a = ring.canon_assoc(r), ring.canon_assoc(a)
    gamma, delta = ring.support_canon(gamma), ring.support_canon(delta)
    if ring.is_zero(gamma) or ring.is_zero(delta):
        return None  # 0 lies in every prime and every hash ideal
    if ring.is_zero(r) and not ring.is_zero(a):
        return None  # rR >= I forces I = 0, then a in I forces a = 0
    return Quad(r, a, gamma, delta)


def _dedup(ring, quads: Iterable[Optional[Quad]]) -> list[Quad]:
    seen = set()
    out = []
    for q in quads:
        if q is None or q in seen:
            continue
        seen.add(q)
        out.append(q)
    return out


def trivial_quad(ring) -> Quad:
    return Quad(ring.one, ring.zero, ring.one, ring.one)


# ---- combination, shift, cleanup -----------------------------------------


def quad_and(ring, q1: Quad, q2: Quad) -> list[Quad]:
    """Quadruples whose disjunction is equivalent to q1 and q2, in both
    gamma/delta orientations.

    The r-slots and a-slots are merged directly when one side is trivial or
    they agree; otherwise a Tuganbaev witness splits the point space, with
    the branch unit multiplied into both gamma and delta so the swapped
    orientation stays valid.
    """

    def r_cases(r1, r2):
        if r1 == r2 or ring.is_unit(r2):
            return [(r1, ring.one)]
        if ring.is_unit(r1):
            return [(r2, ring.one)]
        alpha, _, _ = ring.witness(r1, r2)
        return [(r1, alpha), (r2, ring.sub(alpha, ring.one))]

    def a_cases(a1, a2):
        if a1 == a2 or ring.is_zero(a2):
            return [(a1, ring.one)]
        if ring.is_zero(a1):
            return [(a2, ring.one)]
        beta, _, _ = ring.witness(a1, a2)
        return [(a2, beta), (a1, ring.sub(beta, ring.one))]

    gg = ring.mul(q1.gamma, q2.gamma)
    dd = ring.mul(q1.delta, q2.delta)
    out = []
    for r, mr in r_cases(q1.r, q2.r):
        for a, ma in a_cases(q1.a, q2.a):
            m = ring.mul(mr, ma)
            out.append(make_quad(ring, r, a, ring.mul(gg, m), ring.mul(dd, m)))
    return _dedup(ring, out)


def quad_and_many(ring, quad_lists: Sequence[list[Quad]]) -> list[Quad]:
    """Conjunction of disjunctions of quadruples, as one disjunction."""
    acc = [trivial_quad(ring)]
    for qs in quad_lists:
        nxt = []
        for q1 in acc:
            for q2 in qs:
                nxt.extend(quad_and(ring, q1, q2))
        acc = _dedup(ring, nxt)
    return acc


def quad_shift(ring, q: Quad, lam) -> list[Quad]:
    """(p, lam*I) |= q  iff  (p, I) |= one of the results (both orientations)."""
    if ring.is_zero(lam):
        raise ValueError("quad_shift needs lambda != 0")
    r, a, g, d = q.r, q.a, q.gamma, q.delta
    alpha, u, _v = ring.witness(r, lam)
    beta, up, vp_ = ring.witness(a, lam)
    one = ring.one
    am1 = ring.sub(alpha, one)
    bm1 = ring.sub(beta, one)
    cases = [
        (u, up, ring.mul(alpha, beta)),
        (u, one, ring.mul(ring.mul(alpha, bm1), vp_)),
        (one, up, ring.mul(am1, beta)),
        (one, one, ring.mul(ring.mul(am1, bm1), vp_)),
    ]
    out = [
        make_quad(ring, rr, aa, ring.mul(g, m), ring.mul(d, m))
        for rr, aa, m in cases
    ]
    return _dedup(ring, out)


def quad_clean(ring, q: Quad) -> list[Quad]:
    """Equivalent disjunction of quadruples in cleaned form a = r*a'."""
    if ring.is_zero(q.a):
        return [make_quad(ring, q.r, ring.zero, q.gamma, q.delta)] if make_quad(
            ring, q.r, ring.zero, q.gamma, q.delta
        ) else []
    if ring.is_zero(q.r):
        return []  # unsatisfiable: I = 0 but a != 0
    if ring.divides(q.r, q.a):
        return _dedup(ring, [q])
    alpha, u, v = ring.witness(q.a, q.r)  # a*alpha = r*u, r*(alpha-1) = a*v
    am1 = ring.sub(alpha, ring.one)
    out = [
        make_quad(
            ring,
            q.r,
            ring.mul(q.r, u),
            ring.mul(q.gamma, alpha),
            ring.mul(q.delta, alpha),
        ),
        make_quad(
            ring,
            q.a,
            q.a,
            ring.mul(q.gamma, ring.mul(am1, v)),
            ring.mul(q.delta, ring.mul(am1, v)),
        ),
    ]
    return _dedup(ring, out)


def clean_all(ring, quads: Iterable[Quad]) -> list[Quad]:
    out = []
    for q in quads:
        out.extend(quad_clean(ring, q))
    return _dedup(ring, out)


def split_cleaned(ring, q: Quad):
    """(r, a') from a cleaned quadruple (r, r*a', gamma, delta)."""
    if ring.is_zero(q.a):
        return q.r, ring.zero
    return q.r, ring.exact_div(q.a, q.r)


# ---- membership conditions as quadruples ---------------------------------


def in_ideal_quads(ring, x, lam) -> list[Quad]:
    """x in lam*I as a disjunction of quadruples on (p, I)."""
    beta, u, v = ring.witness(x, lam)  # x*beta = lam*u, lam*(beta-1) = x*v
    bm1 = ring.sub(beta, ring.one)
    return _dedup(
        ring,
        [
            make_quad(ring, ring.one, u, beta, ring.one),
            make_quad(ring, ring.one, ring.one, ring.mul(v, bm1), ring.one),
        ],
    )


def contains_ideal_quads(ring, x, lam) -> list[Quad]:
    """x*R_p >= lam*I as a disjunction of quadruples on (p, I)."""
    alpha, u, v = ring.witness(x, lam)  # x*alpha = lam*u, lam*(alpha-1) = x*v
    am1 = ring.sub(alpha, ring.one)
    return _dedup(
        ring,
        [
            make_quad(ring, u, ring.zero, alpha, ring.one),
            make_quad(ring, ring.one, ring.zero, am1, ring.one),
        ],
    )


def contains_prod_quads(ring, lam, x) -> list[Quad]:
    """lam*R_p >= x*I, i.e. x*I <= lam*R_p."""
    alpha, u, v = ring.witness(lam, x)  # lam*alpha = x*u, x*(alpha-1) = lam*v
    am1 = ring.sub(alpha, ring.one)
    return _dedup(
        ring,
        [
            make_quad(ring, u, ring.zero, alpha, ring.one),
            make_quad(ring, ring.one, ring.zero, am1, ring.one),
        ],
    )


def in_prod_quads(ring, lam, x) -> list[Quad]:
    """lam in x*I."""
    alpha, u, v = ring.witness(lam, x)
    am1 = ring.sub(alpha, ring.one)
    return _dedup(
        ring,
        [
            make_quad(ring, ring.one, u, alpha, ring.one),
            make_quad(ring, ring.one, ring.one, ring.mul(v, am1), ring.one),
        ],
    )


def pair_eq1_quads(ring, pair: PpPair) -> list[Quad]:
    """|pair(R_p/I)| = 1 as quadruples on (p, I); the swapped lists decide
    the dual pair, shape by shape."""
    one, zero = ring.one, ring.zero
    if pair.kind == "div":
        return _dedup(ring, [make_quad(ring, one, pair.x, one, one)])
    b, c = pair.x, pair.y
    sh = pair.shape(ring)
    if sh is Shape.ANNDIV:
        return _dedup(
            ring,
            [
                make_quad(ring, one, zero, one, b),
                make_quad(ring, one, zero, c, one),
                make_quad(ring, ring.mul(b, c), zero, one, one),
                make_quad(ring, one, one, one, one),
            ],
        )
    if sh is Shape.ANNZERO:
        return _dedup(
            ring,
            [make_quad(ring, one, zero, one, b), make_quad(ring, one, one, one, one)],
        )
    # TopDiv, including the size pair (c = 0)
    out = [make_quad(ring, one, one, one, one)]
    if not ring.is_zero(c):
        out.append(make_quad(ring, one, zero, c, one))
    return _dedup(ring, out)


def aux_to_quads(ring, pairs: Iterable[PpPair], lam) -> list[Quad]:
    """Quadruples q_j with: R_p/lam*I satisfies all |pair|=1 iff (p,I) |=
    some q_j, and the swapped q_j decide the dual conjunction.  Cleaned."""
    if ring.is_zero(lam):
        raise ValueError("aux_to_quads needs lambda != 0")
    lists = [pair_eq1_quads(ring, p) for p in pairs]
    combined = quad_and_many(ring, lists)
    shifted = []
    for q in combined:
        shifted.extend(quad_shift(ring, q, lam))
    return clean_all(ring, _dedup(ring, shifted))


# ---- classification tables ------------------------------------------------


@dataclass(frozen=True)
class TableEntry:
    quad: Quad
    codes: tuple  # sorted tuple of (pair, code)
    svals: tuple  # sorted tuple of (pair, element)

    def _maps(self):
        maps = getattr(self, "_map_cache", None)
        if maps is None:
            maps = (dict(self.codes), dict(self.svals))
            object.__setattr__(self, "_map_cache", maps)
        return maps

    def code(self, pair: PpPair) -> int:
        return self._maps()[0][pair]

    def s(self, pair: PpPair):
        return self._maps()[1][pair]


def _compose_cases(ring, base: list[tuple[Quad, dict, dict]], pair, cases):
    out = []
    for quad, codes, svals in base:
        for cq, code, s in cases:
            for merged in quad_and(ring, quad, cq):
                out.append((merged, {**codes, pair: code}, {**svals, pair: s}))
    # syntactic dedup
    seen = set()
    dedup = []
    for quad, codes, svals in out:
        key = (quad, tuple(sorted(codes.items(), key=lambda kv: repr(kv[0]))),
               tuple(sorted(svals.items(), key=lambda kv: repr(kv[0]))))
        if key in seen:
            continue
        seen.add(key)
        dedup.append((quad, codes, svals))
    return dedup


def _quotient_cases_div(ring, d, lam):
    """Cases for |d|x/x=0 (R_p/lam I)|: codes 1 |R/sI|, 2 |sR/I|, 3 value 1."""
    one, zero = ring.one, ring.zero
    if ring.is_zero(d):
        return [(trivial_quad(ring), 3, one)]
    alpha, u, v = ring.witness(d, lam)  # d*alpha = lam*u, lam*(alpha-1) = d*v
    am1 = ring.sub(alpha, one)
    cases = [
        (make_quad(ring, one, zero, am1, one), 1, v),
        (make_quad(ring, u, zero, alpha, one), 2, u),
        (make_quad(ring, one, u, alpha, one), 3, one),
    ]
    return [(q, c, s) for q, c, s in cases if q is not None]


def _quotient_cases_ann(ring, b, c, lam):
    """Cases for |xb=0/c|x (R_p/lam I)|: codes 1 |R/lam I|, 2 |R/cR|,
    3 |I/bI|, 4 value 1, 5 |I/sR|."""
    one, zero = ring.one, ring.zero
    out = []
    if ring.is_zero(b):
        for q in in_ideal_quads(ring, c, lam):
            out.append((q, 1, one))
        for q in contains_ideal_quads(ring, c, lam):
            out.append((q, 2, c))
        return out
    if ring.is_zero(c):
        for q in in_ideal_quads(ring, b, lam):
            out.append((q, 1, one))
        for q in contains_ideal_quads(ring, b, lam):
            out.append((q, 3, b))
        for q in contains_ideal_quads(ring, zero, lam):  # I = 0
            out.append((q, 4, one))
        return out
    b_in = in_ideal_quads(ring, b, lam)
    c_in = in_ideal_quads(ring, c, lam)
    b_sup = contains_ideal_quads(ring, b, lam)
    c_sup = contains_ideal_quads(ring, c, lam)
    for q in quad_and_many(ring, [b_in, c_in]):
        out.append((q, 1, one))
    for q in quad_and_many(ring, [b_in, c_sup]):
        out.append((q, 2, c))
    for q in quad_and_many(ring, [b_sup, c_in]):
        out.append((q, 3, b))
    bc = ring.mul(b, c)
    for q in contains_ideal_quads(ring, bc, lam):
        out.append((q, 4, one))
    eps, st, rt = ring.witness(bc, lam)  # bc*eps = lam*st, lam*(eps-1) = bc*rt
    em1 = ring.sub(eps, one)
    branch5 = make_quad(ring, one, st, eps, one)
    branch5u = make_quad(ring, one, one, ring.mul(rt, em1), one)
    for branch, s in ((branch5, st), (branch5u, one)):
        if branch is None:
            continue
        for q in quad_and_many(ring, [b_sup, c_sup, [branch]]):
            out.append((q, 5, s))
    return out


def sort_quotient(ring, lam, pairs: Iterable[PpPair]) -> list[TableEntry]:
    """Classification table for the modules R_p/lam*I.

    Complete: every (p, I) satisfies some entry's quadruple; when it does,
    each pair's invariant equals the coded expression of that entry.
    """
    if ring.is_zero(lam):
        raise ValueError("sort_quotient needs lambda != 0")
    table = [(trivial_quad(ring), {}, {})]
    for pair in sorted(set(pairs), key=lambda p: p.key(ring)):
        if pair.kind == "div":
            cases = _quotient_cases_div(ring, pair.x, lam)
        else:
            cases = _quotient_cases_ann(ring, pair.x, pair.y, lam)
        table = _compose_cases(ring, table, pair, cases)
    return [
        TableEntry(
            q,
            tuple(sorted(codes.items(), key=lambda kv: kv[0].key(ring))),
            tuple(sorted(svals.items(), key=lambda kv: kv[0].key(ring))),
        )
        for q, codes, svals in table
    ]


def _ideal_cases_div(ring, d, lam):
    """Cases for |d|x/x=0 (I/lam R_p)|: codes 1 |I/sR|, 2 value 1."""
    one, zero = ring.one, ring.zero
    if ring.is_zero(d):
        return [(trivial_quad(ring), 2, one)]
    alpha, rt, st = ring.witness(d, lam)  # d*alpha = lam*rt, lam*(alpha-1) = d*st
    am1 = ring.sub(alpha, one)
    cases = [
        (make_quad(ring, one, zero, alpha, one), 2, one),
        (make_quad(ring, st, zero, am1, one), 2, one),
        (make_quad(ring, one, st, am1, one), 1, st),
    ]
    return [(q, c, s) for q, c, s in cases if q is not None]


def _ideal_cases_ann(ring, b, c, lam):
    """Cases for |xb=0/c|x (I/lam R_p)| with lam in I: codes 1 |I/lam R|,
    2 |I/cI|, 3 |R/bR|, 4 value 1, 5 |sR/I|, 6 |R/sI|."""
    one = ring.one
    out = []
    b_ann = contains_prod_quads(ring, lam, b)  # bI <= lam R
    c_ann = contains_prod_quads(ring, lam, c)
    b_in = in_prod_quads(ring, lam, b)  # lam in bI
    c_in = in_prod_quads(ring, lam, c)
    for q in quad_and_many(ring, [b_ann, c_ann]):
        out.append((q, 1, one))
    for q in quad_and_many(ring, [b_ann, c_in]):
        out.append((q, 2, c))
    for q in quad_and_many(ring, [b_in, c_ann]):
        out.append((q, 3, b))
    bc = ring.mul(b, c)
    eps, rt, st = ring.witness(lam, bc)  # lam*eps = bc*rt, bc*(eps-1) = lam*st
    em1 = ring.sub(eps, one)
    b4 = make_quad(ring, one, rt, eps, one)
    b5 = make_quad(ring, rt, ring.zero, eps, one)
    b6 = make_quad(ring, one, ring.zero, em1, one)
    for branch, code, s in ((b4, 4, one), (b5, 5, rt), (b6, 6, st)):
        if branch is None:
            continue
        for q in quad_and_many(ring, [b_in, c_in, [branch]]):
            out.append((q, code, s))
    return out


def sort_ideal(ring, lam, pairs: Iterable[PpPair]) -> list[TableEntry]:
    """Classification table for the modules I/lam*R_p, gated on lam in I."""
    if ring.is_zero(lam):
        raise ValueError("sort_ideal needs lambda != 0")
    gate = make_quad(ring, ring.one, lam, ring.one, ring.one)
    table = [(gate, {}, {})]
    for pair in sorted(set(pairs), key=lambda p: p.key(ring)):
        if pair.kind == "div":
            cases = _ideal_cases_div(ring, pair.x, lam)
        else:
            cases = _ideal_cases_ann(ring, pair.x, pair.y, lam)
        table = _compose_cases(ring, table, pair, cases)
    return [
        TableEntry(
            q,
            tuple(sorted(codes.items(), key=lambda kv: kv[0].key(ring))),
            tuple(sorted(svals.items(), key=lambda kv: kv[0].key(ring))),
        )
        for q, codes, svals in table
    ]
