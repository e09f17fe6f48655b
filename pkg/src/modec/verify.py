"""Independent oracles: direct invariant evaluation on explicit finite
modules and on the indecomposable pure-injective Z-points, brute-force
satisfiability search, ideal-point enumeration for the quadruple calculus,
and the semantic sampler used by the completeness harness.

Nothing here is consulted by the decision pipeline; it exists to check it.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .card import INF, card_mul, card_pow, card_prod
from .model import EQ, GEQ, InvariantAtom, PpPair
from .quads import Quad
from .rings.catalogue import ADIC, CYCLIC, GENERIC, PRUEFER, pair_point_value
from .rings.integers import vp

# ---- finite modules -------------------------------------------------------

FiniteModuleDesc = tuple  # sorted tuple of (prime, exponent) with multiplicity


def module_size(desc: FiniteModuleDesc) -> int:
    out = 1
    for p, k in desc:
        out *= p**k
    return out


def eval_pair_on_cyclic(p: int, k: int, pair: PpPair) -> int:
    """|pair(Z/p^k)| by the closed subgroup-lattice forms."""
    v = pair_point_value(pair, CYCLIC, k, lambda e: vp(p, e), p)
    assert v != INF
    return v


def eval_pair_on_finite(desc: FiniteModuleDesc, pair: PpPair) -> int:
    """Invariants are multiplicative over direct summands."""
    out = 1
    for p, k in desc:
        out *= eval_pair_on_cyclic(p, k, pair)
    return out


def atom_holds_on_finite(desc: FiniteModuleDesc, atom: InvariantAtom) -> bool:
    v = eval_pair_on_finite(desc, atom.pair)
    return v == atom.bound if atom.cmp == EQ else v >= atom.bound


def _atom_primes(atoms: Sequence[InvariantAtom]) -> list[int]:
    from .rings.integers import factorint

    primes = {2}
    for atom in atoms:
        for c in (atom.pair.x, atom.pair.y):
            if c not in (None, 0):
                primes |= set(factorint(c))
        primes |= set(factorint(atom.bound)) if atom.bound > 1 else set()
    return sorted(primes)


def brute_force_finite_sat(
    atoms: Sequence[InvariantAtom], size_bound: int = 4096
) -> Optional[FiniteModuleDesc]:
    """Smallest finite abelian group (as a sum of prime-power cyclics) of
    size <= size_bound satisfying all atoms, or None."""
    atoms = list(atoms)
    primes = _atom_primes(atoms)
    summands = [(p, k) for p in primes for k in range(1, size_bound.bit_length())
                if p**k <= size_bound]
    summands.sort(key=lambda s: (s[0] ** s[1], s))

    eq_targets = [(a.pair, a.bound) for a in atoms if a.cmp == EQ]
    geq_targets = [(a.pair, a.bound) for a in atoms if a.cmp == GEQ]

    def value(desc, pair):
        return eval_pair_on_finite(desc, pair)

    best: Optional[FiniteModuleDesc] = None

    def rec(start: int, desc: tuple, size: int):
        nonlocal best
        if best is not None:
            return
        if all(value(desc, p) == b for p, b in eq_targets) and all(
            value(desc, p) >= b for p, b in geq_targets
        ):
            best = desc
            return
        for i in range(start, len(summands)):
            p, k = summands[i]
            nsize = size * p**k
            if nsize > size_bound:
                continue
            ndesc = tuple(sorted(desc + ((p, k),)))
            # partial values only grow; prune Eq overshoot
            if any(value(ndesc, pr) > b or b % value(ndesc, pr) for pr, b in eq_targets):
                continue
            rec(i, ndesc, nsize)

    rec(0, (), 1)
    return best


# ---- Ziegler points over Z -------------------------------------------------


@dataclass(frozen=True)
class ZgPointZ:
    kind: str  # "cyclic" | "pruefer" | "adic" | "rationals"
    p: Optional[int] = None
    k: Optional[int] = None

    @staticmethod
    def cyclic(p: int, k: int) -> "ZgPointZ":
        return ZgPointZ(CYCLIC, p, k)

    @staticmethod
    def pruefer(p: int) -> "ZgPointZ":
        return ZgPointZ(PRUEFER, p)

    @staticmethod
    def adic(p: int) -> "ZgPointZ":
        return ZgPointZ(ADIC, p)

    @staticmethod
    def rationals() -> "ZgPointZ":
        return ZgPointZ("rationals")


def eval_pair_on_point(point: ZgPointZ, pair: PpPair):
    """Exact invariant value (int or INF) on an indecomposable
    pure-injective Z-point."""
    if point.kind == "rationals":
        return pair_point_value(pair, GENERIC, 1, lambda e: vp(2, e), 2)
    vfun = lambda e: vp(point.p, e)  # noqa: E731
    return pair_point_value(pair, point.kind, point.k or 1, vfun, point.p)


def sample_profile(
    points: Sequence[ZgPointZ], rng: Optional[random.Random] = None
) -> list[InvariantAtom]:
    """A satisfiable invariant profile of the direct sum of the points:
    Eq atoms for finite values, Geq atoms for infinite ones."""
    rng = rng or random.Random(0)
    primes = sorted({pt.p for pt in points if pt.p is not None}) or [2]
    pool: list[PpPair] = []
    for p in primes:
        pool += [
            PpPair("div", p),
            PpPair("div", p * p),
            PpPair("ann", 0, p),
            PpPair("ann", 0, p * p),
            PpPair("ann", p, 0),
            PpPair("ann", p * p, 0),
            PpPair("ann", p, p),
            PpPair("ann", p * p, p),
            PpPair("ann", p, p * p),
        ]
    if len(primes) >= 2:
        q = primes[0] * primes[1]
        pool += [PpPair("div", q), PpPair("ann", 0, q), PpPair("ann", q, 0)]
    out = []
    for pair in pool:
        v = card_prod(eval_pair_on_point(pt, pair) for pt in points)
        if v == INF:
            out.append(InvariantAtom(pair, GEQ, rng.randint(2, 9)))
        else:
            out.append(InvariantAtom(pair, EQ, v))
    return out


# ---- ideal points for the quadruple calculus -------------------------------


@dataclass(frozen=True)
class IdealPoint:
    """(p, I) over Z: p in {0, qZ}, I in {0, q^k Z_(q), Z_(q)}.

    ideal is ("zero",), ("unit",) or ("pk", k) with k >= 1.
    """

    p: Optional[int]
    ideal: tuple

    def pretty(self) -> str:
        pp = "0" if self.p is None else f"{self.p}Z"
        if self.ideal[0] == "zero":
            ii = "0"
        elif self.ideal[0] == "unit":
            ii = "R"
        else:
            ii = f"p^{self.ideal[1]}"
        return f"(p={pp}, I={ii})"


def enum_ideal_points(primes: Sequence[int], max_k: int) -> list[IdealPoint]:
    out = [IdealPoint(None, ("zero",)), IdealPoint(None, ("unit",))]
    for p in primes:
        out.append(IdealPoint(p, ("zero",)))
        for k in range(1, max_k + 1):
            out.append(IdealPoint(p, ("pk", k)))
        out.append(IdealPoint(p, ("unit",)))
    return out


def _val(ring, p: Optional[int], x):
    if p is None:
        return 0 if not ring.is_zero(x) else INF
    if hasattr(ring, "p"):  # localized ring: single prime
        return ring.val(x)
    return ring.val(p, x)


def quad_holds(ring, pt: IdealPoint, q: Quad) -> bool:
    """(p, I) |= (r, a, gamma, delta) by direct valuation checks."""
    r, a, g, d = q.r, q.a, q.gamma, q.delta
    kind = pt.ideal[0]

    def in_ideal(x):
        if kind == "zero":
            return ring.is_zero(x)
        if kind == "unit":
            return True
        return ring.is_zero(x) or _val(ring, pt.p, x) >= pt.ideal[1]

    def contains(x):  # xR_p >= I
        if kind == "zero":
            return True
        if ring.is_zero(x):
            return False
        v = _val(ring, pt.p, x)
        return v <= (0 if kind == "unit" else pt.ideal[1])

    def not_in_prime(x):
        if ring.is_zero(x):
            return False
        return pt.p is None or _val(ring, pt.p, x) == 0

    def not_in_hash(x):
        if kind == "zero":
            return not ring.is_zero(x)
        # I^# is the maximal ideal (pR_p, or 0 for the field R_0)
        return not_in_prime(x)

    return contains(r) and in_ideal(a) and not_in_prime(g) and not_in_hash(d)


def quads_hold(ring, pt: IdealPoint, quads: Iterable[Quad]) -> bool:
    return any(quad_holds(ring, pt, q) for q in quads)


# ---- direct evaluation of R_p/lam*I and I/lam*R_p (test oracles) ----------


def eval_quotient_point(ring, pt: IdealPoint, lam, pair: PpPair):
    """|pair(R_p / lam*I)| for a Z-family ideal point; int or INF."""
    vlam = _val(ring, pt.p, lam)
    if pt.p is None:
        # R_0 = Q: lam*I is 0 or Q
        if pt.ideal[0] == "zero":
            return pair_point_value(pair, GENERIC, 1,
                                    lambda e: _val(ring, pt.p, e), None)
        return 1  # Q/Q = 0
    p = pt.p
    vfun = lambda e: _val(ring, p, e)  # noqa: E731
    if pt.ideal[0] == "zero":
        return pair_point_value(pair, ADIC, 1, vfun, p)  # Z_(p) has the same
        # restricted-pair cardinalities as its completion
    k = 0 if pt.ideal[0] == "unit" else pt.ideal[1]
    m = k + vlam
    if m == 0:
        return 1
    return pair_point_value(pair, CYCLIC, m, vfun, p)


def eval_ideal_point(ring, pt: IdealPoint, lam, pair: PpPair):
    """|pair(I / lam*R_p)| when lam is in I; None when the gate fails."""
    if pt.p is None:
        if pt.ideal[0] == "zero":
            return None if not ring.is_zero(lam) else None
        return 1  # I = Q, lam*Q = Q
    p = pt.p
    vlam = _val(ring, p, lam)
    k = {"zero": INF, "unit": 0}.get(pt.ideal[0], None)
    if k is None:
        k = pt.ideal[1]
    if k == INF or vlam < k:
        return None  # lam not in I
    # I/lam R_p = p^k Z_(p) / p^vlam Z_(p) ~= Z/p^(vlam-k)
    m = vlam - k
    vfun = lambda e: _val(ring, p, e)  # noqa: E731
    if m == 0:
        return 1
    return pair_point_value(pair, CYCLIC, m, vfun, p)
