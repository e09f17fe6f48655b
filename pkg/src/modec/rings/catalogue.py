"""Indecomposable pure-injective point catalogue for the local deciders.

Over a one-dimensional local situation (prime q of Z or an irreducible of
Q[x]) the candidate points are the finite cyclics R/q^k, the Pruefer module
E(R/q), the completion, and the fraction field.  Pair values on each point
have closed forms in terms of coefficient valuations; decide_geq_eq1 asks
only whether a value is 1 or >= 2, and on R/q^k that predicate switches off
monotonically at a threshold bounded by the coefficient valuations, so a
finite sweep of k sees every profile.
"""

from __future__ import annotations

from typing import Callable, Iterable, Optional

from ..card import INF, card_pow
from ..model import PpPair

CYCLIC = "cyclic"
PRUEFER = "pruefer"
ADIC = "adic"
GENERIC = "generic"


def pair_point_value(pair: PpPair, kind: str, k: int, vfun: Callable, base):
    """|pair(N)| for a catalogue point N.

    vfun maps a ring element to its local valuation (INF for 0); base is the
    residue field size (None when infinite).  Returns an int or INF.
    """
    if pair.kind == "div":
        vd = vfun(pair.x)
        if kind == CYCLIC:
            return card_pow(base, k - min(k, vd))
        return 1 if vd == INF else INF
    vb, vc = vfun(pair.x), vfun(pair.y)
    if kind == CYCLIC:
        return card_pow(base, max(0, min(k, vb) + min(k, vc) - k))
    if kind == PRUEFER:
        if vb == INF:  # b = 0
            return INF if vc == INF else 1
        return card_pow(base, vb) if vc == INF else 1
    if kind == ADIC:
        if vb != INF:
            return 1
        return INF if vc == INF else card_pow(base, vc)
    # generic point (fraction field)
    if vb != INF:
        return 1
    return INF if vc == INF else 1


def _profile(pairs, kind, k, vfun, base):
    return tuple(pair_point_value(p, kind, k, vfun, base) >= 2 for p in pairs)


def _cyclic_threshold(pair: PpPair, vfun) -> int:
    """k beyond which the >=2 predicate on R/q^k is constant for this pair."""
    if pair.kind == "div":
        vd = vfun(pair.x)
        return 0 if vd == INF else vd
    vb, vc = vfun(pair.x), vfun(pair.y)
    if vb == INF or vc == INF:
        return 0
    return vb + vc


def decide_geq_eq1_catalogue(
    geq: Iterable[tuple[PpPair, int]],
    eq1: Iterable[PpPair],
    local_valuations: list[tuple[Callable, Optional[int]]],
) -> bool:
    """Generic decide_geq_eq1 over a list of (valuation, residue-size) local
    data.  For each >= atom we need one point inside its basic open set and
    outside every eq1 open set; bounds are absorbed by taking powers."""
    geq = list(geq)
    eq1 = list(eq1)
    if not geq:
        return True
    if not local_valuations:
        raise ValueError("catalogue needs at least one local prime")
    pairs = [p for p, _ in geq] + list(eq1)
    npos = len(geq)

    profiles: set[tuple] = set()
    for vfun, base in local_valuations:
        kmax = 1 + max(_cyclic_threshold(p, vfun) for p in pairs)
        for k in range(1, kmax + 1):
            profiles.add(_profile(pairs, CYCLIC, k, vfun, base))
        # runtime stabilization assertion rather than trust
        if _profile(pairs, CYCLIC, kmax + 1, vfun, base) != _profile(
            pairs, CYCLIC, kmax, vfun, base
        ):
            raise AssertionError("cyclic point profiles failed to stabilize")
        for kind in (PRUEFER, ADIC):
            profiles.add(_profile(pairs, kind, 1, vfun, base))
    vfun, base = local_valuations[0]
    profiles.add(_profile(pairs, GENERIC, 1, vfun, base))

    for i in range(npos):
        ok = any(prof[i] and not any(prof[npos + j] for j in range(len(eq1))) for prof in profiles)
        if not ok:
            return False
    return True
