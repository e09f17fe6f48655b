"""Cardinality values: positive integers extended with infinity.

Infinity is float('inf'); arithmetic saturates.  No subtraction or division
ever happens on these values.
"""

from __future__ import annotations

INF = float("inf")


def is_finite(v) -> bool:
    return v != INF


def card_mul(a, b):
    if a == INF or b == INF:
        return INF
    return a * b


def card_prod(vals):
    out = 1
    for v in vals:
        out = card_mul(out, v)
    return out


def card_pow(base, e):
    """base**e where base may be INF or None (infinite residue field)."""
    if e == 0:
        return 1
    if base is None or base == INF:
        return INF
    if e == INF:
        return INF
    return base**e
