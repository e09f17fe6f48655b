"""Concrete coefficient-ring adapters and their oracle bundles."""

from __future__ import annotations

from .base import INF, Ring
from .integers import ZRing, factorint, vp
from .localized import ZLocRing
from .ratpoly import Poly, QPolyRing, X

Z = ZRing()
QPOLY = QPolyRing()


def ring_select(descriptor: str) -> Ring:
    """Adapter for a descriptor: "z", "z-loc:<p>", or "q-poly"."""
    descriptor = descriptor.strip().lower()
    if descriptor == "z":
        return Z
    if descriptor.startswith("z-loc:"):
        return ZLocRing(int(descriptor.split(":", 1)[1]))
    if descriptor == "q-poly":
        return QPOLY
    raise ValueError(f"unknown ring descriptor {descriptor!r}")


__all__ = [
    "INF",
    "Ring",
    "ZRing",
    "ZLocRing",
    "QPolyRing",
    "Poly",
    "X",
    "Z",
    "QPOLY",
    "ring_select",
    "factorint",
    "vp",
    "ring_select",
]
