"""modec: decision procedures for theories of modules over concrete
Prufer domains (Z, Z localized at p, Q[x])."""

from __future__ import annotations

from .model import EQ, GEQ, InvariantAtom, PpPair
from .rings import ring_select

__all__ = ["PpPair", "InvariantAtom", "EQ", "GEQ", "ring_select"]

__version__ = "0.1.0"
