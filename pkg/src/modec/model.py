"""Restricted pp-pairs, invariant atoms, and condition sentences.

The pair alphabet is Div(d) = d|x / x=0 and AnnDiv(b, c) = xb=0 / c|x.
Setting b = 0 gives x=x / c|x (TopDiv), c = 0 gives xb=0 / x=0 (AnnZero),
and b = c = 0 is the size pair x=x / x=0.  Pairs are stored with
canonicalized coefficients so equality is structural.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Any, Iterable, Optional

Elem = Any

EQ = "="
GEQ = ">="


class Shape(enum.Enum):
    DIV = "div"
    ANNDIV = "anndiv"
    TOPDIV = "topdiv"
    ANNZERO = "annzero"


@dataclass(frozen=True)
class PpPair:
    kind: str  # "div" | "ann"
    x: Elem  # div: d ; ann: b
    y: Elem = None  # ann: c

    @staticmethod
    def div(ring, d) -> "PpPair":
        return PpPair("div", ring.canon_assoc(d))

    @staticmethod
    def ann(ring, b, c) -> "PpPair":
        return PpPair("ann", ring.canon_assoc(b), ring.canon_assoc(c))

    @staticmethod
    def topdiv(ring, c) -> "PpPair":
        return PpPair.ann(ring, ring.zero, c)

    @staticmethod
    def annzero(ring, b) -> "PpPair":
        return PpPair.ann(ring, b, ring.zero)

    @staticmethod
    def size(ring) -> "PpPair":
        return PpPair.ann(ring, ring.zero, ring.zero)

    def shape(self, ring) -> Shape:
        if self.kind == "div":
            return Shape.DIV
        if ring.is_zero(self.x):
            return Shape.TOPDIV
        if ring.is_zero(self.y):
            return Shape.ANNZERO
        return Shape.ANNDIV

    def dual(self, ring) -> "PpPair":
        if self.kind == "div":
            return self
        return PpPair.ann(ring, self.y, self.x)

    def key(self, ring):
        if self.kind == "div":
            return (0, ring.sort_key(self.x), 0)
        return (1, ring.sort_key(self.x), ring.sort_key(self.y))

    def pretty(self, ring) -> str:
        if self.kind == "div":
            return f"{ring.format_elem(self.x)}|x/x=0"
        b, c = ring.format_elem(self.x), ring.format_elem(self.y)
        return f"x{b}=0/{c}|x"


@dataclass(frozen=True)
class InvariantAtom:
    pair: PpPair
    cmp: str  # EQ or GEQ
    bound: int

    def __post_init__(self):
        if self.cmp not in (EQ, GEQ):
            raise ValueError(f"bad comparison {self.cmp!r}")
        if self.bound < 1:
            raise ValueError("bounds start at 1")

    def dual(self, ring) -> "InvariantAtom":
        return InvariantAtom(self.pair.dual(ring), self.cmp, self.bound)


def dual_atom(ring, atom: InvariantAtom) -> InvariantAtom:
    return atom.dual(ring)


@dataclass(frozen=True)
class CondSentence:
    """Conjunction  /\\ |pair|=f(pair)  /\\ |pair|>=g(pair)  /\\ aux.

    feq/geq are sorted tuples of (pair, bound); aux is a frozenset of pairs
    asserted to have value exactly 1 (Div and AnnDiv-proper shapes only;
    value-1 TopDiv/AnnZero entries stay in feq).
    """

    feq: tuple
    geq: tuple
    aux: frozenset

    @property
    def f(self) -> dict:
        return dict(self.feq)

    @property
    def g(self) -> dict:
        return dict(self.geq)

    def atoms(self) -> list[InvariantAtom]:
        out = [InvariantAtom(p, EQ, n) for p, n in self.feq]
        out += [InvariantAtom(p, GEQ, n) for p, n in self.geq]
        out += [InvariantAtom(p, EQ, 1) for p in sorted_aux(self)]
        return out

    def is_trivial(self) -> bool:
        """True when every constraint has bound 1 (the zero module works)."""
        return all(n == 1 for _, n in self.feq) and not self.geq

    def pretty(self, ring) -> str:
        bits = [f"|{p.pretty(ring)}|={n}" for p, n in self.feq]
        bits += [f"|{p.pretty(ring)}|>={n}" for p, n in self.geq]
        bits += [f"|{p.pretty(ring)}|=1" for p in sorted_aux(self)]
        return " & ".join(bits) if bits else "TRUE"


def sorted_aux(w: CondSentence):
    return sorted(w.aux, key=lambda p: (p.kind, repr(p.x), repr(p.y)))


def make_sentence(ring, f: dict, g: dict, aux: Iterable[PpPair]) -> CondSentence:
    feq = tuple(sorted(f.items(), key=lambda kv: kv[0].key(ring)))
    geq = tuple(sorted(g.items(), key=lambda kv: kv[0].key(ring)))
    return CondSentence(feq, geq, frozenset(aux))


UNSAT = None  # normalize() returns None for a sentence false in every module


def _fold_pair(ring, pair: PpPair):
    """Canonicalize degenerate coefficients.

    Returns ("const1",) for pairs with constant value 1, or ("pair", p) for a
    live pair.  Div(0) and AnnDiv with a unit slot are constant 1; Div(unit)
    is the size pair.
    """
    if pair.kind == "div":
        d = pair.x
        if ring.is_zero(d):
            return ("const1",)
        if ring.is_unit(d):
            return ("pair", PpPair.size(ring))
        return ("pair", pair)
    b, c = pair.x, pair.y
    if ring.is_unit(b) or ring.is_unit(c):
        return ("const1",)
    return ("pair", pair)


def normalize(ring, atoms: Iterable[InvariantAtom]) -> Optional[CondSentence]:
    """Normal form of a raw conjunction, or UNSAT.

    Folds degenerate coefficients, merges duplicate pairs, checks Eq/Geq
    consistency, routes value-1 atoms (aux for Div/AnnDiv-proper, feq for
    TopDiv/AnnZero), and drops trivially true atoms.
    """
    eq_bounds: dict[PpPair, int] = {}
    geq_bounds: dict[PpPair, int] = {}
    for atom in atoms:
        folded = _fold_pair(ring, atom.pair)
        if folded[0] == "const1":
            if atom.cmp == EQ and atom.bound >= 2:
                return UNSAT
            continue  # =1 or >=1 on a constant-1 pair
        pair = folded[1]
        if atom.cmp == EQ:
            prev = eq_bounds.get(pair)
            if prev is not None and prev != atom.bound:
                return UNSAT
            eq_bounds[pair] = atom.bound
        else:
            geq_bounds[pair] = max(geq_bounds.get(pair, 1), atom.bound)

    f: dict[PpPair, int] = {}
    g: dict[PpPair, int] = {}
    aux: set[PpPair] = set()
    for pair, bound in eq_bounds.items():
        geq = geq_bounds.pop(pair, None)
        if geq is not None and bound < geq:
            return UNSAT
        if bound == 1:
            if pair.shape(ring) in (Shape.DIV, Shape.ANNDIV):
                aux.add(pair)
            else:
                f[pair] = 1
        else:
            f[pair] = bound
    for pair, bound in geq_bounds.items():
        if bound >= 2:
            g[pair] = bound
    return make_sentence(ring, f, g, aux)


def normalize_sentence(ring, w: CondSentence) -> Optional[CondSentence]:
    return normalize(ring, w.atoms())


def dual_sentence(ring, w: CondSentence) -> CondSentence:
    f = {p.dual(ring): n for p, n in w.feq}
    g = {p.dual(ring): n for p, n in w.geq}
    aux = {p.dual(ring) for p in w.aux}
    return make_sentence(ring, f, g, aux)


# ---- complexity measures -----------------------------------------------

BOX_NONE = "0"
BOX_EQ = "="
BOX_GEQ = ">="

_BOX_RANK = {BOX_NONE: 0, BOX_EQ: 1, BOX_GEQ: 2}


def clx1(ring, w: CondSentence) -> int:
    """Number of Div entries with bound > 1."""
    n = 0
    for p, b in w.feq + w.geq:
        if p.shape(ring) is Shape.DIV and b > 1:
            n += 1
    return n


def clx2(ring, w: CondSentence) -> int:
    """Number of AnnDiv-proper entries (b, c != 0) with bound > 1."""
    n = 0
    for p, b in w.feq + w.geq:
        if p.shape(ring) is Shape.ANNDIV and b > 1:
            n += 1
    return n


@dataclass(frozen=True)
class ExtSignature:
    short: tuple  # (box1, box2) in {BOX_NONE, BOX_EQ, BOX_GEQ}
    annzero: tuple  # (z1, z2)
    topdiv: tuple  # (z3, z4)

    def swapped(self) -> "ExtSignature":
        return ExtSignature(self.short, self.topdiv, self.annzero)


def ext_signature(ring, w: CondSentence) -> ExtSignature:
    box1 = box2 = BOX_NONE
    z = [0, 0, 0, 0]
    ndiv = nann = 0
    for p, b in w.feq:
        sh = p.shape(ring)
        if sh is Shape.DIV:
            if b > 1:
                ndiv += 1
                box1 = BOX_EQ
        elif sh is Shape.ANNDIV:
            if b > 1:
                nann += 1
                box2 = BOX_EQ
        elif sh is Shape.ANNZERO:
            if b > 1:
                z[0] += 1
        else:
            if b > 1:
                z[2] += 1
    for p, b in w.geq:
        sh = p.shape(ring)
        if sh is Shape.DIV:
            ndiv += 1
            box1 = BOX_GEQ
        elif sh is Shape.ANNDIV:
            nann += 1
            box2 = BOX_GEQ
        elif sh is Shape.ANNZERO:
            z[1] += 1
        else:
            z[3] += 1
    if ndiv > 1 or nann > 1:
        raise ValueError("extended signature needs clx1, clx2 <= 1")
    return ExtSignature((box1, box2), (z[0], z[1]), (z[2], z[3]))


def _short_geq(s1: tuple, s2: tuple) -> bool:
    return all(_BOX_RANK[a] >= _BOX_RANK[b] for a, b in zip(s1, s2))


def _zpair_geq(z: tuple, zp: tuple) -> bool:
    return z[0] + z[1] > zp[0] + zp[1] or (z[0] + z[1] == zp[0] + zp[1] and z[1] >= zp[1])


def sig_geq(s1: ExtSignature, s2: ExtSignature) -> bool:
    """s1 >= s2 in the artinian partial order on extended signatures."""
    if _short_geq(s1.short, s2.short) and s1.short != s2.short:
        return True
    if s1.short != s2.short:
        return False
    return _zpair_geq(s1.annzero, s2.annzero) and _zpair_geq(s1.topdiv, s2.topdiv)


def sig_less(s1: ExtSignature, s2: ExtSignature) -> bool:
    """Strict comparison: s1 < s2."""
    return s1 != s2 and sig_geq(s2, s1)
