"""Z localized at a prime p: fractions with denominator coprime to p."""

from __future__ import annotations

from fractions import Fraction

from ..card import INF
from .base import Ring
from .catalogue import decide_geq_eq1_catalogue
from .integers import vp


def _exp_of(n: int, p: int) -> int:
    v = 0
    while n % p == 0 and n:
        v += 1
        n //= p
    return v


class ZLocRing(Ring):
    all_residue_fields_infinite = False

    def __init__(self, p: int):
        if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.name = f"z-loc:{p}"

    def _check(self, a: Fraction) -> Fraction:
        a = Fraction(a)
        if a.denominator % self.p == 0:
            raise ValueError(f"{a} is not p-local at p={self.p}")
        return a

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_zero(self, a):
        return a == 0

    def val(self, a):
        """p-adic valuation, INF for 0; nonnegative on ring elements."""
        if a == 0:
            return INF
        a = Fraction(a)
        return vp(self.p, a.numerator) - vp(self.p, a.denominator)

    def is_unit(self, a):
        return a != 0 and self.val(a) == 0

    def canon_assoc(self, a):
        if a == 0:
            return Fraction(0)
        return Fraction(self.p) ** self.val(a)

    def divides(self, d, a):
        if d == 0:
            return a == 0
        if a == 0:
            return True
        return self.val(d) <= self.val(a)

    def exact_div(self, a, d):
        q = Fraction(a) / Fraction(d)
        return self._check(q)

    def xgcd(self, a, b):
        if a == 0 and b == 0:
            return (Fraction(0), Fraction(0), Fraction(0))
        va = INF if a == 0 else self.val(a)
        vb = INF if b == 0 else self.val(b)
        if va <= vb:
            g = Fraction(self.p) ** va
            return (g, g / a, Fraction(0))
        g = Fraction(self.p) ** vb
        return (g, Fraction(0), g / b)

    def support_canon(self, a):
        if a == 0:
            return Fraction(0)
        return Fraction(self.p) if self.val(a) >= 1 else Fraction(1)

    def sort_key(self, a):
        a = Fraction(a)
        return (abs(a.numerator), a.denominator, 0 if a >= 0 else 1)

    def parse_elem(self, text: str):
        text = text.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            return self._check(Fraction(int(num), int(den)))
        return self._check(Fraction(int(text)))

    # ---- oracles ---------------------------------------------------------
    def epp_cols(self, p, n0, cols, avec, gamma):
        bad_gamma = gamma == 0 or self.val(gamma) > 0
        if p != self.p or bad_gamma:
            return (n0 in (0, None)) and all(m == 0 for m in cols.values())
        h = None
        for e, me in cols.items():
            ve = self.val(e)
            if ve == 0:
                if me:
                    return False
                continue
            if me % ve:
                return False
            he = me // ve
            if h is None:
                h = he
            elif h != he:
                return False
        va = INF
        for a in avec:
            va = min(va, self.val(a))
        if n0 is None:
            return True
        if h is None:
            return n0 == 0 or va >= 1
        if h == 0:
            return n0 == 0
        return n0 <= h * va

    def geq_col_reach(self, e, bound, feq_cols, star_n0, avec, gamma):
        if bound <= 1:
            return True
        if gamma == 0 or self.val(gamma) > 0:
            return False
        h = None
        for ej, mj in feq_cols.items():
            vj = self.val(ej)
            mjp = _exp_of(mj, self.p)
            if vj == 0:
                if mjp:
                    return False
                continue
            hj, rem = divmod(mjp, vj)
            if rem:
                return False
            if h is None:
                h = hj
            elif h != hj:
                return False
        ve = self.val(e)
        if h is None:
            return ve >= 1
        return self.p ** (h * ve) >= bound

    def epp1(self, p, n, a, gamma, e, m):
        if n == 0 and m == 0:
            return True
        if p != self.p:
            return False
        if gamma == 0 or self.val(gamma) > 0:
            return False
        if e == 0:
            return False
        ve, va = self.val(e), self.val(a)
        if ve == 0:
            return m == 0 and (n == 0 or va >= 1)
        if m % ve:
            return False
        h = m // ve
        if h == 0:
            return n == 0
        return n <= h * va

    def epp1_sup(self, p, a, gamma, e, m):
        if p != self.p:
            return 0 if m == 0 else None
        if gamma == 0 or self.val(gamma) > 0:
            return 0 if m == 0 else None
        va = self.val(a)
        if m == 0:
            if e != 0 and self.val(e) == 0:
                return INF if va >= 1 else 0
            return 0
        if e == 0:
            return None
        ve = self.val(e)
        if ve == 0 or m % ve:
            return None
        return (m // ve) * va

    def free_prime_growth(self, avec, gamma, es):
        if gamma == 0 or self.val(gamma) > 0:
            return False
        if any(e == 0 or self.val(e) > 0 for e in es):
            return False
        return all(a == 0 or self.val(a) >= 1 for a in avec) if avec else True

    def xset(self, p, n, e, gamma, a, delta):
        if n < 1 or e == 0:
            raise ValueError("xset needs n >= 1 and e != 0")
        if p != self.p:
            return False
        if gamma == 0 or self.val(gamma) > 0:
            return False
        ve = self.val(e)
        if ve == 0 or n % ve:
            return False
        return (delta != 0 and self.val(delta) == 0) or (a == 0 and delta != 0)

    def decide_geq_eq1(self, geq, eq1):
        return decide_geq_eq1_catalogue(geq, eq1, [(self.val, self.p)])
