"""The ring of integers."""

from __future__ import annotations

import math
from typing import Optional, Sequence

from ..card import INF
from .base import Ring
from .catalogue import decide_geq_eq1_catalogue

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _vp_int_local(n: int, p: int) -> int:
    v = 0
    while n % p == 0 and n:
        v += 1
        n //= p
    return v


def factorint(n: int) -> dict[int, int]:
    """Prime factorization of |n|, n != 0, by trial division."""
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    out: dict[int, int] = {}
    for p in _SMALL_PRIMES:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 41
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def vp(p: int, n: int):
    """p-adic valuation; INF for n = 0."""
    if n == 0:
        return INF
    v = 0
    n = abs(n)
    while n % p == 0:
        v += 1
        n //= p
    return v


def _xgcd_int(a: int, b: int) -> tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


class ZRing(Ring):
    name = "z"
    all_residue_fields_infinite = False

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_zero(self, a):
        return a == 0

    def is_unit(self, a):
        return a in (1, -1)

    def canon_assoc(self, a):
        return abs(a)

    def divides(self, d, a):
        if d == 0:
            return a == 0
        return a % d == 0

    def exact_div(self, a, d):
        q, r = divmod(a, d)
        if r:
            raise ArithmeticError(f"{d} does not divide {a}")
        return q

    def xgcd(self, a, b):
        return _xgcd_int(a, b)

    def sort_key(self, a):
        return (abs(a), 0 if a >= 0 else 1)

    def parse_elem(self, text: str):
        return int(text.strip())

    _support_cache: dict[int, int] = {}

    def support_canon(self, a):
        a = abs(a)
        if a in (0, 1):
            return a
        hit = self._support_cache.get(a)
        if hit is None:
            hit = 1
            for p in factorint(a):
                hit *= p
            self._support_cache[a] = hit
        return hit

    # ---- valuations, oracles -------------------------------------------
    def val(self, p: int, a):
        return vp(p, a)

    def epp_cols(self, p, n0, cols, avec, gamma):
        if gamma == 0 or gamma % p == 0:
            return (n0 in (0, None)) and all(m == 0 for m in cols.values())
        # h summands, each contributing v_p(e) to column e and k_j <= va to n0
        h = None
        for e, me in cols.items():
            ve = vp(p, e)
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
            va = min(va, vp(p, a))
        if n0 is None:
            return True
        if h is None:  # h unconstrained by columns
            return n0 == 0 or va >= 1
        if h == 0:
            return n0 == 0
        return n0 <= h * va

    def geq_col_reach(self, e, bound, feq_cols, star_n0, avec, gamma):
        if bound <= 1:
            return True
        primes = set(factorint(e))
        for v in feq_cols.values():
            primes |= set(factorint(v))
        if star_n0 is not None and star_n0 > 1:
            primes |= set(factorint(star_n0))
        total = 1
        for p in sorted(primes):
            if gamma % p == 0:
                continue  # no summands at p
            h = None
            ok = True
            for ej, mj in feq_cols.items():
                vj = vp(p, ej)
                if vj == 0:
                    if _vp_int_local(mj, p):
                        ok = False
                    continue
                hj, rem = divmod(_vp_int_local(mj, p), vj)
                if rem:
                    ok = False
                    break
                if h is None:
                    h = hj
                elif h != hj:
                    ok = False
                    break
            if not ok:
                continue  # base infeasible at p; caller checks that side
            ve = vp(p, e)
            if h is None:
                if ve >= 1:
                    return True  # pump summands at p without touching columns
                continue
            total *= p ** (h * ve)
            if total >= bound:
                return True
        return total >= bound

    def epp1(self, p, n, a, gamma, e, m):
        if n == 0 and m == 0:
            return True
        if gamma % p == 0:  # includes gamma = 0
            return False
        if e == 0:
            return False
        ve, va = vp(p, e), vp(p, a)
        if ve == 0:
            return m == 0 and (n == 0 or va >= 1)
        if m % ve:
            return False
        h = m // ve
        if h == 0:
            return n == 0
        return n <= h * va

    def epp1_sup(self, p, a, gamma, e, m):
        if gamma % p == 0:
            return 0 if m == 0 else None
        va = vp(p, a)
        if m == 0:
            if e != 0 and vp(p, e) == 0:
                return INF if va >= 1 else 0
            return 0  # any summand would contribute to the e-column
        if e == 0:
            return None
        ve = vp(p, e)
        if ve == 0 or m % ve:
            return None
        h = m // ve
        return h * va  # INF when a = 0

    def free_prime_growth(self, avec, gamma, es):
        if gamma == 0:
            return False
        blocked = abs(gamma)
        for e in es:
            if e == 0:
                return False
            blocked *= abs(e)
        g = 0
        for a in avec:
            g = math.gcd(g, a)
        if g == 0:
            return True  # any prime avoiding the blocked set works
        return not self.is_unit(self.strip(g, blocked))

    def xset(self, p, n, e, gamma, a, delta):
        if n < 1 or e == 0:
            raise ValueError("xset needs n >= 1 and e != 0")
        if gamma % p == 0:
            return False
        ve = vp(p, e)
        if ve == 0 or n % ve:
            return False
        return (delta != 0 and delta % p != 0) or (a == 0 and delta != 0)

    # ---- Ziegler base case ----------------------------------------------
    def _coeffs_of(self, pairs):
        out = []
        for q in pairs:
            out.append(q.x)
            if q.kind == "ann":
                out.append(q.y)
        return [c for c in out if c != 0]

    def relevant_primes(self, pairs) -> list[int]:
        primes: set[int] = set()
        for c in self._coeffs_of(pairs):
            primes |= set(factorint(c))
        fresh = 2
        while fresh in primes:
            fresh = _next_prime(fresh)
        primes.add(fresh)
        return sorted(primes)

    def decide_geq_eq1(self, geq, eq1):
        pairs = [p for p, _ in geq] + list(eq1)
        primes = self.relevant_primes(pairs)
        local = [((lambda x, p=p: vp(p, x)), p) for p in primes]
        return decide_geq_eq1_catalogue(geq, eq1, local)


def _next_prime(p: int) -> int:
    n = p + 1
    while True:
        if all(n % q for q in range(2, int(math.isqrt(n)) + 1)):
            return n
        n += 1
