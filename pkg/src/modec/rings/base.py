"""Common interface for the concrete coefficient rings.

Every adapter works with exact, hashable element values (int, Fraction,
Poly) and supplies the handful of primitives the decision pipeline needs:
exact arithmetic, canonical associates, extended gcd, Tuganbaev witnesses,
gcd-stripping, and the oracle bundle (radical, DPR, EPP, X, and the Ziegler
base-case decider).
"""

from __future__ import annotations

from typing import Any, Iterable, Optional, Sequence

INF = float("inf")

Elem = Any


class Ring:
    name: str = "?"
    all_residue_fields_infinite: bool = False

    # ---- raw arithmetic -------------------------------------------------
    @property
    def zero(self) -> Elem:
        raise NotImplementedError

    @property
    def one(self) -> Elem:
        raise NotImplementedError

    def add(self, a: Elem, b: Elem) -> Elem:
        raise NotImplementedError

    def mul(self, a: Elem, b: Elem) -> Elem:
        raise NotImplementedError

    def neg(self, a: Elem) -> Elem:
        raise NotImplementedError

    def sub(self, a: Elem, b: Elem) -> Elem:
        return self.add(a, self.neg(b))

    def is_zero(self, a: Elem) -> bool:
        raise NotImplementedError

    def is_unit(self, a: Elem) -> bool:
        raise NotImplementedError

    def canon_assoc(self, a: Elem) -> Elem:
        """Canonical representative of the associate class of a."""
        raise NotImplementedError

    def divides(self, d: Elem, a: Elem) -> bool:
        """d | a in the ring."""
        raise NotImplementedError

    def exact_div(self, a: Elem, d: Elem) -> Elem:
        """a / d, assuming d | a and d != 0."""
        raise NotImplementedError

    def xgcd(self, a: Elem, b: Elem) -> tuple[Elem, Elem, Elem]:
        """(g, u, v) with u*a + v*b = g, g the canonical gcd."""
        raise NotImplementedError

    def gcd(self, a: Elem, b: Elem) -> Elem:
        return self.xgcd(a, b)[0]

    def sort_key(self, a: Elem):
        raise NotImplementedError

    def parse_elem(self, text: str) -> Elem:
        raise NotImplementedError

    def format_elem(self, a: Elem) -> str:
        return str(a)

    def mul_many(self, elems: Iterable[Elem]) -> Elem:
        out = self.one
        for e in elems:
            out = self.mul(out, e)
        return out

    def power(self, a: Elem, n: int) -> Elem:
        out = self.one
        for _ in range(n):
            out = self.mul(out, a)
        return out

    # ---- radical-support canonicalization --------------------------------
    def support_canon(self, a: Elem) -> Elem:
        """Canonical squarefree associate: same prime support as a.

        Unit-avoidance slots (gamma not in p, delta not in I^#) only see the
        support, so keeping them squarefree makes memoization effective."""
        raise NotImplementedError

    def support_mul(self, a: Elem, b: Elem) -> Elem:
        ka, kb = self.support_canon(a), self.support_canon(b)
        if self.is_zero(ka) or self.is_zero(kb):
            return self.zero
        g = self.gcd(ka, kb)
        return self.canon_assoc(self.mul(self.exact_div(ka, g), kb))

    # ---- Tuganbaev witnesses -------------------------------------------
    def witness(self, a: Elem, b: Elem) -> tuple[Elem, Elem, Elem]:
        """(alpha, r, s) with a*alpha = b*r and b*(alpha-1) = a*s.

        Deterministic: built from the canonical extended gcd, so repeated
        calls agree and results are cache-friendly.
        """
        if self.is_zero(a):
            return (self.one, self.zero, self.zero)
        if self.is_zero(b):
            return (self.zero, self.zero, self.zero)
        g, u, v = self.xgcd(a, b)
        a1 = self.exact_div(a, g)
        b1 = self.exact_div(b, g)
        alpha = self.mul(v, b1)
        r = self.mul(v, a1)
        s = self.neg(self.mul(u, b1))
        return (alpha, r, s)

    # ---- radical machinery ----------------------------------------------
    def strip(self, b: Elem, a: Elem) -> Elem:
        """Remove from b every factor it shares with a (divide out gcd(., a)
        until coprime).  The result generates an ideal whose radical is
        (rad bR : a)."""
        if self.is_zero(b):
            return self.zero
        cur = b
        while True:
            g = self.gcd(cur, a)
            if self.is_unit(g):
                return self.canon_assoc(cur)
            cur = self.exact_div(cur, g)

    def rad_colon(self, B: Sequence[Elem], a: Elem) -> list[Elem]:
        """Single generator of an ideal with radical (rad B : a)."""
        b = self.zero
        for gen in B:
            b = self.gcd(b, gen)
        if self.is_zero(b):
            # (rad 0 : a) = 0 for a != 0, and R for a = 0.
            return [self.one if self.is_zero(a) else self.zero]
        if self.is_zero(a):
            return [self.one]
        return [self.strip(b, a)]

    def rad_member(self, a: Elem, b: Elem) -> bool:
        """a in rad(bR)."""
        if self.is_zero(b):
            return self.is_zero(a)
        if self.is_zero(a):
            return False if not self.is_unit(b) else True
        return self.is_unit(self.strip(b, a))

    def rad_power(self, a: Elem, b: Elem, cap: int = 256) -> Optional[int]:
        """Least n with a^n in bR, or None if a is not in rad(bR)."""
        if not self.rad_member(a, b):
            return None
        if self.is_zero(b):
            return 1  # a = 0 here
        p = self.one
        for n in range(1, cap + 1):
            p = self.mul(p, a)
            if self.divides(b, p):
                return n
        raise ArithmeticError("radical power cap exceeded")

    # ---- DPR -------------------------------------------------------------
    def dpr_star(self, a: Elem, B: Sequence[Elem], c: Elem, D: Sequence[Elem]) -> bool:
        """(a, B, c, D) in DPR_*: 1 in (rad B : a) + (rad D : c)."""
        g1 = self.rad_colon(B, a)[0]
        g2 = self.rad_colon(D, c)[0]
        return self.is_unit(self.gcd(g1, g2))

    def dpr(self, a: Elem, b: Elem, c: Elem, d: Elem) -> bool:
        return self.dpr_star(a, [b], c, [d])

    def dpr_n(self, a: Elem, bl: Sequence[Elem], c: Elem, dl: Sequence[Elem]) -> bool:
        """DPR_l membership by the recursive Tuganbaev split down to dpr."""
        bl = list(bl)
        dl = list(dl)
        if not bl or not dl:
            raise ValueError("dpr_n needs nonempty generator lists")
        if len(bl) == 1 and len(dl) == 1:
            return self.dpr(a, bl[0], c, dl[0])
        if len(bl) > 1:
            b1, b2, rest = bl[0], bl[1], bl[2:]
            alpha, _, _ = self.witness(b1, b2)
            return self.dpr_n(self.mul(a, alpha), [b2] + rest, c, dl) and self.dpr_n(
                self.mul(a, self.sub(alpha, self.one)), [b1] + rest, c, dl
            )
        d1, d2, rest = dl[0], dl[1], dl[2:]
        beta, _, _ = self.witness(d1, d2)
        return self.dpr_n(a, bl, self.mul(c, beta), [d2] + rest) and self.dpr_n(
            a, bl, self.mul(c, self.sub(beta, self.one)), [d1] + rest
        )

    def dpr_split(
        self, a: Elem, B: Sequence[Elem], c: Elem, D: Sequence[Elem]
    ) -> Optional[tuple[Elem, int]]:
        """If (a,B,c,D) is in DPR_*, return (eps, n) with (eps*a)^n in the
        ideal generated by B and ((eps-1)*c)^m in the one generated by D for
        some m.  Returns None when membership fails."""
        sigma = self.rad_colon(B, a)[0]
        tau = self.rad_colon(D, c)[0]
        g, u, v = self.xgcd(sigma, tau)
        if not self.is_unit(g):
            return None
        # normalize so that u*sigma + v*tau = 1 exactly
        u = self.exact_div(u, g)
        eps = self.mul(u, sigma)
        bgen = self.zero
        for gen in B:
            bgen = self.gcd(bgen, gen)
        n = self._membership_power(self.mul(eps, a), bgen)
        return (eps, n)

    def _membership_power(self, x: Elem, b: Elem, cap: int = 256) -> int:
        if self.is_zero(b):
            if self.is_zero(x):
                return 1
            raise ArithmeticError("element not in radical")
        p = self.one
        for n in range(1, cap + 1):
            p = self.mul(p, x)
            if self.divides(b, p):
                return n
        raise ArithmeticError("membership power cap exceeded")

    # ---- EPP / X oracles --------------------------------------------------
    def epp_cols(self, p: int, n0: Optional[int], cols: dict, avec, gamma):
        """Closed-form multi-column EPP at residue characteristic p, when
        the ring has one: existence of h summands with total size exponent
        n0 (None = unconstrained) and exact e-column exponents cols[e].
        Returns None when no closed form is available (generic recursion
        runs instead)."""
        return None

    def geq_col_reach(self, e: Elem, bound: int, feq_cols: dict, star_n0, avec, gamma):
        """Closed form for one lower-bound column: given that the exact
        columns and star are satisfiable, can |+R/eR| reach `bound`?  The
        exact columns pin the number of summands at each residue
        characteristic (or leave it free), so the reachable supremum is a
        product of per-prime caps.  None when no closed form exists."""
        return None

    def epp1(self, p: int, n: int, a: Elem, gamma: Elem, e: Elem, m: int) -> bool:
        raise NotImplementedError

    def epp1_sup(self, p: int, a: Elem, gamma: Elem, e: Elem, m: int):
        """Supremum of feasible n in epp1 (None if no n works, INF if
        unbounded).  Feasible sets are downward closed intervals."""
        raise NotImplementedError

    def free_prime_growth(self, avec: Sequence[Elem], gamma: Elem, es: Sequence[Elem]) -> bool:
        """Is there a maximal-type prime q with gamma (and every e in es) a
        unit at q while |R_q/I| can be made arbitrarily large with avec
        inside I?"""
        raise NotImplementedError

    def xset(self, p: int, n: int, e: Elem, gamma: Elem, a: Elem, delta: Elem) -> bool:
        raise NotImplementedError

    def decide_geq_eq1(self, geq, eq1) -> bool:
        """Ziegler base case: is there a module with |pair| >= bound for all
        (pair, bound) in geq and |pair| = 1 for every pair in eq1?"""
        raise NotImplementedError
