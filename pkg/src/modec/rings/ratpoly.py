"""Q[x]: univariate polynomials with exact rational coefficients."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..card import INF
from .base import Ring
from .catalogue import decide_geq_eq1_catalogue


@dataclass(frozen=True)
class Poly:
    """Coefficients low-to-high degree, no trailing zeros; () is 0."""

    coeffs: tuple

    @staticmethod
    def make(coeffs) -> "Poly":
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        return Poly(tuple(cs))

    @staticmethod
    def const(c) -> "Poly":
        return Poly.make([c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self) -> Fraction:
        return self.coeffs[-1]

    def __add__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [Fraction(0)] * (n - len(self.coeffs))
        b = list(other.coeffs) + [Fraction(0)] * (n - len(other.coeffs))
        return Poly.make([x + y for x, y in zip(a, b)])

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        if self.is_zero() or other.is_zero():
            return Poly(())
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly.make(out)

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q = [Fraction(0)] * max(0, self.degree - other.degree + 1)
        rem = list(self.coeffs)
        d, lc = other.degree, other.lead()
        while len(rem) - 1 >= d and any(c != 0 for c in rem):
            while rem and rem[-1] == 0:
                rem.pop()
            if len(rem) - 1 < d:
                break
            k = len(rem) - 1 - d
            f = rem[-1] / lc
            q[k] = f
            for i, c in enumerate(other.coeffs):
                rem[k + i] -= f * c
            rem.pop()
        return Poly.make(q), Poly.make(rem)

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        lc = self.lead()
        return Poly(tuple(c / lc for c in self.coeffs))

    def derivative(self) -> "Poly":
        return Poly.make([i * c for i, c in enumerate(self.coeffs)][1:])

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        bits = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                bits.append(str(c))
            else:
                xs = "x" if i == 1 else f"x^{i}"
                if c == 1:
                    bits.append(xs)
                elif c == -1:
                    bits.append(f"-{xs}")
                else:
                    bits.append(f"{c}*{xs}")
        out = bits[0]
        for b in bits[1:]:
            out += f"-{b[1:]}" if b.startswith("-") else f"+{b}"
        return out


X = Poly.make([0, 1])


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic()


class QPolyRing(Ring):
    name = "q-poly"
    all_residue_fields_infinite = True

    @property
    def zero(self):
        return Poly(())

    @property
    def one(self):
        return Poly.const(1)

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_zero(self, a):
        return a.is_zero()

    def is_unit(self, a):
        return a.degree == 0

    def canon_assoc(self, a):
        return a.monic()

    def divides(self, d, a):
        if d.is_zero():
            return a.is_zero()
        return a.divmod(d)[1].is_zero()

    def exact_div(self, a, d):
        q, r = a.divmod(d)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    def xgcd(self, a, b):
        old_r, r = a, b
        old_s, s = self.one, self.zero
        old_t, t = self.zero, self.one
        while not r.is_zero():
            q = old_r.divmod(r)[0]
            old_r, r = r, old_r - q * r
            old_s, s = s, old_s - q * s
            old_t, t = t, old_t - q * t
        if old_r.is_zero():
            return old_r, old_s, old_t
        lc = Poly.const(Fraction(1) / old_r.lead())
        return old_r.monic(), lc * old_s, lc * old_t

    def support_canon(self, a):
        if a.is_zero():
            return a
        if a.degree == 0:
            return self.one
        return self.exact_div(a, poly_gcd(a, a.derivative())).monic()

    def sort_key(self, a):
        return (a.degree, tuple((c.numerator, c.denominator) for c in a.coeffs))

    def parse_elem(self, text: str):
        from ..cli import parse_poly

        return parse_poly(text)

    def format_elem(self, a):
        return str(a)

    # ---- oracles ----------------------------------------------------------
    # The only finite Q[x]-module is 0, so EPP degenerates and X is empty.

    def epp_cols(self, p, n0, cols, avec, gamma):
        return (n0 in (0, None)) and all(m == 0 for m in cols.values())

    def geq_col_reach(self, e, bound, feq_cols, star_n0, avec, gamma):
        if bound <= 1:
            return True
        if feq_cols or (star_n0 is not None and star_n0 > 1):
            return False  # finite columns force the empty witness
        if e.degree < 1:
            return False
        return not self.rad_member(gamma, e)

    def epp1(self, p, n, a, gamma, e, m):
        return n == 0 and m == 0

    def epp1_sup(self, p, a, gamma, e, m):
        return 0 if m == 0 else None

    def free_prime_growth(self, avec, gamma, es):
        return False

    def xset(self, p, n, e, gamma, a, delta):
        if n < 1 or e.is_zero():
            raise ValueError("xset needs n >= 1 and e != 0")
        return False

    def _irreducible_factors(self, elems: Sequence[Poly]) -> list[Poly]:
        import sympy

        xsym = sympy.Symbol("x")
        seen: dict[tuple, Poly] = {}
        for e in elems:
            if e.is_zero() or e.degree == 0:
                continue
            expr = sum(sympy.Rational(c.numerator, c.denominator) * xsym**i
                       for i, c in enumerate(e.coeffs))
            for fac, _mult in sympy.factor_list(expr, xsym)[1]:
                poly = sympy.Poly(fac, xsym)
                q = Poly.make([Fraction(str(c)) for c in reversed(poly.all_coeffs())]).monic()
                if q.degree >= 1:
                    seen[self.sort_key(q)] = q
        return [seen[k] for k in sorted(seen)]

    def val_at(self, q: Poly, a: Poly):
        if a.is_zero():
            return INF
        v = 0
        while True:
            quo, rem = a.divmod(q)
            if not rem.is_zero():
                return v
            v += 1
            a = quo

    def decide_geq_eq1(self, geq, eq1):
        pairs = [p for p, _ in geq] + list(eq1)
        coeffs = []
        for pr in pairs:
            coeffs.append(pr.x)
            if pr.kind == "ann":
                coeffs.append(pr.y)
        irreds = self._irreducible_factors(coeffs)
        # one fresh irreducible avoiding every coefficient
        j = 0
        while True:
            cand = X + Poly.const(j)
            if all(c.is_zero() or not self.divides(cand, c) for c in coeffs):
                break
            j += 1
        irreds.append(cand)
        local = [((lambda a, q=q: self.val_at(q, a)), None) for q in irreds]
        return decide_geq_eq1_catalogue(geq, eq1, local)
