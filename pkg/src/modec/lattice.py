"""Free bounded distributive lattice over condition sentences.

Elements are kept in irredundant join-of-meets form: an antichain (under
inclusion) of finite nonempty frozensets of generators.  TOP and BOTTOM are
the empty meet and empty join.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable


@dataclass(frozen=True)
class LatticeExpr:
    components: frozenset  # frozenset of frozensets of generators

    def is_top(self) -> bool:
        return self.components == frozenset([frozenset()])

    def is_bottom(self) -> bool:
        return not self.components


BOTTOM = LatticeExpr(frozenset())
TOP = LatticeExpr(frozenset([frozenset()]))


def _antichain(sets: Iterable[frozenset]) -> frozenset:
    sets = set(sets)
    keep = []
    for s in sorted(sets, key=len):
        if not any(k <= s for k in keep):
            keep.append(s)
    return frozenset(keep)


def expr(*meets) -> LatticeExpr:
    """Lattice element from meet-components given as iterables of generators."""
    return LatticeExpr(_antichain(frozenset(m) for m in meets))


def atom(w) -> LatticeExpr:
    return LatticeExpr(frozenset([frozenset([w])]))


def join(e1: LatticeExpr, e2: LatticeExpr) -> LatticeExpr:
    return LatticeExpr(_antichain(e1.components | e2.components))


def meet(e1: LatticeExpr, e2: LatticeExpr) -> LatticeExpr:
    out = set()
    for a in e1.components:
        for b in e2.components:
            out.add(a | b)
    return LatticeExpr(_antichain(out))


def join_all(exprs: Iterable[LatticeExpr]) -> LatticeExpr:
    out = BOTTOM
    for e in exprs:
        out = join(out, e)
    return out


def meet_all(exprs: Iterable[LatticeExpr]) -> LatticeExpr:
    out = TOP
    for e in exprs:
        out = meet(out, e)
    return out


def filter_membership(e: LatticeExpr, decide: Callable) -> bool:
    """Membership in the prime filter induced by decide: true iff some
    component has every generator accepted.  TOP -> True, BOTTOM -> False."""
    return any(all(decide(w) for w in comp) for comp in e.components)


# ---- Omega / Theta combinatorics ----------------------------------------


def _ordered_factorizations(n: int, parts: int):
    """All tuples (d_1..d_parts) of positive integers with product n."""
    if parts == 1:
        yield (n,)
        return
    for d in sorted(_divisors(n)):
        for rest in _ordered_factorizations(n // d, parts - 1):
            yield (d,) + rest


def _divisors(n: int) -> list[int]:
    out = [d for d in range(1, int(n**0.5) + 1) if n % d == 0]
    return sorted(set(out + [n // d for d in out]))


def _cover_tuples(bound: int, parts: int, lo: int = 1):
    """Tuples (v_1..v_parts) with each v_i in [lo, bound) and product >= bound.
    Used for the Y-free branch of Omega."""
    ceilings = range(lo, bound)
    for tup in itertools.product(ceilings, repeat=parts):
        prod = 1
        for v in tup:
            prod *= v
        if prod >= bound:
            yield tup


@dataclass(frozen=True)
class SplitTuple:
    """One element of Omega_{f,g,n}: per-summand Eq maps and Geq maps."""

    fs: tuple  # n dicts as sorted tuples of (key, value)
    gs: tuple

    def f(self, i: int) -> dict:
        return dict(self.fs[i])

    def g(self, i: int) -> dict:
        return dict(self.gs[i])


def iter_omega(f: dict, g: dict, n: int, keyfn=repr):
    """Lazy enumeration of Omega_{f,g,n} in a deterministic order.

    f maps keys to Eq targets, g to Geq targets (all >= 1).  Yields
    SplitTuple objects whose fs/gs have domains X u (Y \\ Y_i) and Y_i.
    """
    xs = sorted(f, key=keyfn)
    ys = sorted(g, key=keyfn)

    def x_choices(x):
        return [tuple(fac) for fac in _ordered_factorizations(f[x], n)]

    def y_choices(y):
        """(assignment, values): assignment is the frozenset of i with
        y in Y_i; values are the Eq targets for the other summands."""
        gy = g[y]
        out = []
        idx = list(range(n))
        for r in range(n, -1, -1):
            for sub in itertools.combinations(idx, r):
                others = [i for i in idx if i not in sub]
                if sub:
                    for vals in itertools.product(range(1, gy), repeat=len(others)):
                        out.append((frozenset(sub), dict(zip(others, vals))))
                else:
                    for vals in _cover_tuples(gy, len(others)):
                        out.append((frozenset(), dict(zip(others, vals))))
        return out

    pools = [x_choices(x) for x in xs] + [y_choices(y) for y in ys]
    for combo in itertools.product(*pools):
        fs = [dict() for _ in range(n)]
        gs = [dict() for _ in range(n)]
        for x, fac in zip(xs, combo[: len(xs)]):
            for i in range(n):
                fs[i][x] = fac[i]
        for y, (sub, vals) in zip(ys, combo[len(xs):]):
            for i in range(n):
                if i in sub:
                    gs[i][y] = g[y]
                else:
                    fs[i][y] = vals[i]
        yield SplitTuple(
            tuple(tuple(sorted(fi.items(), key=lambda kv: keyfn(kv[0]))) for fi in fs),
            tuple(tuple(sorted(gi.items(), key=lambda kv: keyfn(kv[0]))) for gi in gs),
        )


def omega(f: dict, g: dict, n: int, keyfn=repr) -> list[SplitTuple]:
    return list(iter_omega(f, g, n, keyfn))


def theta(f: dict, g: dict, keyfn=repr) -> list[tuple[dict, dict]]:
    """Theta_{f,g}: pairs (f', g') with g' constant at max(g) on Y' and
    g(y) <= f'(y) < max(g) for y in Y \\ Y'."""
    if not g:
        return [(dict(f), {})]
    ghat = max(g.values())
    ys = sorted(g, key=keyfn)
    out = []
    for mask in itertools.product([True, False], repeat=len(ys)):
        yprime = [y for y, m in zip(ys, mask) if m]
        rest = [y for y, m in zip(ys, mask) if not m]
        ranges = [range(g[y], ghat) for y in rest]
        for vals in itertools.product(*ranges):
            fp = dict(f)
            fp.update(dict(zip(rest, vals)))
            out.append((fp, {y: ghat for y in yprime}))
    return out
