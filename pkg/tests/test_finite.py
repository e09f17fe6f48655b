"""Finite-module deciders against the spec examples and the brute-force
enumeration oracle."""

import itertools
import random

import pytest

from modec import finite as F
from modec.model import EQ, GEQ, InvariantAtom, PpPair
from modec.rings import Z, ring_select
from modec.verify import (
    brute_force_finite_sat,
    eval_pair_on_finite,
    module_size,
)


def test_epp_spec_examples():
    assert F.epp_l(Z, 2, 3, [4], 3, 2, 2)
    assert not F.epp_l(Z, 2, 3, [2], 1, 2, 1)
    assert F.epp_l(Z, 7, 0, [5], 2, 3, 0)  # empty sequence
    # monotone under appending multiples of existing members
    rng = random.Random(5)
    for _ in range(60):
        p = rng.choice([2, 3])
        n, m = rng.randint(0, 3), rng.randint(0, 3)
        a, g, e = rng.randint(0, 8), rng.randint(1, 5), rng.randint(1, 8)
        if F.epp_l(Z, p, n, [a], g, e, m):
            assert F.epp_l(Z, p, n, [a, a * rng.randint(0, 3) * 0 + a], g, e, m)
            assert F.epp_l(Z, p, n, [a, 0], g, e, m)


def _epp_brute(p, n, a, gamma, e, m, hmax=8):
    """Definitional check over multisets of (prime power ideals at p)."""
    if n == 0 and m == 0:
        return True
    if gamma % p == 0 or e == 0:
        return False
    from modec.rings.integers import vp

    ve = vp(p, e)
    for h in range(0, hmax + 1):
        if h * ve != m:
            continue
        if h == 0:
            if n == 0:
                return True
            continue
        # n = sum of h parts each <= v_p(a)
        va = vp(p, a)
        cap = n if a == 0 else min(n, va * h) if va != float("inf") else n
        if a == 0 or va * h >= n:
            if n <= (float("inf") if a == 0 else va * h):
                return True
    return False


def test_epp1_against_definitional_search():
    for p in (2, 3):
        for n in range(4):
            for m in range(4):
                for a in range(0, 9):
                    for g in (1, 2, 3):
                        for e in (1, 2, 3, 4, 6, 8):
                            want = _epp_brute(p, n, a, g, e, m)
                            got = Z.epp1(p, n, a, g, e, m)
                            assert got == want, (p, n, a, g, e, m)


def test_finwitness_spec_examples():
    spec = F.make_spec(Z, ("eq", 4), {2: 4}, {}, [4], 1)
    assert F.finwitness_exists(Z, spec)
    assert F.finwitness_exists(Z, F.make_spec(Z, ("eq", 1), {}, {}, [], 1))
    spec2 = F.make_spec(Z, ("eq", 2), {}, {3: 3}, [2], 1)
    assert F.finwitness_exists(Z, spec2)
    # gamma = 0 admits only the empty witness
    assert not F.finwitness_exists(Z, F.make_spec(Z, ("eq", 2), {}, {}, [], 0))
    assert F.finwitness_exists(Z, F.make_spec(Z, ("eq", 1), {}, {}, [], 0))


def _witness_brute(star_n, feq, geq, avec, gamma, bound=9):
    """Brute force over multisets of (p, k or 'unit' or 0-ideal) summands
    realized as |R_p/I| in {p^k}, checking all columns."""
    from modec.rings.integers import vp

    primes = [2, 3, 5]
    # candidate summands: (p, j) meaning I = p^j Z_(p), j = 0 is the unit ideal
    cands = [(p, j) for p in primes for j in range(0, 5)]

    def colval(group, e):
        out = 1
        for p, j in group:
            out *= p ** min(vp(p, e), 50) if e else 1  # e == 0 handled below
        return out

    for h in range(0, 5):
        for group in itertools.combinations_with_replacement(cands, h):
            if gamma == 0 and h:
                continue
            ok = True
            tot = 1
            for p, j in group:
                if gamma % p == 0:
                    ok = False
                    break
                if any(a != 0 and vp(p, a) < j for a in avec):
                    ok = False
                    break
                tot *= p**j
            if not ok or tot != star_n:
                continue
            if any(colval(group, e) != v for e, v in feq.items()):
                continue
            good = True
            for e, v in geq.items():
                if e == 0:
                    if h == 0 and v > 1:
                        good = False
                elif colval(group, e) < v:
                    good = False
            if good:
                return True
    return False


def test_finwitness_vs_brute():
    rng = random.Random(11)
    for trial in range(160):
        star = rng.choice([1, 2, 3, 4, 6, 8, 9, 12])
        feq = {}
        for _ in range(rng.randint(0, 2)):
            feq[rng.choice([2, 3, 4, 6, 12])] = rng.choice([1, 2, 3, 4, 6])
        geq = {}
        if rng.random() < 0.5:
            geq[rng.choice([2, 3, 6])] = rng.choice([2, 3, 4])
        avec = [rng.choice([0, 2, 3, 4, 6, 12])] if rng.random() < 0.6 else []
        gamma = rng.choice([1, 2, 3, 5, 6])
        feq_c = {k: v for k, v in feq.items() if k not in geq}
        spec = F.make_spec(Z, ("eq", star), feq_c, geq, avec, gamma)
        got = F.finwitness_exists(Z, spec)
        want = _witness_brute(star, feq_c, geq, avec, gamma)
        assert got == want, (star, feq_c, geq, avec, gamma, got, want)


def _random_atoms(rng, natoms, coeff_hi=12, bound_hi=8):
    atoms = []
    for _ in range(natoms):
        shape = rng.randrange(4)
        if shape == 0:
            pair = PpPair.div(Z, rng.randint(0, coeff_hi))
        elif shape == 1:
            pair = PpPair.ann(Z, rng.randint(1, coeff_hi), rng.randint(1, coeff_hi))
        elif shape == 2:
            pair = PpPair.topdiv(Z, rng.randint(0, coeff_hi))
        else:
            pair = PpPair.annzero(Z, rng.randint(1, coeff_hi))
        cmp = EQ if rng.random() < 0.6 else GEQ
        atoms.append(InvariantAtom(pair, cmp, rng.randint(1, bound_hi)))
    return atoms


def _size_brute(n, atoms):
    """All abelian groups of order n via partitions of prime exponents."""
    from modec.rings.integers import factorint

    def partitions(k):
        if k == 0:
            yield ()
            return
        for first in range(k, 0, -1):
            for rest in partitions(k - first):
                if not rest or rest[0] <= first:
                    yield (first,) + rest

    fac = factorint(n) if n > 1 else {}
    pools = []
    for p, k in fac.items():
        pools.append([tuple((p, e) for e in part) for part in partitions(k)])
    for combo in itertools.product(*pools):
        desc = tuple(sorted(x for grp in combo for x in grp))
        vals = {a: eval_pair_on_finite(desc, a.pair) for a in atoms}
        if all(
            (v == a.bound if a.cmp == EQ else v >= a.bound) for a, v in vals.items()
        ):
            return True
    return False


def test_decide_size_n_spec_examples():
    assert F.decide_size_n(
        Z,
        4,
        [
            InvariantAtom(PpPair.div(Z, 2), EQ, 2),
            InvariantAtom(PpPair.annzero(Z, 2), EQ, 2),
        ],
    )
    assert not F.decide_size_n(Z, 4, [InvariantAtom(PpPair.div(Z, 2), EQ, 4)])
    assert not F.decide_size_n(Z, 1, [InvariantAtom(PpPair.topdiv(Z, 2), GEQ, 2)])


def test_decide_size_n_vs_brute_random():
    rng = random.Random(23)
    for trial in range(120):
        n = rng.randint(1, 36)
        atoms = _random_atoms(rng, rng.randint(1, 3))
        got = F.decide_size_n(Z, n, atoms)
        want = _size_brute(n, atoms)
        assert got == want, (n, atoms)


def test_decide_size_n_qpoly():
    q = ring_select("q-poly")
    x = q.parse_elem("x")
    atoms = [InvariantAtom(PpPair.div(q, x), EQ, 1)]
    assert F.decide_size_n(q, 1, atoms)
    assert not F.decide_size_n(q, 4, atoms)


def test_remove_div_eq_spec_examples():
    assert F.remove_div_eq(Z, 2, 1, {}, {})
    # Z_(2)/4 = Z_(2) / 2*(2 Z_(2)): |2|x/x=0| = 2 and |x2=0/x=0| = 2
    assert F.remove_div_eq(Z, 2, 2, {PpPair.annzero(Z, 2): 2}, {})
    # D = 3 is not a power of 2, but |d|x/x=0| on R_p/2I lives at p = 2 only
    # when the annihilator column forces p = 2
    assert not F.remove_div_eq(Z, 2, 3, {PpPair.annzero(Z, 2): 2}, {})


def _remove_div_brute(d, D, eqpairs, geqpairs, bound=512):
    """Search over sums of Z_(p)/d*p^j (including j=0 and I=0 -> skip
    infinite) realized as finite cyclics Z/(d_p * p^j)."""
    from modec.rings.integers import vp

    primes = [2, 3, 5]
    cands = []
    for p in primes:
        dp = vp(p, d)
        for j in range(0, 6):
            cands.append((p, j))  # module Z/p^(dp+j), D-contribution p^j

    for h in range(0, 5):
        for group in itertools.combinations_with_replacement(cands, h):
            dval = 1
            desc = []
            for p, j in group:
                dval *= p**j
                k = vp(p, d) + j
                if k:
                    desc.append((p, k))
            if dval != D:
                continue
            desc = tuple(sorted(desc))
            ok = all(eval_pair_on_finite(desc, pr) == v for pr, v in eqpairs.items())
            ok = ok and all(
                eval_pair_on_finite(desc, pr) >= v for pr, v in geqpairs.items()
            )
            if ok:
                return True
    return False


def test_remove_div_eq_vs_brute_random():
    rng = random.Random(7)
    for trial in range(80):
        d = rng.choice([1, 2, 3, 4, 6])
        D = rng.choice([1, 2, 3, 4, 6, 8])
        eqp, geqp = {}, {}
        for _ in range(rng.randint(0, 2)):
            pair = _random_atoms(rng, 1)[0].pair
            if rng.random() < 0.7:
                eqp[pair] = rng.randint(1, 6)
            else:
                geqp[pair] = rng.randint(2, 5)
        got = F.remove_div_eq(Z, d, D, eqp, geqp)
        want = _remove_div_brute(d, D, eqp, geqp)
        # the brute force only sees finite summands; remove_div includes
        # infinite summands R_p/d*0 etc., so brute True must imply got True
        if want:
            assert got, (d, D, eqp, geqp)


def test_remove_anndiv_eq_examples():
    assert F.remove_anndiv_eq(Z, 2, 3, 1, {}, {})
    # I = 2 Z_(2), bc = 6: I/6R = 2Z/6Z... over Z_(2): I/bcR_2 with b=2,c=3:
    # |xb=0/c|x| = |R/I| = 2 needs I = 2Z_(2), with 2,3 in I: 3 unit ok
    assert F.remove_anndiv_eq(Z, 2, 3, 2, {}, {})
    # value |x2=0/3|x(I/6R)| = |R/I| = G and I must contain 2: at p=2 the
    # choices are I = 2^j with j <= v2(2) = 1, so G in {1, 2} at 2-power size
    assert not F.remove_anndiv_eq(Z, 2, 3, 4, {}, {})


def test_x_useful_basics():
    from modec.quads import Quad

    assert F.x_useful(Z, 2, 1, Quad(1, 0, 1, 1))
    # |+ R/2R| = 2 with free ideals: X(2,1;2,1,0,1)
    assert F.x_useful(Z, 2, 2, Quad(1, 0, 1, 1))
    assert not F.x_useful(Z, 2, 3, Quad(1, 0, 1, 1))
