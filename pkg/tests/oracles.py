"""Independent reference computations used as test oracles.

None of these touch the Smith normal form code; they work from hand-built
resolutions, field ranks and the Kunneth / universal coefficient formulas.
Groups are written as (betti, torsion) with torsion a sorted tuple of
invariant factors.
"""

from __future__ import annotations

import math
from fractions import Fraction


def _cyclic_quotient(kernel_is_z: bool, image_generator: int):
    if not kernel_is_z:
        return (0, ())
    if image_generator == 0:
        return (1, ())
    return (0, (image_generator,)) if image_generator != 1 else (0, ())


def periodic_resolution_homology(n: int, max_degree: int):
    """H_k(Z/n; Z) from the periodic free resolution of Z over Z[Z/n].

    The resolution ... -> Z[G] -(N)-> Z[G] -(1-t)-> Z[G] -> Z has one free
    generator in each degree; tensoring with the trivial module turns 1-t
    into 0 and the norm N into n, so C_k = Z for every k with boundary
    d_k = 0 for odd k and d_k = n for even k >= 2.
    """
    def boundary(k):
        if k <= 0:
            return 0
        return 0 if k % 2 else n

    out = []
    for k in range(max_degree + 1):
        out.append(_cyclic_quotient(boundary(k) == 0, abs(boundary(k + 1))))
    return out


def _invariant_factors(cyclic_orders):
    """Normal form of a direct sum of finite cyclic groups."""
    primes: dict[int, list[int]] = {}
    for order in cyclic_orders:
        m = order
        p = 2
        while m > 1:
            if m % p == 0:
                e = 1
                while m % p == 0:
                    m //= p
                    e *= p
                primes.setdefault(p, []).append(e)
            p += 1
    if not primes:
        return ()
    length = max(len(v) for v in primes.values())
    factors = [1] * length
    for powers in primes.values():
        powers = sorted(powers)
        for i, q in enumerate(powers):
            factors[length - len(powers) + i] *= q
    return tuple(f for f in factors if f > 1)


def _tensor(a, b):
    (ra, ta), (rb, tb) = a, b
    rank = ra * rb
    tors = [t for t in ta for _ in range(rb)] + [t for t in tb for _ in range(ra)]
    tors += [math.gcd(s, t) for s in ta for t in tb]
    return rank, [t for t in tors if t > 1]


def _tor(a, b):
    (_, ta), (_, tb) = a, b
    return [g for s in ta for t in tb if (g := math.gcd(s, t)) > 1]


def kunneth(HX, HY, max_degree):
    """H_n(X x Y) from the Kunneth short exact sequence (it splits over Z)."""
    out = []
    for n in range(max_degree + 1):
        rank, tors = 0, []
        for i in range(n + 1):
            r, t = _tensor(HX[i], HY[n - i])
            rank += r
            tors += t
        for i in range(n):
            tors += _tor(HX[i], HY[n - 1 - i])
        out.append((rank, _invariant_factors(tors)))
    return out


def rank_mod_p(columns, nrows, p):
    """Rank over GF(p) of a matrix given as {row: value} column dicts."""
    pivots: dict[int, dict[int, int]] = {}
    rank = 0
    for col in columns:
        v = {r: x % p for r, x in col.items() if x % p}
        while v:
            lead = max(v)
            if lead not in pivots:
                inv = pow(v[lead], -1, p)
                pivots[lead] = {r: x * inv % p for r, x in v.items()}
                rank += 1
                break
            piv = pivots[lead]
            c = v[lead]
            for r, x in piv.items():
                y = (v.get(r, 0) - c * x) % p
                if y:
                    v[r] = y
                else:
                    v.pop(r, None)
    return rank


def rank_mod_2(columns, nrows):
    """Rank over GF(2) with columns packed into Python integers."""
    pivots: dict[int, int] = {}
    rank = 0
    for col in columns:
        v = 0
        for r, x in col.items():
            if x % 2:
                v |= 1 << r
        while v:
            lead = v.bit_length() - 1
            if lead not in pivots:
                pivots[lead] = v
                rank += 1
                break
            v ^= pivots[lead]
    return rank


def rational_rank(columns, nrows):
    """Exact rank over Q by fraction-based elimination on sparse columns."""
    pivots: dict[int, dict[int, Fraction]] = {}
    rank = 0
    for col in columns:
        v = {r: Fraction(x) for r, x in col.items() if x}
        while v:
            lead = max(v)
            if lead not in pivots:
                pivots[lead] = v
                rank += 1
                break
            piv = pivots[lead]
            c = v[lead] / piv[lead]
            for r, x in piv.items():
                y = v.get(r, 0) - c * x
                if y:
                    v[r] = y
                else:
                    v.pop(r, None)
    return rank


def field_betti(complex_, rank_fn):
    """Betti numbers over a field through max_degree - 1."""
    gens = complex_.generators
    ranks = {k: rank_fn(complex_.boundaries[k].columns, len(gens[k - 1]))
             for k in complex_.boundaries}
    top = complex_.max_degree
    return [len(gens[k]) - ranks.get(k, 0) - ranks.get(k + 1, 0) for k in range(top)]


def universal_coefficients_mod_p(integral, p):
    """dim H_k(X; F_p) = dim(H_k tensor F_p) + dim Tor(H_{k-1}, F_p)."""
    def tensor_dim(group):
        betti, torsion = group
        return betti + sum(1 for t in torsion if t % p == 0)

    def tor_dim(group):
        return sum(1 for t in group[1] if t % p == 0)

    return [tensor_dim(integral[k]) + (tor_dim(integral[k - 1]) if k else 0)
            for k in range(len(integral))]


# K(Z/2, 2) through degree 3.
#  - Hurewicz: the space is simply connected, so H_1 = 0 and H_2 = pi_2 = Z/2.
#  - Mod-2 cohomology is F_2[u_2, Sq^1 u_2, ...] with u_2 in degree 2 and
#    Sq^1 u_2 in degree 3, so the mod-2 Betti numbers start 1, 0, 1, 1.
#  - Universal coefficients then give dim(H_3 tensor F_2) = 1 - dim Tor(Z/2, F_2) = 0,
#    so H_3 has neither free part nor 2-torsion.
#  - All homotopy groups are 2-groups, so reduced homology is 2-primary
#    (mod-C theory for the class of finite groups of odd order); hence H_3 = 0.
HUREWICZ_K_Z2_2 = [(1, ()), (0, ()), (0, (2,))]
MOD2_BETTI_K_Z2_2 = [1, 0, 1, 1]
