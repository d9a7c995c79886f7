"""Iterated reduced bar construction of a finite monoid.

A simplex at multilevel (k_1, ..., k_n) is an n-dimensional grid of monoid
elements of shape k_1 x ... x k_n, stored as a flat row-major tuple of
element indices.  An arrow f of Delta^op in direction t, with underlying
monotone map theta, replaces the slices along axis t by

    new slice j = old slice theta(j-1) * ... * old slice theta(j)-1

(pointwise products, left to right; an empty product is the slice of units).
So d_0 and d_k drop an outer slice, inner faces multiply adjacent slices and
degeneracies insert a slice of units.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .cat import FiniteMonoid
from .delta import OpArrow
from .sset import (
    MultiSimplicialSet,
    ProductSequence,
    SimplicialSet,
    check_segal,
    segal_map,
)


class NonCommutativeError(ValueError):
    def __init__(self, monoid: FiniteMonoid, witness: tuple):
        self.witness = witness
        a, b = witness
        super().__init__(
            f"{monoid.name or 'monoid'} is not commutative: {a!r}*{b!r} != {b!r}*{a!r}; "
            "the iterated bar construction would violate the interchange identities"
        )


class SegalViolation(ValueError):
    """The simplicial set does not satisfy the Segal condition needed here."""


class HSpaceError(ValueError):
    """The extracted multiplication is not unital or not associative."""


def act_grid(table: Sequence[Sequence[int]], unit: int, x: tuple, shape: Sequence[int],
             axis: int, theta: Sequence[int]) -> tuple:
    """Act on one flat grid along ``axis`` by the monotone map ``theta``."""
    inner = math.prod(shape[axis + 1:])
    outer = math.prod(shape[:axis])
    k = shape[axis]
    out = []
    for o in range(outer):
        base = o * k * inner
        for j in range(1, len(theta)):
            lo, hi = theta[j - 1], theta[j]
            for n in range(inner):
                if lo == hi:
                    out.append(unit)
                    continue
                v = x[base + lo * inner + n]
                for q in range(lo + 1, hi):
                    v = table[v][x[base + q * inner + n]]
                out.append(v)
    return tuple(out)


def act_grid_batch(table: np.ndarray, unit: int, arr: np.ndarray, shape: Sequence[int],
                   axis: int, theta: Sequence[int]) -> np.ndarray:
    """Vectorized :func:`act_grid` on an (N, cells) array of flat grids."""
    n = arr.shape[0]
    grids = arr.reshape((n,) + tuple(shape))
    ax = axis + 1
    slices = []
    for j in range(1, len(theta)):
        lo, hi = theta[j - 1], theta[j]
        if lo == hi:
            slab_shape = list(grids.shape)
            slab_shape[ax] = 1
            slices.append(np.full(slab_shape, unit, dtype=arr.dtype))
            continue
        v = grids.take([lo], axis=ax)
        for q in range(lo + 1, hi):
            v = table[v, grids.take([q], axis=ax)]
        slices.append(v)
    if slices:
        result = np.concatenate(slices, axis=ax)
    else:
        new_shape = list(grids.shape)
        new_shape[ax] = 0
        result = np.empty(new_shape, dtype=arr.dtype)
    return result.reshape(n, -1)


class BarConstruction(MultiSimplicialSet):
    """The n-fold reduced bar construction of M, truncated per direction."""

    def __init__(self, M: FiniteMonoid, n: int, truncation: Sequence[int] | int,
                 check_commutative: bool = True):
        if n < 1:
            raise ValueError("fold must be at least 1")
        if isinstance(truncation, int):
            truncation = (truncation,) * n
        if len(truncation) != n:
            raise ValueError(f"need {n} truncation ceilings, got {len(truncation)}")
        if n >= 2 and check_commutative:
            witness = M.noncommuting_pair()
            if witness is not None:
                raise NonCommutativeError(M, witness)
        self.monoid = M
        self.fold = self.arity = n
        self.truncation = tuple(int(t) for t in truncation)
        self._table = np.array(M.table, dtype=np.uint8 if len(M) < 256 else np.int64)

    def __repr__(self):
        return f"BarConstruction({self.monoid.name}, fold={self.fold}, truncation={self.truncation})"

    def level(self, ks):
        ks = tuple(ks)
        self.check_level(ks)
        return ProductSequence([range(len(self.monoid))] * math.prod(ks))

    def _act(self, fs, x):
        shape = [f.source for f in fs]
        for t, f in enumerate(fs):
            if f.is_identity:
                continue
            x = act_grid(self.monoid.table, self.monoid.unit, x, shape, t, f.underlying.values)
            shape[t] = f.target
        return x

    def level_array(self, ks):
        ks = tuple(ks)
        self.check_level(ks)
        cells = math.prod(ks)
        base = len(self.monoid)
        count = base ** cells
        idx = np.arange(count, dtype=np.int64)
        arr = np.empty((count, cells), dtype=self._table.dtype)
        for c in range(cells - 1, -1, -1):
            idx, r = np.divmod(idx, base)
            arr[:, c] = r
        return arr

    def act_array(self, fs, arr):
        fs = tuple(fs)
        self.check_level(tuple(f.source for f in fs))
        self.check_level(tuple(f.target for f in fs))
        shape = [f.source for f in fs]
        for t, f in enumerate(fs):
            if f.is_identity:
                continue
            arr = act_grid_batch(self._table, self.monoid.unit, arr, shape, t, f.underlying.values)
            shape[t] = f.target
        return arr

    def element_of(self, x: tuple):
        """The canonical bijection W_{1..1} -> M."""
        if len(x) != 1:
            raise ValueError(f"{x!r} is not a level-(1,...,1) grid")
        return self.monoid.label(x[0])


def bar(M: FiniteMonoid, n: int, truncation: Sequence[int] | int,
        check_commutative: bool = True) -> BarConstruction:
    return BarConstruction(M, n, truncation, check_commutative=check_commutative)


def bar_nerve_iso(M: FiniteMonoid):
    """Levelwise bijection bar(M, 1) -> nerve(monoid_as_category(M))."""
    def phi(k, x):
        if k == 0:
            return "*"
        return tuple(M.label(v) for v in x)
    return phi


@dataclass
class HSpaceStructure:
    carrier: tuple
    table: dict
    unit: object

    def mul(self, a, b):
        return self.table[(a, b)]

    def associativity_failure(self):
        for a in self.carrier:
            for b in self.carrier:
                ab = self.table[(a, b)]
                for c in self.carrier:
                    if self.table[(ab, c)] != self.table[(a, self.table[(b, c)])]:
                        return a, b, c
        return None

    def relabel(self, label) -> tuple[dict, object]:
        """The table and unit pushed along a bijection ``label`` of the carrier."""
        table = {(label(a), label(b)): label(c) for (a, b), c in self.table.items()}
        return table, label(self.unit)


def hspace_structure(X: SimplicialSet) -> HSpaceStructure:
    """Multiplication d^2_1 o p_2^{-1} on X_1 with unit s^1_0 of the vertex."""
    report = check_segal(X, 2)
    failure = report.first_failure()
    if failure is not None:
        raise SegalViolation(f"p_{failure.m} is {failure.status} (witness {failure.witness!r})")
    p2 = segal_map(X, 2)
    inverse = {p2(x): x for x in X.level(2)}
    carrier = tuple(X.level(1))
    table = {(a, b): X.face(2, 1, inverse[(a, b)]) for a in carrier for b in carrier}
    unit = X.degeneracy(0, 0, X.level(0)[0])
    H = HSpaceStructure(carrier, table, unit)
    for a in carrier:
        if table[(a, unit)] != a or table[(unit, a)] != a:
            raise HSpaceError(f"unit law fails at {a!r}")
    bad = H.associativity_failure()
    if bad is not None:
        raise HSpaceError(f"associativity fails on {bad!r}")
    return H


def is_grouplike(H: HSpaceStructure) -> bool:
    return all(
        any(H.mul(a, b) == H.unit and H.mul(b, a) == H.unit for b in H.carrier)
        for a in H.carrier
    )
