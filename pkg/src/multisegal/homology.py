"""Normalized integer chains of truncated simplicial sets and their homology.

The boundary of a nondegenerate k-simplex x is sum_i (-1)^i d_i x, with
degenerate faces dropped.  Homology in degree k needs the boundary out of
degree k+1, so a complex built up to ``max_degree`` reports homology through
``max_degree - 1`` and marks ``max_degree`` as not computed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .delta import d, s
from .smith import SmithResult, SparseIntMatrix, smith_normal_form
from .sset import SimplicialSet, TruncationError, _radix_codes


class BoundaryError(ValueError):
    """The boundary of a boundary is not zero."""


@dataclass
class ChainComplex:
    """``boundaries[k]`` maps degree-k generators to degree-(k-1) generators."""

    generators: list[list]
    boundaries: dict[int, SparseIntMatrix]

    def __post_init__(self):
        for k in range(1, self.max_degree + 1):
            B = self.boundaries[k]
            if (B.nrows, B.ncols) != (len(self.generators[k - 1]), len(self.generators[k])):
                raise ValueError(f"boundary {k} has shape {(B.nrows, B.ncols)}")
        for k in range(1, self.max_degree):
            if not self.boundaries[k].matmul(self.boundaries[k + 1]).is_zero():
                raise BoundaryError(f"d_{k} o d_{k + 1} != 0")

    @property
    def max_degree(self) -> int:
        return len(self.generators) - 1

    def ranks(self) -> list[int]:
        return [len(g) for g in self.generators]

    def permuted(self, perms: list[list[int]]) -> "ChainComplex":
        """Reorder the generators of degree k by perms[k] (old index i -> perms[k][i])."""
        gens = []
        for k, g in enumerate(self.generators):
            new = [None] * len(g)
            for i, x in enumerate(g):
                new[perms[k][i]] = x
            gens.append(new)
        bounds = {k: B.permuted(perms[k - 1], perms[k]) for k, B in self.boundaries.items()}
        return ChainComplex(gens, bounds)


def _chains_generic(X: SimplicialSet, max_degree: int) -> ChainComplex:
    gens, bounds = [], {}
    index: dict = {}
    for k in range(max_degree + 1):
        level = [x for x in X.level(k) if not X.is_degenerate(k, x)]
        columns = []
        for x in level:
            col: dict[int, int] = {}
            for i in range(k + 1) if k else ():
                r = index.get(X.face(k, i, x))
                if r is not None:
                    col[r] = col.get(r, 0) + (-1) ** i
            columns.append(col)
        if k:
            bounds[k] = SparseIntMatrix(len(gens[-1]), len(level), columns)
        gens.append(level)
        index = {x: j for j, x in enumerate(level)}
    return ChainComplex(gens, bounds)


def _nondegenerate_rows(X: SimplicialSet, k: int, arr: np.ndarray) -> np.ndarray:
    if k == 0:
        return arr
    degenerate = np.zeros(arr.shape[0], dtype=bool)
    for i in range(k):
        back = X.act_array(s(k, i), X.act_array(d(k, i), arr))
        degenerate |= (back == arr).all(axis=1)
    return arr[~degenerate]


def _chains_array(X: SimplicialSet, max_degree: int) -> ChainComplex | None:
    arrays = [X.level_array(k) for k in range(max_degree + 1)]
    base = max(int(a.max(initial=0)) for a in arrays) + 1
    gens_arr = [_nondegenerate_rows(X, k, a) for k, a in enumerate(arrays)]
    codes = [_radix_codes(g, base) for g in gens_arr]
    if any(c is None for c in codes):
        return None
    bounds = {}
    for k in range(1, max_degree + 1):
        prev = codes[k - 1]
        order = np.argsort(prev, kind="stable")
        sorted_prev = prev[order]
        cols_idx, rows_idx, signs = [], [], []
        for i in range(k + 1):
            if not len(sorted_prev):
                break
            faces = _radix_codes(X.act_array(d(k, i), gens_arr[k]), base)
            pos = np.minimum(np.searchsorted(sorted_prev, faces), len(sorted_prev) - 1)
            hit = sorted_prev[pos] == faces
            cols = np.nonzero(hit)[0]
            cols_idx.append(cols)
            rows_idx.append(order[pos[hit]])
            signs.append(np.full(len(cols), 1 if i % 2 == 0 else -1, dtype=np.int64))
        if not cols_idx:
            cols_idx = rows_idx = signs = [np.zeros(0, dtype=np.int64)]
        columns: list[dict[int, int]] = [{} for _ in range(len(gens_arr[k]))]
        for c, r, v in zip(np.concatenate(cols_idx).tolist(), np.concatenate(rows_idx).tolist(),
                           np.concatenate(signs).tolist()):
            col = columns[c]
            col[r] = col.get(r, 0) + v
        bounds[k] = SparseIntMatrix(len(gens_arr[k - 1]), len(gens_arr[k]), columns)
    gens = [[tuple(row) for row in g.tolist()] for g in gens_arr]
    return ChainComplex(gens, bounds)


def normalized_chains(X: SimplicialSet, max_degree: int, use_arrays: bool = True) -> ChainComplex:
    if max_degree > X.truncation:
        raise TruncationError(f"degree {max_degree} exceeds truncation {X.truncation}")
    if use_arrays and X.level_array(0) is not None:
        C = _chains_array(X, max_degree)
        if C is not None:
            return C
    return _chains_generic(X, max_degree)


COMPUTED = "computed"
NOT_COMPUTED = "not_computed"


@dataclass
class DegreeHomology:
    degree: int
    status: str
    betti: int | None = None
    torsion: tuple[int, ...] = ()

    def describe(self) -> str:
        if self.status != COMPUTED:
            return "?"
        parts = []
        if self.betti:
            parts.append("Z" if self.betti == 1 else f"Z^{self.betti}")
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"

    def to_dict(self) -> dict:
        return {"degree": self.degree, "betti": self.betti,
                "torsion": list(self.torsion), "status": self.status}


@dataclass
class HomologyGroups:
    degrees: list[DegreeHomology] = field(default_factory=list)

    def __getitem__(self, k: int) -> DegreeHomology:
        return self.degrees[k]

    def computed(self) -> list[DegreeHomology]:
        return [h for h in self.degrees if h.status == COMPUTED]

    def signature(self) -> list[tuple[int, tuple[int, ...]]]:
        """(betti, torsion) per computed degree, for comparisons."""
        return [(h.betti, h.torsion) for h in self.computed()]

    def describe(self) -> str:
        return "; ".join(f"H_{h.degree} = {h.describe()}" for h in self.degrees)

    def to_dict(self) -> dict:
        return {"degrees": [h.to_dict() for h in self.degrees]}

    def dumps(self) -> str:
        return json.dumps(self.to_dict())


def homology(C: ChainComplex) -> HomologyGroups:
    n = C.max_degree
    snf: dict[int, SmithResult] = {k: smith_normal_form(C.boundaries[k]) for k in range(1, n + 1)}
    out = []
    for k in range(n):
        rank_out = snf[k].rank if k >= 1 else 0
        rank_in = snf[k + 1].rank
        betti = len(C.generators[k]) - rank_out - rank_in
        out.append(DegreeHomology(k, COMPUTED, betti, snf[k + 1].torsion))
    out.append(DegreeHomology(n, NOT_COMPUTED))
    return HomologyGroups(out)


def compute_homology(X: SimplicialSet, degree: int) -> HomologyGroups:
    """Integral homology of X through ``degree`` (builds chains one degree higher)."""
    return homology(normalized_chains(X, degree + 1))
