"""Truncated simplicial and multisimplicial sets.

A simplicial set here is anything exposing ``truncation``, ``level(k)`` (an
ordered, indexable sequence of hashable simplices) and ``act(f, x)`` for an
arrow ``f`` of Delta^op.  Concrete providers (explicit tables, nerves, bar
constructions, products, diagonals, slices) compute actions on demand.

Grid-backed providers additionally implement the batch protocol
``level_array(k)`` / ``act_array(f, arr)``: the level as an integer array with
one row per simplex (same order as ``level(k)``, and each simplex equal to
``tuple(row)``) and a vectorized action on such arrays.  Segal checks and
chain complexes use it when available.
"""

from __future__ import annotations

import itertools
import json
import math
import random
from abc import ABC, abstractmethod
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterable

import numpy as np

from .delta import (
    DeltaError,
    MonotoneMap,
    OpArrow,
    codegeneracy,
    compose,
    compose_op,
    d,
    degeneracy_generators,
    face_generators,
    identity,
    identity_op,
    normal_form,
    s,
    segal_arrow,
)


class TruncationError(ValueError):
    """A level or an action leaves the stored truncation."""


class FormatError(ValueError):
    """Malformed serialized simplicial set."""


# -- lazy sequences ----------------------------------------------------------


def cardinality(seq: Sequence) -> int:
    return getattr(seq, "cardinality", None) or len(seq)


class ProductSequence(Sequence):
    """Cartesian product of sequences, in ``itertools.product`` order."""

    def __init__(self, factors: Sequence[Sequence]):
        self.factors = list(factors)
        self._sizes = [cardinality(f) for f in self.factors]
        # exact even where len() would overflow a machine index
        self.cardinality = math.prod(self._sizes)

    def __len__(self):
        return self.cardinality

    def __getitem__(self, index):
        if isinstance(index, slice):
            return [self[i] for i in range(*index.indices(self.cardinality))]
        if index < 0:
            index += self.cardinality
        if not 0 <= index < self.cardinality:
            raise IndexError(index)
        out = []
        for f, n in zip(reversed(self.factors), reversed(self._sizes)):
            index, r = divmod(index, n)
            out.append(f[r])
        return tuple(reversed(out))

    def __iter__(self):
        return itertools.product(*self.factors)


# -- base classes ------------------------------------------------------------


class SimplicialSet(ABC):
    truncation: int

    @abstractmethod
    def level(self, k: int) -> Sequence:
        """Simplices of level k, in a fixed order."""

    @abstractmethod
    def _act(self, f: OpArrow, x):
        """Action of f on x; endpoints already validated."""

    def size(self, k: int) -> int:
        return cardinality(self.level(k))

    def check_level(self, k: int) -> None:
        if not 0 <= k <= self.truncation:
            raise TruncationError(f"level {k} outside truncation {self.truncation}")

    def act(self, f: OpArrow, x):
        self.check_level(f.source)
        self.check_level(f.target)
        return self._act(f, x)

    def face(self, k: int, i: int, x):
        return self.act(d(k, i), x)

    def degeneracy(self, k: int, i: int, x):
        """s_i: X_k -> X_{k+1}."""
        return self.act(s(k + 1, i), x)

    def is_degenerate(self, k: int, x) -> bool:
        return any(
            self.degeneracy(k - 1, i, self.face(k, i, x)) == x for i in range(k)
        )

    def nondegenerate(self, k: int) -> list:
        return [x for x in self.level(k) if not self.is_degenerate(k, x)]

    # batch protocol; grid providers override
    def level_array(self, k: int) -> np.ndarray | None:
        return None

    def act_array(self, f: OpArrow, arr: np.ndarray) -> np.ndarray:
        raise NotImplementedError


class MultiSimplicialSet(ABC):
    arity: int
    truncation: tuple[int, ...]

    @abstractmethod
    def level(self, ks: tuple[int, ...]) -> Sequence:
        """Simplices at multilevel ks."""

    @abstractmethod
    def _act(self, fs: tuple[OpArrow, ...], x):
        """Componentwise action; endpoints already validated."""

    def size(self, ks) -> int:
        return cardinality(self.level(tuple(ks)))

    def check_level(self, ks) -> None:
        if len(ks) != self.arity:
            raise TruncationError(f"multilevel {ks} has wrong arity (expected {self.arity})")
        for k, top in zip(ks, self.truncation):
            if not 0 <= k <= top:
                raise TruncationError(f"multilevel {tuple(ks)} outside truncation {self.truncation}")

    def act(self, fs, x):
        fs = tuple(fs)
        self.check_level(tuple(f.source for f in fs))
        self.check_level(tuple(f.target for f in fs))
        return self._act(fs, x)

    def act_in(self, direction: int, f: OpArrow, ks, x):
        """Act by f in one direction, identities elsewhere."""
        fs = tuple(f if t == direction else identity_op(k) for t, k in enumerate(ks))
        return self.act(fs, x)

    def level_array(self, ks) -> np.ndarray | None:
        return None

    def act_array(self, fs, arr: np.ndarray) -> np.ndarray:
        raise NotImplementedError


# -- explicit tables ---------------------------------------------------------


def act_by_generators(f: OpArrow, x, face: Callable, degeneracy: Callable):
    """Evaluate X(f)(x) through the normal form of f's underlying map.

    ``face(k, i, x)`` is d^k_i and ``degeneracy(k, i, x)`` is s_i: X_k -> X_{k+1}.
    """
    nf = normal_form(f.underlying)
    # X(delta_{i1} ... delta_{is} sigma_{j1} ... sigma_{jt}) applies d_{i1} first
    for n, i in nf.cofaces:
        x = face(n, i, x)
    for n, j in nf.codegeneracies:
        x = degeneracy(n - 1, j, x)
    return x


class TableSimplicialSet(SimplicialSet):
    """Simplices are 0..n_k-1 at each level; faces and degeneracies are tables.

    ``faces[(k, i)]`` lists d^k_i of every level-k simplex; ``degeneracies[(k, i)]``
    lists s^k_i of every level-(k-1) simplex.
    """

    def __init__(self, truncation: int, sizes: Sequence[int],
                 faces: dict[tuple[int, int], Sequence[int]],
                 degeneracies: dict[tuple[int, int], Sequence[int]]):
        if len(sizes) != truncation + 1:
            raise FormatError(f"need {truncation + 1} level sizes, got {len(sizes)}")
        self.truncation = truncation
        self.sizes = tuple(int(n) for n in sizes)
        self.faces = {key: tuple(v) for key, v in faces.items()}
        self.degeneracies = {key: tuple(v) for key, v in degeneracies.items()}
        self._validate_shape()

    def _validate_shape(self):
        for k in range(1, self.truncation + 1):
            for i in range(k + 1):
                table = self.faces.get((k, i))
                if table is None:
                    raise FormatError(f"missing face table d/{k}/{i}")
                if len(table) != self.sizes[k]:
                    raise FormatError(f"d/{k}/{i} has {len(table)} entries, level {k} has {self.sizes[k]}")
                if any(not 0 <= y < self.sizes[k - 1] for y in table):
                    raise FormatError(f"d/{k}/{i} points outside level {k - 1}")
            for i in range(k):
                table = self.degeneracies.get((k, i))
                if table is None:
                    raise FormatError(f"missing degeneracy table s/{k}/{i}")
                if len(table) != self.sizes[k - 1]:
                    raise FormatError(f"s/{k}/{i} has {len(table)} entries, level {k - 1} has {self.sizes[k - 1]}")
                if any(not 0 <= y < self.sizes[k] for y in table):
                    raise FormatError(f"s/{k}/{i} points outside level {k}")
        extra = set(self.faces) - {(k, i) for k in range(1, self.truncation + 1) for i in range(k + 1)}
        extra |= set(self.degeneracies) - {(k, i) for k in range(1, self.truncation + 1) for i in range(k)}
        if extra:
            raise FormatError(f"tables beyond truncation: {sorted(extra)}")

    def level(self, k):
        self.check_level(k)
        return range(self.sizes[k])

    def _act(self, f, x):
        return act_by_generators(
            f, x,
            lambda k, i, y: self.faces[(k, i)][y],
            lambda k, i, y: self.degeneracies[(k + 1, i)][y],
        )

    # serialization
    FORMAT = "multisegal.simplicial-set"

    def to_dict(self) -> dict:
        actions = {}
        for (k, i), table in self.faces.items():
            actions[f"d/{k}/{i}"] = list(table)
        for (k, i), table in self.degeneracies.items():
            actions[f"s/{k}/{i}"] = list(table)
        return {
            "format": self.FORMAT,
            "version": 1,
            "truncation": self.truncation,
            "sizes": list(self.sizes),
            "actions": actions,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":")) + "\n"

    @classmethod
    def from_dict(cls, doc: dict, validate: bool = True) -> "TableSimplicialSet":
        if doc.get("format") != cls.FORMAT or doc.get("version") != 1:
            raise FormatError(f"not a {cls.FORMAT} v1 document")
        try:
            truncation = int(doc["truncation"])
            sizes = doc["sizes"]
            actions = doc["actions"]
        except KeyError as exc:
            raise FormatError(f"missing field {exc}") from None
        faces, degens = {}, {}
        for key, table in actions.items():
            parts = key.split("/")
            if len(parts) != 3 or parts[0] not in ("d", "s"):
                raise FormatError(f"bad action key {key!r}")
            k, i = int(parts[1]), int(parts[2])
            (faces if parts[0] == "d" else degens)[(k, i)] = table
        X = cls(truncation, sizes, faces, degens)
        if validate:
            problems = audit_functoriality(X)
            if problems:
                raise FormatError(f"not a simplicial set: {problems[0]}")
        return X

    @classmethod
    def loads(cls, text: str, validate: bool = True) -> "TableSimplicialSet":
        return cls.from_dict(json.loads(text), validate=validate)


def materialize(X: SimplicialSet) -> tuple[TableSimplicialSet, list[list]]:
    """Copy any simplicial set into explicit tables.

    Returns the table and, per level, the list of original simplices (so that
    table simplex ``j`` at level k stands for ``simplices[k][j]``).
    """
    simplices = [list(X.level(k)) for k in range(X.truncation + 1)]
    index = [{x: j for j, x in enumerate(level)} for level in simplices]
    faces, degens = {}, {}
    for k in range(1, X.truncation + 1):
        for i in range(k + 1):
            faces[(k, i)] = [index[k - 1][X.face(k, i, x)] for x in simplices[k]]
        for i in range(k):
            degens[(k, i)] = [index[k][X.degeneracy(k - 1, i, x)] for x in simplices[k - 1]]
    sizes = [len(level) for level in simplices]
    return TableSimplicialSet(X.truncation, sizes, faces, degens), simplices


# -- simple providers --------------------------------------------------------


class ConstantSimplicialSet(SimplicialSet):
    """Every level is the same set and every structure map is the identity."""

    def __init__(self, points: Sequence[Hashable], truncation: int):
        self.points = tuple(points)
        self.truncation = truncation

    def level(self, k):
        self.check_level(k)
        return self.points

    def _act(self, f, x):
        return x


def point(truncation: int) -> ConstantSimplicialSet:
    """The terminal simplicial set: one simplex per level."""
    return ConstantSimplicialSet(("*",), truncation)


class ProductSimplicialSet(SimplicialSet):
    """Levelwise product; simplices are pairs (x, y)."""

    def __init__(self, X: SimplicialSet, Y: SimplicialSet):
        self.X, self.Y = X, Y
        self.truncation = min(X.truncation, Y.truncation)

    def level(self, k):
        self.check_level(k)
        return ProductSequence([self.X.level(k), self.Y.level(k)])

    def _act(self, f, x):
        return (self.X.act(f, x[0]), self.Y.act(f, x[1]))


def product(X: SimplicialSet, Y: SimplicialSet) -> ProductSimplicialSet:
    return ProductSimplicialSet(X, Y)


class AsMulti(MultiSimplicialSet):
    """A simplicial set viewed as an arity-1 multisimplicial set."""

    def __init__(self, X: SimplicialSet):
        self.X = X
        self.arity = 1
        self.truncation = (X.truncation,)

    def level(self, ks):
        self.check_level(ks)
        return self.X.level(ks[0])

    def _act(self, fs, x):
        return self.X.act(fs[0], x)

    def level_array(self, ks):
        return self.X.level_array(ks[0])

    def act_array(self, fs, arr):
        return self.X.act_array(fs[0], arr)


def as_multi(X) -> MultiSimplicialSet:
    return X if isinstance(X, MultiSimplicialSet) else AsMulti(X)


class ExternalProduct(MultiSimplicialSet):
    """X boxtimes Y: level (ks, ls) is X_ks x Y_ls; arity adds."""

    def __init__(self, X, Y):
        self.X, self.Y = as_multi(X), as_multi(Y)
        self.arity = self.X.arity + self.Y.arity
        self.truncation = self.X.truncation + self.Y.truncation

    def level(self, ks):
        ks = tuple(ks)
        self.check_level(ks)
        a = self.X.arity
        return ProductSequence([self.X.level(ks[:a]), self.Y.level(ks[a:])])

    def _act(self, fs, x):
        a = self.X.arity
        return (self.X.act(fs[:a], x[0]), self.Y.act(fs[a:], x[1]))


def external_product(X, Y) -> ExternalProduct:
    return ExternalProduct(X, Y)


class DiagSimplicialSet(SimplicialSet):
    """(diag X)_k = X_{k...k}; f acts as (f, ..., f)."""

    def __init__(self, X: MultiSimplicialSet):
        self.X = X
        self.truncation = min(X.truncation)

    def _ks(self, k):
        return (k,) * self.X.arity

    def level(self, k):
        self.check_level(k)
        return self.X.level(self._ks(k))

    def _act(self, f, x):
        return self.X.act((f,) * self.X.arity, x)

    def level_array(self, k):
        self.check_level(k)
        return self.X.level_array(self._ks(k))

    def act_array(self, f, arr):
        return self.X.act_array((f,) * self.X.arity, arr)


def diag(X) -> DiagSimplicialSet:
    return DiagSimplicialSet(as_multi(X))


class PartialDiag(MultiSimplicialSet):
    """Collapse the last p directions of X into one by the diagonal."""

    def __init__(self, X: MultiSimplicialSet, p: int):
        if not 1 <= p <= X.arity:
            raise ValueError(f"p={p} out of range for arity {X.arity}")
        self.X, self.p = X, p
        self.arity = X.arity - p + 1
        keep = X.arity - p
        self.truncation = X.truncation[:keep] + (min(X.truncation[keep:]),)

    def _expand(self, ks):
        return tuple(ks[:-1]) + (ks[-1],) * self.p

    def level(self, ks):
        ks = tuple(ks)
        self.check_level(ks)
        return self.X.level(self._expand(ks))

    def _act(self, fs, x):
        return self.X.act(self._expand(fs), x)

    def level_array(self, ks):
        self.check_level(tuple(ks))
        return self.X.level_array(self._expand(tuple(ks)))

    def act_array(self, fs, arr):
        return self.X.act_array(self._expand(tuple(fs)), arr)


def partial_diag(X, p: int) -> PartialDiag:
    return PartialDiag(as_multi(X), p)


class SliceSimplicialSet(SimplicialSet):
    """The simplicial set X_{1..1 _ k..k}: l indices pinned at 1, the rest at k."""

    def __init__(self, X: MultiSimplicialSet, l: int, k: int):
        if not 0 <= l <= X.arity - 1:
            raise ValueError(f"l={l} out of range for arity {X.arity}")
        if k < 0:
            raise ValueError(f"k={k} must be nonnegative")
        for t in range(l):
            if X.truncation[t] < 1:
                raise TruncationError(f"direction {t} truncated below 1")
        for t in range(l + 1, X.arity):
            if X.truncation[t] < k:
                raise TruncationError(f"direction {t} truncated below k={k}")
        self.X, self.l, self.k = X, l, k
        self.truncation = X.truncation[l]

    def _ks(self, m):
        return (1,) * self.l + (m,) + (self.k,) * (self.X.arity - self.l - 1)

    def _fs(self, f):
        n = self.X.arity
        return (identity_op(1),) * self.l + (f,) + (identity_op(self.k),) * (n - self.l - 1)

    def level(self, m):
        self.check_level(m)
        return self.X.level(self._ks(m))

    def _act(self, f, x):
        return self.X.act(self._fs(f), x)

    def level_array(self, m):
        self.check_level(m)
        return self.X.level_array(self._ks(m))

    def act_array(self, f, arr):
        return self.X.act_array(self._fs(f), arr)


def slice_ones(X, l: int, k: int) -> SliceSimplicialSet:
    return SliceSimplicialSet(as_multi(X), l, k)


# -- simplicial maps ---------------------------------------------------------


def _all_generators(X: SimplicialSet, k: int) -> list[OpArrow]:
    gens = face_generators(k)
    if k + 1 <= X.truncation:
        gens += degeneracy_generators(k)
    return gens


def simplicial_map_violations(X: SimplicialSet, Y: SimplicialSet,
                              phi: Callable[[int, Any], Any],
                              max_level: int | None = None,
                              limit: int = 10) -> list[str]:
    """Where phi(k, x) fails to commute with faces and degeneracies."""
    top = min(X.truncation, Y.truncation) if max_level is None else max_level
    problems = []
    for k in range(top + 1):
        for x in X.level(k):
            for g in _all_generators(X, k):
                if g.target > top:
                    continue
                if phi(g.target, X.act(g, x)) != Y.act(g, phi(k, x)):
                    problems.append(f"{g!r} on {x!r} at level {k}")
                    if len(problems) >= limit:
                        return problems
    return problems


def isomorphism_violations(X: SimplicialSet, Y: SimplicialSet,
                           phi: Callable[[int, Any], Any],
                           max_level: int | None = None) -> list[str]:
    """Equivariance of phi plus levelwise bijectivity."""
    top = min(X.truncation, Y.truncation) if max_level is None else max_level
    problems = []
    for k in range(top + 1):
        image = [phi(k, x) for x in X.level(k)]
        if len(set(image)) != len(image):
            problems.append(f"not injective at level {k}")
        if len(image) != Y.size(k) or not set(image) <= set(Y.level(k)):
            problems.append(f"not onto level {k} of the target")
    return problems + simplicial_map_violations(X, Y, phi, top)


# -- functoriality audit -----------------------------------------------------


def _sample(seq: Sequence, limit: int | None, seed: int) -> Iterable:
    n = cardinality(seq)
    if limit is None or n <= limit:
        return seq
    rng = random.Random(seed)
    picked: set[int] = set()
    while len(picked) < limit:
        picked.add(rng.randrange(n))
    return [seq[i] for i in sorted(picked)]


def audit_functoriality(X, max_simplices: int | None = None, seed: int = 0,
                        limit: int = 10) -> list[str]:
    """Check identity and composition laws on all generator pairs.

    For multisimplicial sets, also checks that actions in distinct directions
    commute.  Levels larger than ``max_simplices`` are sampled with a fixed
    seed.  Returns human-readable violations (empty if none).
    """
    problems: list[str] = []
    if isinstance(X, SimplicialSet):
        for k in range(X.truncation + 1):
            for x in _sample(X.level(k), max_simplices, seed + k):
                if X.act(identity_op(k), x) != x:
                    problems.append(f"identity moves {x!r} at level {k}")
                for f in _all_generators(X, k):
                    y = X.act(f, x)
                    for g in _all_generators(X, f.target):
                        if X.act(compose_op(g, f), x) != X.act(g, y):
                            problems.append(f"{g!r} o {f!r} on {x!r}")
                if len(problems) >= limit:
                    return problems
        return problems

    for ks in itertools.product(*(range(top + 1) for top in X.truncation)):
        for x in _sample(X.level(ks), max_simplices, seed + hash(ks) % 1000):
            if X.act(tuple(identity_op(k) for k in ks), x) != x:
                problems.append(f"identity moves {x!r} at {ks}")
            for t in range(X.arity):
                gens_t = _direction_generators(X, t, ks[t])
                for f in gens_t:
                    y = X.act_in(t, f, ks, x)
                    ks_f = _moved(ks, t, f.target)
                    for g in _direction_generators(X, t, f.target):
                        if X.act_in(t, compose_op(g, f), ks, x) != X.act_in(t, g, ks_f, y):
                            problems.append(f"direction {t}: {g!r} o {f!r} on {x!r}")
                    for u in range(t + 1, X.arity):
                        for g in _direction_generators(X, u, ks[u]):
                            ks_g = _moved(ks, u, g.target)
                            a = X.act_in(u, g, ks_f, y)
                            b = X.act_in(t, f, ks_g, X.act_in(u, g, ks, x))
                            if a != b:
                                problems.append(
                                    f"interchange fails: {f!r} in direction {t} and "
                                    f"{g!r} in direction {u} on {x!r} at {ks}"
                                )
            if len(problems) >= limit:
                return problems
    return problems


def _direction_generators(X: MultiSimplicialSet, t: int, k: int) -> list[OpArrow]:
    gens = face_generators(k)
    if k + 1 <= X.truncation[t]:
        gens += degeneracy_generators(k)
    return gens


def _moved(ks, t, k):
    return tuple(k if u == t else v for u, v in enumerate(ks))


# -- Segal maps --------------------------------------------------------------


def segal_map(X: SimplicialSet, m: int) -> Callable[[Any], tuple]:
    """p_m: X_m -> (X_1)^m, x -> (i_1 x, ..., i_m x); p_0 is constant at ()."""
    X.check_level(m)
    arrows = [segal_arrow(j, m) for j in range(1, m + 1)]
    if arrows:
        X.check_level(1)
    return lambda x: tuple(X.act(f, x) for f in arrows)


BIJECTIVE = "bijective"
NOT_INJECTIVE = "not-injective"
NOT_SURJECTIVE = "not-surjective"


@dataclass
class SegalVerdict:
    m: int
    status: str
    witness: Any = None

    @property
    def bijective(self) -> bool:
        return self.status == BIJECTIVE

    def to_dict(self) -> dict:
        return {"m": self.m, "status": self.status, "witness": _jsonable(self.witness)}


@dataclass
class SegalReport:
    verdicts: list[SegalVerdict] = field(default_factory=list)

    @property
    def checked_m(self) -> list[int]:
        return [v.m for v in self.verdicts]

    @property
    def all_bijective(self) -> bool:
        return all(v.bijective for v in self.verdicts)

    def first_failure(self) -> SegalVerdict | None:
        return next((v for v in self.verdicts if not v.bijective), None)

    def to_dict(self) -> dict:
        return {"all_bijective": self.all_bijective,
                "verdicts": [v.to_dict() for v in self.verdicts]}


def _jsonable(obj):
    if isinstance(obj, (tuple, list)):
        return [_jsonable(o) for o in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if obj is None or isinstance(obj, (int, str, float, bool)):
        return obj
    return repr(obj)


def _radix_codes(arr: np.ndarray, base: int) -> np.ndarray | None:
    """Encode each row as a base-``base`` integer, or None if it could overflow."""
    if arr.shape[1] * max(base - 1, 1).bit_length() > 62:
        return None
    codes = np.zeros(arr.shape[0], dtype=np.int64)
    for col in range(arr.shape[1]):
        codes = codes * base + arr[:, col].astype(np.int64)
    return codes


def _segal_verdict_array(X: SimplicialSet, m: int, arr: np.ndarray) -> SegalVerdict:
    images = np.concatenate(
        [X.act_array(segal_arrow(j, m), arr) for j in range(1, m + 1)], axis=1
    )
    base = int(max(arr.max(initial=0), images.max(initial=0))) + 1
    codes = _radix_codes(images, base)
    if codes is None:
        _, inverse = np.unique(images, axis=0, return_inverse=True)
        codes = inverse.reshape(-1)
    order = np.argsort(codes, kind="stable")
    sorted_codes = codes[order]
    dup = np.nonzero(sorted_codes[1:] == sorted_codes[:-1])[0]
    if dup.size:
        a, b = order[dup[0]], order[dup[0] + 1]
        return SegalVerdict(m, NOT_INJECTIVE, (tuple(int(v) for v in arr[a]), tuple(int(v) for v in arr[b])))
    if len(codes) == X.size(1) ** m:
        return SegalVerdict(m, BIJECTIVE)
    hit = {tuple(int(v) for v in row) for row in images}
    for combo in itertools.product(X.level(1), repeat=m):
        flat = tuple(v for simplex in combo for v in simplex)
        if flat not in hit:
            return SegalVerdict(m, NOT_SURJECTIVE, combo)
    raise AssertionError("distinct image count disagrees with enumeration")


def _segal_verdict(X: SimplicialSet, m: int) -> SegalVerdict:
    if m == 0:
        verts = X.level(0)
        if len(verts) == 1:
            return SegalVerdict(0, BIJECTIVE)
        if len(verts) == 0:
            return SegalVerdict(0, NOT_SURJECTIVE, ())
        return SegalVerdict(0, NOT_INJECTIVE, (verts[0], verts[1]))
    arr = X.level_array(m)
    if arr is not None:
        return _segal_verdict_array(X, m, arr)
    p = segal_map(X, m)
    preimage: dict = {}
    for x in X.level(m):
        y = p(x)
        if y in preimage:
            return SegalVerdict(m, NOT_INJECTIVE, (preimage[y], x))
        preimage[y] = x
    if len(preimage) == X.size(1) ** m:
        return SegalVerdict(m, BIJECTIVE)
    for combo in itertools.product(X.level(1), repeat=m):
        if combo not in preimage:
            return SegalVerdict(m, NOT_SURJECTIVE, combo)
    raise AssertionError("distinct image count disagrees with enumeration")


def check_segal(X: SimplicialSet, m_max: int) -> SegalReport:
    """Exact bijectivity of p_m for 0 <= m <= m_max."""
    X.check_level(m_max)
    return SegalReport([_segal_verdict(X, m) for m in range(m_max + 1)])


@dataclass
class MultiSegalReport:
    reports: dict[tuple[int, int], SegalReport] = field(default_factory=dict)

    @property
    def all_bijective(self) -> bool:
        return all(r.all_bijective for r in self.reports.values())

    def failures(self) -> list[tuple[int, int, SegalVerdict]]:
        return [(l, k, r.first_failure()) for (l, k), r in self.reports.items()
                if not r.all_bijective]

    def to_dict(self) -> dict:
        return {
            "all_bijective": self.all_bijective,
            "slices": [{"l": l, "k": k, **r.to_dict()} for (l, k), r in self.reports.items()],
        }


def check_segal_multi(X, m_max: int, k_max: int) -> MultiSegalReport:
    """check_segal on every slice X_{1..1 _ k..k}, 0 <= l < arity, 0 <= k <= k_max.

    For l = arity - 1 the slice does not depend on k and is checked once (k = 0).
    """
    X = as_multi(X)
    out = MultiSegalReport()
    for l in range(X.arity):
        ks = [0] if l == X.arity - 1 else range(k_max + 1)
        for k in ks:
            out.reports[(l, k)] = check_segal(slice_ones(X, l, k), m_max)
    return out


# -- Eilenberg-Zilber core ---------------------------------------------------


@dataclass(frozen=True)
class Core:
    """x = X(word)(simplex) with simplex nondegenerate at ``degree``.

    ``word`` is the canonical codegeneracy list (rank, index), outermost first,
    of the surjection [k] -> [degree]; empty iff x is nondegenerate.
    """

    word: tuple[tuple[int, int], ...]
    simplex: Any
    degree: int
    surjection: MonotoneMap

    @property
    def arrow(self) -> OpArrow:
        return OpArrow(self.surjection)


def core(X: SimplicialSet, k: int, x) -> Core:
    X.check_level(k)
    surj = identity(k)
    level = k
    while True:
        for i in range(level):
            y = X.face(level, i, x)
            if X.degeneracy(level - 1, i, y) == x:
                surj = compose(codegeneracy(level, i), surj)
                x, level = y, level - 1
                break
        else:
            return Core(normal_form(surj).codegeneracies, x, level, surj)
