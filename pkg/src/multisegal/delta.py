"""Arrow calculus for the simplicial category Delta and its opposite.

Arrows of Delta are stored as value tables (``MonotoneMap``); arrows of
Delta^op wrap one (``OpArrow``).  Generator words are only a derived view,
obtained with :func:`normal_form`.

Conventions
-----------
* ``coface(n, i)`` is the injection [n-1] -> [n] whose image omits ``i``.
* ``codegeneracy(n, i)`` is the surjection [n] -> [n-1] hitting ``i`` twice.
* ``d(n, i)`` and ``s(n, i)`` are their opposites: ``d(n, i): [n] -> [n-1]``
  and ``s(n, i): [n-1] -> [n]`` in Delta^op.
* Words of Delta^op arrows are written left to right as composites, so
  ``[d(2, 1), d(3, 3)]`` denotes d^2_1 o d^3_3 (apply d^3_3 first).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class DeltaError(ValueError):
    """Raised on out-of-range indices or non-composable arrows."""


@dataclass(frozen=True)
class MonotoneMap:
    """An order-preserving map [source_rank] -> [target_rank]."""

    source_rank: int
    target_rank: int
    values: tuple[int, ...]

    def __post_init__(self):
        values = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", values)
        if self.source_rank < 0 or self.target_rank < 0:
            raise DeltaError("ranks must be nonnegative (the empty ordinal is excluded)")
        if len(values) != self.source_rank + 1:
            raise DeltaError(
                f"expected {self.source_rank + 1} values for source [{self.source_rank}], "
                f"got {len(values)}"
            )
        for a, b in zip(values, values[1:]):
            if a > b:
                raise DeltaError(f"values {values} are not nondecreasing")
        if values[0] < 0 or values[-1] > self.target_rank:
            raise DeltaError(f"values {values} leave [0, {self.target_rank}]")

    def __call__(self, i: int) -> int:
        return self.values[i]

    @property
    def is_identity(self) -> bool:
        return self.source_rank == self.target_rank and self.values == tuple(
            range(self.source_rank + 1)
        )

    @property
    def is_injective(self) -> bool:
        return len(set(self.values)) == len(self.values)

    @property
    def is_surjective(self) -> bool:
        return set(self.values) == set(range(self.target_rank + 1))

    @property
    def op(self) -> "OpArrow":
        return OpArrow(self)

    def __repr__(self):
        return f"MonotoneMap([{self.source_rank}]->[{self.target_rank}], {self.values})"


@dataclass(frozen=True)
class OpArrow:
    """An arrow [underlying.target_rank] -> [underlying.source_rank] of Delta^op."""

    underlying: MonotoneMap

    @property
    def source(self) -> int:
        return self.underlying.target_rank

    @property
    def target(self) -> int:
        return self.underlying.source_rank

    @property
    def is_identity(self) -> bool:
        return self.underlying.is_identity

    def __repr__(self):
        return f"OpArrow([{self.source}]->[{self.target}], {self.underlying.values})"


# A tuple of OpArrows, one per simplicial direction.
MultiArrow = tuple


def identity(n: int) -> MonotoneMap:
    return MonotoneMap(n, n, tuple(range(n + 1)))


def identity_op(n: int) -> OpArrow:
    return OpArrow(identity(n))


def coface(n: int, i: int) -> MonotoneMap:
    if n < 1 or not 0 <= i <= n:
        raise DeltaError(f"coface index out of range: n={n}, i={i}")
    return MonotoneMap(n - 1, n, tuple(j if j < i else j + 1 for j in range(n)))


def codegeneracy(n: int, i: int) -> MonotoneMap:
    if n < 1 or not 0 <= i <= n - 1:
        raise DeltaError(f"codegeneracy index out of range: n={n}, i={i}")
    return MonotoneMap(n, n - 1, tuple(j if j <= i else j - 1 for j in range(n + 1)))


def d(n: int, i: int) -> OpArrow:
    """The face arrow d^n_i: [n] -> [n-1] of Delta^op."""
    return OpArrow(coface(n, i))


def s(n: int, i: int) -> OpArrow:
    """The degeneracy arrow s^n_i: [n-1] -> [n] of Delta^op."""
    return OpArrow(codegeneracy(n, i))


def compose(g: MonotoneMap, f: MonotoneMap) -> MonotoneMap:
    """g o f in Delta (apply f first)."""
    if f.target_rank != g.source_rank:
        raise DeltaError(
            f"cannot compose {g!r} after {f!r}: target [{f.target_rank}] "
            f"!= source [{g.source_rank}]"
        )
    gv = g.values
    return MonotoneMap(f.source_rank, g.target_rank, tuple(gv[v] for v in f.values))


def compose_op(g: OpArrow, f: OpArrow) -> OpArrow:
    """g o f in Delta^op (apply f first)."""
    if f.target != g.source:
        raise DeltaError(
            f"cannot compose {g!r} after {f!r}: target [{f.target}] != source [{g.source}]"
        )
    return OpArrow(compose(f.underlying, g.underlying))


def compose_multi(g: MultiArrow, f: MultiArrow) -> MultiArrow:
    if len(g) != len(f):
        raise DeltaError(f"arity mismatch: {len(g)} vs {len(f)}")
    return tuple(compose_op(gi, fi) for gi, fi in zip(g, f))


def evaluate_word(word: Sequence[OpArrow]) -> OpArrow:
    """Compose a nonempty word of Delta^op arrows, rightmost applied first."""
    if not word:
        raise DeltaError("empty word has no determined endpoints")
    result = word[-1]
    for g in reversed(word[:-1]):
        result = compose_op(g, result)
    return result


def equal_composites(word1: Sequence[OpArrow], word2: Sequence[OpArrow]) -> bool:
    a, b = evaluate_word(word1), evaluate_word(word2)
    if (a.source, a.target) != (b.source, b.target):
        raise DeltaError(
            f"endpoint mismatch: [{a.source}]->[{a.target}] vs [{b.source}]->[{b.target}]"
        )
    return a == b


def segal_arrow(j: int, m: int) -> OpArrow:
    """The projection i_j: [m] -> [1] of Delta^op, underlying values (j-1, j)."""
    if m < 1 or not 1 <= j <= m:
        raise DeltaError(f"segal arrow index out of range: j={j}, m={m}")
    return OpArrow(MonotoneMap(1, m, (j - 1, j)))


@dataclass(frozen=True)
class NormalForm:
    """Epi-mono factorization f = delta...delta o sigma...sigma.

    Both lists are in composition order, outermost first: ``cofaces`` holds
    (rank, index) pairs with strictly decreasing indices, ``codegeneracies``
    holds (rank, index) pairs with strictly increasing indices.
    """

    source_rank: int
    target_rank: int
    cofaces: tuple[tuple[int, int], ...]
    codegeneracies: tuple[tuple[int, int], ...]

    def word(self) -> list[MonotoneMap]:
        return [coface(n, i) for n, i in self.cofaces] + [
            codegeneracy(n, i) for n, i in self.codegeneracies
        ]

    def recompose(self) -> MonotoneMap:
        result = identity(self.source_rank)
        for g in reversed(self.word()):
            result = compose(g, result)
        if result.target_rank != self.target_rank:
            raise DeltaError("normal form does not land in its declared target")
        return result


def normal_form(f: MonotoneMap) -> NormalForm:
    v = f.values
    repeats = [j for j in range(f.source_rank) if v[j] == v[j + 1]]
    image = set(v)
    missing = [i for i in range(f.target_rank, -1, -1) if i not in image]
    # sigma_{j_1} o ... o sigma_{j_t}: the innermost has rank source_rank
    t = len(repeats)
    codegens = tuple((f.source_rank - (t - 1 - pos), j) for pos, j in enumerate(repeats))
    cofs = tuple((f.target_rank - pos, i) for pos, i in enumerate(missing))
    return NormalForm(f.source_rank, f.target_rank, cofs, codegens)


def all_arrows(m: int, n: int) -> Iterator[MonotoneMap]:
    """Every monotone map [m] -> [n], in lexicographic order of value tables."""
    for values in itertools.combinations_with_replacement(range(n + 1), m + 1):
        yield MonotoneMap(m, n, values)


def count_arrows(m: int, n: int) -> int:
    return math.comb(n + m + 1, m + 1)


def face_generators(k: int) -> list[OpArrow]:
    """The faces d^k_0..d^k_k leaving level k (none at level 0)."""
    return [d(k, i) for i in range(k + 1)] if k >= 1 else []


def degeneracy_generators(k: int) -> list[OpArrow]:
    """The degeneracies s^{k+1}_0..s^{k+1}_k leaving level k."""
    return [s(k + 1, i) for i in range(k + 1)]


def generators_within(max_level: int) -> Iterator[OpArrow]:
    """All face and degeneracy arrows with both endpoints at most ``max_level``."""
    for k in range(max_level + 1):
        yield from face_generators(k)
        if k + 1 <= max_level:
            yield from degeneracy_generators(k)


# -- identity suites -------------------------------------------------------


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    lhs: MonotoneMap
    rhs: MonotoneMap

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs


def _delta_word(*maps: MonotoneMap) -> MonotoneMap:
    result = maps[-1]
    for g in reversed(maps[:-1]):
        result = compose(g, result)
    return result


def cosimplicial_identities(max_rank: int = 10) -> list[IdentityCheck]:
    """All cosimplicial identities whose objects have rank at most ``max_rank``."""
    checks = []
    for n in range(1, max_rank):
        # delta^{n+1}_j delta^n_i = delta^{n+1}_i delta^n_{j-1}, i < j
        for j in range(n + 2):
            for i in range(j):
                checks.append(IdentityCheck(
                    f"dd n={n} i={i} j={j}",
                    compose(coface(n + 1, j), coface(n, i)),
                    compose(coface(n + 1, i), coface(n, j - 1)),
                ))
        # sigma^n_j sigma^{n+1}_i = sigma^n_i sigma^{n+1}_{j+1}, i <= j
        for j in range(n):
            for i in range(j + 1):
                checks.append(IdentityCheck(
                    f"ss n={n} i={i} j={j}",
                    compose(codegeneracy(n, j), codegeneracy(n + 1, i)),
                    compose(codegeneracy(n, i), codegeneracy(n + 1, j + 1)),
                ))
    for n in range(1, max_rank + 1):
        for j in range(n):
            for i in range(n + 1):
                lhs = compose(codegeneracy(n, j), coface(n, i))
                if i in (j, j + 1):
                    rhs = identity(n - 1)
                elif i < j:
                    rhs = compose(coface(n - 1, i), codegeneracy(n - 1, j - 1))
                else:
                    rhs = compose(coface(n - 1, i - 1), codegeneracy(n - 1, j))
                checks.append(IdentityCheck(f"sd n={n} i={i} j={j}", lhs, rhs))
    return checks


def op_check(name: str, word1: Sequence[OpArrow], word2: Sequence[OpArrow]) -> IdentityCheck:
    a, b = evaluate_word(word1), evaluate_word(word2)
    return IdentityCheck(name, a.underlying, b.underlying)


def h_space_identities() -> list[IdentityCheck]:
    """The Delta^op equations used to build the H-space structure of X_1."""
    return [
        op_check("d2_1 s2_1 = 1", [d(2, 1), s(2, 1)], [identity_op(1)]),
        op_check("d2_2 s2_1 = 1", [d(2, 2), s(2, 1)], [identity_op(1)]),
        op_check("d2_0 s2_1 = s1_0 d1_0", [d(2, 0), s(2, 1)], [s(1, 0), d(1, 0)]),
        op_check("i_1 = d2_2 d3_3", [segal_arrow(1, 3)], [d(2, 2), d(3, 3)]),
        op_check("i_2 = d2_0 d3_3", [segal_arrow(2, 3)], [d(2, 0), d(3, 3)]),
        op_check("i_1 = d2_2 d3_2", [segal_arrow(1, 3)], [d(2, 2), d(3, 2)]),
        op_check("d2_1 d3_3 = d2_2 d3_1", [d(2, 1), d(3, 3)], [d(2, 2), d(3, 1)]),
        op_check("d2_1 d3_0 = d2_0 d3_2", [d(2, 1), d(3, 0)], [d(2, 0), d(3, 2)]),
        op_check("d2_1 d3_1 = d2_1 d3_2", [d(2, 1), d(3, 1)], [d(2, 1), d(3, 2)]),
    ]


def normal_form_failures(max_rank: int = 6) -> list[str]:
    """Check factor-recompose and injectivity of normal_form on all small arrows."""
    failures = []
    for m in range(max_rank + 1):
        for n in range(max_rank + 1):
            seen: dict[NormalForm, MonotoneMap] = {}
            count = 0
            for f in all_arrows(m, n):
                count += 1
                nf = normal_form(f)
                if nf.recompose() != f:
                    failures.append(f"{f!r} does not recompose from {nf}")
                if nf in seen:
                    failures.append(f"{f!r} and {seen[nf]!r} share normal form {nf}")
                seen[nf] = f
                if not _canonical(nf):
                    failures.append(f"{nf} violates the index ordering")
            if count != count_arrows(m, n):
                failures.append(f"[{m}]->[{n}]: enumerated {count}, expected {count_arrows(m, n)}")
    return failures


def _canonical(nf: NormalForm) -> bool:
    ci = [i for _, i in nf.cofaces]
    si = [j for _, j in nf.codegeneracies]
    return all(a > b for a, b in zip(ci, ci[1:])) and all(a < b for a, b in zip(si, si[1:]))


def run_identity_suite(
    max_rank: int = 10, extra: Iterable[IdentityCheck] = ()
) -> list[IdentityCheck]:
    return cosimplicial_identities(max_rank) + h_space_identities() + list(extra)
