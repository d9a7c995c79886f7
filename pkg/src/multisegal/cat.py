"""Finite categories and monoids given by composition tables.

Composition is stored as ``compose(g, f) = g o f`` (apply f first).  A monoid
becomes a one-object category whose composite g o f is the product ``f * g``,
so that composable strings in the nerve multiply left to right.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Hashable, Iterator, Mapping, Sequence

from .sset import SimplicialSet


class CategoryError(ValueError):
    """A table violates a category, monoid, functor or naturality law."""


# -- categories ---------------------------------------------------------------


class FiniteCategory:
    def __init__(self, objects: Sequence[Hashable], arrows: Mapping[Hashable, tuple],
                 identities: Mapping[Hashable, Hashable],
                 composition: Mapping[tuple, Hashable], name: str | None = None,
                 factors: tuple | None = None):
        """
        ``arrows`` maps each arrow to (source, target); ``composition`` maps
        every composable pair (g, f) with target(f) = source(g) to g o f.
        Identity composites may be omitted; they are filled in.
        """
        self.objects = tuple(objects)
        self.arrows = tuple(arrows)
        self.source = {a: st[0] for a, st in arrows.items()}
        self.target = {a: st[1] for a, st in arrows.items()}
        self.identities = dict(identities)
        self.name = name
        self.factors = factors
        table = dict(composition)
        for f in self.arrows:
            table.setdefault((self.identities.get(self.target[f]), f), f)
            table.setdefault((f, self.identities.get(self.source[f])), f)
        self._table = table
        self.validate()

    def __repr__(self):
        return f"FiniteCategory({self.name or '?'}: {len(self.objects)} objects, {len(self.arrows)} arrows)"

    def compose(self, g, f):
        try:
            return self._table[(g, f)]
        except KeyError:
            raise CategoryError(f"{g!r} o {f!r} is not defined") from None

    def hom(self, a, b) -> list:
        return self._hom.get((a, b), [])

    @cached_property
    def _hom(self) -> dict:
        out: dict = {}
        for f in self.arrows:
            out.setdefault((self.source[f], self.target[f]), []).append(f)
        return out

    def composable_pairs(self) -> Iterator[tuple]:
        for f in self.arrows:
            for g in self.arrows:
                if self.target[f] == self.source[g]:
                    yield g, f

    def validate(self) -> None:
        objs = set(self.objects)
        if len(objs) != len(self.objects):
            raise CategoryError("duplicate objects")
        if len(set(self.arrows)) != len(self.arrows):
            raise CategoryError("duplicate arrows")
        for f in self.arrows:
            if self.source[f] not in objs or self.target[f] not in objs:
                raise CategoryError(f"arrow {f!r} has an unknown endpoint")
        for x in self.objects:
            i = self.identities.get(x)
            if i is None or self.source.get(i) != x or self.target.get(i) != x:
                raise CategoryError(f"identity law: object {x!r} has no identity endomorphism")
        for g, f in self.composable_pairs():
            if (g, f) not in self._table:
                raise CategoryError(f"composition undefined on composable pair ({g!r}, {f!r})")
            h = self._table[(g, f)]
            if h not in self.source or (self.source[h], self.target[h]) != (self.source[f], self.target[g]):
                raise CategoryError(
                    f"composition law: {g!r} o {f!r} = {h!r} has the wrong endpoints"
                )
        for key in self._table:
            g, f = key
            if f not in self.source or g not in self.source or self.target[f] != self.source[g]:
                raise CategoryError(f"composition defined on non-composable pair {key!r}")
        for f in self.arrows:
            if self._table[(self.identities[self.target[f]], f)] != f:
                raise CategoryError(f"identity law: left unit fails on {f!r}")
            if self._table[(f, self.identities[self.source[f]])] != f:
                raise CategoryError(f"identity law: right unit fails on {f!r}")
        for g, f in self.composable_pairs():
            gf = self._table[(g, f)]
            for h in self.arrows:
                if self.source[h] == self.target[g]:
                    if self._table[(h, gf)] != self._table[(self._table[(h, g)], f)]:
                        raise CategoryError(
                            f"associativity: ({h!r} o {g!r}) o {f!r} != {h!r} o ({g!r} o {f!r})"
                        )

    def __eq__(self, other):
        return (isinstance(other, FiniteCategory) and self.objects == other.objects
                and self.source == other.source and self.target == other.target
                and self.identities == other.identities and self._table == other._table)

    def __hash__(self):
        return hash((self.objects, self.arrows))

    # text format
    def to_dict(self) -> dict:
        return {
            "kind": "category",
            "name": self.name,
            "objects": list(self.objects),
            "arrows": [{"name": a, "source": self.source[a], "target": self.target[a]}
                       for a in self.arrows],
            "identities": {str(x): self.identities[x] for x in self.objects},
            "composition": [[g, f, self._table[(g, f)]] for g, f in self.composable_pairs()],
        }


def _freeze(value):
    """JSON has no tuples; composite labels come back as lists."""
    if isinstance(value, list):
        return tuple(_freeze(v) for v in value)
    return value


def category_from_dict(doc: dict) -> FiniteCategory:
    try:
        arrows = {_freeze(a["name"]): (_freeze(a["source"]), _freeze(a["target"]))
                  for a in doc["arrows"]}
        objects = [_freeze(x) for x in doc["objects"]]
        identities = {x: _freeze(doc["identities"][str(x)]) for x in objects}
        composition = {(_freeze(g), _freeze(f)): _freeze(h)
                       for g, f, h in doc.get("composition", [])}
    except (KeyError, TypeError, ValueError) as exc:
        raise CategoryError(f"malformed category document: {exc!r}") from None
    return FiniteCategory(objects, arrows, identities, composition, name=doc.get("name"))


def terminal_category() -> FiniteCategory:
    return FiniteCategory(["*"], {"1": ("*", "*")}, {"*": "1"}, {}, name="terminal")


def two_category() -> FiniteCategory:
    """Objects 0 and 1, one nonidentity arrow h: 0 -> 1."""
    return FiniteCategory(
        [0, 1],
        {"id0": (0, 0), "id1": (1, 1), "h": (0, 1)},
        {0: "id0", 1: "id1"},
        {},
        name="2",
    )


def poset_category(n: int) -> FiniteCategory:
    """The linear order 0 < 1 < ... < n-1, arrows named 'i<=j'."""
    arrows = {f"{i}<={j}": (i, j) for i in range(n) for j in range(i, n)}
    comp = {(f"{j}<={k}", f"{i}<={j}"): f"{i}<={k}"
            for i in range(n) for j in range(i, n) for k in range(j, n)}
    return FiniteCategory(range(n), arrows, {i: f"{i}<={i}" for i in range(n)}, comp,
                          name=f"poset{n}")


def discrete_category(n: int) -> FiniteCategory:
    return FiniteCategory(range(n), {f"id{i}": (i, i) for i in range(n)},
                          {i: f"id{i}" for i in range(n)}, {}, name=f"discrete{n}")


def product_category(C: FiniteCategory, D: FiniteCategory) -> FiniteCategory:
    arrows = {(f, g): ((C.source[f], D.source[g]), (C.target[f], D.target[g]))
              for f in C.arrows for g in D.arrows}
    comp = {}
    for (g1, f1) in C.composable_pairs():
        for (g2, f2) in D.composable_pairs():
            comp[((g1, g2), (f1, f2))] = (C.compose(g1, f1), D.compose(g2, f2))
    identities = {(x, y): (C.identities[x], D.identities[y]) for x in C.objects for y in D.objects}
    objects = [(x, y) for x in C.objects for y in D.objects]
    return FiniteCategory(objects, arrows, identities, comp,
                          name=f"{C.name}x{D.name}", factors=(C, D))


# -- monoids ------------------------------------------------------------------


class FiniteMonoid:
    """Elements 0..n-1 internally; ``labels`` name them."""

    def __init__(self, labels: Sequence[Hashable], unit: Hashable,
                 table: Sequence[Sequence[Hashable]], name: str | None = None,
                 commutative: bool | None = None):
        self.labels = tuple(labels)
        self.name = name
        self._index = {a: i for i, a in enumerate(self.labels)}
        if len(self._index) != len(self.labels):
            raise CategoryError("duplicate monoid elements")
        if unit not in self._index:
            raise CategoryError(f"unit {unit!r} is not an element")
        self.unit = self._index[unit]
        n = len(self.labels)
        if len(table) != n or any(len(row) != n for row in table):
            raise CategoryError(f"multiplication table must be {n}x{n}")
        try:
            self.table = tuple(tuple(self._index[c] for c in row) for row in table)
        except KeyError as exc:
            raise CategoryError(f"table entry {exc.args[0]!r} is not an element") from None
        self._validate()
        if commutative is not None and commutative != self.is_commutative:
            raise CategoryError(
                f"declared commutative={commutative} but the table says {self.is_commutative}"
                + (f" (witness {self.noncommuting_pair()})" if not self.is_commutative else "")
            )

    def __repr__(self):
        return f"FiniteMonoid({self.name or '?'}, order {len(self)})"

    def __len__(self):
        return len(self.labels)

    @property
    def elements(self) -> range:
        return range(len(self.labels))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def label(self, a: int):
        return self.labels[a]

    def index(self, label) -> int:
        return self._index[label]

    def _validate(self):
        t, e = self.table, self.unit
        for a in self.elements:
            if t[e][a] != a or t[a][e] != a:
                raise CategoryError(f"unit law fails at {self.labels[a]!r}")
        for a, b, c in itertools.product(self.elements, repeat=3):
            if t[t[a][b]][c] != t[a][t[b][c]]:
                la, lb, lc = (self.labels[x] for x in (a, b, c))
                raise CategoryError(f"associativity fails on ({la!r}, {lb!r}, {lc!r})")

    def noncommuting_pair(self) -> tuple | None:
        for a, b in itertools.combinations(self.elements, 2):
            if self.table[a][b] != self.table[b][a]:
                return self.labels[a], self.labels[b]
        return None

    @cached_property
    def is_commutative(self) -> bool:
        return self.noncommuting_pair() is None

    def inverse(self, a: int) -> int | None:
        for b in self.elements:
            if self.table[a][b] == self.unit and self.table[b][a] == self.unit:
                return b
        return None

    def power(self, a: int, k: int) -> int:
        out = self.unit
        for _ in range(k):
            out = self.table[out][a]
        return out

    def to_dict(self) -> dict:
        return {
            "kind": "monoid",
            "name": self.name,
            "elements": list(self.labels),
            "unit": self.labels[self.unit],
            "table": [[self.labels[c] for c in row] for row in self.table],
        }


def monoid_from_dict(doc: dict) -> FiniteMonoid:
    try:
        return FiniteMonoid(_freeze(doc["elements"]), _freeze(doc["unit"]),
                            [[_freeze(c) for c in row] for row in doc["table"]], name=doc.get("name"),
                            commutative=doc.get("commutative"))
    except KeyError as exc:
        raise CategoryError(f"monoid document lacks field {exc}") from None


def cyclic_group(n: int) -> FiniteMonoid:
    return FiniteMonoid(range(n), 0, [[(a + b) % n for b in range(n)] for a in range(n)],
                        name=f"Z/{n}")


def klein_group() -> FiniteMonoid:
    elems = [(a, b) for a in range(2) for b in range(2)]
    table = [[((x[0] + y[0]) % 2, (x[1] + y[1]) % 2) for y in elems] for x in elems]
    return FiniteMonoid(elems, (0, 0), table, name="Z/2xZ/2")


def idempotent2() -> FiniteMonoid:
    """{1, a} with a*a = a."""
    return FiniteMonoid(["1", "a"], "1", [["1", "a"], ["a", "a"]], name="idempotent2")


def leftzero3() -> FiniteMonoid:
    """{1, a, b} with x*y = x for x, y in {a, b}; not commutative."""
    return FiniteMonoid(
        ["1", "a", "b"], "1",
        [["1", "a", "b"], ["a", "a", "a"], ["b", "b", "b"]],
        name="leftzero3",
    )


def builtin_monoid(name: str) -> FiniteMonoid:
    if name.startswith("Z/") and name[2:].isdigit() and int(name[2:]) >= 1:
        return cyclic_group(int(name[2:]))
    named = {"Z/2xZ/2": klein_group, "idempotent2": idempotent2, "leftzero3": leftzero3,
             "trivial": lambda: cyclic_group(1)}
    if name not in named:
        raise CategoryError(f"unknown built-in monoid {name!r}")
    return named[name]()


BUILTIN_COMMUTATIVE = ("Z/1", "Z/2", "Z/3", "Z/4", "Z/2xZ/2", "idempotent2")


def builtin_category(name: str) -> FiniteCategory:
    named = {"2": two_category, "terminal": terminal_category,
             "poset3": lambda: poset_category(3), "discrete2": lambda: discrete_category(2)}
    if name in named:
        return named[name]()
    return monoid_as_category(builtin_monoid(name))


def monoid_as_category(M: FiniteMonoid) -> FiniteCategory:
    arrows = {a: ("*", "*") for a in M.labels}
    # g o f = f * g
    comp = {(M.label(g), M.label(f)): M.label(M.mul(f, g)) for f in M.elements for g in M.elements}
    return FiniteCategory(["*"], arrows, {"*": M.label(M.unit)}, comp, name=M.name)


def is_group(M: FiniteMonoid) -> bool:
    return all(M.inverse(a) is not None for a in M.elements)


def abelian_invariants(M: FiniteMonoid) -> tuple[int, ...]:
    """Invariant factors n_1 | n_2 | ... of a finite abelian group (trivial factors dropped).

    The group is identified by counting, for each divisor e of |M|, the
    elements with x^e = 1; these counts determine the isomorphism type.
    """
    if not (M.is_commutative and is_group(M)):
        raise CategoryError(f"{M!r} is not an abelian group")
    order = len(M)
    divisors = [e for e in range(1, order + 1) if order % e == 0]
    counts = [sum(1 for a in M.elements if M.power(a, e) == M.unit) for e in divisors]
    for chain in _divisor_chains(order):
        predicted = [math.prod(math.gcd(e, n) for n in chain) for e in divisors]
        if predicted == counts:
            return chain
    raise AssertionError("no invariant factor chain matches")


def _divisor_chains(order: int, smallest: int = 2) -> Iterator[tuple[int, ...]]:
    """Chains n_1 | n_2 | ... with n_1 >= 2 and product ``order``."""
    if order == 1:
        yield ()
        return
    for n1 in range(smallest, order + 1):
        if order % n1:
            continue
        for rest in _divisor_chains(order // n1, n1):
            if not rest or rest[0] % n1 == 0:
                yield (n1,) + rest


# -- functors and transformations ---------------------------------------------


@dataclass
class Functor:
    source: FiniteCategory
    target: FiniteCategory
    object_map: dict
    arrow_map: dict

    def __call__(self, f):
        return self.arrow_map[f]

    def violations(self) -> list[str]:
        C, D = self.source, self.target
        out = []
        for x in C.objects:
            if self.object_map.get(x) not in D.objects:
                out.append(f"object {x!r} not mapped into the target")
        for f in C.arrows:
            Ff = self.arrow_map.get(f)
            if Ff not in D.source:
                out.append(f"arrow {f!r} not mapped into the target")
                continue
            if D.source[Ff] != self.object_map.get(C.source[f]) or D.target[Ff] != self.object_map.get(C.target[f]):
                out.append(f"endpoints of {f!r} not preserved")
        if out:
            return out
        for x in C.objects:
            if self.arrow_map[C.identities[x]] != D.identities[self.object_map[x]]:
                out.append(f"identity at {x!r} not preserved")
        for g, f in C.composable_pairs():
            if self.arrow_map[C.compose(g, f)] != D.compose(self.arrow_map[g], self.arrow_map[f]):
                out.append(f"composite {g!r} o {f!r} not preserved")
        return out

    def validate(self) -> "Functor":
        problems = self.violations()
        if problems:
            raise CategoryError(f"not a functor: {problems[0]}")
        return self

    def then(self, G: "Functor") -> "Functor":
        """G o self."""
        return Functor(self.source, G.target,
                       {x: G.object_map[y] for x, y in self.object_map.items()},
                       {f: G.arrow_map[g] for f, g in self.arrow_map.items()})

    def __eq__(self, other):
        return (isinstance(other, Functor) and self.source == other.source
                and self.target == other.target and self.object_map == other.object_map
                and self.arrow_map == other.arrow_map)


def identity_functor(C: FiniteCategory) -> Functor:
    return Functor(C, C, {x: x for x in C.objects}, {f: f for f in C.arrows})


def monoid_homomorphism_functor(M: FiniteMonoid, N: FiniteMonoid, phi: Mapping) -> Functor:
    """The functor between one-object categories induced by ``phi`` on labels."""
    return Functor(monoid_as_category(M), monoid_as_category(N), {"*": "*"}, dict(phi)).validate()


@dataclass
class NaturalTransformation:
    F: Functor
    G: Functor
    components: dict

    def violations(self) -> list[str]:
        C, D = self.F.source, self.F.target
        if self.G.source != C or self.G.target != D:
            return ["F and G do not share source and target"]
        out = []
        for x in C.objects:
            a = self.components.get(x)
            if a not in D.source or (D.source[a], D.target[a]) != (self.F.object_map[x], self.G.object_map[x]):
                out.append(f"component at {x!r} is not an arrow F{x!r} -> G{x!r}")
        if out:
            return out
        for f in C.arrows:
            x, y = C.source[f], C.target[f]
            lhs = D.compose(self.G(f), self.components[x])
            rhs = D.compose(self.components[y], self.F(f))
            if lhs != rhs:
                out.append(f"naturality square for {f!r} does not commute: {lhs!r} != {rhs!r}")
        return out

    def validate(self) -> "NaturalTransformation":
        problems = self.violations()
        if problems:
            raise CategoryError(f"not natural: {problems[0]}")
        return self


def inclusion(C: FiniteCategory, end: int) -> Functor:
    """I_0 or I_1: C -> C x 2."""
    two = two_category()
    CT = product_category(C, two)
    return Functor(C, CT, {x: (x, end) for x in C.objects},
                   {f: (f, two.identities[end]) for f in C.arrows})


def nat_to_functor(alpha: NaturalTransformation) -> Functor:
    """The functor A: C x 2 -> D with A(f, h) = Gf o alpha_C = alpha_C' o Ff."""
    alpha.validate()
    F, G = alpha.F, alpha.G
    C, D = F.source, F.target
    two = two_category()
    CT = product_category(C, two)
    obj = {}
    for x in C.objects:
        obj[(x, 0)] = F.object_map[x]
        obj[(x, 1)] = G.object_map[x]
    arr = {}
    for f in C.arrows:
        arr[(f, "id0")] = F(f)
        arr[(f, "id1")] = G(f)
        via_G = D.compose(G(f), alpha.components[C.source[f]])
        via_F = D.compose(alpha.components[C.target[f]], F(f))
        if via_G != via_F:
            raise CategoryError(f"naturality square for {f!r} does not commute")
        arr[(f, "h")] = via_G
    return Functor(CT, D, obj, arr).validate()


def functor_to_nat(A: Functor) -> NaturalTransformation:
    """alpha_C = A(1_C, h), natural from A o I_0 to A o I_1."""
    if A.source.factors is None or A.source.factors[1] != two_category():
        raise CategoryError("functor source is not of the form C x 2")
    C = A.source.factors[0]
    F = inclusion(C, 0).then(A)
    G = inclusion(C, 1).then(A)
    comps = {x: A((C.identities[x], "h")) for x in C.objects}
    return NaturalTransformation(F, G, comps).validate()


def enumerate_functors(C: FiniteCategory, D: FiniteCategory) -> Iterator[Functor]:
    """All functors C -> D, by backtracking over object maps then hom-sets."""
    order = sorted(C.arrows, key=lambda f: (C.source[f] != C.target[f], repr(f)))
    pairs = list(C.composable_pairs())
    for objs in itertools.product(D.objects, repeat=len(C.objects)):
        omap = dict(zip(C.objects, objs))
        amap: dict = {}

        def consistent(f) -> bool:
            for g, h in pairs:
                gh = C.compose(g, h)
                if f in (g, h, gh) and g in amap and h in amap and gh in amap:
                    if D.compose(amap[g], amap[h]) != amap[gh]:
                        return False
            return True

        def extend(i):
            if i == len(order):
                yield Functor(C, D, dict(omap), dict(amap))
                return
            f = order[i]
            src, tgt = omap[C.source[f]], omap[C.target[f]]
            candidates = D.hom(src, tgt)
            if f == C.identities[C.source[f]]:
                candidates = [D.identities[src]]
            for cand in candidates:
                amap[f] = cand
                if consistent(f):
                    yield from extend(i + 1)
                del amap[f]

        yield from extend(0)


def enumerate_transformations(F: Functor, G: Functor) -> Iterator[NaturalTransformation]:
    C, D = F.source, F.target
    choices = [D.hom(F.object_map[x], G.object_map[x]) for x in C.objects]
    for comps in itertools.product(*choices):
        alpha = NaturalTransformation(F, G, dict(zip(C.objects, comps)))
        if not alpha.violations():
            yield alpha


def nat_round_trip_failures(C: FiniteCategory, D: FiniteCategory, truncation: int = 3):
    """Exhaustive round trip between transformations F => G and functors C x 2 -> D.

    Also checks that restricting each cylinder functor to the two ends of
    C x 2 recovers nerve(F) and nerve(G) through ``truncation``.  Returns
    (counts, failures).
    """
    counts = {"functors": 0, "transformations": 0, "functors_from_cylinder": 0}
    failures = []
    functors = list(enumerate_functors(C, D))
    counts["functors"] = len(functors)
    NC = nerve(C, truncation)
    for F in functors:
        for G in functors:
            for alpha in enumerate_transformations(F, G):
                counts["transformations"] += 1
                A = nat_to_functor(alpha)
                back = functor_to_nat(A)
                if back.components != alpha.components or back.F != F or back.G != G:
                    failures.append(f"round trip changes {alpha.components!r}")
                for end, H in ((0, F), (1, G)):
                    lhs, rhs = nerve_map(inclusion(C, end).then(A)), nerve_map(H)
                    for k in range(truncation + 1):
                        if any(lhs(k, x) != rhs(k, x) for x in NC.level(k)):
                            failures.append(f"nerve restriction to end {end} differs at level {k}")
    for A in enumerate_functors(product_category(C, two_category()), D):
        counts["functors_from_cylinder"] += 1
        if nat_to_functor(functor_to_nat(A)) != A:
            failures.append("functor C x 2 -> D not recovered")
    if counts["functors_from_cylinder"] != counts["transformations"]:
        failures.append("counts of transformations and cylinder functors differ")
    return counts, failures


def small_categories() -> list[FiniteCategory]:
    """A catalog of categories with at most 3 objects and 6 arrows."""
    vee = FiniteCategory([0, 1, 2], {"id0": (0, 0), "id1": (1, 1), "id2": (2, 2),
                                     "f": (0, 1), "g": (0, 2)},
                         {0: "id0", 1: "id1", 2: "id2"}, {}, name="vee")
    parallel = FiniteCategory([0, 1], {"id0": (0, 0), "id1": (1, 1), "u": (0, 1), "v": (0, 1)},
                              {0: "id0", 1: "id1"}, {}, name="parallel")
    iso = FiniteCategory([0, 1], {"id0": (0, 0), "id1": (1, 1), "f": (0, 1), "g": (1, 0)},
                         {0: "id0", 1: "id1"}, {("g", "f"): "id0", ("f", "g"): "id1"}, name="iso")
    return [
        terminal_category(), discrete_category(2), two_category(), poset_category(3),
        vee, parallel, iso,
        monoid_as_category(cyclic_group(2)), monoid_as_category(cyclic_group(3)),
        monoid_as_category(idempotent2()),
    ]


# -- nerve ------------------------------------------------------------------


class Nerve(SimplicialSet):
    """Level 0 is the objects; level k >= 1 is the composable strings
    (a_1, ..., a_k) with target(a_i) = source(a_{i+1})."""

    def __init__(self, C: FiniteCategory, truncation: int):
        self.C = C
        self.truncation = truncation
        self._levels: dict[int, list] = {}

    def level(self, k):
        self.check_level(k)
        if k not in self._levels:
            C = self.C
            if k == 0:
                lv = list(C.objects)
            else:
                lv = [(f,) for f in C.arrows]
                for _ in range(k - 1):
                    lv = [chain + (g,) for chain in lv for g in C.arrows
                          if C.source[g] == C.target[chain[-1]]]
            self._levels[k] = lv
        return self._levels[k]

    def vertex(self, k: int, x, j: int):
        """The j-th object of the string x."""
        if k == 0:
            return x
        return self.C.source[x[j]] if j < k else self.C.target[x[-1]]

    def _act(self, f, x):
        C = self.C
        theta = f.underlying.values
        k = f.source
        if f.target == 0:
            return self.vertex(k, x, theta[0])
        out = []
        for j in range(1, len(theta)):
            lo, hi = theta[j - 1], theta[j]
            if lo == hi:
                out.append(C.identities[self.vertex(k, x, lo)])
            else:
                arrow = x[lo]
                for a in x[lo + 1:hi]:
                    arrow = C.compose(a, arrow)
                out.append(arrow)
        return tuple(out)

    def is_degenerate(self, k, x):
        if k == 0:
            return False
        ids = set(self.C.identities.values())
        return any(a in ids for a in x)


def nerve(C: FiniteCategory, truncation: int) -> Nerve:
    return Nerve(C, truncation)


def nerve_map(F: Functor) -> Callable:
    """The simplicial map N(F), as phi(k, x)."""
    def phi(k, x):
        if k == 0:
            return F.object_map[x]
        return tuple(F.arrow_map[a] for a in x)
    return phi


def nerve_product_iso(C: FiniteCategory, D: FiniteCategory) -> Callable:
    """Canonical bijection N(C x D)_k -> (N(C) x N(D))_k."""
    def phi(k, x):
        if k == 0:
            return x
        return tuple(a for a, _ in x), tuple(b for _, b in x)
    return phi

