import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from multisegal import cat
from multisegal.bar import (
    HSpaceError,
    NonCommutativeError,
    SegalViolation,
    act_grid,
    act_grid_batch,
    bar,
    bar_nerve_iso,
    hspace_structure,
    is_grouplike,
)
from multisegal.delta import MonotoneMap, d, s
from multisegal.sset import (
    TableSimplicialSet,
    audit_functoriality,
    check_segal_multi,
    isomorphism_violations,
    slice_ones,
)

MONOIDS = ["Z/1", "Z/2", "Z/3", "Z/4", "Z/2xZ/2", "idempotent2", "leftzero3"]


def power(M: cat.FiniteMonoid, k: int) -> cat.FiniteMonoid:
    """M^k with componentwise multiplication, labelled by label tuples."""
    elems = list(itertools.product(M.elements, repeat=k))
    table = [[tuple(M.label(M.mul(a, b)) for a, b in zip(x, y)) for y in elems] for x in elems]
    labels = [tuple(M.label(a) for a in x) for x in elems]
    return cat.FiniteMonoid(labels, tuple(M.label(M.unit) for _ in range(k)), table)


@pytest.mark.parametrize("name", MONOIDS)
def test_one_fold_bar_is_the_nerve(name):
    M = cat.builtin_monoid(name)
    W = bar(M, 1, 4)
    N = cat.nerve(cat.monoid_as_category(M), 4)
    assert isomorphism_violations(slice_ones(W, 0, 0), N, bar_nerve_iso(M)) == []


@pytest.mark.parametrize("name,k", [("Z/2", 1), ("Z/2", 2), ("Z/3", 2), ("idempotent2", 2), ("Z/2xZ/2", 1)])
def test_two_fold_slices_are_nerves_of_powers(name, k):
    # W_{m,k} = (M^k)^m with faces multiplying whole rows: the nerve of M^k
    M = cat.builtin_monoid(name)
    W = bar(M, 2, (3, k))
    N = cat.nerve(cat.monoid_as_category(power(M, k)), 3)

    def phi(m, x):
        if m == 0:
            return "*"
        return tuple(tuple(M.label(v) for v in x[r * k:(r + 1) * k]) for r in range(m))

    assert isomorphism_violations(slice_ones(W, 0, k), N, phi) == []


def test_three_fold_slice_is_nerve_of_square_power():
    M = cat.cyclic_group(2)
    W = bar(M, 3, (3, 2, 2))
    N = cat.nerve(cat.monoid_as_category(power(M, 4)), 3)
    phi = lambda m, x: "*" if m == 0 else tuple(tuple(x[4 * r:4 * r + 4]) for r in range(m))
    assert isomorphism_violations(slice_ones(W, 0, 2), N, phi) == []


def test_level_sizes_and_face_rule():
    M = cat.cyclic_group(2)
    W = bar(M, 2, (2, 2))
    assert W.size((2, 2)) == 16
    assert W.size((2, 0)) == 1 and W.size((1, 1)) == 2
    # rows r1 = (a, b), r2 = (c, e); inner face in direction 0 multiplies the rows
    for a, b, c, e in itertools.product(range(2), repeat=4):
        x = (a, b, c, e)
        assert W.act_in(0, d(2, 1), (2, 2), x) == ((a + c) % 2, (b + e) % 2)
        assert W.act_in(1, d(2, 1), (2, 2), x) == ((a + b) % 2, (c + e) % 2)
        assert W.act_in(0, d(2, 0), (2, 2), x) == (c, e)
        assert W.act_in(0, d(2, 2), (2, 2), x) == (a, b)
    assert W.act_in(1, s(2, 0), (2, 1), (1, 1)) == (0, 1, 0, 1)


def test_noncommutative_rejected_with_witness():
    with pytest.raises(NonCommutativeError) as info:
        bar(cat.leftzero3(), 2, 2)
    assert info.value.witness == ("a", "b")
    assert "'a'*'b' != 'b'*'a'" in str(info.value)
    bar(cat.leftzero3(), 1, 3)


def test_bypassed_gate_breaks_interchange():
    W = bar(cat.leftzero3(), 2, 2, check_commutative=False)
    problems = audit_functoriality(W)
    assert problems and all(p.startswith("interchange fails") for p in problems)


@pytest.mark.parametrize("name", ["Z/2", "Z/3", "Z/2xZ/2", "idempotent2"])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_functoriality_audit(name, n):
    W = bar(cat.builtin_monoid(name), n, 4 if n < 3 else 3)
    assert audit_functoriality(W, max_simplices=12, seed=n) == []


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(MONOIDS), st.lists(st.integers(0, 3), min_size=1, max_size=3), st.data())
def test_scalar_and_batch_grid_actions_agree(name, shape, data):
    M = cat.builtin_monoid(name)
    axis = data.draw(st.integers(0, len(shape) - 1))
    target = data.draw(st.integers(0, 3))
    theta = tuple(sorted(data.draw(st.lists(st.integers(0, shape[axis]), min_size=target + 1,
                                            max_size=target + 1))))
    cells = math.prod(shape)
    xs = data.draw(st.lists(st.lists(st.integers(0, len(M) - 1), min_size=cells, max_size=cells),
                            min_size=1, max_size=5))
    arr = np.array(xs, dtype=np.uint8).reshape(len(xs), cells)
    batch = act_grid_batch(np.array(M.table, dtype=np.uint8), M.unit, arr, shape, axis, theta)
    scalar = [act_grid(M.table, M.unit, tuple(x), shape, axis, theta) for x in xs]
    assert [tuple(r) for r in batch.tolist()] == scalar


def test_level_array_order_matches_level():
    W = bar(cat.cyclic_group(3), 2, 2)
    for ks in [(0, 2), (1, 2), (2, 2)]:
        assert [tuple(r) for r in W.level_array(ks).tolist()] == list(W.level(ks))


def test_element_of():
    W = bar(cat.klein_group(), 3, 1)
    assert [W.element_of(x) for x in W.level((1, 1, 1))] == list(cat.klein_group().labels)
    with pytest.raises(ValueError):
        W.element_of((0, 0))


@pytest.mark.parametrize("name", ["Z/2", "Z/3", "Z/4"])
def test_check_segal_multi_on_bar(name):
    assert check_segal_multi(bar(cat.builtin_monoid(name), 2, 3), 3, 3).all_bijective


def test_hspace_of_nerve_is_the_group():
    M = cat.cyclic_group(3)
    H = hspace_structure(cat.nerve(cat.monoid_as_category(M), 2))
    assert H.unit == (0,)
    assert H.table == {((a,), (b,)): ((a + b) % 3,) for a in range(3) for b in range(3)}
    T = hspace_structure(cat.nerve(cat.monoid_as_category(cat.builtin_monoid("trivial")), 2))
    assert T.carrier == ((0,),) and T.unit == (0,)


def _expected_table(M):
    return ({(M.label(a), M.label(b)): M.label(M.mul(a, b)) for a in M.elements for b in M.elements},
            M.label(M.unit))


@pytest.mark.parametrize("name", cat.BUILTIN_COMMUTATIVE)
def test_extraction_recovers_the_monoid(name):
    M = cat.builtin_monoid(name)
    W1 = bar(M, 1, 2)
    assert hspace_structure(slice_ones(W1, 0, 0)).relabel(W1.element_of) == _expected_table(M)
    W2 = bar(M, 2, 2)
    for l in (0, 1):
        H = hspace_structure(slice_ones(W2, l, 1))
        assert H.relabel(W2.element_of) == _expected_table(M)


def test_extraction_on_noncommutative_one_fold():
    M = cat.leftzero3()
    W = bar(M, 1, 3)
    assert hspace_structure(slice_ones(W, 0, 0)).relabel(W.element_of) == _expected_table(M)


def test_hspace_requires_segal():
    with pytest.raises(SegalViolation, match="p_0"):
        hspace_structure(cat.nerve(cat.two_category(), 2))


def test_hspace_detects_nonassociative_magma():
    # a unital magma gives a valid 2-truncated simplicial set; associativity
    # is only forced at level 3, so the extraction must check it
    labels = ["e", "a", "b"]
    mul = {("a", "a"): "b", ("a", "b"): "b", ("b", "a"): "a", ("b", "b"): "e"}
    prod = lambda x, y: x if y == "e" else y if x == "e" else mul[(x, y)]
    pairs = list(itertools.product(range(3), repeat=2))
    idx = {p: i for i, p in enumerate(pairs)}
    faces = {(1, 0): [0, 0, 0], (1, 1): [0, 0, 0],
             (2, 0): [y for _, y in pairs],
             (2, 1): [labels.index(prod(labels[x], labels[y])) for x, y in pairs],
             (2, 2): [x for x, _ in pairs]}
    degens = {(1, 0): [0], (2, 0): [idx[(0, x)] for x in range(3)], (2, 1): [idx[(x, 0)] for x in range(3)]}
    X = TableSimplicialSet(2, [1, 3, 9], faces, degens)
    assert audit_functoriality(X) == []
    with pytest.raises(HSpaceError, match="associativity"):
        hspace_structure(X)


def test_is_grouplike():
    from_nerve = lambda name: hspace_structure(cat.nerve(cat.monoid_as_category(cat.builtin_monoid(name)), 2))
    assert is_grouplike(from_nerve("Z/4"))
    assert not is_grouplike(from_nerve("idempotent2"))
    assert is_grouplike(from_nerve("trivial"))
    assert not is_grouplike(from_nerve("leftzero3"))


@pytest.mark.parametrize("name", ["Z/2", "Z/3", "Z/2xZ/2"])
def test_all_fold_structures_coincide(name):
    # for commutative M, the structures on every slice agree
    M = cat.builtin_monoid(name)
    W = bar(M, 3, 2)
    tables = {l: hspace_structure(slice_ones(W, l, 1)).relabel(W.element_of) for l in range(3)}
    assert tables[0] == tables[1] == tables[2] == _expected_table(M)


def test_truncation_shapes():
    with pytest.raises(ValueError):
        bar(cat.cyclic_group(2), 2, (1, 2, 3))
    with pytest.raises(ValueError):
        bar(cat.cyclic_group(2), 0, 2)
    W = bar(cat.cyclic_group(2), 2, (3, 1))
    assert W.truncation == (3, 1)
    assert MonotoneMap(0, 0, (0,)).is_identity
