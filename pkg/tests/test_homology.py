import json
import random

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from multisegal import cat
from multisegal.bar import bar
from multisegal.homology import (
    NOT_COMPUTED,
    BoundaryError,
    ChainComplex,
    compute_homology,
    homology,
    normalized_chains,
)
from multisegal.smith import SparseIntMatrix
from multisegal.sset import TruncationError, diag, external_product, point


def nerve_of(name, truncation):
    return cat.nerve(cat.monoid_as_category(cat.builtin_monoid(name)), truncation)


@pytest.fixture(scope="module")
def k_z2_2_chains():
    # diag of the two-fold bar construction of Z/2, chains through degree 4
    return normalized_chains(diag(bar(cat.cyclic_group(2), 2, 4)), 4)


def test_point():
    H = compute_homology(point(4), 3)
    assert H.signature() == [(1, ()), (0, ()), (0, ()), (0, ())]
    assert normalized_chains(point(3), 3).ranks() == [1, 0, 0, 0]


@pytest.mark.parametrize("name,counts", [("Z/2", [1, 1, 1, 1, 1]), ("Z/3", [1, 2, 4, 8, 16])])
def test_nerve_generator_counts(name, counts):
    assert normalized_chains(nerve_of(name, 4), 4).ranks() == counts


@pytest.mark.parametrize("n,degree", [(2, 5), (3, 3), (4, 4), (5, 3)])
def test_cyclic_groups_match_periodic_resolution(n, degree):
    H = compute_homology(nerve_of(f"Z/{n}", degree + 1), degree)
    assert H.signature() == oracles.periodic_resolution_homology(n, degree)


def test_klein_group_matches_kunneth():
    Z2 = oracles.periodic_resolution_homology(2, 4)
    H = compute_homology(nerve_of("Z/2xZ/2", 5), 4)
    assert H.signature() == oracles.kunneth(Z2, Z2, 4)
    assert H[2].torsion == (2,) and H[3].torsion == (2, 2, 2)


def test_diagonal_of_external_product_is_nerve_of_product():
    X = diag(external_product(nerve_of("Z/2", 4), nerve_of("Z/3", 4)))
    H = compute_homology(X, 3)
    assert H.signature() == compute_homology(nerve_of("Z/6", 4), 3).signature()
    expected = oracles.kunneth(oracles.periodic_resolution_homology(2, 3),
                               oracles.periodic_resolution_homology(3, 3), 3)
    assert H.signature() == expected == [(1, ()), (0, (6,)), (0, ()), (0, (6,))]


@pytest.mark.parametrize("C,expected", [
    (cat.two_category(), [(1, ()), (0, ()), (0, ())]),
    (cat.poset_category(3), [(1, ()), (0, ()), (0, ())]),
    (cat.discrete_category(2), [(2, ()), (0, ()), (0, ())]),
    (cat.terminal_category(), [(1, ()), (0, ()), (0, ())]),
])
def test_categories(C, expected):
    assert compute_homology(cat.nerve(C, 3), 2).signature() == expected


@pytest.mark.parametrize("name", cat.BUILTIN_COMMUTATIVE)
def test_low_degrees_of_nerves(name):
    M = cat.builtin_monoid(name)
    H = compute_homology(cat.nerve(cat.monoid_as_category(M), 2), 1)
    assert H[0].betti == 1 and H[0].torsion == ()
    if cat.is_group(M):
        assert H[1].betti == 0 and H[1].torsion == cat.abelian_invariants(M)


def test_idempotent_monoid_is_contractible():
    # e*e = e gives a contracting homotopy, so no homology above degree 0
    assert compute_homology(nerve_of("idempotent2", 4), 3).signature() == [(1, ())] + [(0, ())] * 3


def test_top_degree_not_computed():
    H = homology(normalized_chains(nerve_of("Z/2", 3), 3))
    assert [h.status for h in H.degrees][-1] == NOT_COMPUTED
    assert H[3].betti is None and H[3].describe() == "?"
    assert H.describe() == "H_0 = Z; H_1 = Z/2; H_2 = 0; H_3 = ?"


def test_serialization():
    H = compute_homology(nerve_of("Z/2", 2), 1)
    assert H.to_dict() == {"degrees": [
        {"degree": 0, "betti": 1, "torsion": [], "status": "computed"},
        {"degree": 1, "betti": 0, "torsion": [2], "status": "computed"},
        {"degree": 2, "betti": None, "torsion": [], "status": "not_computed"},
    ]}
    assert json.loads(H.dumps()) == H.to_dict()
    assert H.dumps() == compute_homology(nerve_of("Z/2", 2), 1).dumps()


def test_truncation_exceeded():
    with pytest.raises(TruncationError):
        normalized_chains(nerve_of("Z/2", 2), 3)


def test_boundary_condition_enforced():
    # a 1-simplex whose boundary is twice a vertex, followed by a 2-cell hitting it once
    d1 = SparseIntMatrix(1, 1, [{0: 2}])
    d2 = SparseIntMatrix(1, 1, [{0: 1}])
    with pytest.raises(BoundaryError):
        ChainComplex([["v"], ["e"], ["f"]], {1: d1, 2: d2})
    with pytest.raises(ValueError, match="shape"):
        ChainComplex([["v"], ["e"]], {1: SparseIntMatrix(2, 1, [{0: 1}])})


@pytest.mark.parametrize("X,degree", [
    (nerve_of("Z/3", 4), 4),
    (diag(bar(cat.cyclic_group(2), 2, 3)), 3),
    (diag(external_product(nerve_of("Z/2", 3), cat.nerve(cat.two_category(), 3))), 3),
])
def test_array_and_generic_chains_agree(X, degree):
    A = normalized_chains(X, degree)
    G = normalized_chains(X, degree, use_arrays=False)
    assert A.generators == G.generators
    assert all(A.boundaries[k].to_dense() == G.boundaries[k].to_dense() for k in A.boundaries)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["Z/2", "Z/3", "Z/2xZ/2", "idempotent2"]), st.randoms(use_true_random=False))
def test_homology_independent_of_generator_order(name, rnd):
    C = normalized_chains(nerve_of(name, 4), 4)
    perms = []
    for g in C.generators:
        p = list(range(len(g)))
        rnd.shuffle(p)
        perms.append(p)
    assert homology(C.permuted(perms)).signature() == homology(C).signature()


@pytest.mark.parametrize("name,degree", [("Z/2", 5), ("Z/3", 4), ("Z/2xZ/2", 3), ("idempotent2", 3)])
def test_field_betti_match_universal_coefficients(name, degree):
    C = normalized_chains(nerve_of(name, degree + 1), degree + 1)
    H = homology(C).signature()
    for p in (2, 3):
        rank = oracles.rank_mod_2 if p == 2 else (lambda cols, n: oracles.rank_mod_p(cols, n, 3))
        assert oracles.field_betti(C, rank) == oracles.universal_coefficients_mod_p(H, p)
    assert oracles.field_betti(C, oracles.rational_rank) == [b for b, _ in H]


def test_k_z2_2_generator_counts(k_z2_2_chains):
    assert k_z2_2_chains.ranks() == [1, 1, 13, 469, 63577]


def test_k_z2_2_homology(k_z2_2_chains):
    H = homology(k_z2_2_chains)
    assert H.signature()[:3] == oracles.HUREWICZ_K_Z2_2
    assert H.signature() == [(1, ()), (0, ()), (0, (2,)), (0, ())]
    assert oracles.universal_coefficients_mod_p(H.signature(), 2) == oracles.MOD2_BETTI_K_Z2_2


def test_k_z2_2_field_betti(k_z2_2_chains):
    # independent of the integral elimination: mod-2 ranks give the known
    # cohomology dimensions, and odd characteristic sees nothing above degree 0
    assert oracles.field_betti(k_z2_2_chains, oracles.rank_mod_2) == oracles.MOD2_BETTI_K_Z2_2
    for p in (3, 1000003):
        betti = oracles.field_betti(k_z2_2_chains, lambda cols, n: oracles.rank_mod_p(cols, n, p))
        assert betti == [1, 0, 0, 0]


def test_oracle_self_checks():
    assert oracles.periodic_resolution_homology(2, 3) == [(1, ()), (0, (2,)), (0, ()), (0, (2,))]
    assert oracles._invariant_factors([2, 3, 4]) == (2, 12)
    rnd = random.Random(0)
    cols = [{r: rnd.randint(-3, 3) for r in range(4)} for _ in range(5)]
    assert oracles.rank_mod_2(cols, 4) == oracles.rank_mod_p(cols, 4, 2)
