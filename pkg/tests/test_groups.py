"""Permutation-group engine: quasi-p parts, commutators, minimal normals, generators, constructions."""

import itertools
import math
from collections import Counter

import pytest

from aswlab.corpus import corpus_up_to, transposition_group
from aswlab.errors import ActionNotHomomorphic, CapExceeded, InputError, NotNormal
from aswlab.groups import (
    AbelianType,
    PermGroup,
    abelian_group,
    abelian_invariants,
    abelianization,
    alternating,
    burnside_rank,
    commutator,
    commutator_subgroup,
    conjugation_action,
    cyclic,
    dihedral,
    direct_product,
    from_cycles,
    heisenberg,
    heisenberg_product,
    is_isomorphic,
    is_minimal_normal,
    is_perfect,
    is_quasi_p,
    is_simple,
    min_generators,
    minimal_normal_subgroups,
    mul,
    normal_subgroups,
    perm_order,
    quasi_p_part,
    quaternion,
    quotient_group,
    semidirect,
    subgroups,
    symmetric,
)

PRIMES = (2, 3, 5, 7)


def brute_commutator(G):
    """Closure of the set of all commutators [a, b] (no normal-closure shortcut)."""
    comms = {commutator(a, b) for a in G.element_list for b in G.element_list}
    return PermGroup(G.degree, sorted(comms))


def is_p_group(G, p):
    n = G.order
    while n % p == 0:
        n //= p
    return n == 1


# --- spec examples -------------------------------------------------------------------------


def test_quasi_p_examples():
    S3 = symmetric(3)
    assert quasi_p_part(S3, 3).elements == alternating(3).elements
    assert quasi_p_part(S3, 2).order == 6 and is_quasi_p(S3, 2)
    assert quasi_p_part(cyclic(5), 3).order == 1
    with pytest.raises(InputError):
        quasi_p_part(S3, 4)


def test_commutator_examples():
    A5 = alternating(5)
    assert commutator_subgroup(A5).order == 60 and is_perfect(A5)
    assert abelianization(symmetric(3)).factors == (2,)
    assert commutator_subgroup(abelian_group([2, 6])).order == 1


def test_minimal_normal_examples():
    S4 = symmetric(4)
    (V,) = minimal_normal_subgroups(S4)
    assert V.group.order == 4 and V.abelian and (V.simple_order, V.multiplicity) == (2, 2)
    (M,) = minimal_normal_subgroups(alternating(5))
    assert M.group.order == 60 and not M.abelian
    orders = sorted(M.group.order for M in minimal_normal_subgroups(cyclic(6)))
    assert orders == [2, 3]


def test_min_generators_examples():
    assert min_generators(cyclic(1))[0] == 0
    d, gens = min_generators(alternating(5))
    assert d == 2 and PermGroup(5, gens).order == 60
    assert min_generators(abelian_group([2, 2, 2]))[0] == 3
    with pytest.raises(CapExceeded):
        min_generators(abelian_group([2, 2, 2]), cap_k=2)


def test_heisenberg_examples():
    B = heisenberg(2, 1)
    assert B.order == 8 and abelian_invariants(commutator_subgroup(B)).factors == (2,)
    B = heisenberg(3, 1)
    assert B.order == 27
    assert abelian_invariants(commutator_subgroup(B)).factors == (3,)
    assert abelianization(B).factors == (3, 3)
    B = heisenberg_product(AbelianType.from_orders([2, 2]))
    assert B.order == 64 and abelian_invariants(commutator_subgroup(B)).factors == (2, 2)
    with pytest.raises(InputError):
        heisenberg_product([2, 3])
    with pytest.raises(CapExceeded):
        heisenberg_product([5, 5])


def test_semidirect_examples():
    Z3, Z2 = cyclic(3), cyclic(2)
    trivial = semidirect(Z3, Z2)
    assert trivial.group.order == 6 and trivial.group.is_abelian()
    (s,) = Z2.generators
    inv = {s: {h: tuple(h.index(i) for i in range(3)) for h in Z3.element_list}}
    sd = semidirect(Z3, Z2, inv)
    assert is_isomorphic(sd.group, symmetric(3))
    assert sd.kernel.order == 3 and sd.kernel.is_normal_in(sd.group)
    assert {sd.project(g) for g in sd.group.element_list} == Z2.elements
    # beta(h, g) = h g covers Gamma = S3 when Gamma = H G
    S3 = symmetric(3)
    A3 = alternating(3)
    K = PermGroup(3, [from_cycles(3, [(0, 1)])])
    sd = semidirect(A3, K, conjugation_action(S3, A3, K))
    assert {mul(*sd.pair_of(x)) for x in sd.group.element_list} == S3.elements


def test_semidirect_rejects_non_automorphism():
    Z3, Z2 = cyclic(3), cyclic(2)
    (s,) = Z2.generators
    bad = {s: {h: Z3.identity for h in Z3.element_list}}
    with pytest.raises(ActionNotHomomorphic):
        semidirect(Z3, Z2, bad)
    Z4 = cyclic(4)
    (t,) = Z4.generators
    (u,) = Z3.generators
    # an automorphism of order 2 assigned to a generator of order 4 is fine; one of order 3 is not
    Z7 = cyclic(7)
    (g7,) = Z7.generators
    from aswlab.groups import power

    cube = {t: {power(g7, k): power(g7, 2 * k) for k in range(7)}}
    with pytest.raises(ActionNotHomomorphic):
        semidirect(Z7, Z4, cube)
    assert u in Z3.elements


def test_quotient_examples():
    S3 = symmetric(3)
    assert quotient_group(S3, S3).group.order == 1
    Q = quotient_group(S3, alternating(3))
    assert Q.group.order == 2
    S4 = symmetric(4)
    V4 = PermGroup(4, [from_cycles(4, [(0, 1), (2, 3)]), from_cycles(4, [(0, 2), (1, 3)])])
    Q = quotient_group(S4, V4)
    assert is_isomorphic(Q.group, symmetric(3))
    for a, b in itertools.product(S4.element_list[:8], S4.element_list):
        assert Q.project(mul(a, b)) == mul(Q.project(a), Q.project(b))
    assert {g for g in S4.element_list if Q.project(g) == Q.group.identity} == V4.elements
    with pytest.raises(NotNormal):
        quotient_group(S4, PermGroup(4, [from_cycles(4, [(0, 1)])]))


# --- properties over the corpus -------------------------------------------------------------------


@pytest.mark.parametrize("G", corpus_up_to(24), ids=lambda G: G.name)
def test_normal_subgroups_match_brute_force(G):
    brute = sorted(
        (H.elements for H in subgroups(G) if H.is_normal_in(G)), key=lambda s: (len(s), sorted(s))
    )
    assert [N.elements for N in normal_subgroups(G)] == brute


def test_subgroup_counts():
    assert len(subgroups(symmetric(3))) == 6
    assert len(subgroups(quaternion())) == 6
    assert len(subgroups(dihedral(4))) == 10
    assert len(subgroups(alternating(4))) == 10
    assert len(subgroups(symmetric(4))) == 30


@pytest.mark.parametrize("G", corpus_up_to(100), ids=lambda G: G.name)
def test_quasi_p_part_is_minimal_normal_with_prime_to_p_index(G):
    normals = normal_subgroups(G)
    for p in PRIMES:
        P = quasi_p_part(G, p)
        assert P.is_normal_in(G)
        assert (G.order // P.order) % p != 0
        prime_to_p = [N for N in normals if (G.order // N.order) % p]
        assert all(P.elements <= N.elements for N in prime_to_p)
        assert min(prime_to_p, key=lambda N: N.order).elements == P.elements


@pytest.mark.parametrize("G", corpus_up_to(100), ids=lambda G: G.name)
def test_commutator_subgroup_matches_all_pairs(G):
    C = commutator_subgroup(G)
    assert C.elements == brute_commutator(G).elements
    assert is_perfect(G) == (C.order == G.order)


@pytest.mark.parametrize("G", corpus_up_to(200), ids=lambda G: G.name)
def test_minimal_normals_are_minimal_and_characteristically_simple(G):
    normals = normal_subgroups(G)
    mins = minimal_normal_subgroups(G)
    expected = [
        N.elements for N in normals
        if N.order > 1 and not any(1 < M.order < N.order and M.elements < N.elements for M in normals)
    ]
    assert sorted(M.group.elements for M in mins) == sorted(expected) if G.order > 1 else mins == []
    for M in mins:
        assert M.simple_order**M.multiplicity == M.group.order
        if M.abelian:
            assert all(perm_order(g) in (1, M.simple_order) for g in M.group.elements)
        assert is_minimal_normal(M.group, G)


@pytest.mark.parametrize("G", [G for G in corpus_up_to(200) if G.order > 1], ids=lambda G: G.name)
def test_min_generators_certificate(G):
    d, gens = min_generators(G)
    assert PermGroup(G.degree, gens).elements == G.elements
    assert d >= abelianization(G).rank
    # no generating set of size d - 1 among all (d-1)-subsets of class representatives x elements
    if d >= 2 and G.order <= 60:
        for combo in itertools.combinations(G.element_list, d - 1):
            assert PermGroup(G.degree, list(combo)).order < G.order


def test_min_generators_two_presentations_agree():
    assert min_generators(transposition_group(4))[0] == min_generators(symmetric(4))[0] == 2


P_GROUPS = [
    (G, p) for G in corpus_up_to(200) for p in (2, 3, 5, 7) if G.order > 1 and is_p_group(G, p)
]


@pytest.mark.parametrize("G,p", P_GROUPS, ids=[f"{G.name}-{p}" for G, p in P_GROUPS])
def test_burnside_rank_equals_generator_count(G, p):
    assert burnside_rank(G, p) == min_generators(G)[0]


HEIS_TYPES = [(2,), (4,), (8,), (2, 2), (2, 4), (2, 2, 2), (3,), (9,), (3, 3)]


def matrix_commutator_group(orders):
    """[B, B] computed on explicit unitriangular matrices, one block per factor.

    Returns the element-order histogram of the subgroup generated by all commutators.
    """

    def mat_mul(x, y, o):
        return [[sum(x[i][k] * y[k][j] for k in range(3)) % o for j in range(3)] for i in range(3)]

    def mat_inv(x, o):
        a, b, c = x[0][1], x[1][2], x[0][2]
        return [[1, -a % o, (a * b - c) % o], [0, 1, -b % o], [0, 0, 1]]

    def key(x):
        return (x[0][1], x[1][2], x[0][2])

    blocks = []
    for o in orders:
        mats = [[[1, a, c], [0, 1, b], [0, 0, 1]] for a in range(o) for b in range(o) for c in range(o)]
        comms = {
            key(mat_mul(mat_mul(mat_inv(x, o), mat_inv(y, o), o), mat_mul(x, y, o), o)) for x in mats for y in mats
        }
        blocks.append((o, comms))
    # every commutator of a block is central, so [B_i, B_i] is the set of (0, 0, c) it contains
    orders_hist = Counter()
    for combo in itertools.product(*[sorted(c) for _, c in blocks]):
        ords = []
        for (o, _), (_, _, c) in zip(blocks, combo):
            ords.append(o // math.gcd(o, c))
        orders_hist[math.lcm(*ords)] += 1
    return orders_hist


@pytest.mark.parametrize("orders", HEIS_TYPES, ids=str)
def test_heisenberg_product_commutator_is_A(orders):
    A = AbelianType.from_orders(orders)
    B = heisenberg_product(A)
    p = min(orders)
    assert B.order == math.prod(o**3 for o in orders) <= 3**6 and is_p_group(B, p)
    C = commutator_subgroup(B)
    assert C.is_abelian()
    assert C.exponent_counts() == matrix_commutator_group(orders) == abelian_group(list(orders)).exponent_counts()
    assert abelian_invariants(C) == A


@pytest.mark.parametrize("orders", [(2,), (3,), (2, 2)], ids=str)
def test_heisenberg_commutator_all_pairs_on_permutations(orders):
    B = heisenberg_product(orders)
    assert brute_commutator(B).elements == commutator_subgroup(B).elements


def test_abelian_type_normalization():
    assert AbelianType.from_orders([6, 4]).factors == (2, 12)
    assert AbelianType.from_orders([2, 3]).factors == (6,)
    with pytest.raises(InputError):
        AbelianType((4, 6))
    assert AbelianType.from_orders([12, 18]).primary() == [2, 3, 4, 9]


@pytest.mark.parametrize("G", corpus_up_to(60), ids=lambda G: G.name)
def test_abelianization_order_matches_commutator_index(G):
    Ab = abelianization(G)
    assert Ab.order == G.order // commutator_subgroup(G).order


def test_simplicity():
    assert is_simple(alternating(5)) and is_simple(cyclic(7))
    assert not is_simple(symmetric(4)) and not is_simple(cyclic(1))


def test_direct_product_and_isomorphism():
    assert is_isomorphic(direct_product(cyclic(2), cyclic(3)), cyclic(6))
    assert not is_isomorphic(dihedral(4), quaternion())
    assert not is_isomorphic(direct_product(cyclic(2), cyclic(2)), cyclic(4))


def test_order_cap():
    with pytest.raises(CapExceeded):
        symmetric(8).elements  # 40320 > default cap
