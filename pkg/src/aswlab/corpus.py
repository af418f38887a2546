"""A fixed corpus of small permutation groups (orders up to 200).

The corpus mixes cyclic, abelian, dihedral, symmetric/alternating, p-groups,
Frobenius groups and small linear groups so that every branch of the
quasi-p and minimal-normal machinery is exercised.
"""

from __future__ import annotations

import itertools
from functools import cache

from .groups import (
    PermGroup,
    abelian_group,
    alternating,
    cyclic,
    dihedral,
    direct_product,
    from_cycles,
    heisenberg,
    quaternion,
    regular_representation,
    symmetric,
)


def affine_group(p: int, k: int) -> PermGroup:
    """x -> a x + b over Z/p with a in the subgroup of order k of (Z/p)^*."""
    a = pow(_primitive_root(p), (p - 1) // k, p)
    shift = tuple((i + 1) % p for i in range(p))
    scale = tuple((a * i) % p for i in range(p))
    return PermGroup(p, [shift, scale], name=f"Z/{p} x| Z/{k}")


def _primitive_root(p: int) -> int:
    for g in range(2, p):
        if len({pow(g, e, p) for e in range(1, p)}) == p - 1:
            return g
    return 1


def linear_group(p: int, dim: int, matrices, name: str) -> PermGroup:
    """Matrix group over F_p acting on the nonzero vectors of F_p^dim."""
    vectors = [v for v in itertools.product(range(p), repeat=dim) if any(v)]
    index = {v: i for i, v in enumerate(vectors)}

    def act(M, v):
        return tuple(sum(M[r][c] * v[c] for c in range(dim)) % p for r in range(dim))

    gens = [tuple(index[act(M, v)] for v in vectors) for M in matrices]
    return PermGroup(len(vectors), gens, name=name)


def dicyclic12() -> PermGroup:
    """Z/3 x| Z/4 with the generator of Z/4 inverting Z/3 (regular representation)."""
    elements = [(a, b) for a in range(3) for b in range(4)]

    def op(x, y):
        a, b = x
        c, d = y
        return ((a + (c if b % 2 == 0 else -c)) % 3, (b + d) % 4)

    return regular_representation(elements, op, [(1, 0), (0, 1)], name="Dic12")


@cache
def corpus() -> tuple[PermGroup, ...]:
    """The groups, in a fixed order."""
    groups = [cyclic(n) for n in (1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12)]
    groups += [
        abelian_group([2, 2]),
        abelian_group([2, 2, 2]),
        abelian_group([3, 3]),
        abelian_group([2, 4]),
        abelian_group([2, 6]),
        abelian_group([4, 4]),
        symmetric(3),
        dihedral(4),
        quaternion(),
        dihedral(5),
        dihedral(6),
        alternating(4),
        dicyclic12(),
        dihedral(7),
        dihedral(8),
        affine_group(5, 4),
        affine_group(7, 3),
        heisenberg(3),
        symmetric(4),
        linear_group(3, 2, [((1, 1), (0, 1)), ((1, 0), (1, 1))], "SL(2,3)"),
        direct_product(symmetric(3), cyclic(2)),
        direct_product(symmetric(3), symmetric(3)),
        direct_product(alternating(4), cyclic(3)),
        linear_group(3, 2, [((1, 1), (0, 1)), ((1, 0), (1, 1)), ((2, 0), (0, 1))], "GL(2,3)"),
        direct_product(symmetric(4), cyclic(2)),
        alternating(5),
        direct_product(alternating(4), cyclic(5)),
        symmetric(5),
        linear_group(5, 2, [((1, 1), (0, 1)), ((1, 0), (1, 1))], "SL(2,5)"),
        direct_product(alternating(5), cyclic(2)),
        linear_group(2, 3, [((1, 1, 0), (0, 1, 0), (0, 0, 1)), ((0, 0, 1), (1, 0, 0), (0, 1, 0))], "GL(3,2)"),
        direct_product(dihedral(5), cyclic(5)),
    ]
    return tuple(groups)


def corpus_up_to(order: int) -> list[PermGroup]:
    return [G for G in corpus() if G.order <= order]


def transposition_group(n: int) -> PermGroup:
    """S_n generated by all transpositions (a second presentation for tests)."""
    return PermGroup(n, [from_cycles(n, [(i, j)]) for i, j in itertools.combinations(range(n), 2)], name=f"S{n}")
