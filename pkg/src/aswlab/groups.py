"""Finite permutation groups, materialized as explicit element sets.

A permutation is a tuple ``g`` of images, ``g[i]`` being the image of point
``i``.  Products compose right to left: ``mul(a, b)[i] == a[b[i]]``, so left
regular representations are homomorphisms.  Groups are small by design: every
group is enumerated in full and an order cap (default 10^4) guards against
accidental blow-up.
"""

from __future__ import annotations

import itertools
import math
import threading
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property, reduce
from typing import Callable, Iterable, Mapping, Sequence

from sympy import factorint, isprime

from .errors import (
    ActionNotHomomorphic,
    CapExceeded,
    InputError,
    NotNormal,
    NotSubgroup,
    OrderCapExceeded,
)

Perm = tuple[int, ...]

DEFAULT_CAP = 10_000


# ---------------------------------------------------------------------------
# permutations
# ---------------------------------------------------------------------------


def check_perm(g: Sequence[int]) -> Perm:
    g = tuple(g)
    if sorted(g) != list(range(len(g))):
        raise InputError(f"{g} is not a permutation")
    return g


def identity(degree: int) -> Perm:
    return tuple(range(degree))


def mul(a: Perm, b: Perm) -> Perm:
    return tuple([a[i] for i in b])


def inverse(a: Perm) -> Perm:
    inv = [0] * len(a)
    for i, j in enumerate(a):
        inv[j] = i
    return tuple(inv)


def commutator(a: Perm, b: Perm) -> Perm:
    return mul(mul(a, b), mul(inverse(a), inverse(b)))


def conjugate(g: Perm, h: Perm) -> Perm:
    """g h g^-1."""
    return mul(mul(g, h), inverse(g))


def power(a: Perm, k: int) -> Perm:
    if k < 0:
        a, k = inverse(a), -k
    result = identity(len(a))
    while k:
        if k & 1:
            result = mul(result, a)
        a = mul(a, a)
        k >>= 1
    return result


def perm_order(a: Perm) -> int:
    seen = [False] * len(a)
    order = 1
    for i in range(len(a)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = a[j]
            length += 1
        order = math.lcm(order, length)
    return order


def from_cycles(degree: int, cycles: Iterable[Sequence[int]]) -> Perm:
    img = list(range(degree))
    for cyc in cycles:
        cyc = list(cyc)
        if len(set(cyc)) != len(cyc) or any(not 0 <= c < degree for c in cyc):
            raise InputError(f"bad cycle {cyc} for degree {degree}")
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            img[a] = b
    return check_perm(img)


def cycles(a: Perm) -> list[tuple[int, ...]]:
    seen = set()
    out = []
    for i in range(len(a)):
        if i in seen or a[i] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = a[i]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = a[j]
        out.append(tuple(cyc))
    return out


def format_perm(a: Perm) -> str:
    cs = cycles(a)
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cs) if cs else "()"


def is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


# ---------------------------------------------------------------------------
# groups
# ---------------------------------------------------------------------------


def _closure(degree: int, gens: Sequence[Perm], cap: int, start: Iterable[Perm] = ()) -> frozenset[Perm]:
    e = identity(degree)
    elements = set(start) or {e}
    elements.add(e)
    frontier = list(elements)
    gens = [g for g in gens if g != e]
    while frontier:
        new = []
        for x in frontier:
            for s in gens:
                y = mul(s, x)
                if y not in elements:
                    elements.add(y)
                    new.append(y)
        if len(elements) > cap:
            raise OrderCapExceeded(f"group order exceeds cap {cap}")
        frontier = new
    return frozenset(elements)


class PermGroup:
    """A permutation group of the given degree, generated by ``generators``."""

    def __init__(
        self,
        degree: int,
        generators: Iterable[Sequence[int]] = (),
        cap: int = DEFAULT_CAP,
        name: str | None = None,
        *,
        _elements: frozenset[Perm] | None = None,
    ):
        self.degree = degree
        gens = []
        for g in generators:
            g = check_perm(g)
            if len(g) != degree:
                raise InputError(f"generator {g} has degree {len(g)}, expected {degree}")
            gens.append(g)
        self.generators: tuple[Perm, ...] = tuple(gens)
        self.cap = cap
        self.name = name
        self._elements = _elements
        self._lock = threading.Lock()

    @classmethod
    def from_elements(cls, degree: int, elements: Iterable[Perm], cap: int = DEFAULT_CAP, name=None) -> PermGroup:
        """Subgroup with a known element set; generators are a greedy subset."""
        elems = frozenset(elements) | {identity(degree)}
        gens = _greedy_generators(degree, sorted(elems), cap)
        return cls(degree, gens, cap, name, _elements=elems)

    # materialization ---------------------------------------------------------
    @property
    def elements(self) -> frozenset[Perm]:
        if self._elements is None:
            with self._lock:
                if self._elements is None:
                    self._elements = _closure(self.degree, self.generators, self.cap)
        return self._elements

    @cached_property
    def element_list(self) -> list[Perm]:
        return sorted(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Perm:
        return identity(self.degree)

    def __len__(self) -> int:
        return self.order

    def __contains__(self, g) -> bool:
        return tuple(g) in self.elements

    def __iter__(self):
        return iter(self.element_list)

    def __eq__(self, other) -> bool:
        return isinstance(other, PermGroup) and other.degree == self.degree and other.elements == self.elements

    def __hash__(self) -> int:
        return hash(self.elements)

    def __repr__(self) -> str:
        label = self.name or "PermGroup"
        return f"<{label} degree={self.degree} gens=[{', '.join(format_perm(g) for g in self.generators)}]>"

    def describe(self) -> str:
        return f"deg={self.degree}; gens=" + ",".join(format_perm(g) for g in self.generators)

    def subgroup(self, gens: Iterable[Sequence[int]], name=None) -> PermGroup:
        gens = [check_perm(g) for g in gens]
        for g in gens:
            if g not in self.elements:
                raise NotSubgroup(f"{format_perm(g)} is not an element of the group")
        return PermGroup(self.degree, gens, self.cap, name)

    def is_subgroup_of(self, other: PermGroup) -> bool:
        return self.degree == other.degree and self.elements <= other.elements

    def is_normal_in(self, other: PermGroup) -> bool:
        if not self.is_subgroup_of(other):
            return False
        els = self.elements
        return all(conjugate(g, h) in els for g in other.generators for h in self.generators)

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(mul(a, b) == mul(b, a) for a, b in itertools.combinations(gens, 2))

    def is_trivial(self) -> bool:
        return self.order == 1

    def index_in(self, other: PermGroup) -> int:
        return other.order // self.order

    def exponent_counts(self) -> Counter:
        return Counter(perm_order(g) for g in self.elements)


def _greedy_generators(degree: int, candidates: Iterable[Perm], cap: int) -> list[Perm]:
    gens: list[Perm] = []
    current = frozenset({identity(degree)})
    for g in candidates:
        if g not in current:
            gens.append(g)
            current = _closure(degree, gens, cap, start=current)
    return gens


def generate(G: PermGroup, candidates: Iterable[Perm], name=None) -> PermGroup:
    """Subgroup of G generated by ``candidates``; adds them one at a time."""
    degree = G.degree
    gens: list[Perm] = []
    current = frozenset({identity(degree)})
    for g in candidates:
        if g not in current:
            gens.append(g)
            current = _closure(degree, gens, G.cap, start=current)
    return PermGroup(degree, gens, G.cap, name, _elements=current)


def normal_closure(G: PermGroup, candidates: Iterable[Perm], name=None) -> PermGroup:
    """Smallest normal subgroup of G containing ``candidates``."""
    degree = G.degree
    gens: list[Perm] = []
    current = frozenset({identity(degree)})
    pending = list(candidates)
    while pending:
        g = pending.pop()
        if g in current:
            continue
        gens.append(g)
        current = _closure(degree, gens, G.cap, start=current)
        pending.extend(conjugate(s, g) for s in G.generators)
        pending.extend(conjugate(s, h) for s in G.generators for h in gens)
    return PermGroup(degree, gens, G.cap, name, _elements=current)


# ---------------------------------------------------------------------------
# classical constructions
# ---------------------------------------------------------------------------


def cyclic(n: int) -> PermGroup:
    if n == 1:
        return PermGroup(1, [], name="Z/1")
    return PermGroup(n, [tuple((i + 1) % n for i in range(n))], name=f"Z/{n}")


def symmetric(n: int) -> PermGroup:
    if n < 2:
        return PermGroup(max(n, 1), [], name=f"S{n}")
    gens = [from_cycles(n, [range(n)]), from_cycles(n, [(0, 1)])]
    return PermGroup(n, gens, name=f"S{n}")


def alternating(n: int) -> PermGroup:
    if n < 3:
        return PermGroup(max(n, 1), [], name=f"A{n}")
    gens = [from_cycles(n, [(0, 1, i)]) for i in range(2, n)]
    return PermGroup(n, gens, name=f"A{n}")


def dihedral(n: int) -> PermGroup:
    """Symmetries of the n-gon, order 2n (n >= 3)."""
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return PermGroup(n, [rot, ref], name=f"D{2 * n}")


def quaternion() -> PermGroup:
    """Q8 in its regular representation."""
    # elements +-1, +-i, +-j, +-k indexed 0..7 as (sign, unit)
    units = ["1", "i", "j", "k"]
    table = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }
    elems = [(s, u) for s in (1, -1) for u in units]
    index = {e: i for i, e in enumerate(elems)}

    def left(x):
        s, u = x
        return tuple(index[(s * t * table[(u, v)][0], table[(u, v)][1])] for (t, v) in elems)

    return PermGroup(8, [left((1, "i")), left((1, "j"))], name="Q8")


def direct_product(*groups: PermGroup, cap: int = DEFAULT_CAP) -> PermGroup:
    """Product acting on the disjoint union of the point sets."""
    degree = sum(G.degree for G in groups)
    gens = []
    offset = 0
    for G in groups:
        for g in G.generators:
            img = list(range(degree))
            for i, j in enumerate(g):
                img[offset + i] = offset + j
            gens.append(tuple(img))
        offset += G.degree
    name = " x ".join(G.name or "?" for G in groups)
    return PermGroup(max(degree, 1), gens, cap, name)


def direct_power(G: PermGroup, l: int, cap: int = DEFAULT_CAP) -> PermGroup:
    return direct_product(*([G] * l), cap=cap)


def abelian_group(orders: Sequence[int]) -> PermGroup:
    return direct_product(*(cyclic(n) for n in orders)) if orders else PermGroup(1, [], name="1")


def regular_representation(elements: Sequence, op: Callable, generators: Sequence, cap=DEFAULT_CAP, name=None) -> PermGroup:
    """Left regular representation of an abstract group given by ``op``."""
    index = {e: i for i, e in enumerate(elements)}
    gens = [tuple(index[op(g, x)] for x in elements) for g in generators]
    return PermGroup(len(elements), gens, cap, name)


# ---------------------------------------------------------------------------
# abelian invariants
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AbelianType:
    """Invariant factors d_1 | d_2 | ... of a finite abelian group."""

    factors: tuple[int, ...]

    def __post_init__(self):
        fs = self.factors
        if any(f < 2 for f in fs) or any(b % a for a, b in zip(fs, fs[1:])):
            raise InputError(f"{fs} is not a divisibility chain of factors >= 2")

    @classmethod
    def from_orders(cls, orders: Iterable[int]) -> AbelianType:
        """Normalize any list of cyclic orders into invariant factors."""
        primary: dict[int, list[int]] = {}
        for n in orders:
            for q, e in factorint(n).items():
                primary.setdefault(q, []).append(q**e)
        return cls(_invariant_factors_from_primary(primary))

    @property
    def order(self) -> int:
        return math.prod(self.factors)

    @property
    def rank(self) -> int:
        return len(self.factors)

    def primary(self) -> list[int]:
        out = []
        for f in self.factors:
            out.extend(q**e for q, e in sorted(factorint(f).items()))
        return sorted(out)

    def __repr__(self) -> str:
        return " x ".join(f"Z/{f}" for f in self.factors) if self.factors else "1"


def _invariant_factors_from_primary(primary: Mapping[int, list[int]]) -> tuple[int, ...]:
    width = max((len(v) for v in primary.values()), default=0)
    cols = [1] * width
    for q, powers in primary.items():
        for i, pw in enumerate(sorted(powers, reverse=True)):
            cols[i] *= pw
    return tuple(sorted(c for c in cols if c > 1))


def _quotient_invariants(G: PermGroup, N: frozenset[Perm]) -> AbelianType:
    """Invariant factors of G/N for N normal with abelian quotient."""
    index = G.order // len(N)
    primary: dict[int, list[int]] = {}
    for q, e in factorint(index).items():
        # count cosets killed by q^k
        counts = []
        for k in range(e + 1):
            qk = q**k
            killed = sum(1 for g in G.elements if power(g, qk) in N) // len(N)
            counts.append(round(math.log(killed, q)))
            if counts[-1] == e:
                break
        # number of cyclic factors of order >= q^k is counts[k] - counts[k-1]
        ge = [counts[k] - counts[k - 1] for k in range(1, len(counts))] + [0]
        exps = []
        for k in range(1, len(ge)):
            exps.extend([k] * (ge[k - 1] - ge[k]))
        primary[q] = [q**x for x in exps]
    return AbelianType(_invariant_factors_from_primary(primary))


def abelian_invariants(G: PermGroup) -> AbelianType:
    if not G.is_abelian():
        raise InputError("group is not abelian")
    return _quotient_invariants(G, frozenset({G.identity}))


# ---------------------------------------------------------------------------
# subgroup structure
# ---------------------------------------------------------------------------


def quasi_p_part(G: PermGroup, p: int) -> PermGroup:
    """Subgroup generated by all elements of p-power order (= by all Sylow p-subgroups)."""
    if not isprime(p):
        raise InputError(f"{p} is not prime")
    cands = [g for g in G.element_list if perm_order(g) > 1 and is_p_power(perm_order(g), p)]
    return generate(G, cands, name=f"p({G.name})" if G.name else None)


def is_quasi_p(G: PermGroup, p: int) -> bool:
    return quasi_p_part(G, p).order == G.order


def commutator_subgroup(G: PermGroup) -> PermGroup:
    gens = G.generators
    comms = [commutator(a, b) for a, b in itertools.combinations(gens, 2)]
    return normal_closure(G, comms, name=f"[{G.name},{G.name}]" if G.name else None)


def is_perfect(G: PermGroup) -> bool:
    return commutator_subgroup(G).order == G.order


def abelianization(G: PermGroup) -> AbelianType:
    """Invariant factors of G/[G,G]."""
    return _quotient_invariants(G, commutator_subgroup(G).elements)


def conjugacy_classes(G: PermGroup) -> list[frozenset[Perm]]:
    seen: set[Perm] = set()
    classes = []
    els = G.element_list
    for g in els:
        if g in seen:
            continue
        cls = {g}
        frontier = [g]
        while frontier:
            new = []
            for x in frontier:
                for s in G.generators:
                    y = conjugate(s, x)
                    if y not in cls:
                        cls.add(y)
                        new.append(y)
            frontier = new
        seen |= cls
        classes.append(frozenset(cls))
    return classes


def _subgroup_key(H: PermGroup) -> tuple:
    return (H.order, H.element_list)


def normal_subgroups(G: PermGroup) -> list[PermGroup]:
    """Every normal subgroup of G, sorted by (order, sorted element list)."""
    found: dict[frozenset, PermGroup] = {}
    trivial = PermGroup(G.degree, [], G.cap, _elements=frozenset({G.identity}))
    found[trivial.elements] = trivial
    for cls in conjugacy_classes(G):
        g = min(cls)
        if g == G.identity:
            continue
        N = normal_closure(G, [g])
        found.setdefault(N.elements, N)
    frontier = list(found.values())
    while frontier:
        new = []
        current = list(found.values())
        for A in frontier:
            for B in current:
                if A.elements <= B.elements or B.elements <= A.elements:
                    continue
                AB = generate(G, list(A.generators) + list(B.generators))
                if AB.elements not in found:
                    found[AB.elements] = AB
                    new.append(AB)
        frontier = new
    return sorted(found.values(), key=_subgroup_key)


def subgroups(G: PermGroup) -> list[PermGroup]:
    """Every subgroup of G, sorted by (order, sorted element list).

    Cyclic subgroups are closed under joins; every subgroup is a join of
    cyclic ones.
    """
    found: dict[frozenset, PermGroup] = {}
    for g in G.element_list:
        C = PermGroup(G.degree, [g] if g != G.identity else [], G.cap)
        found.setdefault(C.elements, C)
    cyclics = list(found.values())
    frontier = list(cyclics)
    while frontier:
        new = []
        for A in frontier:
            for C in cyclics:
                if C.elements <= A.elements:
                    continue
                J = generate(G, list(A.generators) + list(C.generators))
                if J.elements not in found:
                    found[J.elements] = J
                    new.append(J)
        frontier = new
    return sorted(found.values(), key=_subgroup_key)


def complements(G: PermGroup, N: PermGroup) -> list[PermGroup]:
    """Subgroups K with N K = G and N meet K trivial (N normal in G)."""
    target = G.order // N.order
    return [
        K for K in subgroups(G)
        if K.order == target and len(K.elements & N.elements) == 1
    ]


def is_simple(G: PermGroup) -> bool:
    if G.order == 1:
        return False
    for cls in conjugacy_classes(G):
        g = min(cls)
        if g != G.identity and normal_closure(G, [g]).order != G.order:
            return False
    return True


# nonabelian simple groups of order below the default cap, by order
SIMPLE_GROUP_NAMES = {
    60: "A5", 168: "PSL(2,7)", 360: "A6", 504: "PSL(2,8)", 660: "PSL(2,11)",
    1092: "PSL(2,13)", 2448: "PSL(2,17)", 2520: "A7", 3420: "PSL(2,19)",
    4080: "PSL(2,16)", 5616: "PSL(3,3)", 6048: "PSU(3,3)", 6072: "PSL(2,23)",
    7800: "PSL(2,25)", 7920: "M11", 9828: "PSL(2,27)",
}


@dataclass
class MinimalNormal:
    """A minimal normal subgroup H = S^m together with its decomposition."""

    group: PermGroup
    simple_order: int
    multiplicity: int
    abelian: bool

    @property
    def simple_name(self) -> str:
        if self.abelian:
            return f"Z/{self.simple_order}"
        return SIMPLE_GROUP_NAMES.get(self.simple_order, f"simple({self.simple_order})")

    def to_json(self) -> dict:
        return {
            "order": self.group.order,
            "decomposition": f"{self.simple_name}^{self.multiplicity}",
            "simple_order": self.simple_order,
            "multiplicity": self.multiplicity,
            "abelian": self.abelian,
            "generators": [format_perm(g) for g in self.group.generators],
        }


def decompose_characteristically_simple(H: PermGroup) -> tuple[int, int, bool]:
    """Return (|S|, m, abelian) for H = S^m; raise if H is not of this shape."""
    if H.is_abelian():
        f = factorint(H.order)
        if len(f) != 1:
            raise InputError("abelian group is not elementary abelian")
        (q, m), = f.items()
        if any(perm_order(g) not in (1, q) for g in H.elements):
            raise InputError("abelian group is not elementary abelian")
        return q, m, True
    if not is_perfect(H):
        raise InputError("nonabelian characteristically simple group must be perfect")
    factors = [N for N in _minimal_normals_raw(H)]
    s = factors[0].order
    m = len(factors)
    if s**m != H.order or any(F.order != s for F in factors) or not is_simple(factors[0]):
        raise InputError("group is not a direct power of a simple group")
    return s, m, False


def _minimal_normals_raw(G: PermGroup) -> list[PermGroup]:
    closures = {}
    for cls in conjugacy_classes(G):
        g = min(cls)
        if g == G.identity:
            continue
        N = normal_closure(G, [g])
        closures.setdefault(N.elements, N)
    cands = sorted(closures.values(), key=_subgroup_key)
    minimal = []
    for N in cands:
        if not any(M.elements < N.elements for M in minimal) and not any(
            M.elements < N.elements for M in cands
        ):
            minimal.append(N)
    return minimal


def minimal_normal_subgroups(G: PermGroup) -> list[MinimalNormal]:
    """All minimal normal subgroups of G, each decomposed as S^m."""
    if G.order == 1:
        return []
    out = []
    for N in _minimal_normals_raw(G):
        s, m, ab = decompose_characteristically_simple(N)
        out.append(MinimalNormal(N, s, m, ab))
    return out


def is_minimal_normal(H: PermGroup, G: PermGroup) -> bool:
    if H.order == 1 or not H.is_normal_in(G):
        return False
    return any(M.group.elements == H.elements for M in minimal_normal_subgroups(G))


# ---------------------------------------------------------------------------
# generator counts
# ---------------------------------------------------------------------------


def min_generators(G: PermGroup, cap_k: int = 6) -> tuple[int, list[Perm]]:
    """Smallest d with a d-element generating set, and one such set.

    The search starts at the rank of the abelianization (a lower bound) and
    runs depth first: the first generator ranges over conjugacy-class
    representatives, later ones over all elements outside the subgroup
    generated so far, in increasing order.
    """
    n = G.order
    if n == 1:
        return 0, []
    lower = max(1, abelianization(G).rank)
    reps = [min(cls) for cls in conjugacy_classes(G) if min(cls) != G.identity]
    els = [g for g in G.element_list if g != G.identity]
    pos = {g: i for i, g in enumerate(els)}
    for k in range(lower, cap_k + 1):
        found = _search_generators(G, k, reps, els, pos)
        if found is not None:
            return k, found
    raise CapExceeded(f"group needs more than {cap_k} generators")


def _search_generators(G, k, reps, els, pos):
    degree, cap, target = G.degree, G.cap, G.order

    def dfs(chosen: list[Perm], current: frozenset, start: int):
        if len(current) == target:
            return list(chosen)
        if len(chosen) == k:
            return None
        for i in range(start, len(els)):
            g = els[i]
            if g in current:
                continue
            sub = _closure(degree, chosen + [g], cap, start=current)
            res = dfs(chosen + [g], sub, i + 1)
            if res is not None:
                return res
        return None

    e = frozenset({G.identity})
    for r in reps:
        sub = _closure(degree, [r], cap, start=e)
        res = dfs([r], sub, 0)
        if res is not None:
            return res
    return None


def burnside_rank(Q: PermGroup, p: int) -> int:
    """dim over F_p of Q / [Q,Q] Q^p."""
    phi = normal_closure(Q, [commutator(a, b) for a, b in itertools.combinations(Q.generators, 2)] + [power(g, p) for g in Q.generators])
    index = Q.order // phi.order
    return round(math.log(index, p)) if index > 1 else 0


# ---------------------------------------------------------------------------
# Heisenberg groups
# ---------------------------------------------------------------------------


def heisenberg(p: int, m: int = 1, cap: int = DEFAULT_CAP) -> PermGroup:
    """Unitriangular 3x3 matrices over Z/p^m in their left regular representation."""
    return heisenberg_product(AbelianType.from_orders([p**m]), cap=cap)


def heisenberg_product(A: AbelianType | Sequence[int], cap: int = DEFAULT_CAP) -> PermGroup:
    """Product of Heisenberg groups over Z/p^(m_i), one per cyclic factor of A.

    Its commutator subgroup is isomorphic to A.
    """
    orders = A.primary() if isinstance(A, AbelianType) else list(A)
    if not orders:
        return PermGroup(1, [], cap, name="1")
    primes = {next(iter(factorint(o))) for o in orders if o > 1}
    if len(primes) != 1 or any(len(factorint(o)) != 1 for o in orders):
        raise InputError("heisenberg_product needs orders that are powers of one prime")
    size = math.prod(o**3 for o in orders)
    if size > cap:
        raise CapExceeded(f"|B| = {size} exceeds cap {cap}")
    # elements: tuples of (a, b, c) per factor <-> [[1,a,c],[0,1,b],[0,0,1]]
    ranges = [range(o) for o in orders for _ in range(3)]
    elements = list(itertools.product(*ranges))

    def op(x, y):
        out = []
        for t, o in enumerate(orders):
            a, b, c = x[3 * t: 3 * t + 3]
            a2, b2, c2 = y[3 * t: 3 * t + 3]
            out.extend(((a + a2) % o, (b + b2) % o, (c + c2 + a * b2) % o))
        return tuple(out)

    gens = []
    for t in range(len(orders)):
        for unit in ((1, 0, 0), (0, 1, 0)):
            g = [0] * (3 * len(orders))
            g[3 * t: 3 * t + 3] = unit
            gens.append(tuple(g))
    label = " x ".join(f"Heis(Z/{o})" for o in orders)
    return regular_representation(elements, op, gens, cap=cap, name=label)


# ---------------------------------------------------------------------------
# quotients, semidirect products, isomorphism
# ---------------------------------------------------------------------------


@dataclass
class Quotient:
    """G/N realized as a permutation group on the cosets of N."""

    parent: PermGroup
    normal: PermGroup
    group: PermGroup
    cosets: list[frozenset[Perm]]
    coset_of: dict[Perm, int]
    _images: dict[Perm, Perm] = field(default_factory=dict, repr=False)

    def coset_index(self, g: Perm) -> int:
        return self.coset_of[g]

    def project(self, g: Perm) -> Perm:
        img = self._images.get(g)
        if img is None:
            reps = [min(c) for c in self.cosets]
            img = tuple(self.coset_of[mul(g, r)] for r in reps)
            self._images[g] = img
        return img

    def table(self) -> list[list[int]]:
        reps = [min(c) for c in self.cosets]
        return [[self.coset_of[mul(a, b)] for b in reps] for a in reps]

    def lift(self, q: Perm) -> Perm:
        """A coset representative mapping to q."""
        return min(self.cosets[q[0]])


def quotient_group(G: PermGroup, N: PermGroup) -> Quotient:
    if not N.is_normal_in(G):
        raise NotNormal("subgroup is not normal")
    Nel = N.elements
    coset_of: dict[Perm, int] = {}
    cosets: list[frozenset[Perm]] = []
    for g in G.element_list:
        if g in coset_of:
            continue
        c = frozenset(mul(g, n) for n in Nel)
        idx = len(cosets)
        cosets.append(c)
        for x in c:
            coset_of[x] = idx
    reps = [min(c) for c in cosets]
    gens = [tuple(coset_of[mul(s, r)] for r in reps) for s in G.generators]
    Q = PermGroup(len(cosets), gens, G.cap, name=f"{G.name}/{N.name}" if G.name and N.name else None)
    quo = Quotient(G, N, Q, cosets, coset_of)
    # the coset containing the identity is index 0 because identity is the least element
    return quo


@dataclass
class SemidirectProduct:
    """H x| G on the set H x G, (h1,g1)(h2,g2) = (h1 g1(h2), g1 g2)."""

    group: PermGroup
    pairs: list[tuple[Perm, Perm]]
    index: dict[tuple[Perm, Perm], int]
    H: PermGroup
    G: PermGroup
    action: dict[Perm, dict[Perm, Perm]]

    def element(self, h: Perm, g: Perm) -> Perm:
        """Permutation of (h, g) in the left regular representation."""
        k = self.index
        return tuple(k[self._op((h, g), x)] for x in self.pairs)

    def _op(self, x, y):
        h1, g1 = x
        h2, g2 = y
        return (mul(h1, self.action[g1][h2]), mul(g1, g2))

    def pair_of(self, perm: Perm) -> tuple[Perm, Perm]:
        # left regular: perm applied to the identity pair gives the element
        e = self.index[(self.H.identity, self.G.identity)]
        return self.pairs[perm[e]]

    def embed_H(self, h: Perm) -> Perm:
        return self.element(h, self.G.identity)

    def embed_G(self, g: Perm) -> Perm:
        return self.element(self.H.identity, g)

    def project(self, perm: Perm) -> Perm:
        return self.pair_of(perm)[1]

    @cached_property
    def kernel(self) -> PermGroup:
        return PermGroup(self.group.degree, [self.embed_H(h) for h in self.H.generators], self.group.cap, "H")

    @cached_property
    def complement(self) -> PermGroup:
        return PermGroup(self.group.degree, [self.embed_G(g) for g in self.G.generators], self.group.cap, "G")


def _extend_action(H: PermGroup, G: PermGroup, on_gens: Mapping[Perm, Mapping[Perm, Perm]]) -> dict[Perm, dict[Perm, Perm]]:
    """Extend an action given on generators of G to all of G, checking it."""
    Hel = H.element_list
    for s in G.generators:
        if s not in on_gens:
            raise ActionNotHomomorphic(f"no automorphism given for generator {format_perm(s)}")
        phi = on_gens[s]
        if sorted(phi[h] for h in Hel) != Hel:
            raise ActionNotHomomorphic("generator image is not a bijection of H")
        for a in H.generators:
            for b in Hel:
                if phi[mul(a, b)] != mul(phi[a], phi[b]):
                    raise ActionNotHomomorphic("generator image is not an automorphism of H")
    e = G.identity
    action: dict[Perm, dict[Perm, Perm]] = {e: {h: h for h in Hel}}
    frontier = [e]
    while frontier:
        new = []
        for g in frontier:
            for s in G.generators:
                sg = mul(s, g)
                phi = {h: on_gens[s][action[g][h]] for h in Hel}
                if sg in action:
                    if action[sg] != phi:
                        raise ActionNotHomomorphic("action does not respect relations of G")
                else:
                    action[sg] = phi
                    new.append(sg)
        frontier = new
    return action


def semidirect(
    H: PermGroup,
    G: PermGroup,
    action: Mapping[Perm, Mapping[Perm, Perm]] | Callable[[Perm, Perm], Perm] | None = None,
    cap: int = DEFAULT_CAP,
) -> SemidirectProduct:
    """H x| G for an action of G on H by automorphisms.

    ``action`` maps each generator of G to a dict h -> g(h), or is a callable
    ``(g, h) -> g(h)`` (evaluated on generators only); ``None`` means trivial.
    """
    if H.order * G.order > cap:
        raise CapExceeded(f"|H x| G| = {H.order * G.order} exceeds cap {cap}")
    Hel = H.element_list
    if action is None:
        on_gens = {s: {h: h for h in Hel} for s in G.generators}
    elif callable(action):
        on_gens = {s: {h: action(s, h) for h in Hel} for s in G.generators}
    else:
        on_gens = {tuple(s): dict(v) for s, v in action.items()}
    full = _extend_action(H, G, on_gens)
    pairs = [(h, g) for h in Hel for g in G.element_list]
    index = {x: i for i, x in enumerate(pairs)}
    sd = SemidirectProduct(None, pairs, index, H, G, full)  # type: ignore[arg-type]
    gens = [sd.element(h, G.identity) for h in H.generators] + [sd.element(H.identity, g) for g in G.generators]
    sd.group = PermGroup(len(pairs), gens, cap, name=f"{H.name} x| {G.name}")
    return sd


def conjugation_action(Gamma: PermGroup, H: PermGroup, K: PermGroup) -> dict[Perm, dict[Perm, Perm]]:
    """The action of K <= Gamma on a normal subgroup H by conjugation, on generators of K."""
    return {k: {h: conjugate(k, h) for h in H.element_list} for k in K.generators}


def is_isomorphic(A: PermGroup, B: PermGroup) -> bool:
    return find_isomorphism(A, B) is not None


def find_isomorphism(A: PermGroup, B: PermGroup) -> dict[Perm, Perm] | None:
    """Backtracking search for an isomorphism A -> B (small groups only)."""
    if A.order != B.order:
        return None
    if A.exponent_counts() != B.exponent_counts():
        return None
    gens = _greedy_generators(A.degree, A.generators, A.cap) if A.generators else []
    if not gens:
        return {A.identity: B.identity}
    by_order: dict[int, list[Perm]] = {}
    for b in B.element_list:
        by_order.setdefault(perm_order(b), []).append(b)
    candidates = [by_order.get(perm_order(g), []) for g in gens]
    for images in itertools.product(*candidates):
        hom = _extend_hom(A, gens, images)
        if hom is not None and len(set(hom.values())) == A.order:
            return hom
    return None


def _extend_hom(A: PermGroup, gens: Sequence[Perm], images: Sequence[Perm]) -> dict[Perm, Perm] | None:
    hom = {A.identity: identity(len(images[0]))}
    frontier = [A.identity]
    while frontier:
        new = []
        for x in frontier:
            for g, im in zip(gens, images):
                y = mul(g, x)
                v = mul(im, hom[x])
                if y in hom:
                    if hom[y] != v:
                        return None
                else:
                    hom[y] = v
                    new.append(y)
        frontier = new
    return hom if len(hom) == A.order else None


def extend_homomorphism(A: PermGroup, images: Mapping[Perm, Perm]) -> dict[Perm, Perm]:
    """Extend a map on A.generators to a homomorphism, or raise."""
    gens = list(A.generators)
    if not gens:
        return {A.identity: A.identity}
    hom = _extend_hom(A, gens, [images[g] for g in gens])
    if hom is None:
        raise ActionNotHomomorphic("map on generators does not extend to a homomorphism")
    return hom


def prime_divisors(n: int) -> list[int]:
    return sorted(factorint(n))


def group_summary(G: PermGroup) -> dict:
    return {
        "order": G.order,
        "degree": G.degree,
        "generators": [format_perm(g) for g in G.generators],
    }


def lcm_of_orders(G: PermGroup) -> int:
    return reduce(math.lcm, (perm_order(g) for g in G.elements), 1)
