"""Truncated p-typical Witt vectors over rings of characteristic p.

The universal sum, product and negation polynomials are solved once per
(p, n) from the ghost identities over the integers and memoized; vector
arithmetic evaluates their mod-p reductions on the components.

Coefficient rings are duck-typed: a ``base`` object must expose ``p``,
``zero`` and ``one``, and its elements must support ``+``, ``*``, ``-`` and
integer powers.  :class:`~aswlab.algebra.FiniteField` and
:class:`~aswlab.algebra.CoordinateRing` both qualify.
"""

from __future__ import annotations

import functools
import threading
from dataclasses import dataclass, field
from typing import Any, Sequence

from sympy import ZZ, isprime
from sympy.polys.rings import PolyElement, ring

from .algebra import FiniteField, FqElem
from .errors import CompositeP, InputError, LengthMismatch, RingMismatch

DEFAULT_MAX_LENGTH = 5

Term = tuple[tuple[int, ...], int]


def ghost_polynomial(p: int, k: int, gens: Sequence[PolyElement]) -> PolyElement:
    """w_k(Z) = sum_{j<=k} p^(j-1) Z_j^(p^(k-j)), 1-based k."""
    return sum(p ** (j - 1) * gens[j - 1] ** (p ** (k - j)) for j in range(1, k + 1))


def _solve_ghost(p: int, n: int, target: list[PolyElement]) -> list[PolyElement]:
    # target[k-1] is the ghost value w_k that the unknowns must reproduce
    solved: list[PolyElement] = []
    for k in range(1, n + 1):
        acc = target[k - 1]
        for j in range(1, k):
            acc = acc - p ** (j - 1) * solved[j - 1] ** (p ** (k - j))
        divisor = p ** (k - 1)
        coeffs = {}
        for monom, c in acc.terms():
            q, r = divmod(int(c), divisor)
            if r:
                raise ArithmeticError(f"non-integral Witt structure coefficient at p={p}, k={k}")
            coeffs[monom] = q
        solved.append(acc.ring.from_dict(coeffs) if coeffs else acc.ring.zero)
    return solved


def _mod_p_terms(poly: PolyElement, p: int) -> tuple[Term, ...]:
    out = []
    for monom, c in poly.terms():
        r = int(c) % p
        if r:
            out.append((tuple(monom), r))
    out.sort()
    return tuple(out)


@dataclass(eq=False)
class WittStructureCache:
    """Integral structure polynomials of W_n for one prime.

    ``sum_polys[k]`` and ``prod_polys[k]`` live in Z[X_1..X_n, Y_1..Y_n];
    ``neg_polys[k]`` in Z[X_1..X_n].  The mod-p term lists are what vector
    arithmetic actually evaluates.
    """

    p: int
    n: int
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)
    _memo: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.ring2, *gens = ring(
            [f"X{i}" for i in range(1, self.n + 1)] + [f"Y{i}" for i in range(1, self.n + 1)], ZZ
        )
        self.X = gens[: self.n]
        self.Y = gens[self.n :]
        self.ring1, *self.Z = ring([f"X{i}" for i in range(1, self.n + 1)], ZZ)

    def _get(self, key, build):
        with self._lock:
            if key in self._memo:
                return self._memo[key]
        value = build()
        with self._lock:
            return self._memo.setdefault(key, value)

    @property
    def sum_polys(self) -> list[PolyElement]:
        p, n = self.p, self.n
        return self._get(
            "sum",
            lambda: _solve_ghost(
                p, n, [ghost_polynomial(p, k, self.X) + ghost_polynomial(p, k, self.Y) for k in range(1, n + 1)]
            ),
        )

    @property
    def prod_polys(self) -> list[PolyElement]:
        p, n = self.p, self.n
        return self._get(
            "prod",
            lambda: _solve_ghost(
                p, n, [ghost_polynomial(p, k, self.X) * ghost_polynomial(p, k, self.Y) for k in range(1, n + 1)]
            ),
        )

    @property
    def neg_polys(self) -> list[PolyElement]:
        p, n = self.p, self.n
        return self._get(
            "neg", lambda: _solve_ghost(p, n, [-ghost_polynomial(p, k, self.Z) for k in range(1, n + 1)])
        )

    @property
    def sum_mod(self) -> tuple[tuple[Term, ...], ...]:
        return self._get("sum_mod", lambda: tuple(_mod_p_terms(s, self.p) for s in self.sum_polys))

    @property
    def prod_mod(self) -> tuple[tuple[Term, ...], ...]:
        return self._get("prod_mod", lambda: tuple(_mod_p_terms(s, self.p) for s in self.prod_polys))

    @property
    def neg_mod(self) -> tuple[tuple[Term, ...], ...]:
        return self._get("neg_mod", lambda: tuple(_mod_p_terms(s, self.p) for s in self.neg_polys))


_cache_lock = threading.Lock()
_caches: dict[tuple[int, int], WittStructureCache] = {}


def build_structure_cache(p: int, n: int) -> WittStructureCache:
    """Return the (memoized) structure cache for W_n over characteristic p."""
    if not isprime(p):
        raise CompositeP(f"{p} is not prime")
    if n < 1:
        raise InputError("Witt length must be >= 1")
    key = (p, n)
    cache = _caches.get(key)
    if cache is None:
        cache = WittStructureCache(p, n)
        with _cache_lock:
            _caches[key] = cache
    return cache


def _evaluate(terms: tuple[Term, ...], values: Sequence[Any], zero: Any, powers: dict) -> Any:
    total = zero
    for monom, c in terms:
        prod = None
        for idx, e in enumerate(monom):
            if not e:
                continue
            key = (idx, e)
            pw = powers.get(key)
            if pw is None:
                pw = values[idx] ** e
                powers[key] = pw
            prod = pw if prod is None else prod * pw
        if prod is None:
            prod = zero + c
        elif c != 1:
            prod = prod * c
        total = total + prod
    return total


def _evaluate_encoded(terms: tuple[Term, ...], values: Sequence[int], F: FiniteField, powers: dict) -> int:
    """Same as :func:`_evaluate` on the integer encodings of finite-field elements."""
    if F.m == 1:
        p = F.p
        total = 0
        for monom, c in terms:
            prod = c
            for idx, e in enumerate(monom):
                if e:
                    key = (idx, e)
                    pw = powers.get(key)
                    if pw is None:
                        pw = powers[key] = pow(values[idx], e, p)
                    prod = prod * pw % p
            total += prod
        return total % p
    add, mul = F.add, F.mul
    total = 0
    for monom, c in terms:
        prod = c  # an element of the prime field encodes as itself
        for idx, e in enumerate(monom):
            if e:
                key = (idx, e)
                pw = powers.get(key)
                if pw is None:
                    pw = powers[key] = F.pow(values[idx], e)
                prod = mul(prod, pw)
        total = add(total, prod)
    return total


def _evaluate_all(base: Any, table, values: Sequence[Any]) -> list[Any]:
    powers: dict = {}
    if isinstance(base, FiniteField):
        ints = [v.value for v in values]
        return [FqElem(base, _evaluate_encoded(t, ints, base, powers)) for t in table]
    zero = base.zero
    return [_evaluate(t, values, zero, powers) for t in table]


def _pth_power(a: Any, p: int) -> Any:
    frob = getattr(a, "frobenius", None)
    return frob() if frob is not None else a**p


class WittVector:
    """An element (a_1, ..., a_n) of W_n(R), R of characteristic p."""

    __slots__ = ("base", "components", "p", "_hash")

    def __init__(self, base: Any, components: Sequence[Any]):
        self.base = base
        self.p = base.p
        self.components = tuple(base.zero + c if isinstance(c, int) else c for c in components)
        if not self.components:
            raise InputError("Witt vectors need length >= 1")
        self._hash = None

    @classmethod
    def zero(cls, base: Any, n: int) -> WittVector:
        return cls(base, [base.zero] * n)

    @classmethod
    def one(cls, base: Any, n: int) -> WittVector:
        return cls(base, [base.one] + [base.zero] * (n - 1))

    @classmethod
    def teichmuller(cls, base: Any, a: Any, n: int, position: int = 0) -> WittVector:
        """V^position [a], i.e. a single nonzero component at ``position``."""
        comps = [base.zero] * n
        comps[position] = a
        return cls(base, comps)

    @property
    def n(self) -> int:
        return len(self.components)

    @property
    def cache(self) -> WittStructureCache:
        return build_structure_cache(self.p, self.n)

    def _check(self, other: WittVector) -> None:
        if not isinstance(other, WittVector):
            raise TypeError("Witt vector expected")
        if other.n != self.n:
            raise LengthMismatch(f"lengths {self.n} and {other.n}")
        if other.base is not self.base and other.base != self.base:
            raise RingMismatch("Witt vectors over different rings")

    def _binary(self, other: WittVector, table) -> WittVector:
        self._check(other)
        return WittVector(self.base, _evaluate_all(self.base, table, self.components + other.components))

    def __add__(self, other: WittVector) -> WittVector:
        if self.is_zero():
            self._check(other)
            return other
        if other.is_zero():
            self._check(other)
            return self
        return self._binary(other, self.cache.sum_mod)

    def __mul__(self, other: WittVector) -> WittVector:
        return self._binary(other, self.cache.prod_mod)

    def __neg__(self) -> WittVector:
        if self.p != 2:
            return WittVector(self.base, [-c for c in self.components])
        return WittVector(self.base, _evaluate_all(self.base, self.cache.neg_mod, self.components))

    def __sub__(self, other: WittVector) -> WittVector:
        return self + (-other)

    def scalar_multiple(self, k: int) -> WittVector:
        """k-fold sum (k an integer, possibly negative)."""
        if k < 0:
            return (-self).scalar_multiple(-k)
        result = WittVector.zero(self.base, self.n)
        base = self
        while k:
            if k & 1:
                result = result + base
            k >>= 1
            if k:
                base = base + base
        return result

    def __pow__(self, e: int) -> WittVector:
        result = WittVector.one(self.base, self.n)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def frobenius(self) -> WittVector:
        return WittVector(self.base, [_pth_power(c, self.p) for c in self.components])

    def verschiebung(self) -> WittVector:
        return WittVector(self.base, [self.base.zero, *self.components])

    def p_map(self) -> WittVector:
        return self.frobenius() - self

    def truncate(self, k: int) -> WittVector:
        return WittVector(self.base, self.components[:k])

    def is_zero(self) -> bool:
        return not any(self.components)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, WittVector)
            and other.n == self.n
            and other.components == self.components
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.components)
        return self._hash

    def __repr__(self) -> str:
        return "(" + ", ".join(repr(c) for c in self.components) + ")"


def witt_add(u: WittVector, v: WittVector) -> WittVector:
    return u + v


def witt_mul(u: WittVector, v: WittVector) -> WittVector:
    return u * v


def witt_neg(u: WittVector) -> WittVector:
    return -u


def frobenius(u: WittVector) -> WittVector:
    """Componentwise p-th power (a_1, ..., a_n) -> (a_1^p, ..., a_n^p)."""
    return u.frobenius()


def verschiebung(u: WittVector) -> WittVector:
    """(a_1, ..., a_n) -> (0, a_1, ..., a_n), a vector of length n + 1."""
    return u.verschiebung()


def p_map(u: WittVector) -> WittVector:
    """The Artin-Schreier-Witt operator F(u) - u, with Witt subtraction."""
    return u.p_map()


@functools.cache
def witt_fp_elements(p: int, n: int) -> tuple[WittVector, ...]:
    """All p^n elements of W_n(F_p) in lexicographic component order."""
    import itertools

    from .algebra import GF

    F = GF(p)
    return tuple(
        WittVector(F, [F(c) for c in comps]) for comps in itertools.product(range(p), repeat=n)
    )
