"""Artin-Schreier-Witt invariants of A = F_q[x, 1/h].

Elements of A are handled through their partial-fraction expansion: a
polynomial part in x plus principal parts in (x - r_i)^(-1) at the roots r_i
of h.  A *term key* ``(place, j)`` names the monomial x^j when ``place == 0``
and (x - r_{place-1})^(-j) otherwise; ``(0, 0)`` is the constant.

A component is *reduced* when it has no term of the shape c * u^(p j) with
j >= 1 (u = x or (x - r)^(-1)); in geometric mode it also has no constant
term.  Every class of W_n(A)/P(W_n(A)) (modulo constants in geometric mode)
has exactly one reduced representative, and :func:`reduce_representative`
computes it.

The infinite group W_n(A)/P(W_n(A)) is probed through windows: Win(d) is the
span of 1, x^j and (x - r_i)^(-j) for 1 <= j <= d, and the truncated
cokernel at level n is the subgroup generated by the classes V^i [c u] for
monomials u of Win(d).
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .algebra import ARITHMETIC, GEOMETRIC, CoordinateRing, FiniteField, RingElem, format_partial_fractions
from .errors import CapExceeded, InputError, NotInWindow, RingMismatch
from .witt import DEFAULT_MAX_LENGTH, WittVector

TermKey = tuple[int, int]


@dataclass(frozen=True)
class Window:
    """Degree bound d at infinity and pole-order bound d at each root of h."""

    d: int

    def __post_init__(self):
        if self.d < 0:
            raise InputError("window degree must be >= 0")

    def dimension(self, ring: CoordinateRing) -> int:
        return 1 + self.d * (1 + len(ring.roots))

    def monomials(self, ring: CoordinateRing) -> list[TermKey]:
        keys = [(0, 0)] + [(0, j) for j in range(1, self.d + 1)]
        for i in range(len(ring.roots)):
            keys.extend((i + 1, j) for j in range(1, self.d + 1))
        return keys


# ---------------------------------------------------------------------------
# term-level helpers
# ---------------------------------------------------------------------------


def element_terms(a: RingElem) -> dict[TermKey, int]:
    poly, poles = a.partial_fractions()
    terms = {(0, j): c for j, c in poly.items()}
    for i, part in enumerate(poles):
        for j, c in part.items():
            terms[(i + 1, j)] = c
    return terms


def element_from_terms(ring: CoordinateRing, terms: dict[TermKey, int]) -> RingElem:
    poly = {}
    poles: list[dict[int, int]] = [{} for _ in ring.roots]
    for (place, j), c in terms.items():
        if not c:
            continue
        if place == 0:
            poly[j] = c
        else:
            poles[place - 1][j] = c
    return ring.from_partial_fractions(poly, poles)


def monomial(ring: CoordinateRing, key: TermKey, c: int = 1) -> RingElem:
    place, j = key
    if place == 0:
        return ring.x_power(c, j)
    return ring.pole(place - 1, j, c)


def format_element(a: RingElem) -> str:
    poly, poles = a.partial_fractions()
    return format_partial_fractions(a.ring, poly, poles)


def format_vector(w: WittVector) -> str:
    if w.n == 1:
        return format_element(w.components[0])
    return "(" + ", ".join(format_element(c) for c in w.components) + ")"


def _weighted_degree(terms: dict[TermKey, int]) -> int:
    return max((j for (_, j) in terms), default=0)


def witt_vector(ring: CoordinateRing, components: Sequence) -> WittVector:
    return WittVector(ring, [ring(c) for c in components])


@functools.cache
def _constant_split_table(field: FiniteField) -> tuple[dict[int, int], dict[int, int]]:
    """Canonical representatives of F_q / {a^p - a}.

    Returns (rep, pre) with rep[c] the least encoding in the coset of c and
    pre[t] some a with a^p - a = t for every t in the image.
    """
    p = field.p
    pre: dict[int, int] = {}
    for a in range(field.q):
        t = field.sub(field.pow(a, p), a)
        pre.setdefault(t, a)
    rep: dict[int, int] = {}
    for c in range(field.q):
        if c in rep:
            continue
        coset = [field.add(c, t) for t in pre]
        least = min(coset)
        for e in coset:
            rep[e] = least
    return rep, pre


def constant_split(field: FiniteField, c: int) -> tuple[int, int]:
    """Return (v, r) with c = v^p - v + r and r canonical in F_q / P(F_q)."""
    rep, pre = _constant_split_table(field)
    r = rep[c]
    return pre[field.sub(c, r)], r


# ---------------------------------------------------------------------------
# reduction to canonical coset representatives
# ---------------------------------------------------------------------------


def _p_map_shifted(ring: CoordinateRing, b: RingElem, n: int, position: int) -> WittVector:
    # P(V^position [b]) = V^position P([b]) in W_n
    short = WittVector.teichmuller(ring, b, n - position).p_map()
    return WittVector(ring, [ring.zero] * position + list(short.components))


def reduce_representative(
    w: WittVector,
    ring: CoordinateRing | None = None,
    window: Window | int | None = None,
) -> WittVector:
    """Canonical representative of the class of w in W_n(A)/P(W_n(A)).

    Component by component, every term c * u^(p j) is traded for
    frobenius_root(c) * u^j by subtracting P(V^(i-1) [...]); this touches
    only components >= i.  Constants are then removed (geometric mode) or
    reduced modulo P(F_q) (arithmetic mode).  With a window d, component i
    may not exceed weighted degree n * d * p^i at any place.
    """
    ring = ring or w.base
    if w.base != ring:
        raise RingMismatch("vector is not over the given ring")
    if isinstance(window, int):
        window = Window(window)
    F, p, n = ring.field, ring.p, w.n
    for i in range(n):
        if window is not None:
            bound = n * max(window.d, 1) * p ** (i + 1)
            deg = _weighted_degree(element_terms(w.components[i]))
            if deg > bound:
                raise NotInWindow(f"component {i + 1} has degree {deg} > working bound {bound}")
        while True:
            terms = element_terms(w.components[i])
            offending = {
                (place, j // p): F.frobenius_root(c)
                for (place, j), c in terms.items()
                if j and j % p == 0
            }
            if not offending:
                break
            b = element_from_terms(ring, offending)
            w = w - _p_map_shifted(ring, b, n, i)
        c = element_terms(w.components[i]).get((0, 0), 0)
        if c:
            if ring.mode == GEOMETRIC:
                w = w - WittVector.teichmuller(ring, ring.const(c), n, i)
            else:
                v, _ = constant_split(F, c)
                if v:
                    w = w - _p_map_shifted(ring, ring.const(v), n, i)
    return w


def is_reduced(w: WittVector) -> bool:
    ring = w.base
    for comp in w.components:
        for (place, j), c in element_terms(comp).items():
            if j and j % ring.p == 0:
                return False
            if j == 0 and ring.mode == GEOMETRIC:
                return False
            if j == 0 and ring.mode == ARITHMETIC and constant_split(ring.field, c)[0]:
                return False
    return True


# ---------------------------------------------------------------------------
# finite subgroups of W_n(A)/P(W_n(A))
# ---------------------------------------------------------------------------


@dataclass
class _Pivot:
    col: tuple
    vec: dict
    element: WittVector
    neg_multiples: list  # neg_multiples[c] = reduced -(c * element)


class FilteredSubgroup:
    """Subgroup of W_n(A)/P(W_n(A)) generated by given vectors.

    Elements are tracked through reduced representatives.  For a reduced
    nonzero class g let lead(g) be its first nonzero component, viewed as an
    F_p-vector of coefficients.  lead is additive on classes that share the
    same first nonzero position, so Gaussian elimination level by level
    computes the leading spaces L_1 <= L_2 <= ... <= L_n.  Multiplication by
    p is V o F, which shifts a class one level deeper without changing its
    leading vector, hence the number of Z/p^e summands is
    dim L_(n-e+1) - dim L_(n-e).
    """

    def __init__(self, ring: CoordinateRing, n: int, window: Window | None = None):
        self.ring = ring
        self.n = n
        self.window = window
        self.pivots: list[list[_Pivot]] = [[] for _ in range(n)]
        self.fresh: list[tuple[int, WittVector]] = []  # (level, generator)
        self._queues: list[list[tuple[WittVector, bool]]] = [[] for _ in range(n)]
        self._level = 0

    def _reduce(self, w: WittVector) -> WittVector:
        return reduce_representative(w, self.ring, self.window)

    def _lead(self, w: WittVector, level: int) -> dict:
        F = self.ring.field
        vec = {}
        for key, c in element_terms(w.components[level]).items():
            for t, digit in enumerate(F.coords(c)):
                if digit:
                    vec[(key, t)] = digit
        return vec

    def _enqueue(self, w: WittVector, pmultiple: bool, reduced: bool = False) -> None:
        if not reduced:
            w = self._reduce(w)
        for level, comp in enumerate(w.components):
            if comp:
                if level < self._level:
                    raise AssertionError("class moved to an already processed level")
                self._queues[level].append((w, pmultiple))
                return

    def add_generators(self, gens: Iterable[WittVector]) -> None:
        if self._level:
            raise RuntimeError("generators must be added before build()")
        for g in gens:
            self._enqueue(g, False)

    def build(self) -> FilteredSubgroup:
        p = self.ring.p
        for level in range(self.n):
            self._level = level
            queue = self._queues[level]
            queue.sort(key=lambda item: not item[1])  # p-multiples first, stable otherwise
            for w, pmultiple in queue:
                vec = self._lead(w, level)
                for piv in self.pivots[level]:
                    c = vec.get(piv.col)
                    if c:
                        w = self._reduce(w + piv.neg_multiples[c])
                        merged = {k: (vec.get(k, 0) - c * piv.vec.get(k, 0)) % p for k in vec.keys() | piv.vec.keys()}
                        vec = {k: v for k, v in merged.items() if v}
                if not vec:
                    if w.components[level]:
                        raise AssertionError("leading vector vanished but component did not")
                    self._enqueue(w, False, reduced=True)
                    continue
                col = min(vec)
                scale = pow(vec[col], -1, p)
                if scale != 1:
                    w = self._reduce(w.scalar_multiple(scale))
                    vec = {k: (v * scale) % p for k, v in vec.items()}
                negs = [None] + [self._reduce(-(w.scalar_multiple(c))) for c in range(1, p)]
                self.pivots[level].append(_Pivot(col, vec, w, negs))
                self.pivots[level].sort(key=lambda pv: pv.col)
                if not pmultiple:
                    self.fresh.append((level, w))
                if level + 1 < self.n:
                    shifted = WittVector(self.ring, [self.ring.zero] + [c.frobenius() for c in w.components[:-1]])
                    self._enqueue(shifted, True)
        self._level = self.n
        return self

    @property
    def leading_dims(self) -> list[int]:
        return [len(level) for level in self.pivots]

    @property
    def order(self) -> int:
        return self.ring.p ** sum(self.leading_dims)

    def exponents(self) -> list[int]:
        """Exponents e with summands Z/p^e, largest first."""
        return sorted((self.n - level for level, _ in self.fresh), reverse=True)


@dataclass
class CokernelStructure:
    """The truncated quotient presented as a sum of cyclic p-groups."""

    ring: CoordinateRing
    n: int
    window: Window
    orders: list[int]
    generators: list[WittVector]
    leading_dims: list[int] = field(default_factory=list)

    @property
    def p(self) -> int:
        return self.ring.p

    @property
    def order(self) -> int:
        total = 1
        for o in self.orders:
            total *= o
        return total

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def invariant_factors(self) -> list[int]:
        return sorted(self.orders)

    def killed_by(self, k: int) -> int:
        """Number of classes x with p^k x = 0."""
        total = 1
        for o in self.orders:
            total *= min(o, self.p**k)
        return total

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "invariant_factors": self.invariant_factors,
            "orders": self.orders,
            "generators": [format_vector(g) for g in self.generators],
            "leading_dims": self.leading_dims,
        }


def window_generators(ring: CoordinateRing, n: int, window: Window) -> list[WittVector]:
    """Monomial generators V^i [c u] of the truncated cokernel.

    u runs over the monomials of Win(d) and c over an F_p-basis of F_q.
    Teichmuller lifts of scalar multiples of one monomial differ only by
    terms in u^(p^k), which reduce back into this span.
    """
    F = ring.field
    basis = [F.pow(F.gen.value, t) if F.m > 1 else 1 for t in range(F.m)]
    return [
        WittVector.teichmuller(ring, monomial(ring, key, c), n, i)
        for i in range(n)
        for key in window.monomials(ring)
        for c in basis
    ]


def subgroup_from_generators(
    ring: CoordinateRing, n: int, gens: Iterable[WittVector], window: Window | None = None
) -> FilteredSubgroup:
    sub = FilteredSubgroup(ring, n, window)
    sub.add_generators(gens)
    return sub.build()


def _structure(ring, n, window, sub: FilteredSubgroup) -> CokernelStructure:
    p = ring.p
    fresh = sorted(sub.fresh, key=lambda item: item[0])
    return CokernelStructure(
        ring=ring,
        n=n,
        window=window,
        orders=[p ** (n - level) for level, _ in fresh],
        generators=[g for _, g in fresh],
        leading_dims=sub.leading_dims,
    )


def _check_length(n: int) -> None:
    if n < 1:
        raise InputError("Witt length must be >= 1")
    if n > DEFAULT_MAX_LENGTH:
        raise CapExceeded(f"Witt length {n} exceeds the supported maximum {DEFAULT_MAX_LENGTH}")


def cokernel_basis(ring: CoordinateRing, n: int, win: Window | int) -> CokernelStructure:
    """Structure of the subgroup of W_n(A)/P(W_n(A)) spanned by Win(d)^n."""
    _check_length(n)
    window = Window(win) if isinstance(win, int) else win
    sub = subgroup_from_generators(ring, n, window_generators(ring, n, window), window)
    return _structure(ring, n, window, sub)


@dataclass
class CoverCount:
    total: int
    surjective: int

    def to_json(self) -> dict:
        return {"total": self.total, "surjective": self.surjective}


def count_cyclic_covers(ring: CoordinateRing, n: int, win: Window | int) -> CoverCount:
    """Homomorphisms to Z/p^n visible in the window, and how many are onto."""
    structure = cokernel_basis(ring, n, win)
    total = structure.order
    return CoverCount(total, total - structure.killed_by(n - 1))


def verschiebung_embedding_check(ring: CoordinateRing, n: int, win: Window | int) -> dict:
    """Check that V descends from level n to level n + 1 on the window.

    Reports violations (expected empty) and whether the induced map on the
    truncated groups is injective, without assuming it.
    """
    _check_length(n + 1)
    window = Window(win) if isinstance(win, int) else win
    lower = cokernel_basis(ring, n, window)
    violations = []
    images = []
    for g in lower.generators:
        vg = g.verschiebung()
        if reduce_representative(vg, ring) != vg:
            violations.append({"generator": format_vector(g), "problem": "image not reduced"})
        images.append(vg)
    gens = lower.generators
    for a, b in itertools.combinations_with_replacement(range(len(gens)), 2):
        lhs = reduce_representative(reduce_representative(gens[a] + gens[b], ring).verschiebung(), ring)
        rhs = reduce_representative(images[a] + images[b], ring)
        if lhs != rhs:
            violations.append(
                {"generator": f"{format_vector(gens[a])} + {format_vector(gens[b])}", "problem": "not additive"}
            )
    image = subgroup_from_generators(ring, n + 1, images)
    return {
        "level": n,
        "level_order": lower.order,
        "image_order": image.order,
        "injective": image.order == lower.order,
        "violations": violations,
        "images": [format_vector(v) for v in images],
    }


@dataclass
class AbelianizationReport:
    genus: int
    punctures: int
    prime_to_p_rank: int
    p_part: list[CokernelStructure]

    def to_json(self) -> dict:
        return {
            "genus": self.genus,
            "punctures": self.punctures,
            "prime_to_p_rank": self.prime_to_p_rank,
            "p_part": {str(s.n): s.to_json() for s in self.p_part},
        }


def prime_to_p_rank(genus: int, punctures: int) -> int:
    """Free rank 2g + r - 1 of the prime-to-p abelianization."""
    if genus < 0 or punctures < 1:
        raise InputError("need genus >= 0 and at least one puncture")
    return 2 * genus + punctures - 1


def abelianization_report(g: int, ring: CoordinateRing, n: int, win: Window | int) -> AbelianizationReport:
    """Tame rank from the genus/puncture formula plus the p-part at levels 1..n.

    The p-part is always computed for ``ring`` itself (P^1 minus deg(h) + 1
    points); ``g`` only enters the tame rank.
    """
    r = ring.num_punctures
    return AbelianizationReport(
        genus=g,
        punctures=r,
        prime_to_p_rank=prime_to_p_rank(g, r),
        p_part=[cokernel_basis(ring, k, win) for k in range(1, n + 1)],
    )
