"""Finite embedding problems: split reduction, induction on the kernel, and
the quotient criterion for fundamental groups of affine curves.

An embedding problem is recorded by its finite data only: a surjection
alpha: Gamma -> G with kernel H (the profinite source is never represented).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

from .errors import (
    CapExceeded,
    InputError,
    NotMinimalNormal,
    NotNormal,
    NotSubgroup,
    NotSurjectiveOnGp,
)
from .groups import (
    PermGroup,
    Perm,
    SemidirectProduct,
    conjugacy_classes,
    conjugation_action,
    extend_homomorphism,
    format_perm,
    is_perfect,
    is_quasi_p,
    min_generators,
    mul,
    normal_closure,
    perm_order,
    quasi_p_part,
    quotient_group,
    semidirect,
)

CASE1 = "Case1"  # quasi-p perfect
CASE2 = "Case2"  # elementary abelian p-group
CASE3 = "Case3"  # prime to p


@dataclass
class EmbeddingProblem:
    """A surjection alpha: Gamma -> G with kernel H, optionally split."""

    Gamma: PermGroup
    G: PermGroup
    alpha: dict[Perm, Perm]
    H: PermGroup
    split_witness: dict[Perm, Perm] | None = None

    @classmethod
    def from_images(
        cls, Gamma: PermGroup, G: PermGroup, images: Mapping[Perm, Perm], split_witness=None
    ) -> EmbeddingProblem:
        """Build alpha from its values on the generators of Gamma."""
        alpha = extend_homomorphism(Gamma, dict(images))
        if set(alpha.values()) != set(G.elements):
            raise InputError("alpha is not onto G")
        kernel = [g for g, a in alpha.items() if a == G.identity]
        H = PermGroup.from_elements(Gamma.degree, kernel, Gamma.cap, name="H")
        ep = cls(Gamma, G, alpha, H, split_witness)
        ep.validate()
        return ep

    @classmethod
    def from_normal_subgroup(cls, Gamma: PermGroup, N: PermGroup) -> EmbeddingProblem:
        """The problem Gamma -> Gamma/N."""
        quo = quotient_group(Gamma, N)
        alpha = {g: quo.project(g) for g in Gamma.element_list}
        return cls(Gamma, quo.group, alpha, N)

    def validate(self) -> None:
        e = self.G.identity
        for a in self.Gamma.generators:
            for b in self.Gamma.element_list:
                if self.alpha[mul(a, b)] != mul(self.alpha[a], self.alpha[b]):
                    raise InputError("alpha is not a homomorphism")
        if set(self.alpha.values()) != set(self.G.elements):
            raise InputError("alpha is not onto G")
        kernel = {g for g, a in self.alpha.items() if a == e}
        if kernel != set(self.H.elements):
            raise InputError("H is not the kernel of alpha")
        if self.split_witness is not None:
            for g in self.G.element_list:
                if self.alpha[self.split_witness[g]] != g:
                    raise InputError("split witness is not a section of alpha")

    @property
    def is_split(self) -> bool:
        return self.split_witness is not None

    def summary(self) -> dict:
        return {"Gamma_order": self.Gamma.order, "G_order": self.G.order, "H_order": self.H.order}


# ---------------------------------------------------------------------------
# split reduction
# ---------------------------------------------------------------------------


@dataclass
class SplitReduction:
    """The split problem Gamma' = H x| Gp -> Gp together with beta: Gamma' -> Gamma.

    ``problem`` has kernel H x {e} and section g -> (e, g); ``beta`` sends
    (h, g) to h g, and ``to_G`` is alpha restricted to Gp, so that
    alpha o beta = to_G o (projection to Gp).
    """

    original: EmbeddingProblem
    Gp: PermGroup
    product: SemidirectProduct
    problem: EmbeddingProblem
    beta: dict[Perm, Perm]
    to_G: dict[Perm, Perm]

    def beta_is_surjective(self) -> bool:
        return set(self.beta.values()) == set(self.original.Gamma.elements)

    def beta_is_bijective(self) -> bool:
        return self.beta_is_surjective() and len(self.beta) == self.original.Gamma.order

    def square_commutes(self) -> bool:
        alpha = self.original.alpha
        proj = self.problem.alpha
        return all(alpha[self.beta[x]] == self.to_G[proj[x]] for x in self.product.group.element_list)

    def certificate(self) -> dict:
        return {
            "Gamma_prime_order": self.product.group.order,
            "beta_surjective": self.beta_is_surjective(),
            "beta_bijective": self.beta_is_bijective(),
            "square_commutes": self.square_commutes(),
        }


def splitify(ep: EmbeddingProblem, Gp: PermGroup) -> SplitReduction:
    """Replace ep by the split problem H x| Gp -> Gp (Gp acting by conjugation)."""
    if not Gp.is_subgroup_of(ep.Gamma):
        raise NotSubgroup("Gp is not a subgroup of Gamma")
    if {ep.alpha[g] for g in Gp.elements} != set(ep.G.elements):
        raise NotSurjectiveOnGp("alpha restricted to Gp is not onto G")
    H = ep.H
    sd = semidirect(H, Gp, conjugation_action(ep.Gamma, H, Gp), cap=ep.Gamma.cap)
    Gprime = sd.group
    beta = {}
    proj = {}
    for x in Gprime.element_list:
        h, g = sd.pair_of(x)
        beta[x] = mul(h, g)
        proj[x] = g
    kernel = PermGroup(Gprime.degree, [sd.embed_H(h) for h in H.generators], Gprime.cap, name="H")
    section = {g: sd.embed_G(g) for g in Gp.element_list}
    problem = EmbeddingProblem(Gprime, Gp, proj, kernel, section)
    to_G = {g: ep.alpha[g] for g in Gp.element_list}
    return SplitReduction(ep, Gp, sd, problem, beta, to_G)


# ---------------------------------------------------------------------------
# induction on |H|
# ---------------------------------------------------------------------------


def _normal_closures_in(Gamma: PermGroup, H: PermGroup) -> list[PermGroup]:
    """Distinct Gamma-normal closures of the nontrivial elements of H."""
    found: dict[frozenset, PermGroup] = {}
    seen: set[Perm] = set()
    for cls in conjugacy_classes(Gamma):
        g = min(cls)
        if g == Gamma.identity or g not in H.elements or g in seen:
            continue
        seen |= cls
        N = normal_closure(Gamma, [g])
        found.setdefault(N.elements, N)
    return sorted(found.values(), key=lambda N: (N.order, N.element_list))


def is_minimal_normal_in(H: PermGroup, Gamma: PermGroup) -> bool:
    if H.order == 1 or not H.is_normal_in(Gamma):
        return False
    return all(N.order == H.order for N in _normal_closures_in(Gamma, H))


def smallest_normal_subgroup_in(Gamma: PermGroup, H: PermGroup) -> PermGroup | None:
    """Smallest proper nontrivial Gamma-normal subgroup of H (ties: least element list).

    A normal subgroup of least order is minimal normal, hence the normal
    closure of any of its nontrivial elements, so closures suffice.
    """
    for N in _normal_closures_in(Gamma, H):
        if N.order < H.order:
            return N
    return None


@dataclass
class KernelClass:
    case: str
    order: int
    simple_order: int
    multiplicity: int
    certificate: dict = field(default_factory=dict)


def classify_kernel(H: PermGroup, Gamma: PermGroup, p: int) -> KernelClass:
    """Classify a minimal normal subgroup H of Gamma with respect to p.

    Case1: H perfect and quasi-p; Case2: H elementary abelian p-group;
    Case3: |H| prime to p.  Exactly one applies to a minimal normal subgroup.
    """
    if not is_minimal_normal_in(H, Gamma):
        raise NotMinimalNormal("H is not a minimal normal subgroup of Gamma")
    from .groups import decompose_characteristically_simple

    s, m, abelian = decompose_characteristically_simple(H)
    perfect = (not abelian) and is_perfect(H)
    quasi = is_quasi_p(H, p)
    elem_ab_p = abelian and s == p
    prime_to_p = math.gcd(H.order, p) == 1
    flags = {CASE1: perfect and quasi, CASE2: elem_ab_p, CASE3: prime_to_p}
    hits = [c for c, v in flags.items() if v]
    if len(hits) != 1:
        raise AssertionError(f"trichotomy failed: {flags}")
    return KernelClass(
        hits[0], H.order, s, m,
        {"perfect": perfect, "quasi_p": quasi, "elementary_abelian_p": elem_ab_p, "prime_to_p": prime_to_p},
    )


@dataclass
class ReductionNode:
    problem: EmbeddingProblem
    depth: int
    children: list[ReductionNode] = field(default_factory=list)
    H1: PermGroup | None = None
    leaf: KernelClass | None = None

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def leaves(self) -> list[ReductionNode]:
        if self.is_leaf:
            return [self]
        return [leaf for child in self.children for leaf in child.leaves()]

    def depth_max(self) -> int:
        return max([self.depth] + [c.depth_max() for c in self.children])

    def to_json(self) -> dict:
        out = {"kernel_order": self.problem.H.order, "Gamma_order": self.problem.Gamma.order}
        if self.leaf is not None:
            out["case"] = self.leaf.case
            out["decomposition"] = {"simple_order": self.leaf.simple_order, "multiplicity": self.leaf.multiplicity}
        if self.H1 is not None:
            out["H1_order"] = self.H1.order
        if self.children:
            out["children"] = [c.to_json() for c in self.children]
        return out


@dataclass
class ReductionTree:
    root: ReductionNode
    p: int

    def leaves(self) -> list[ReductionNode]:
        return self.root.leaves()

    def leaf_cases(self) -> list[str]:
        return [leaf.leaf.case for leaf in self.leaves() if leaf.leaf is not None]

    def leaf_order_product(self) -> int:
        return math.prod(leaf.problem.H.order for leaf in self.leaves())

    def depth(self) -> int:
        return self.root.depth_max()

    def to_json(self) -> dict:
        return {"p": self.p, "root": self.root.to_json(), "leaf_cases": self.leaf_cases(),
                "leaf_order_product": self.leaf_order_product(), "depth": self.depth()}


def _quotient_problem(ep: EmbeddingProblem, H1: PermGroup) -> tuple[EmbeddingProblem, EmbeddingProblem]:
    Gamma = ep.Gamma
    quo = quotient_group(Gamma, H1)
    Q = quo.group
    # Gamma/H1 -> G, kernel H/H1
    alpha1: dict[Perm, Perm] = {}
    for g in Gamma.element_list:
        alpha1.setdefault(quo.project(g), ep.alpha[g])
    kernel1 = PermGroup.from_elements(Q.degree, {quo.project(h) for h in ep.H.elements}, Q.cap, name="H/H1")
    upper = EmbeddingProblem(Q, ep.G, alpha1, kernel1)
    # Gamma -> Gamma/H1, kernel H1
    lower = EmbeddingProblem(Gamma, Q, {g: quo.project(g) for g in Gamma.element_list}, H1)
    return upper, lower


def reduction_tree(ep: EmbeddingProblem, p: int) -> ReductionTree:
    """Split ep along Gamma-normal subgroups of H until every kernel is minimal normal."""

    def build(problem: EmbeddingProblem, depth: int) -> ReductionNode:
        node = ReductionNode(problem, depth)
        if problem.H.order == 1:
            return node
        H1 = smallest_normal_subgroup_in(problem.Gamma, problem.H)
        if H1 is None:
            node.leaf = classify_kernel(problem.H, problem.Gamma, p)
            return node
        node.H1 = H1
        upper, lower = _quotient_problem(problem, H1)
        node.children = [build(upper, depth + 1), build(lower, depth + 1)]
        return node

    if not ep.H.is_normal_in(ep.Gamma):
        raise NotNormal("kernel is not normal")
    return ReductionTree(build(ep, 0), p)


# ---------------------------------------------------------------------------
# quotient criterion
# ---------------------------------------------------------------------------


@dataclass
class AbhyankarCheck:
    accepted: bool
    bound: int
    quotient_order: int
    quasi_p_order: int
    generators: list[Perm] | None
    lifts: list[Perm] | None
    min_generators: int | None

    def to_json(self) -> dict:
        return {
            "accepted": self.accepted,
            "bound": self.bound,
            "quotient_order": self.quotient_order,
            "quasi_p_order": self.quasi_p_order,
            "min_generators": self.min_generators,
            "generators": None if self.generators is None else [format_perm(g) for g in self.generators],
            "lifts": None if self.lifts is None else [format_perm(g) for g in self.lifts],
        }


def abhyankar_quotient_check(G: PermGroup, p: int, g: int, r: int) -> AbhyankarCheck:
    """Is G a quotient of pi_1 of a genus-g curve minus r >= 1 points?

    Equivalent to G/p(G) being generated by 2g + r - 1 elements.  When it is,
    the certificate is a generating set of G/p(G) of minimal size together
    with lifts to G; otherwise generating sets up to size 2g + r - 1 have been
    ruled out exhaustively.
    """
    if r < 1 or g < 0:
        raise InputError("need g >= 0 and r >= 1")
    bound = 2 * g + r - 1
    pG = quasi_p_part(G, p)
    quo = quotient_group(G, pG)
    Q = quo.group
    try:
        d, gens = min_generators(Q, cap_k=bound)
    except CapExceeded:
        return AbhyankarCheck(False, bound, Q.order, pG.order, None, None, None)
    lifts = [quo.lift(q) for q in gens]
    return AbhyankarCheck(True, bound, Q.order, pG.order, gens, lifts, d)


def element_order_profile(G: PermGroup) -> dict[int, int]:
    out: dict[int, int] = {}
    for g in G.elements:
        o = perm_order(g)
        out[o] = out.get(o, 0) + 1
    return dict(sorted(out.items()))
