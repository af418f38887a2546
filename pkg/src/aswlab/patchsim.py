"""Covers modeled as finite group actions: induction, quotients, and the
connectivity of covers glued from two patches.

A cover with group Gamma is represented by its fiber, a finite Gamma-set.
Inducing from a subgroup, quotienting by a normal subgroup and gluing two
induced covers are all computed on point sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import ActionNotHomomorphic, GroupMismatch, InputError, NotNormal, NotSubgroup
from .groups import (
    PermGroup,
    Perm,
    Quotient,
    check_perm,
    generate,
    identity,
    inverse,
    mul,
    quotient_group,
)


class GSet:
    """A finite set {0..M-1} with an action of ``group``.

    ``action`` gives, for each generator of the group, the permutation of the
    points it induces; it is extended to every group element and checked to
    be a homomorphism.
    """

    def __init__(self, group: PermGroup, size: int, action: Mapping[Perm, Sequence[int]]):
        self.group = group
        self.size = size
        images = {}
        for s in group.generators:
            if s not in action:
                raise ActionNotHomomorphic("no permutation given for a generator")
            img = check_perm(action[s])
            if len(img) != size:
                raise InputError(f"action permutation has {len(img)} points, expected {size}")
            images[s] = img
        if not group.generators:
            self.action = {group.identity: identity(size)}
        else:
            self.action = _extend(group, images, size)

    def act(self, g: Perm, x: int) -> int:
        return self.action[g][x]

    def orbits(self) -> list[list[int]]:
        seen: set[int] = set()
        out = []
        gens = [self.action[s] for s in self.group.generators]
        for x in range(self.size):
            if x in seen:
                continue
            orb = [x]
            seen.add(x)
            for y in orb:
                for s in gens:
                    z = s[y]
                    if z not in seen:
                        seen.add(z)
                        orb.append(z)
            out.append(sorted(orb))
        return out

    def is_transitive(self) -> bool:
        return self.size > 0 and len(self.orbits()) == 1

    def stabilizer(self, x: int) -> PermGroup:
        els = [g for g in self.group.element_list if self.action[g][x] == x]
        return PermGroup.from_elements(self.group.degree, els, self.group.cap)

    def restrict(self, K: PermGroup) -> GSet:
        if not K.is_subgroup_of(self.group):
            raise NotSubgroup("restriction to a non-subgroup")
        return GSet(K, self.size, {k: self.action[k] for k in K.generators})

    def sub_gset(self, points: Sequence[int]) -> GSet:
        """The action on an invariant subset, renumbered in the given order."""
        index = {x: i for i, x in enumerate(points)}
        action = {}
        for s in self.group.generators:
            try:
                action[s] = tuple(index[self.action[s][x]] for x in points)
            except KeyError:
                raise InputError("subset is not invariant") from None
        return GSet(self.group, len(points), action)

    def disjoint_union(self, other: GSet) -> GSet:
        if other.group != self.group:
            raise GroupMismatch("different acting groups")
        action = {}
        for s in self.group.generators:
            action[s] = self.action[s] + tuple(self.size + y for y in other.action[s])
        return GSet(self.group, self.size + other.size, action)

    def __repr__(self) -> str:
        return f"<GSet |X|={self.size} |G|={self.group.order} orbits={len(self.orbits())}>"


def _extend(group: PermGroup, images: dict[Perm, Perm], size: int) -> dict[Perm, Perm]:
    hom = {group.identity: identity(size)}
    frontier = [group.identity]
    while frontier:
        new = []
        for g in frontier:
            for s, img in images.items():
                sg = mul(s, g)
                v = mul(img, hom[g])
                if sg in hom:
                    if hom[sg] != v:
                        raise ActionNotHomomorphic("action does not respect the relations of the group")
                else:
                    hom[sg] = v
                    new.append(sg)
        frontier = new
    return hom


def regular_gset(G: PermGroup) -> GSet:
    """G acting on itself by left multiplication."""
    els = G.element_list
    index = {g: i for i, g in enumerate(els)}
    return GSet(G, len(els), {s: tuple(index[mul(s, x)] for x in els) for s in G.generators})


def trivial_gset(G: PermGroup, size: int) -> GSet:
    return GSet(G, size, {s: identity(size) for s in G.generators})


def coset_gset(G: PermGroup, K: PermGroup) -> GSet:
    """G acting on the left cosets G/K."""
    cosets = left_cosets(G, K)
    index = {x: i for i, c in enumerate(cosets) for x in c}
    reps = [min(c) for c in cosets]
    return GSet(G, len(cosets), {s: tuple(index[mul(s, r)] for r in reps) for s in G.generators})


def left_cosets(G: PermGroup, K: PermGroup) -> list[frozenset[Perm]]:
    if not K.is_subgroup_of(G):
        raise NotSubgroup("not a subgroup")
    seen: set[Perm] = set()
    out = []
    for g in G.element_list:
        if g in seen:
            continue
        c = frozenset(mul(g, k) for k in K.elements)
        seen |= c
        out.append(c)
    return out


def pullback(X: GSet, K: PermGroup, hom: Mapping[Perm, Perm]) -> GSet:
    """The K-set obtained from X along a homomorphism K -> X.group."""
    return GSet(K, X.size, {k: X.action[hom[k]] for k in K.generators})


# ---------------------------------------------------------------------------
# induction and quotients
# ---------------------------------------------------------------------------


@dataclass
class InducedGSet:
    """Ind_G^Gamma X on the points (i, x) <-> i * |X| + x, i indexing Gamma/G."""

    gset: GSet
    coset_reps: list[Perm]
    base: GSet

    def point(self, coset: int, x: int) -> int:
        return coset * self.base.size + x

    def copy_of(self, point: int) -> int:
        return point // self.base.size


def induce(Gamma: PermGroup, G: PermGroup, X: GSet) -> InducedGSet:
    """(Gamma x X)/~ with (gamma, x) ~ (gamma g^-1, g x); Gamma acts on the left."""
    if not G.is_subgroup_of(Gamma):
        raise NotSubgroup("G is not a subgroup of Gamma")
    if X.group != G:
        raise GroupMismatch("X is not a G-set")
    cosets = left_cosets(Gamma, G)
    reps = [min(c) for c in cosets]  # identity represents G itself
    coset_of = {x: i for i, c in enumerate(cosets) for x in c}
    m = X.size
    action = {}
    for s in Gamma.generators:
        img = [0] * (len(reps) * m)
        for i, t in enumerate(reps):
            st = mul(s, t)
            j = coset_of[st]
            g = mul(inverse(reps[j]), st)  # s t_i = t_j g
            gx = X.action[g]
            for x in range(m):
                img[i * m + x] = j * m + gx[x]
        action[s] = tuple(img)
    return InducedGSet(GSet(Gamma, len(reps) * m, action), reps, X)


@dataclass
class QuotientGSet:
    """W/H as a (Gamma/H)-set, with the orbit map W -> W/H."""

    gset: GSet
    quotient: Quotient
    orbits: list[list[int]]
    orbit_of: list[int]
    gamma_gset: GSet

    def is_equivariant(self, W: GSet) -> bool:
        for g in W.group.element_list:
            q = self.quotient.project(g)
            for x in range(W.size):
                if self.orbit_of[W.action[g][x]] != self.gset.action[q][self.orbit_of[x]]:
                    return False
        return True


def quotient_action(W: GSet, H: PermGroup) -> QuotientGSet:
    """Points are the H-orbits of W, acted on by Gamma/H."""
    Gamma = W.group
    if not H.is_normal_in(Gamma):
        raise NotNormal("H is not normal in the acting group")
    orbits = W.restrict(H).orbits()
    orbit_of = [0] * W.size
    for i, orb in enumerate(orbits):
        for x in orb:
            orbit_of[x] = i
    quo = quotient_group(Gamma, H)
    gamma_action = {s: tuple(orbit_of[W.action[s][orb[0]]] for orb in orbits) for s in Gamma.generators}
    # generators of Gamma with equal images in Gamma/H must act identically
    merged: dict[Perm, tuple] = {}
    for qs, s in zip(quo.group.generators, Gamma.generators):
        if merged.setdefault(qs, gamma_action[s]) != gamma_action[s]:
            raise ActionNotHomomorphic("H-orbits are not permuted compatibly")
    qset = GSet(quo.group, len(orbits), merged)
    return QuotientGSet(qset, quo, orbits, orbit_of, GSet(Gamma, len(orbits), gamma_action))


# ---------------------------------------------------------------------------
# isomorphism of G-sets
# ---------------------------------------------------------------------------


def are_conjugate(G: PermGroup, A: PermGroup, B: PermGroup) -> bool:
    if A.order != B.order:
        return False
    Bel = B.elements
    for g in G.element_list:
        gi = inverse(g)
        if all(mul(mul(g, a), gi) in Bel for a in A.generators):
            return True
    return False


def is_isomorphic_gsets(X: GSet, Y: GSet) -> bool:
    """Orbitwise comparison: equal orbit sizes and conjugate point stabilizers."""
    if X.group != Y.group:
        raise GroupMismatch("G-sets over different groups")
    if X.size != Y.size:
        return False
    G = X.group
    xs = [(len(o), X.stabilizer(o[0])) for o in X.orbits()]
    ys = [(len(o), Y.stabilizer(o[0])) for o in Y.orbits()]
    if sorted(s for s, _ in xs) != sorted(s for s, _ in ys):
        return False
    unmatched = list(ys)
    for size, stab in xs:
        for k, (size2, stab2) in enumerate(unmatched):
            if size == size2 and are_conjugate(G, stab, stab2):
                del unmatched[k]
                break
        else:
            return False
    return True


# ---------------------------------------------------------------------------
# patching
# ---------------------------------------------------------------------------


@dataclass
class PatchDiagram:
    """A G-cover X and an H-cover Y, induced up to Gamma and glued at base points."""

    Gamma: PermGroup
    G: PermGroup
    H: PermGroup
    X: GSet
    Y: GSet

    def __post_init__(self):
        for K, name in ((self.G, "G"), (self.H, "H")):
            if not K.is_subgroup_of(self.Gamma):
                raise NotSubgroup(f"{name} is not a subgroup of Gamma")
        if self.X.group != self.G or self.Y.group != self.H:
            raise GroupMismatch("covers do not match their groups")
        if not (self.X.is_transitive() and self.Y.is_transitive()):
            raise InputError("patch covers must be transitive (connected)")


@dataclass
class PatchComponents:
    components: int
    index: int
    generated: PermGroup
    G_stabilizer: PermGroup
    H_stabilizer: PermGroup

    def to_json(self) -> dict:
        return {
            "components": self.components,
            "index": self.index,
            "generated_order": self.generated.order,
            "connected": self.components == 1,
        }


def _copy_stabilizer(Gamma: PermGroup, induced: InducedGSet) -> PermGroup:
    """Elements of Gamma mapping the identity copy of the base cover to itself."""
    W = induced.gset
    els = [g for g in Gamma.element_list if induced.copy_of(W.action[g][0]) == 0]
    return PermGroup.from_elements(Gamma.degree, els, Gamma.cap)


def patch_components(d: PatchDiagram) -> PatchComponents:
    """Connected components of the glued cover.

    The glued fiber is Ind X over the X-patch and Ind Y over the Y-patch;
    for each gamma the copy gamma G' of X is glued to the copy gamma H' of Y.
    Components are counted by union-find on Gamma/G' + Gamma/H' and
    cross-checked against the index of <G', H'>.
    """
    Gamma = d.Gamma
    WX = induce(Gamma, d.G, d.X)
    WY = induce(Gamma, d.H, d.Y)
    Gs = _copy_stabilizer(Gamma, WX)
    Hs = _copy_stabilizer(Gamma, WY)
    cx = {x: i for i, c in enumerate(left_cosets(Gamma, Gs)) for x in c}
    cy = {x: i for i, c in enumerate(left_cosets(Gamma, Hs)) for x in c}
    nx = len(set(cx.values()))
    parent = list(range(nx + len(set(cy.values()))))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for g in Gamma.element_list:
        a, b = find(cx[g]), find(nx + cy[g])
        if a != b:
            parent[max(a, b)] = min(a, b)
    components = len({find(a) for a in range(len(parent))})
    generated = generate(Gamma, list(Gs.generators) + list(Hs.generators))
    index = Gamma.order // generated.order
    if index != components:
        raise AssertionError("component count disagrees with the index of <G', H'>")
    return PatchComponents(components, index, generated, Gs, Hs)
