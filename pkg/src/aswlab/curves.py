"""Exact genus arithmetic: tame Riemann-Hurwitz, the cover family
u^(p^n) - u = y^(p^n + 1), and genus targets for etale H^l-covers.

All quantities are integers or :class:`fractions.Fraction`; nothing is
computed in floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from sympy import isprime

from .errors import CompositeP, InputError, NonIntegralGenus, WildRamification
from .groups import PermGroup, direct_power, min_generators


@dataclass(frozen=True)
class RamificationProfile:
    """A degree-N cover of a genus-g_X curve, with ramification listed per branch point.

    ``branch_points`` holds, for every branch point, the ramification indices
    of the points above it; unlisted points above it are unramified.  Each
    fiber must satisfy sum(e_P) <= N (equality once unramified points are
    counted), so listing a fiber partially is allowed.
    """

    degree: int
    base_genus: int
    branch_points: tuple[tuple[int, ...], ...]
    p: int | None = None
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.degree < 1 or self.base_genus < 0:
            raise InputError("need degree >= 1 and base genus >= 0")
        for fiber in self.branch_points:
            if any(e < 1 for e in fiber):
                raise InputError("ramification indices must be >= 1")
            if sum(fiber) > self.degree:
                raise NonIntegralGenus(f"fiber {fiber} exceeds the cover degree {self.degree}")

    @property
    def different_degree(self) -> int:
        """deg R = sum (e_P - 1) for a tame cover."""
        return sum(e - 1 for fiber in self.branch_points for e in fiber)

    def hurwitz_rhs(self) -> int:
        """N (2 g_X - 2) + deg R, which equals 2 g_Y - 2."""
        return self.degree * (2 * self.base_genus - 2) + self.different_degree


def _check_tame(rp: RamificationProfile) -> None:
    if rp.p is None:
        return
    for fiber in rp.branch_points:
        for e in fiber:
            if e % rp.p == 0:
                raise WildRamification(f"ramification index {e} is divisible by p = {rp.p}")


def hurwitz_genus_fraction(rp: RamificationProfile) -> Fraction:
    """(N (2 g_X - 2) + sum (e_P - 1) + 2) / 2, without integrality checks."""
    _check_tame(rp)
    return Fraction(rp.hurwitz_rhs() + 2, 2)


def tame_hurwitz_genus(rp: RamificationProfile) -> int:
    """Genus of the cover from the tame Riemann-Hurwitz formula."""
    g = hurwitz_genus_fraction(rp)
    if g.denominator != 1 or g < 0:
        raise NonIntegralGenus(f"profile gives genus {g}, not a non-negative integer")
    return int(g)


# ---------------------------------------------------------------------------
# the family u^(p^n) - u = y^(p^n + 1)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ASWCoverSpec:
    """The curve u^(p^n) - u = y^(p^n + 1), Galois over the y-line with group (Z/p)^n."""

    p: int
    n: int

    def __post_init__(self):
        if not isprime(self.p):
            raise CompositeP(f"{self.p} is not prime")
        if self.n < 1:
            raise InputError("n must be >= 1")

    @property
    def q(self) -> int:
        return self.p**self.n

    @property
    def equation(self) -> str:
        return f"u^{self.q} - u - y^{self.q + 1}"

    @property
    def galois_group(self) -> str:
        return f"(Z/{self.p})^{self.n}"

    def u_projection_profile(self, include_infinity: bool = True) -> RamificationProfile:
        """The degree q+1 projection to the u-line (tame, since p does not divide q+1).

        It is totally ramified over the q roots of u^q - u and over u = oo.
        """
        q = self.q
        fibers = [(q + 1,)] * q + ([(q + 1,)] if include_infinity else [])
        labels = tuple(f"u={i}" for i in range(q)) + (("u=oo",) if include_infinity else ())
        return RamificationProfile(q + 1, 0, tuple(fibers), self.p, labels)

    def genus(self) -> int:
        """Exact genus from the full tame profile, (q^2 - q)/2."""
        return tame_hurwitz_genus(self.u_projection_profile())


def lemma67_bound(p: int, n: int) -> Fraction:
    """The lower bound p^n (p^n - 2)/2 for the genus of u^(p^n) - u = y^(p^n + 1)."""
    if n < 1:
        raise InputError("n must be >= 1")
    q = p**n
    return Fraction(q * (q - 2), 2)


def bound_from_profile(spec: ASWCoverSpec) -> Fraction:
    """The bound obtained by keeping only the q finite branch points of the u-projection.

    2 g - 2 >= (q + 1)(-2) + q * q, i.e. g >= q (q - 2)/2; the value may be
    a half-integer, so it is returned as a Fraction.
    """
    return hurwitz_genus_fraction(spec.u_projection_profile(include_infinity=False))


@dataclass
class Lemma67Certificate:
    p: int
    n: int
    bound: Fraction
    bound_from_profile: Fraction
    exact_genus: int
    derivative_in_u: int
    notes: list[str]

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "equation": ASWCoverSpec(self.p, self.n).equation,
            "bound": str(self.bound),
            "bound_ceiling": math.ceil(self.bound),
            "bound_from_profile": str(self.bound_from_profile),
            "exact_genus": self.exact_genus,
            "derivative_in_u": self.derivative_in_u,
            "notes": self.notes,
        }


def lemma67_certificate(p: int, n: int) -> Lemma67Certificate:
    """The genus bound with its supporting data.

    d/du (u^q - u - y^(q+1)) = q u^(q-1) - 1 = -1 in characteristic p, a
    unit, so the projection to the y-line is etale over every finite y.
    """
    spec = ASWCoverSpec(p, n)
    q = spec.q
    derivative = (q % p) - 1  # q u^(q-1) vanishes mod p
    return Lemma67Certificate(
        p=p,
        n=n,
        bound=lemma67_bound(p, n),
        bound_from_profile=bound_from_profile(spec),
        exact_genus=spec.genus(),
        derivative_in_u=derivative,
        notes=[
            "partial derivative in u is -1, a unit: etale over the affine y-line",
            "only y = oo can ramify; it has a single point above it, so the cover is totally ramified there",
            "after translating y, the totally ramified point may be placed over y = 0",
        ],
    )


def choose_lemma67_parameters(target: int, p: int) -> int:
    """Smallest n >= 1 with p^n (p^n - 2)/2 >= target."""
    if target < 0:
        raise InputError("target genus must be >= 0")
    n = 1
    while lemma67_bound(p, n) < target:
        n += 1
    return n


# ---------------------------------------------------------------------------
# genus targets
# ---------------------------------------------------------------------------

SURFACE_RULE = "surface"
STRICT_RULE = "strict"


@dataclass
class GenusTarget:
    genus: int
    generators_needed: int
    rule: str

    def to_json(self) -> dict:
        return {"genus": self.genus, "generators_needed": self.generators_needed, "rule": self.rule}


def genus_needed_for(H: PermGroup, l: int, p: int, rule: str = SURFACE_RULE, cap_k: int = 8) -> GenusTarget:
    """Smallest genus g >= 2 whose etale fundamental group surjects onto H^l.

    With d = d(H^l): the ``surface`` rule asks 2g >= d + 1 (a genus-g
    curve's prime-to-p fundamental group needs 2g generators, and one spare
    is kept); the ``strict`` rule asks g > d.
    """
    if math.gcd(H.order, p) != 1:
        raise InputError("H must have order prime to p")
    if l < 1:
        raise InputError("multiplicity must be >= 1")
    power = direct_power(H, l) if l > 1 else H
    d, _ = min_generators(power, cap_k=cap_k)
    if rule == SURFACE_RULE:
        g = max(2, (d + 2) // 2)
    elif rule == STRICT_RULE:
        g = max(2, d + 1)
    else:
        raise InputError(f"unknown rule {rule!r}")
    return GenusTarget(g, d, rule)
