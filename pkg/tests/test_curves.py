"""Riemann-Hurwitz arithmetic, the curve u^q - u = y^(q+1), and genus targets.

Independent genus oracles for u^q - u = y^(q+1), q = p^n:
  * its projective closure U^q Z - U Z^q = Y^(q+1) is a smooth plane curve of
    degree q + 1 (checked with sympy), so g = q (q - 1)/2;
  * substituting u = c v, y = l w with c^(q-1) = -1 and l^(q+1) = -c (constants
    found in F_(q^4)) turns it into the Hermitian curve v^q + v = w^(q+1), which
    has q^3 + 1 points over F_(q^2); the Hasse-Weil bound #C <= q^2 + 1 + 2 g q
    then forces g >= (q^2 - q)/2.
"""

from fractions import Fraction

import pytest
import sympy

from aswlab.algebra import GF
from aswlab.curves import (
    STRICT_RULE,
    ASWCoverSpec,
    RamificationProfile,
    bound_from_profile,
    choose_lemma67_parameters,
    genus_needed_for,
    hurwitz_genus_fraction,
    lemma67_bound,
    lemma67_certificate,
    tame_hurwitz_genus,
)
from aswlab.errors import CompositeP, InputError, NonIntegralGenus, WildRamification
from aswlab.groups import abelian_group, cyclic, symmetric

FAMILY = [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1)]

# reference values: bound p^n (p^n - 2)/2 and the (2, 2) Hurwitz inequality
QUOTED_BOUNDS = {(2, 2): 4, (3, 1): Fraction(3, 2), (2, 1): 0}


def smooth_plane_genus(p, q):
    U, Y, Z = sympy.symbols("U Y Z")
    F = U**q * Z - U * Z**q - Y ** (q + 1)
    partials = [sympy.Poly(sympy.diff(F, v), U, Y, Z, modulus=p) for v in (U, Y, Z)]
    # the partials are -Z^q, -Y^q, U^q (up to sign) in characteristic p: common zero only at 0
    monos = sorted(tuple(sorted(P.as_dict())) for P in partials)
    assert all(len(m) == 1 for m in monos)
    assert all(sum(1 for e in m[0] if e) == 1 for m in monos)
    assert {next(i for i, e in enumerate(m[0]) if e) for m in monos} == {0, 1, 2}
    d = q + 1
    return (d - 1) * (d - 2) // 2


def hermitian_twist_constants(p, n):
    """c, l in F_(q^4) with c^(q-1) = -1 and l^(q+1) = -c."""
    q = p**n
    F = GF(p, 4 * n)
    minus_one = F.neg(1)
    c = next(c for c in range(1, F.q) if F.pow(c, q - 1) == minus_one)
    l = next(l for l in range(1, F.q) if F.pow(l, q + 1) == F.neg(c))
    # (c v)^q - c v = c^q v^q - c v = -c (v^q + v) and (l w)^(q+1) = -c w^(q+1)
    assert F.pow(c, q) == F.neg(c)
    return c, l


def hermitian_point_count(p, n):
    q = p**n
    F = GF(p, 2 * n)
    count = 1  # the single point at infinity
    for v in range(F.q):
        lhs = F.add(F.pow(v, q), v)
        for w in range(F.q):
            if F.pow(w, q + 1) == lhs:
                count += 1
    return count


# --- Riemann-Hurwitz ----------------------------------------------------------------------------


def test_hurwitz_examples():
    assert tame_hurwitz_genus(RamificationProfile(1, 0, ())) == 0
    assert tame_hurwitz_genus(RamificationProfile(2, 0, ((2,),) * 4, p=3)) == 1
    rp = ASWCoverSpec(2, 2).u_projection_profile(include_infinity=False)
    assert rp.degree == 5 and rp.different_degree == 16
    assert rp.hurwitz_rhs() == 6 == -2 * 5 + 16  # 2g(Y) - 2 >= -2(p^n + 1) + p^(2n)
    assert hurwitz_genus_fraction(rp) == 4


def test_hurwitz_errors():
    with pytest.raises(NonIntegralGenus):
        tame_hurwitz_genus(RamificationProfile(2, 0, ((2,),) * 3))
    with pytest.raises(WildRamification):
        tame_hurwitz_genus(RamificationProfile(2, 0, ((2,),) * 4, p=2))
    with pytest.raises(NonIntegralGenus):
        RamificationProfile(2, 0, ((3,),))
    with pytest.raises(InputError):
        RamificationProfile(0, 0, ())


def test_hurwitz_parity_on_accepted_profiles():
    for N in range(1, 7):
        for gX in range(3):
            for k in range(6):
                for e in range(2, N + 1):
                    rp = RamificationProfile(N, gX, ((e,),) * k)
                    try:
                        g = tame_hurwitz_genus(rp)
                    except NonIntegralGenus:
                        assert rp.hurwitz_rhs() % 2 or rp.hurwitz_rhs() < -2
                        continue
                    assert rp.hurwitz_rhs() % 2 == 0 and g >= 0


def test_cyclic_cover_genus_matches_classical_formula():
    # y^N = prod_{i<k} (x - a_i) with N | k: k points totally ramified, none at infinity
    for N in (2, 3, 5):
        for k in (N, 2 * N, 3 * N):
            rp = RamificationProfile(N, 0, ((N,),) * k)
            assert tame_hurwitz_genus(rp) == (N - 1) * (k - 2) // 2


# --- the family u^q - u = y^(q+1) -------------------------------------------------------------------


@pytest.mark.parametrize("p,n", FAMILY)
def test_bound_from_profile_matches_formula(p, n):
    q = p**n
    spec = ASWCoverSpec(p, n)
    assert bound_from_profile(spec) == lemma67_bound(p, n) == Fraction(q * (q - 2), 2)
    if (p, n) in QUOTED_BOUNDS:
        assert lemma67_bound(p, n) == QUOTED_BOUNDS[(p, n)]


@pytest.mark.parametrize("p,n", FAMILY)
def test_exact_genus_against_plane_curve_and_point_count(p, n):
    q = p**n
    spec = ASWCoverSpec(p, n)
    g = spec.genus()
    assert g == smooth_plane_genus(p, q) == (q * q - q) // 2
    assert g >= lemma67_bound(p, n)
    if q <= 5:
        hermitian_twist_constants(p, n)
        points = hermitian_point_count(p, n)
        assert points == q**3 + 1
        assert Fraction(points - q * q - 1, 2 * q) <= g


@pytest.mark.parametrize("p,n", FAMILY)
def test_certificate(p, n):
    cert = lemma67_certificate(p, n)
    # d/du (u^q - u - y^(q+1)) = q u^(q-1) - 1, evaluated with sympy mod p
    u, y = sympy.symbols("u y")
    q = p**n
    deriv = sympy.Poly(sympy.diff(u**q - u - y ** (q + 1), u), u, y, modulus=p)
    assert deriv.is_ground and (int(deriv.as_expr()) + 1) % p == 0
    assert cert.derivative_in_u == -1
    assert cert.bound == cert.bound_from_profile == lemma67_bound(p, n)
    assert cert.exact_genus == ASWCoverSpec(p, n).genus()
    assert cert.to_json()["bound"] == str(lemma67_bound(p, n))


def test_cover_spec_validation():
    with pytest.raises(CompositeP):
        ASWCoverSpec(4, 1)
    with pytest.raises(InputError):
        ASWCoverSpec(2, 0)
    assert ASWCoverSpec(3, 2).equation == "u^9 - u - y^10"
    assert ASWCoverSpec(3, 2).galois_group == "(Z/3)^2"


def test_bound_monotone_in_n():
    for p in (2, 3, 5, 7):
        values = [lemma67_bound(p, n) for n in range(1, 6)]
        assert values == sorted(values) and len(set(values)) == len(values)


def test_choose_parameters():
    assert choose_lemma67_parameters(0, 2) == 1
    assert choose_lemma67_parameters(4, 2) == 2
    assert choose_lemma67_parameters(100, 3) == 3
    for p in (2, 3, 5):
        for t in range(0, 400, 7):
            n = choose_lemma67_parameters(t, p)
            assert lemma67_bound(p, n) >= t
            assert n == 1 or lemma67_bound(p, n - 1) < t
    with pytest.raises(InputError):
        choose_lemma67_parameters(-1, 2)


# --- genus targets ---------------------------------------------------------------------------------


def test_genus_needed_examples():
    assert genus_needed_for(cyclic(2), 1, 3).genus == 2
    t = genus_needed_for(cyclic(2), 3, 3)
    assert (t.generators_needed, t.genus) == (3, 2)
    t = genus_needed_for(abelian_group([3, 3]), 2, 2)
    assert (t.generators_needed, t.genus) == (4, 3)
    with pytest.raises(InputError):
        genus_needed_for(symmetric(3), 1, 3)


def test_genus_rules():
    for H, l, p in [(cyclic(2), 1, 3), (cyclic(2), 3, 3), (abelian_group([3, 3]), 2, 2), (symmetric(3), 2, 5)]:
        s = genus_needed_for(H, l, p)
        t = genus_needed_for(H, l, p, rule=STRICT_RULE)
        d = s.generators_needed
        assert s.genus >= 2 and 2 * s.genus >= d + 1 and (s.genus == 2 or 2 * (s.genus - 1) < d + 1)
        assert t.genus >= 2 and t.genus > d and (t.genus == 2 or t.genus - 1 <= d)
        assert t.genus >= s.genus
    with pytest.raises(InputError):
        genus_needed_for(cyclic(2), 1, 3, rule="other")
