"""F_q, F_q[x] and A = F_q[x, 1/h], checked against naive independent arithmetic."""

import itertools
import random

import pytest
import sympy

from aswlab.algebra import GF, CoordinateRing, FiniteField, Poly, RingElem, frobenius_root
from aswlab.errors import CompositeP, DivisionByZero, FieldMismatch, NotSquarefreeSplit, RingMismatch

SMALL_Q = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1), (2, 4)]


# --- naive oracle: coordinate vectors multiplied as polynomials mod the modulus ---


def naive_mul(F, a, b):
    p, m, mod = F.p, F.m, F.modulus
    da, db = F.coords(a), F.coords(b)
    prod = [0] * (2 * m - 1)
    for i, x in enumerate(da):
        for j, y in enumerate(db):
            prod[i + j] = (prod[i + j] + x * y) % p
    for k in range(len(prod) - 1, m - 1, -1):
        c = prod[k]
        if c:
            for t in range(m + 1):
                prod[k - m + t] = (prod[k - m + t] - c * mod[t]) % p
    return sum(c * p**i for i, c in enumerate(prod[:m]))


def naive_add(F, a, b):
    return sum(((x + y) % F.p) * F.p**i for i, (x, y) in enumerate(zip(F.coords(a), F.coords(b))))


@pytest.mark.parametrize("p,m", SMALL_Q)
def test_field_tables_match_naive_arithmetic(p, m):
    F = GF(p, m)
    for a, b in itertools.product(range(F.q), repeat=2):
        assert F.mul(a, b) == naive_mul(F, a, b)
        assert F.add(a, b) == naive_add(F, a, b)


@pytest.mark.parametrize("p,m", SMALL_Q)
def test_field_axioms_exhaustive(p, m):
    F = GF(p, m)
    els = list(F.elements())
    zero, one = F.zero, F.one
    for a in els:
        assert a + zero == a
        assert a * one == a
        assert a + (-a) == zero
        if a:
            assert a * a.inverse() == one
        assert a ** F.q == a
    for a, b in itertools.product(els, repeat=2):
        assert a + b == b + a
        assert a * b == b * a
    for a, b, c in itertools.islice(itertools.product(els, repeat=3), 4000):
        assert a * (b + c) == a * b + a * c
        assert (a + b) + c == a + (b + c)


def test_f4_product_w_times_w_plus_one():
    F = GF(2, 2)
    w = F.gen
    assert F.modulus == (1, 1, 1)  # w^2 + w + 1
    assert w * (w + F.one) == F.one


def test_fermat_in_f8_and_additive_identity_in_f9():
    F8, F9 = GF(2, 3), GF(3, 2)
    assert all(a**8 == a for a in F8.elements())
    assert all(a + F9.zero == a for a in F9.elements())


def test_frobenius_root():
    F2, F4 = GF(2), GF(2, 2)
    assert frobenius_root(F2.one) == F2.one
    assert frobenius_root(F4.zero) == F4.zero
    w = F4.gen
    assert frobenius_root(w) == w + F4.one  # (w+1)^2 = w
    for p, m in SMALL_Q:
        F = GF(p, m)
        for a in F.elements():
            assert (a**p).frobenius_root() == a


def test_moduli_are_primitive_per_sympy():
    for p, m in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (7, 2), (2, 8)]:
        F = GF(p, m)
        x = sympy.Symbol("x")
        poly = sympy.Poly(list(reversed(F.modulus)), x, modulus=p)
        assert poly.is_irreducible
        # w has multiplicative order exactly q - 1
        orders = [d for d in sympy.divisors(F.q - 1) if F.pow(F.gen.value, d) == 1]
        assert orders[0] == F.q - 1


def test_errors():
    F = GF(3)
    with pytest.raises(DivisionByZero):
        F.zero.inverse()
    with pytest.raises(FieldMismatch):
        GF(3).one + GF(5).one
    with pytest.raises(CompositeP):
        GF(4)


def test_custom_modulus_field_is_isomorphic():
    # F_9 with a different primitive modulus has the same arithmetic up to relabeling
    F = GF(3, 2)
    G = FiniteField(3, 2, (2, 2, 1))
    assert F.modulus != G.modulus
    # find w' in F with the same minimal polynomial as G's generator, map powers
    target = G.modulus
    root = next(a for a in range(9) if F.add(F.add(F.mul(a, a), F.mul(target[1], a)), target[0]) == 0 and a)
    phi = {0: 0}
    for k in range(8):
        phi[G.pow(G.gen.value, k)] = F.pow(root, k)
    for a, b in itertools.product(range(9), repeat=2):
        assert phi[G.mul(a, b)] == F.mul(phi[a], phi[b])
        assert phi[G.add(a, b)] == F.add(phi[a], phi[b])


# --- polynomials ---


def test_poly_divmod_and_degree():
    F = GF(5)
    rnd = random.Random(1)
    for _ in range(200):
        a = Poly(F, [rnd.randrange(5) for _ in range(rnd.randrange(0, 8))])
        b = Poly(F, [rnd.randrange(5) for _ in range(rnd.randrange(1, 5))] + [1])
        q, r = divmod(a, b)
        assert q * b + r == a
        assert r.is_zero() or r.degree < b.degree
    assert Poly(F).degree == float("-inf")


def test_poly_taylor_shift_and_frobenius():
    F = GF(3, 2)
    rnd = random.Random(2)
    for _ in range(50):
        f = Poly(F, [rnd.randrange(9) for _ in range(5)])
        r = rnd.randrange(9)
        g = f.taylor_shift(r)  # g(y) = f(y + r)
        for t in range(9):
            assert g(t) == f(F.add(t, r))
        assert f.frobenius() == f**3


# --- coordinate rings ---


def test_ring_requires_squarefree_split_h():
    F = GF(3)
    with pytest.raises(NotSquarefreeSplit):
        CoordinateRing(F, [0, 0, 1])  # x^2
    with pytest.raises(NotSquarefreeSplit):
        CoordinateRing(F, [1, 0, 1])  # x^2 + 1 is irreducible over F_3
    R = CoordinateRing(F, [0, 2, 1])  # x^2 + 2x = x(x + 2)
    assert R.num_punctures == 3


def test_localization_examples():
    F = GF(3)
    R = CoordinateRing(F, [0, 1])
    x = R.x
    inv_x = R.one / x
    assert inv_x * x == R.one
    with pytest.raises(DivisionByZero):
        x / (x + R.one)  # x + 1 is not a unit of F_3[x, 1/x]


def test_square_of_one_plus_inverse_x_cross_multiplied():
    F = GF(3)
    R = CoordinateRing(F, [0, 1])
    s = (R.one + R.one / R.x) ** 2
    # clear denominators: x^2 * s must equal (x + 1)^2 = x^2 + 2x + 1
    cleared = s.num * Poly(F, [0, 1]) ** (2 - s.k)
    assert cleared == Poly(F, [1, 2, 1])
    assert s == R.one + R.const(2) / R.x + R.one / R.x**2


def test_additive_inverse_and_mismatch():
    F = GF(5)
    R = CoordinateRing(F, [0, 4, 1])  # x(x - 1)
    a = R.x / R(Poly(F, [0, 4, 1]))
    assert a + (-a) == R.zero
    with pytest.raises(RingMismatch):
        a + CoordinateRing(F, [0, 1]).x


def _random_elem(R, rnd, kmax=3):
    F = R.field
    num = Poly(F, [rnd.randrange(F.q) for _ in range(rnd.randrange(0, 6))])
    return RingElem(R, num, rnd.randrange(0, kmax + 1))


def _evaluate(a, t):
    F = a.ring.field
    return F.mul(a.num(t), F.inv(F.pow(a.ring.h(t), a.k)))


@pytest.mark.parametrize("p,m,h", [(3, 1, [0, 1]), (5, 1, [0, 4, 1]), (2, 2, [0, 1]), (7, 1, [1])])
def test_normalization_compatible_with_arithmetic(p, m, h):
    F = GF(p, m)
    R = CoordinateRing(F, h)
    rnd = random.Random(p * 100 + m)
    points = [t for t in range(F.q) if R.h(t) != 0]
    for _ in range(10_000 if F.q <= 5 else 2000):
        a, b = _random_elem(R, rnd), _random_elem(R, rnd)
        j = rnd.randrange(1, 3)
        # an unnormalized representative of the same element
        a_raw = RingElem(R, a.num * R.h_power(j), a.k + j)
        assert a_raw == a and (a_raw.num, a_raw.k) == (a.num, a.k)
        s, prod = a + b, a * b
        assert a_raw + b == s and a_raw * b == prod
        # normal form invariant
        for c in (s, prod):
            assert c.k == 0 or not (c.num % R.h).is_zero() or c.num.is_zero()
        # exact cross-multiplication oracle
        assert prod.num * R.h_power(a.k + b.k - prod.k) == a.num * b.num
        t = points[rnd.randrange(len(points))]
        assert _evaluate(s, t) == F.add(_evaluate(a, t), _evaluate(b, t))


def test_partial_fraction_round_trip():
    F = GF(5)
    R = CoordinateRing(F, [0, 4, 1])
    rnd = random.Random(7)
    for _ in range(300):
        a = _random_elem(R, rnd)
        poly, poles = a.partial_fractions()
        assert R.from_partial_fractions(poly, poles) == a
