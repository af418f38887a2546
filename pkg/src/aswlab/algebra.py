"""Exact arithmetic over F_q, F_q[x] and the coordinate rings F_q[x, 1/h].

Field elements are encoded internally as integers ``0 <= a < q``: the base-p
digits of ``a`` are the coordinates of the element with respect to the basis
1, w, ..., w^(m-1), where w is a root of a fixed primitive modulus read from
``data/moduli.json``.  ``FqElem`` wraps such an integer for public use, while
``Poly`` and ``RingElem`` keep raw integers for speed.
"""

from __future__ import annotations

import functools
import json
import math
from dataclasses import dataclass
from importlib import resources
from typing import Iterable, Iterator, Sequence

from sympy import isprime

from .errors import (
    CompositeP,
    DivisionByZero,
    FieldMismatch,
    InputError,
    NotSquarefreeSplit,
    RingMismatch,
)

NEG_INF = -math.inf
MAX_FIELD_ORDER = 2**16


@functools.cache
def _moduli() -> dict:
    text = resources.files("aswlab.data").joinpath("moduli.json").read_text()
    return json.loads(text)["moduli"]


def _digits(a: int, p: int, m: int) -> list[int]:
    out = []
    for _ in range(m):
        a, r = divmod(a, p)
        out.append(r)
    return out


def _undigits(ds: Iterable[int], p: int) -> int:
    value = 0
    for d in reversed(list(ds)):
        value = value * p + d
    return value


class FiniteField:
    """The field F_q, q = p^m, with a canonical primitive modulus.

    Use :func:`GF` rather than the constructor so that equal fields are the
    same object.
    """

    def __init__(self, p: int, m: int = 1, modulus: Sequence[int] | None = None):
        if not isprime(p):
            raise CompositeP(f"{p} is not prime")
        if m < 1:
            raise InputError("extension degree must be >= 1")
        q = p**m
        if q > MAX_FIELD_ORDER:
            raise InputError(f"q = {q} exceeds the supported bound {MAX_FIELD_ORDER}")
        self.p, self.m, self.q = p, m, q
        if m == 1:
            self.modulus: tuple[int, ...] = (0, 1)
            return
        if modulus is None:
            modulus = _moduli()[f"{p},{m}"]
        modulus = tuple(c % p for c in modulus)
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise InputError(f"modulus must be monic of degree {m} (low-first coefficients)")
        self.modulus = modulus
        # exp/log tables over the primitive element w
        exp = [0] * (q - 1)
        cur = [1] + [0] * (m - 1)
        for i in range(q - 1):
            exp[i] = _undigits(cur, p)
            if i and exp[i] == 1:
                raise InputError(f"modulus {list(modulus)} is not primitive over F_{p}")
            lead = cur[-1]
            cur = [0] + cur[:-1]
            if lead:
                cur = [(c - lead * f) % p for c, f in zip(cur, self.modulus)]
        log = [0] * q
        for i, a in enumerate(exp):
            log[a] = i
        self._exp = exp + exp
        self._log = log
        # Zech logarithms: 1 + w^k = w^zech[k]  (None when the sum is zero)
        zech: list[int | None] = [None] * (q - 1)
        for k in range(q - 1):
            s = self._add_digits(1, exp[k])
            zech[k] = None if s == 0 else log[s]
        self._zech = zech
        self._minus_one = 1 if p == 2 else exp[(q - 1) // 2]

    def __repr__(self) -> str:
        return f"GF({self.p},{self.m})"

    def __reduce__(self):
        if self.m > 1 and self.modulus != tuple(_moduli()[f"{self.p},{self.m}"]):
            return (FiniteField, (self.p, self.m, self.modulus))
        return (GF, (self.p, self.m))

    # --- raw integer arithmetic -------------------------------------------
    def _add_digits(self, a: int, b: int) -> int:
        p, m = self.p, self.m
        da, db = _digits(a, p, m), _digits(b, p, m)
        return _undigits(((x + y) % p for x, y in zip(da, db)), p)

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if a == 0:
            return b
        if b == 0:
            return a
        la, lb = self._log[a], self._log[b]
        z = self._zech[(lb - la) % (self.q - 1)]
        if z is None:
            return 0
        return self._exp[(la + z) % (self.q - 1)]

    def neg(self, a: int) -> int:
        if self.m == 1:
            return (-a) % self.p
        if self.p == 2 or a == 0:
            return a
        return self.mul(a, self._minus_one)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero in " + repr(self))
        if self.m == 1:
            return pow(a, -1, self.p)
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if self.m == 1:
            return pow(a, e, self.p)
        if a == 0:
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def frobenius_root(self, a: int) -> int:
        """The unique r with r^p = a."""
        return self.pow(a, self.q // self.p) if self.m > 1 else a

    def from_int(self, n: int) -> int:
        return n % self.p

    # --- public element API --------------------------------------------------
    def __call__(self, value: int | Sequence[int]) -> FqElem:
        if isinstance(value, FqElem):
            if value.field is not self:
                raise FieldMismatch(f"{value.field!r} vs {self!r}")
            return value
        if isinstance(value, int):
            return FqElem(self, value % self.p)
        coeffs = list(value)
        if len(coeffs) > self.m:
            raise InputError(f"too many coordinates for {self!r}")
        return FqElem(self, _undigits([c % self.p for c in coeffs], self.p))

    @property
    def zero(self) -> FqElem:
        return FqElem(self, 0)

    @property
    def one(self) -> FqElem:
        return FqElem(self, 1)

    @property
    def gen(self) -> FqElem:
        """The class of w (equal to the integer p in the encoding); for m = 1 this is 1."""
        return FqElem(self, self.p if self.m > 1 else 1)

    def elements(self) -> Iterator[FqElem]:
        return (FqElem(self, a) for a in range(self.q))

    def coords(self, a: int) -> list[int]:
        return _digits(a, self.p, self.m)

    def format(self, a: int) -> str:
        if self.m == 1:
            return str(a)
        terms = []
        for i, c in reversed(list(enumerate(self.coords(a)))):
            if not c:
                continue
            mono = "" if i == 0 else ("w" if i == 1 else f"w^{i}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(terms) if terms else "0"


@functools.cache
def GF(p: int, m: int = 1) -> FiniteField:
    return FiniteField(p, m)


@dataclass(frozen=True, slots=True)
class FqElem:
    field: FiniteField
    value: int

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def m(self) -> int:
        return self.field.m

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(self.field.coords(self.value))

    def _other(self, other) -> int:
        if isinstance(other, FqElem):
            if other.field is not self.field:
                raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
            return other.value
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FqElem(self.field, self.field.add(self.value, b))

    __radd__ = __add__

    def __neg__(self):
        return FqElem(self.field, self.field.neg(self.value))

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FqElem(self.field, self.field.sub(self.value, b))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FqElem(self.field, self.field.mul(self.value, b))

    __rmul__ = __mul__

    def inverse(self) -> FqElem:
        return FqElem(self.field, self.field.inv(self.value))

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FqElem(self.field, self.field.mul(self.value, self.field.inv(b)))

    def __pow__(self, e: int):
        return FqElem(self.field, self.field.pow(self.value, e))

    def __bool__(self) -> bool:
        return self.value != 0

    def frobenius_root(self) -> FqElem:
        return FqElem(self.field, self.field.frobenius_root(self.value))

    def __repr__(self) -> str:
        return self.field.format(self.value)


def frobenius_root(a: FqElem) -> FqElem:
    """Return r with r**p == a; Frobenius is a bijection on F_q so r is unique."""
    return a.frobenius_root()


# --------------------------------------------------------------------------
# Univariate polynomials
# --------------------------------------------------------------------------


def _strip(coeffs: list[int]) -> tuple[int, ...]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class Poly:
    """Polynomial over a :class:`FiniteField`, coefficients low degree first."""

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field: FiniteField, coeffs: Iterable[int] = ()):
        self.field = field
        self.coeffs = _strip(list(coeffs))
        self._hash = None

    @classmethod
    def x(cls, field: FiniteField) -> Poly:
        return cls(field, (0, 1))

    @classmethod
    def const(cls, field: FiniteField, c: int) -> Poly:
        return cls(field, (c,))

    @classmethod
    def monomial(cls, field: FiniteField, c: int, j: int) -> Poly:
        return cls(field, [0] * j + [c])

    @property
    def degree(self) -> float | int:
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and other.field is self.field and other.coeffs == self.coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field.p, self.field.m, self.coeffs))
        return self._hash

    def _check(self, other: Poly) -> None:
        if other.field is not self.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")

    def __add__(self, other: Poly) -> Poly:
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        F = self.field
        if F.m == 1:
            p = F.p
            out = [(x + y) % p for x, y in zip(a, b)]
        else:
            out = [F.add(x, y) for x, y in zip(a, b)]
        out.extend(a[len(b):])
        return Poly(F, out)

    def __neg__(self) -> Poly:
        F = self.field
        return Poly(F, [F.neg(c) for c in self.coeffs])

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other) -> Poly:
        F = self.field
        if isinstance(other, int):
            return self.scale(F.from_int(other))
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(F)
        if F.m == 1:
            p = F.p
            out = [0] * (len(a) + len(b) - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        out[i + j] += x * y
            return Poly(F, [c % p for c in out])
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = F.add(out[i + j], F.mul(x, y))
        return Poly(F, out)

    __rmul__ = __mul__

    def scale(self, c: int) -> Poly:
        F = self.field
        return Poly(F, [F.mul(c, x) for x in self.coeffs])

    def __pow__(self, e: int) -> Poly:
        if e < 0:
            raise InputError("negative power of a polynomial")
        result = Poly(self.field, (1,))
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def frobenius(self) -> Poly:
        """Return self^p, computed coefficientwise (char p)."""
        F, p = self.field, self.field.p
        out = [0] * (p * (len(self.coeffs) - 1) + 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            out[p * i] = F.pow(c, p)
        return Poly(F, out)

    def __divmod__(self, other: Poly) -> tuple[Poly, Poly]:
        self._check(other)
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        F = self.field
        rem = list(self.coeffs)
        db = len(other.coeffs) - 1
        inv_lead = F.inv(other.lead)
        if len(rem) - 1 < db:
            return Poly(F), Poly(F, rem)
        quot = [0] * (len(rem) - db)
        bc = other.coeffs
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if not c:
                continue
            c = F.mul(c, inv_lead)
            quot[k - db] = c
            for j in range(db + 1):
                rem[k - db + j] = F.sub(rem[k - db + j], F.mul(c, bc[j]))
        return Poly(F, quot), Poly(F, rem[:db])

    def __floordiv__(self, other: Poly) -> Poly:
        return divmod(self, other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return divmod(self, other)[1]

    def __call__(self, a: int) -> int:
        F = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, a), c)
        return acc

    def taylor_shift(self, r: int) -> Poly:
        """Return self(x + r)."""
        F = self.field
        shifted = Poly(F)
        lin = Poly(F, (r, 1))
        for c in reversed(self.coeffs):
            shifted = shifted * lin + Poly(F, (c,))
        return shifted

    def derivative(self) -> Poly:
        F = self.field
        return Poly(F, [F.mul(F.from_int(i), c) for i, c in enumerate(self.coeffs)][1:])

    def monic(self) -> Poly:
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.lead))

    def gcd(self, other: Poly) -> Poly:
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def roots(self) -> list[int]:
        """All roots in F_q by exhaustive evaluation (q <= 2^16)."""
        return [a for a in range(self.field.q) if self(a) == 0]

    def terms(self) -> dict[int, int]:
        return {i: c for i, c in enumerate(self.coeffs) if c}

    def __repr__(self) -> str:
        return format_terms(self.field, ((c, _x_power(i)) for i, c in reversed(list(enumerate(self.coeffs)))))


def _x_power(i: int) -> str:
    return "" if i == 0 else ("x" if i == 1 else f"x^{i}")


def format_terms(field: FiniteField, pairs: Iterable[tuple[int, str]]) -> str:
    """Render sum(c * mono) with ``mono == ""`` meaning the constant term."""
    parts = []
    for c, mono in pairs:
        if not c:
            continue
        cs = field.format(c)
        if field.m > 1 and " + " in cs:
            cs = f"({cs})"
        if not mono:
            parts.append(cs)
        elif cs == "1":
            parts.append(mono)
        else:
            parts.append(f"{cs}*{mono}")
    return " + ".join(parts) if parts else "0"


def power_series_inverse(f: Poly, k: int) -> Poly:
    """Inverse of f modulo t^k; needs f(0) != 0."""
    F = f.field
    c0 = f.coeffs[0] if f.coeffs else 0
    if c0 == 0:
        raise DivisionByZero("power series with zero constant term")
    inv0 = F.inv(c0)
    fc = list(f.coeffs) + [0] * k
    g = [0] * k
    for n in range(k):
        s = 1 if n == 0 else 0
        for i in range(1, n + 1):
            s = F.sub(s, F.mul(fc[i], g[n - i]))
        g[n] = F.mul(s, inv0)
    return Poly(F, g)


# --------------------------------------------------------------------------
# Coordinate rings A = F_q[x, 1/h]
# --------------------------------------------------------------------------

GEOMETRIC = "geometric"
ARITHMETIC = "arithmetic"


class CoordinateRing:
    """A = F_q[x, 1/h] for h squarefree and split over F_q.

    This is the coordinate ring of P^1 minus the roots of h and infinity, so
    it has ``deg(h) + 1`` punctures.  ``mode`` only matters to the
    Artin-Schreier-Witt routines: geometric mode treats constants as trivial,
    emulating an algebraically closed base field.
    """

    def __init__(self, field: FiniteField, h: Poly | Sequence[int], mode: str = GEOMETRIC):
        if not isinstance(h, Poly):
            h = Poly(field, h)
        if h.field is not field:
            raise FieldMismatch("h must have coefficients in the base field")
        if h.is_zero():
            raise NotSquarefreeSplit("h must be nonzero")
        if mode not in (GEOMETRIC, ARITHMETIC):
            raise InputError(f"unknown mode {mode!r}")
        h = h.monic()
        roots = h.roots()
        if len(roots) != h.degree:
            raise NotSquarefreeSplit(f"h = {h!r} is not a product of distinct rational linear factors")
        self.field = field
        self.p = field.p
        self.h = h
        self.mode = mode
        self.roots = tuple(roots)
        x = Poly.x(field)
        self.cofactors = tuple(h // (x - Poly.const(field, r)) for r in roots)
        self._h_powers = [Poly(field, (1,)), h]

    @property
    def num_punctures(self) -> int:
        return len(self.roots) + 1

    def key(self) -> tuple:
        return (self.field.p, self.field.m, self.h.coeffs, self.mode)

    def __eq__(self, other) -> bool:
        return isinstance(other, CoordinateRing) and other.key() == self.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def with_mode(self, mode: str) -> CoordinateRing:
        return CoordinateRing(self.field, self.h, mode)

    def h_power(self, k: int) -> Poly:
        while len(self._h_powers) <= k:
            self._h_powers.append(self._h_powers[-1] * self.h)
        return self._h_powers[k]

    def __repr__(self) -> str:
        return describe_ring(self)

    # element constructors
    def __call__(self, value) -> RingElem:
        if isinstance(value, RingElem):
            if value.ring != self:
                raise RingMismatch("element of a different ring")
            return value
        if isinstance(value, Poly):
            return RingElem(self, value, 0)
        if isinstance(value, FqElem):
            return RingElem(self, Poly.const(self.field, value.value), 0)
        if isinstance(value, int):
            return RingElem(self, Poly.const(self.field, self.field.from_int(value)), 0)
        raise InputError(f"cannot coerce {value!r} into {self!r}")

    @property
    def zero(self) -> RingElem:
        return RingElem(self, Poly(self.field), 0)

    @property
    def one(self) -> RingElem:
        return RingElem(self, Poly.const(self.field, 1), 0)

    @property
    def x(self) -> RingElem:
        return RingElem(self, Poly.x(self.field), 0)

    def const(self, c: int) -> RingElem:
        return RingElem(self, Poly.const(self.field, c), 0)

    def x_power(self, c: int, j: int) -> RingElem:
        return RingElem(self, Poly.monomial(self.field, c, j), 0)

    def pole(self, i: int, j: int, c: int = 1) -> RingElem:
        """c * (x - r_i)^(-j) as g_i^j / h^j, g_i = h / (x - r_i)."""
        num = (self.cofactors[i] ** j).scale(c)
        return RingElem(self, num, j)

    def from_partial_fractions(self, poly: dict[int, int], poles: Sequence[dict[int, int]] = ()) -> RingElem:
        F = self.field
        total = RingElem(self, Poly(F, _dense(poly)), 0)
        for i, part in enumerate(poles):
            for j, c in part.items():
                if c:
                    total = total + self.pole(i, j, c)
        return total


def _dense(terms: dict[int, int]) -> list[int]:
    if not terms:
        return []
    out = [0] * (max(terms) + 1)
    for j, c in terms.items():
        out[j] = c
    return out


class RingElem:
    """num / h^k in normal form (k == 0 or h does not divide num)."""

    __slots__ = ("ring", "num", "k", "_pf")

    def __init__(self, ring: CoordinateRing, num: Poly, k: int = 0, *, normalized: bool = False):
        self.ring = ring
        if not normalized:
            num, k = _normalize(ring, num, k)
        self.num = num
        self.k = k
        self._pf = None

    def _check(self, other: RingElem) -> None:
        if other.ring is not self.ring and other.ring != self.ring:
            raise RingMismatch("elements of different coordinate rings")

    def _coerce(self, other) -> RingElem:
        if isinstance(other, RingElem):
            self._check(other)
            return other
        return self.ring(other)

    def __add__(self, other) -> RingElem:
        other = self._coerce(other)
        if other.k == self.k:
            return RingElem(self.ring, self.num + other.num, self.k)
        if self.k < other.k:
            a, b = self, other
        else:
            a, b = other, self
        lifted = a.num * self.ring.h_power(b.k - a.k)
        return RingElem(self.ring, lifted + b.num, b.k)

    __radd__ = __add__

    def __neg__(self) -> RingElem:
        return RingElem(self.ring, -self.num, self.k, normalized=True)

    def __sub__(self, other) -> RingElem:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> RingElem:
        return self._coerce(other) - self

    def __mul__(self, other) -> RingElem:
        other = self._coerce(other)
        if self.k == 0 and other.k == 0:
            return RingElem(self.ring, self.num * other.num, 0, normalized=True)
        return RingElem(self.ring, self.num * other.num, self.k + other.k)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> RingElem:
        if e < 0:
            return self.inverse() ** (-e)
        result = self.ring.one
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def frobenius(self) -> RingElem:
        """self^p via coefficientwise Frobenius on numerator."""
        num = self.num.frobenius()
        if self.k == 0:
            return RingElem(self.ring, num, 0, normalized=True)
        return RingElem(self.ring, num, self.k * self.ring.p)

    def inverse(self) -> RingElem:
        """Inverse in A; exists iff the numerator divides a power of h."""
        if self.num.is_zero():
            raise DivisionByZero("zero is not a unit")
        deg = int(self.num.degree)
        hk = self.ring.h_power(deg)
        quot, rem = divmod(hk, self.num)
        if not rem.is_zero():
            raise DivisionByZero(f"{self!r} is not a unit of {self.ring!r}")
        return RingElem(self.ring, quot * self.ring.h_power(self.k), deg)

    def __truediv__(self, other) -> RingElem:
        return self * self._coerce(other).inverse()

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.ring(other)
        if not isinstance(other, RingElem):
            return NotImplemented
        return other.ring == self.ring and other.k == self.k and other.num == self.num

    def __hash__(self) -> int:
        return hash((self.num, self.k))

    def partial_fractions(self) -> tuple[dict[int, int], tuple[dict[int, int], ...]]:
        """Split into polynomial part and principal parts at each root of h.

        Returns ``(poly, poles)`` where ``poly`` maps exponent j to the
        coefficient of x^j, and ``poles[i]`` maps j >= 1 to the coefficient of
        (x - r_i)^(-j).
        """
        if self._pf is None:
            self._pf = _partial_fractions(self)
        return self._pf

    def __repr__(self) -> str:
        poly, poles = self.partial_fractions()
        return format_partial_fractions(self.ring, poly, poles)


def _normalize(ring: CoordinateRing, num: Poly, k: int) -> tuple[Poly, int]:
    if num.is_zero():
        return num, 0
    h = ring.h
    if h.degree == 0:
        return num, 0
    while k > 0:
        q, r = divmod(num, h)
        if not r.is_zero():
            break
        num, k = q, k - 1
    return num, k


def _partial_fractions(a: RingElem) -> tuple[dict[int, int], tuple[dict[int, int], ...]]:
    ring = a.ring
    if a.k == 0:
        return a.num.terms(), tuple({} for _ in ring.roots)
    quot, rem = divmod(a.num, ring.h_power(a.k))
    poles = []
    k = a.k
    for r, g in zip(ring.roots, ring.cofactors):
        # principal part of rem / ((x-r)^k g^k) at x = r, with t = x - r
        shifted = rem.taylor_shift(r)
        gk = (g ** k).taylor_shift(r)
        series = shifted * power_series_inverse(gk, k)
        part = {}
        for l in range(k):
            c = series.coeffs[l] if l < len(series.coeffs) else 0
            if c:
                part[k - l] = c
        poles.append(part)
    return quot.terms(), tuple(poles)


def format_partial_fractions(ring: CoordinateRing, poly: dict[int, int], poles: Sequence[dict[int, int]]) -> str:
    F = ring.field
    pairs = [(poly[j], _x_power(j)) for j in sorted(poly, reverse=True)]
    for r, part in zip(ring.roots, poles):
        base = "x" if r == 0 else f"(x - {F.format(r)})"
        for j in sorted(part):
            pairs.append((part[j], f"{base}^-{j}"))
    return format_terms(F, pairs)


def describe_ring(ring: CoordinateRing) -> str:
    return f"F({ring.field.p},{ring.field.m})[x,1/({ring.h!r})]"
