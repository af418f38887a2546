"""Text formats for rings, ring elements, Witt vectors and groups.

Rings:    ``F(p,m)[x,1/h]`` (``Fq`` is accepted for ``F``), e.g.
          ``F(5,1)[x,1/(x*(x-1))]``; ``[x]`` or ``1/1`` is the affine line.
Elements: expressions in ``x`` and the field generator ``w`` with integers,
          ``+ - * / ^`` and parentheses; ``/`` divides by units of A.
Vectors:  ``(a_1, ..., a_n)`` or a single element when n = 1.
Groups:   ``deg=N; gens=(0 1 2)(3 4),(0 1)`` or ``name=S4`` (also ``A5``,
          ``Z/6``, ``D8``, ``Q8``, ``Heis(3,1)``, products joined by ``x``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Any, Callable

from .algebra import GEOMETRIC, GF, CoordinateRing, FiniteField, Poly, RingElem
from .errors import DivisionByZero, ParseError
from .groups import (
    PermGroup,
    alternating,
    cyclic,
    dihedral,
    direct_product,
    from_cycles,
    heisenberg,
    quaternion,
    symmetric,
)
from .witt import WittVector

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot tokenize {text[pos:]!r}")
        tokens.append(m.group(m.lastindex))
        pos = m.end()
    return tokens


@dataclass
class _Algebra:
    """How to build values of the target type while parsing."""

    const: Callable[[int], Any]
    symbols: dict[str, Any]
    div: Callable[[Any, Any], Any]


class _Parser:
    # expr := term (('+'|'-') term)* ; term := unary (('*'|'/'|implicit) unary)*
    # unary := '-' unary | power ; power := atom ('^' ('-')? int)?
    def __init__(self, text: str, alg: _Algebra):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.alg = alg
        self.text = text

    def peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ParseError(f"expected {expected or 'token'} in {self.text!r}, got {tok!r}")
        self.pos += 1
        return tok

    def parse(self) -> Any:
        value = self.expr()
        if self.peek() is not None:
            raise ParseError(f"unexpected {self.peek()!r} in {self.text!r}")
        return value

    def expr(self) -> Any:
        value = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> Any:
        value = self.unary()
        while True:
            tok = self.peek()
            if tok == "*":
                self.take()
                value = value * self.unary()
            elif tok == "/":
                self.take()
                value = self.alg.div(value, self.unary())
            elif tok is not None and (tok == "(" or tok.isalnum()):
                value = value * self.unary()  # implicit multiplication, e.g. 2x
            else:
                return value

    def unary(self) -> Any:
        if self.peek() == "-":
            self.take()
            return -self.unary()
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Any:
        base = self.atom()
        if self.peek() == "^":
            self.take()
            sign = 1
            if self.peek() == "-":
                self.take()
                sign = -1
            tok = self.take()
            if not tok.isdigit():
                raise ParseError(f"exponent must be an integer in {self.text!r}")
            e = sign * int(tok)
            if e < 0:
                return self.alg.div(self.alg.const(1), base ** (-e))
            return base**e
        return base

    def atom(self) -> Any:
        tok = self.take()
        if tok == "(":
            value = self.expr()
            self.take(")")
            return value
        if tok.isdigit():
            return self.alg.const(int(tok))
        if tok in self.alg.symbols:
            return self.alg.symbols[tok]
        raise ParseError(f"unknown symbol {tok!r} in {self.text!r}")


def _field_symbols(F: FiniteField) -> dict[str, int]:
    return {"w": F.gen.value} if F.m > 1 else {}


def parse_poly(F: FiniteField, text: str) -> Poly:
    """A polynomial in x over F; only division by nonzero constants is allowed."""

    def const(n: int) -> Poly:
        return Poly.const(F, F.from_int(n))

    def div(a: Poly, b: Poly) -> Poly:
        if b.degree != 0:
            raise ParseError("polynomial division by a non-constant")
        return a.scale(F.inv(b.coeffs[0]))

    symbols: dict[str, Any] = {"x": Poly.x(F)}
    symbols.update({k: Poly.const(F, v) for k, v in _field_symbols(F).items()})
    return _Parser(text, _Algebra(const, symbols, div)).parse()


def parse_element(ring: CoordinateRing, text: str) -> RingElem:
    """An element of A = F_q[x, 1/h]."""
    F = ring.field

    def div(a: RingElem, b: RingElem) -> RingElem:
        try:
            return a / b
        except (DivisionByZero, ZeroDivisionError, ArithmeticError) as exc:
            raise ParseError(f"cannot divide by {b!r} in A: {exc}") from None

    symbols: dict[str, Any] = {"x": ring.x}
    symbols.update({k: ring.const(v) for k, v in _field_symbols(F).items()})
    return _Parser(text, _Algebra(lambda n: ring.const(F.from_int(n)), symbols, div)).parse()


_RING = re.compile(r"^\s*Fq?\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*\[\s*x\s*(?:,\s*1\s*/\s*(.+?))?\s*\]\s*$")


def parse_field(text: str) -> FiniteField:
    m = re.match(r"^\s*Fq?\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*$", text)
    if not m:
        raise ParseError(f"bad field descriptor {text!r}; expected F(p,m)")
    return GF(int(m.group(1)), int(m.group(2)))


def parse_ring(text: str, mode: str = GEOMETRIC) -> CoordinateRing:
    m = _RING.match(text)
    if not m:
        raise ParseError(f"bad ring descriptor {text!r}; expected F(p,m)[x,1/h]")
    F = GF(int(m.group(1)), int(m.group(2)))
    h = parse_poly(F, m.group(3)) if m.group(3) else Poly.const(F, 1)
    if h.is_zero():
        raise ParseError("h must be nonzero")
    return CoordinateRing(F, h, mode)


def split_top_level(text: str, sep: str = ",") -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts]


def _outer_parens(text: str) -> bool:
    """True when text is a single parenthesized group."""
    if not (text.startswith("(") and text.endswith(")")):
        return False
    depth = 0
    for i, ch in enumerate(text):
        depth += ch == "("
        depth -= ch == ")"
        if depth == 0 and i < len(text) - 1:
            return False
    return True


def parse_witt_vector(ring: CoordinateRing, text: str, n: int | None = None) -> WittVector:
    text = text.strip()
    comps = [text]
    if _outer_parens(text) and n != 1:
        inner = split_top_level(text[1:-1])
        if n is not None or len(inner) > 1:
            comps = inner
    if n is not None and len(comps) != n:
        raise ParseError(f"expected {n} components, got {len(comps)} in {text!r}")
    return WittVector(ring, [parse_element(ring, c) for c in comps])


# ---------------------------------------------------------------------------
# groups
# ---------------------------------------------------------------------------

_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_perm(degree: int, text: str):
    text = text.strip()
    if not re.fullmatch(r"(\([^()]*\))+", text):
        raise ParseError(f"bad cycle notation {text!r}")
    cycles = []
    for body in _CYCLE.findall(text):
        pts = [int(t) for t in re.split(r"[\s,]+", body.strip()) if t]
        if pts:
            cycles.append(pts)
    try:
        return from_cycles(degree, cycles)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def _named_group(name: str) -> PermGroup:
    name = name.strip()
    parts = [s for s in re.split(r"\s*x\s*", name) if s] if re.search(r"\sx\s|\)x|\dx", name) else [name]
    if len(parts) > 1:
        return direct_product(*(_named_group(p) for p in parts))
    patterns: list[tuple[str, Callable[..., PermGroup]]] = [
        (r"S(\d+)", lambda k: symmetric(int(k))),
        (r"A(\d+)", lambda k: alternating(int(k))),
        (r"Z/?(\d+)", lambda k: cyclic(int(k))),
        (r"C(\d+)", lambda k: cyclic(int(k))),
        (r"D(\d+)", lambda k: dihedral(int(k) // 2)),
        (r"Q8", lambda: quaternion()),
        (r"Heis\((\d+),(\d+)\)", lambda p, m: heisenberg(int(p), int(m))),
    ]
    for pat, build in patterns:
        m = re.fullmatch(pat, name)
        if m:
            if pat.startswith("D") and (int(m.group(1)) % 2 or int(m.group(1)) < 6):
                raise ParseError("dihedral groups are D2n with n >= 3")
            return build(*m.groups())
    raise ParseError(f"unknown group name {name!r}")


def split_generators(text: str) -> list[str]:
    """Split ``(0 1 2),(0 1)(2 3)`` into one cycle-notation string per generator."""
    text = text.strip()
    if text in ("", "()"):
        return []
    return [g.strip() for g in re.split(r"(?<=\))\s*,\s*(?=\()", text)]


def parse_generators(degree: int, text: str) -> list:
    return [parse_perm(degree, g) for g in split_generators(text)]


def parse_group(text: str) -> PermGroup:
    """``deg=N; gens=...`` or ``name=...``."""
    fields = {}
    for part in text.split(";"):
        if not part.strip():
            continue
        if "=" not in part:
            raise ParseError(f"bad group descriptor part {part!r}")
        k, v = part.split("=", 1)
        fields[k.strip()] = v.strip()
    if set(fields) == {"name"}:
        return _named_group(fields["name"])
    if "deg" not in fields or not set(fields) <= {"deg", "gens", "name"}:
        raise ParseError(f"bad group descriptor {text!r}")
    try:
        degree = int(fields["deg"])
    except ValueError:
        raise ParseError(f"bad degree {fields['deg']!r}") from None
    if degree < 1:
        raise ParseError("degree must be >= 1")
    gens = parse_generators(degree, fields.get("gens", ""))
    return PermGroup(degree, gens, name=fields.get("name"))
