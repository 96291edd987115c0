"""Multivariate polynomials over an exact field, plus the presentation parser.

Polynomials are immutable sparse maps from exponent tuples to nonzero
scalars.  The canonical term order is graded reverse lexicographic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import Field, FieldDescriptor, field_create, field_from_order, is_prime
from .arith import extension_field, prime_field, rationals
from .errors import (MissingAssignment, ParseError, RingMismatch,
                     UnknownVariable, UnsupportedField)

Monomial = tuple  # exponent tuple, one entry per ambient variable


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_degree(a: Monomial) -> int:
    return sum(a)


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def grevlex_key(m: Monomial):
    """Sort key; larger key means larger monomial in grevlex."""
    return (sum(m), tuple(-e for e in reversed(m)))


class PolyRing:
    """A polynomial ring K[x_1, ..., x_g] under grevlex."""

    def __init__(self, field: Field, var_names):
        self.field = field
        self.var_names = tuple(var_names)
        self.nvars = len(self.var_names)

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.field == other.field
                and self.var_names == other.var_names)

    def __hash__(self):
        return hash((self.field, self.var_names))

    def __repr__(self):
        return f"PolyRing({self.field.descriptor}, {list(self.var_names)})"

    def zero(self):
        return MultiPoly(self, {})

    def one(self):
        return self.const(self.field.one)

    def const(self, c):
        if not c:
            return MultiPoly(self, {})
        return MultiPoly(self, {(0,) * self.nvars: c})

    def var(self, i: int):
        exps = [0] * self.nvars
        exps[i] = 1
        return MultiPoly(self, {tuple(exps): self.field.one})

    def monomial(self, exps, coeff=None):
        c = self.field.one if coeff is None else coeff
        if not c:
            return self.zero()
        return MultiPoly(self, {tuple(exps): c})


class MultiPoly:
    """Immutable sparse multivariate polynomial."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms

    # -- queries

    def is_zero(self):
        return not self.terms

    def total_degree(self):
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self):
        degs = {sum(m) for m in self.terms}
        return len(degs) <= 1

    def leading_monomial(self) -> Monomial:
        return max(self.terms, key=grevlex_key)

    def leading_coeff(self):
        return self.terms[self.leading_monomial()]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: grevlex_key(kv[0]),
                      reverse=True)

    def coeff(self, mono: Monomial):
        return self.terms.get(tuple(mono), self.ring.field.zero)

    # -- arithmetic

    def _check(self, other):
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")

    def __add__(self, other):
        self._check(other)
        add = self.ring.field.add
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = add(out[m], c) if m in out else c
            if v:
                out[m] = v
            elif m in out:
                del out[m]
        return MultiPoly(self.ring, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        neg = self.ring.field.neg
        return MultiPoly(self.ring, {m: neg(c) for m, c in self.terms.items()})

    def __mul__(self, other):
        self._check(other)
        mul = self.ring.field.mul
        add = self.ring.field.add
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                v = mul(c1, c2)
                if m in out:
                    v = add(out[m], v)
                if v:
                    out[m] = v
                elif m in out:
                    del out[m]
        return MultiPoly(self.ring, out)

    def scale(self, c):
        if not c:
            return self.ring.zero()
        mul = self.ring.field.mul
        out = {}
        for m, v in self.terms.items():
            w = mul(c, v)
            if w:
                out[m] = w
        return MultiPoly(self.ring, out)

    def mul_monomial(self, mono: Monomial, coeff=None):
        c = self.ring.field.one if coeff is None else coeff
        if not c:
            return self.ring.zero()
        mul = self.ring.field.mul
        return MultiPoly(self.ring,
                         {mono_mul(m, mono): mul(c, v)
                          for m, v in self.terms.items()})

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        acc = self.ring.one()
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def monic(self):
        lc = self.leading_coeff()
        if lc == self.ring.field.one:
            return self
        return self.scale(self.ring.field.inv(lc))

    def __eq__(self, other):
        return (isinstance(other, MultiPoly) and self.ring == other.ring
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    # -- morphisms

    def substitute(self, images: dict):
        """Apply the ring morphism sending variable index i to images[i].

        Every variable occurring in the polynomial must have an image; all
        images must live in one common ring.
        """
        target = None
        for img in images.values():
            if target is None:
                target = img.ring
            elif img.ring != target:
                raise RingMismatch("substitution images live in different rings")
        if target is None:
            target = self.ring
        out = MultiPoly(target, {})
        # cache powers of each image
        powers = {}
        for m, c in self.terms.items():
            part = target.const(c)
            for i, e in enumerate(m):
                if not e:
                    continue
                if i not in images:
                    raise MissingAssignment(
                        f"no image for variable {self.ring.var_names[i]!r}")
                key = (i, e)
                if key not in powers:
                    powers[key] = images[i] ** e
                part = part * powers[key]
            out = out + part
        return out

    def evaluate(self, point):
        """Value at a tuple of scalars, one per ambient variable."""
        f = self.ring.field
        total = f.zero
        for m, c in self.terms.items():
            v = c
            for i, e in enumerate(m):
                for _ in range(e):
                    v = f.mul(v, point[i])
            total = f.add(total, v)
        return total

    # -- printing

    def __str__(self):
        if not self.terms:
            return "0"
        f = self.ring.field
        parts = []
        for m, c in self.sorted_terms():
            cs = f.format_scalar(c)
            mono_parts = []
            for name, e in zip(self.ring.var_names, m):
                if e == 1:
                    mono_parts.append(name)
                elif e > 1:
                    mono_parts.append(f"{name}^{e}")
            negative = cs.startswith("-")
            if negative:
                cs = cs[1:]
            if ("+" in cs or "-" in cs):
                cs = f"({cs})"
            if mono_parts:
                body = "*".join(mono_parts)
                if cs != "1":
                    body = f"{cs}*{body}"
            else:
                body = cs
            parts.append(("-" if negative else "+", body))
        sign, body = parts[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"MultiPoly({self})"


@dataclass(frozen=True)
class AlgebraPresentation:
    """A quotient of a polynomial ring by finitely many relations."""

    field: FieldDescriptor
    variables: tuple
    relations: tuple   # of MultiPoly in the ring over `field` and `variables`

    @property
    def ring(self) -> PolyRing:
        return PolyRing(field_create(self.field), self.variables)

    def __str__(self):
        rels = ", ".join(str(r) for r in self.relations)
        return f"{self.field}[{','.join(self.variables)}]/({rels})"


# ---------------------------------------------------------------------------
# parsing


class _Tokens:
    SYMBOLS = "[]()^*+-,/"

    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.items = []   # (kind, value, position)
        self._scan()
        self.idx = 0

    def _scan(self):
        text = self.text
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
                continue
            if ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                self.items.append(("int", int(text[i:j]), i))
                i = j
                continue
            if ch.isalpha() or ch == "_":
                j = i
                while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                self.items.append(("name", text[i:j], i))
                i = j
                continue
            if ch in self.SYMBOLS:
                self.items.append((ch, ch, i))
                i += 1
                continue
            raise ParseError(f"unexpected character {ch!r}", i)

    def peek(self, offset=0):
        j = self.idx + offset
        return self.items[j] if j < len(self.items) else ("eof", None, len(self.text))

    def next(self):
        tok = self.peek()
        self.idx += 1
        return tok

    def expect(self, kind):
        tok = self.next()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        return tok

    def at_end(self):
        return self.idx >= len(self.items)


def _parse_field_spec(toks: _Tokens) -> FieldDescriptor:
    tok = toks.next()
    if tok[0] != "name":
        raise ParseError("expected a field name", tok[2])
    name = tok[1]
    if name == "Q":
        return rationals()
    if name == "GF":
        toks.expect("(")
        p = toks.expect("int")[1]
        toks.expect(",")
        k = toks.expect("int")[1]
        toks.expect(")")
        if not is_prime(p):
            raise UnsupportedField(f"GF({p},{k}): {p} is not prime")
        if k == 1:
            return prime_field(p)
        return extension_field(p, k)
    if name.startswith("F") and name[1:].isdigit():
        q = int(name[1:])
        try:
            return field_from_order(q).descriptor
        except UnsupportedField:
            raise UnsupportedField(f"F{q}: {q} is not a prime power") from None
    raise UnsupportedField(f"unknown field {name!r}")


def _split_identifier(run: str, pos: int, var_names, allow_t: bool):
    """Split a letter/digit run into declared variable names (longest match
    first) and optional `t` factors."""
    names = sorted(var_names, key=len, reverse=True)
    out = []
    i = 0
    while i < len(run):
        for name in names:
            if run.startswith(name, i):
                out.append(name)
                i += len(name)
                break
        else:
            if allow_t and run[i] == "t":
                out.append("t")
                i += 1
            else:
                raise UnknownVariable(f"unknown variable in {run!r}", pos + i)
    return out


def _parse_poly(toks: _Tokens, ring: PolyRing, stop_kinds=(",", ")")):
    """Signed sum of terms; `*` between factors is optional."""
    field = ring.field
    var_index = {name: i for i, name in enumerate(ring.var_names)}
    allow_t = ring.field.descriptor.kind == "extension"
    total = ring.zero()
    sign = 1
    tok = toks.peek()
    if tok[0] in stop_kinds or tok[0] == "eof":
        raise ParseError("expected a polynomial", tok[2])
    while True:
        # sign prefix
        while toks.peek()[0] in ("+", "-"):
            if toks.next()[0] == "-":
                sign = -sign
        term_coeff = field.one
        exps = [0] * ring.nvars
        saw_factor = False
        while True:
            kind, value, pos = toks.peek()
            if kind == "int":
                toks.next()
                c = field.from_int(value)
                if toks.peek()[0] == "/" and toks.peek(1)[0] == "int":
                    toks.next()
                    den = toks.next()[1]
                    if field.descriptor.kind == "rationals":
                        c = Fraction(value, den)
                    else:
                        c = field.div(c, field.from_int(den))
                term_coeff = field.mul(term_coeff, c)
                saw_factor = True
            elif kind == "name":
                toks.next()
                symbols = _split_identifier(value, pos, ring.var_names, allow_t)
                for sym in symbols:
                    if sym == "t":
                        term_coeff = field.mul(term_coeff, ring.field.gen)
                    else:
                        exps[var_index[sym]] += 1
                # an exponent applies to the final symbol of the run
                if toks.peek()[0] == "^":
                    toks.next()
                    e = toks.expect("int")[1]
                    last = symbols[-1]
                    if last == "t":
                        for _ in range(e - 1):
                            term_coeff = field.mul(term_coeff, ring.field.gen)
                    else:
                        exps[var_index[last]] += e - 1
                saw_factor = True
            elif kind == "*":
                toks.next()
                continue
            else:
                break
        if not saw_factor:
            kind, value, pos = toks.peek()
            raise ParseError(f"expected a term, found {value!r}", pos)
        c = term_coeff if sign > 0 else field.neg(term_coeff)
        total = total + ring.monomial(tuple(exps), c)
        sign = 1
        kind, value, pos = toks.peek()
        if kind in ("+", "-"):
            continue
        if kind in stop_kinds or kind == "eof":
            return total
        raise ParseError(f"unexpected token {value!r} in polynomial", pos)


def _expand_ideal_power(ring: PolyRing, names, k: int):
    """All monomials of degree k in the listed variables."""
    idx = [ring.var_names.index(n) for n in names]

    def rec(start, remaining, exps):
        if remaining == 0:
            yield tuple(exps)
            return
        if start == len(idx):
            return
        for e in range(remaining, -1, -1):
            exps[idx[start]] = e
            yield from rec(start + 1, remaining - e, exps)
        exps[idx[start]] = 0

    monos = sorted(rec(0, k, [0] * ring.nvars), key=grevlex_key, reverse=True)
    return [ring.monomial(m) for m in monos]


def parse_presentation(text: str) -> AlgebraPresentation:
    """Parse strings like ``Q[x,y]/(x^2, y^2)`` or ``F2[x,y]/((x,y)^2)``."""
    toks = _Tokens(text)
    desc = _parse_field_spec(toks)
    field = field_create(desc)
    toks.expect("[")
    variables = []
    while True:
        tok = toks.expect("name")
        if tok[1] == "t" and desc.kind == "extension":
            raise ParseError("'t' is reserved for the extension generator", tok[2])
        variables.append(tok[1])
        nxt = toks.next()
        if nxt[0] == "]":
            break
        if nxt[0] != ",":
            raise ParseError(f"expected ',' or ']', found {nxt[1]!r}", nxt[2])
    if len(set(variables)) != len(variables):
        raise ParseError("duplicate variable name", 0)
    toks.expect("/")
    toks.expect("(")
    ring = PolyRing(field, variables)
    relations = []
    if toks.peek()[0] == ")":
        toks.next()
    elif toks.peek()[0] == "(":
        # ideal power sugar: (v1,...,vg)^k
        toks.next()
        names = []
        while True:
            tok = toks.expect("name")
            if tok[1] not in variables:
                raise UnknownVariable(f"unknown variable {tok[1]!r}", tok[2])
            names.append(tok[1])
            nxt = toks.next()
            if nxt[0] == ")":
                break
            if nxt[0] != ",":
                raise ParseError(f"expected ',' or ')', found {nxt[1]!r}", nxt[2])
        toks.expect("^")
        k = toks.expect("int")[1]
        relations = _expand_ideal_power(ring, names, k)
        toks.expect(")")
    else:
        while True:
            relations.append(_parse_poly(toks, ring))
            nxt = toks.next()
            if nxt[0] == ")":
                break
            if nxt[0] != ",":
                raise ParseError(f"expected ',' or ')', found {nxt[1]!r}", nxt[2])
    if not toks.at_end():
        tok = toks.peek()
        raise ParseError(f"trailing input {tok[1]!r}", tok[2])
    return AlgebraPresentation(desc, tuple(variables), tuple(relations))


def parse_poly(text: str, ring: PolyRing) -> MultiPoly:
    """Parse a single polynomial in an existing ring."""
    toks = _Tokens(text)
    p = _parse_poly(toks, ring, stop_kinds=())
    return p


def parse_scalar_text(field, text: str):
    """Parse a scalar in the field's text syntax (ints, a/b, t-polynomials)."""
    ring = PolyRing(field, ())
    toks = _Tokens(text)
    p = _parse_poly(toks, ring, stop_kinds=())
    return p.coeff(())


def parse_univariate(text: str, field: Field, var: str | None = None):
    """Parse a univariate polynomial; returns (coeff list low->high, var name).

    The variable is inferred when not given; a polynomial mentioning two
    distinct names is rejected.
    """
    toks = _Tokens(text)
    seen = None
    for kind, value, pos in toks.items:
        if kind == "name":
            base = value
            if not base.isalpha():
                raise ParseError(f"invalid variable {value!r}", pos)
            if var is not None and base != var:
                raise UnknownVariable(f"expected variable {var!r}", pos)
            if seen is None:
                seen = base
            elif seen != base:
                raise ParseError(f"two variables {seen!r} and {base!r}", pos)
    name = var or seen or "Z"
    ring = PolyRing(field, (name,))
    p = _parse_poly(_Tokens(text), ring, stop_kinds=())
    deg = p.total_degree()
    coeffs = [field.zero] * (deg + 1) if deg >= 0 else [field.zero]
    for m, c in p.terms.items():
        coeffs[m[0]] = c
    return coeffs, name


def format_univariate(coeffs, field: Field, var: str = "Z") -> str:
    ring = PolyRing(field, (var,))
    p = ring.zero()
    for e, c in enumerate(coeffs):
        p = p + ring.monomial((e,), c)
    return str(p).replace(" ", "")
