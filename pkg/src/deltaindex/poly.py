"""Exact coefficient fields, monomial orders and sparse multivariate polynomials.

Everything here is immutable once built. Coefficients are plain Python ints
(reduced modulo p) for prime fields and :class:`fractions.Fraction` for the
rationals, so there is no floating point anywhere.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

DEFAULT_PRIME = 1048583

Monomial = tuple  # exponent vector, one slot per ambient variable


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class PrimeField:
    """Residues modulo a prime ``p``."""

    def __init__(self, p: int = DEFAULT_PRIME):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p

    def norm(self, c):
        return c % self.p

    def inv(self, c):
        if c % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(c, -1, self.p)

    def convert(self, c):
        if isinstance(c, Fraction):
            return self.norm(c.numerator) * self.inv(c.denominator) % self.p
        return int(c) % self.p

    def to_int_repr(self, c):
        """Symmetric representative in (-p/2, p/2], used for printing."""
        c %= self.p
        return c - self.p if c > self.p // 2 else c

    def random_element(self, rng, nonzero=True):
        return rng.randrange(1 if nonzero else 0, self.p)

    @property
    def spec(self):
        return {"prime": self.p}

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


class RationalField:
    """Arbitrary-precision rationals."""

    p = 0

    def norm(self, c):
        return c if isinstance(c, Fraction) else Fraction(c)

    def inv(self, c):
        if c == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(c)

    def convert(self, c):
        return Fraction(c)

    def to_int_repr(self, c):
        return c

    def random_element(self, rng, nonzero=True):
        # small integers keep rational blow-up in check
        while True:
            c = rng.randrange(-1000, 1001)
            if c or not nonzero:
                return Fraction(c)

    @property
    def spec(self):
        return {"rationals": True}

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


def field_from_spec(spec) -> PrimeField | RationalField:
    if spec is None:
        return PrimeField()
    if "prime" in spec:
        return PrimeField(int(spec["prime"]))
    if spec.get("rationals"):
        return RationalField()
    raise ValueError(f"unknown field spec {spec!r}")


# ---------------------------------------------------------------- orders


class Ordering(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


@dataclass(frozen=True)
class TermOrder:
    """A monomial order on exponent vectors.

    ``kind`` is one of ``lex``, ``degrevlex`` (global), ``negdegrevlex``
    (local: 1 is the largest monomial), ``product`` (two degrevlex blocks,
    the first ``block`` variables eliminated first) or ``weighted``
    (``weights`` dot product first, then degrevlex).  ``priority`` lists the
    variable indices from most to least significant.
    """

    kind: str
    nvars: int
    priority: tuple = None
    block: int = 0
    weights: tuple = None
    _keyfn: object = field(default=None, compare=False, hash=False, repr=False)

    KINDS = ("lex", "degrevlex", "negdegrevlex", "product", "weighted")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown order kind {self.kind!r}")
        if self.priority is not None:
            if sorted(self.priority) != list(range(self.nvars)):
                raise ValueError("priority must be a permutation of the variables")
            object.__setattr__(self, "priority", tuple(self.priority))
        if self.weights is not None:
            object.__setattr__(self, "weights", tuple(self.weights))
        object.__setattr__(self, "_keyfn", self._build_key())

    def _build_key(self):
        perm = self.priority
        kind = self.kind

        def permute(m):
            return m if perm is None else tuple(m[i] for i in perm)

        def revneg(m):
            return tuple(-e for e in reversed(m))

        if kind == "lex":
            return permute
        if kind == "degrevlex":
            return lambda m: (sum(m), revneg(permute(m)))
        if kind == "negdegrevlex":
            return lambda m: (-sum(m), revneg(permute(m)))
        if kind == "product":
            k = self.block

            def key(m):
                m = permute(m)
                a, b = m[:k], m[k:]
                return (sum(a), revneg(a), sum(b), revneg(b))

            return key
        w = self.weights

        def wkey(m):
            m2 = permute(m)
            return (sum(x * y for x, y in zip(w, m)), sum(m), revneg(m2))

        return wkey

    def key(self, m):
        """Sort key: a larger key means a larger monomial."""
        return self._keyfn(m)

    @property
    def is_local(self) -> bool:
        return self.kind == "negdegrevlex"

    def compare(self, m1, m2) -> Ordering:
        return compare_monomials(m1, m2, self)


def compare_monomials(m1, m2, order: TermOrder) -> Ordering:
    if len(m1) != len(m2) or len(m1) != order.nvars:
        raise ValueError("monomial arity mismatch")
    k1, k2 = order.key(tuple(m1)), order.key(tuple(m2))
    if k1 == k2:
        return Ordering.EQ
    return Ordering.GT if k1 > k2 else Ordering.LT


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def mono_divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


# ---------------------------------------------------------------- rings


class PolyRing:
    """Ambient polynomial ring k[x_1..x_n] with an active term order."""

    def __init__(self, field, names: Sequence[str], order: TermOrder | str = "degrevlex"):
        names = tuple(names)
        if not names:
            raise ValueError("empty variable list")
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        for nm in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", nm):
                raise ValueError(f"bad variable name {nm!r}")
        self.field = field
        self.names = names
        self.nvars = len(names)
        if isinstance(order, str):
            order = TermOrder(order, self.nvars)
        if order.nvars != self.nvars:
            raise ValueError("order arity mismatch")
        self.order = order

    def with_order(self, order: TermOrder | str) -> "PolyRing":
        return PolyRing(self.field, self.names, order)

    def extend(self, new_names: Sequence[str], order: TermOrder | str = "degrevlex") -> "PolyRing":
        return PolyRing(self.field, self.names + tuple(new_names), order)

    @property
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    @property
    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = self.field.convert(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def monomial(self, exps, c=1) -> "Polynomial":
        c = self.field.convert(c)
        return Polynomial(self, {tuple(exps): c} if c else {})

    def gens(self) -> list:
        out = []
        for i in range(self.nvars):
            e = [0] * self.nvars
            e[i] = 1
            out.append(self.monomial(e))
        return out

    def var(self, name: str) -> "Polynomial":
        return self.gens()[self.names.index(name)]

    def __call__(self, text) -> "Polynomial":
        if isinstance(text, Polynomial):
            return self.coerce(text)
        if isinstance(text, (int, Fraction)):
            return self.constant(text)
        return parse_polynomial(text, self)

    def coerce(self, f: "Polynomial") -> "Polynomial":
        """Re-home ``f`` into this ring (same variables and field, maybe a new order)."""
        if f.ring is self:
            return f
        if f.ring.names == self.names and f.ring.field == self.field:
            return Polynomial(self, f.terms)
        raise ValueError("polynomial lives in a different ring")

    def embed(self, f: "Polynomial", positions: Sequence[int]) -> "Polynomial":
        """Map ``f`` from a smaller ring, sending its variable ``j`` to our ``positions[j]``."""
        out = {}
        for m, c in f.terms.items():
            e = [0] * self.nvars
            for j, k in enumerate(positions):
                e[k] = m[j]
            out[tuple(e)] = c
        return Polynomial(self, out)

    def same_as(self, other: "PolyRing") -> bool:
        return self.names == other.names and self.field == other.field

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.same_as(other) and self.order == other.order

    def __hash__(self):
        return hash((self.names, self.field, self.order))

    def __repr__(self):
        return f"PolyRing({self.field!r}, {list(self.names)}, {self.order.kind})"


class Polynomial:
    """Sparse polynomial: a dict from exponent tuples to nonzero coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- structure
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def sorted_terms(self, order: TermOrder | None = None) -> list:
        order = order or self.ring.order
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def leading_term(self, order: TermOrder | None = None):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        order = order or self.ring.order
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    def leading_monomial(self, order=None):
        return self.leading_term(order)[0]

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def order_at_origin(self) -> int:
        """Lowest total degree of a term (the ``m``-adic order in the ambient ring)."""
        return min((sum(m) for m in self.terms), default=-1)

    def constant_term(self):
        return self.terms.get((0,) * self.ring.nvars, 0)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def support_vars(self) -> set:
        return {i for m in self.terms for i, e in enumerate(m) if e}

    # -- arithmetic
    def _check(self, other):
        if isinstance(other, Polynomial):
            if other.ring is not self.ring and not other.ring.same_as(self.ring):
                raise ValueError("polynomials live in different rings")
            return other
        return self.ring.constant(other)

    def __add__(self, other):
        other = self._check(other)
        norm = self.ring.field.norm
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = norm(out.get(m, 0) + c)
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        norm = self.ring.field.norm
        return Polynomial(self.ring, {m: norm(-c) for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        other = self._check(other)
        norm = self.ring.field.norm
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = norm(out.get(m, 0) + c1 * c2)
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def scale(self, c):
        F = self.ring.field
        c = F.convert(c)
        if not c:
            return self.ring.zero
        return Polynomial(self.ring, {m: F.norm(v * c) for m, v in self.terms.items()})

    def mul_monomial(self, exps, c=1):
        F = self.ring.field
        c = F.convert(c)
        return Polynomial(self.ring, {mono_mul(m, exps): F.norm(v * c) for m, v in self.terms.items()} if c else {})

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def substitute(self, values: dict) -> "Polynomial":
        """Substitute polynomials for variables; keys are variable indices or names."""
        R = self.ring
        values = {(R.names.index(k) if isinstance(k, str) else k): v for k, v in values.items()}
        out = R.zero
        for m, c in self.terms.items():
            t = R.constant(c)
            for i, e in enumerate(m):
                if e:
                    t = t * (values[i] ** e if i in values else R.gens()[i] ** e)
            out = out + t
        return out

    # -- comparison / printing
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring.same_as(other.ring) and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == self.ring.constant(other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


# ---------------------------------------------------------------- printing


def _format_coeff(field, c):
    c = field.to_int_repr(c)
    if isinstance(c, Fraction) and c.denominator == 1:
        c = c.numerator
    return str(c)


def _format_monomial(names, m):
    parts = []
    for nm, e in zip(names, m):
        if e == 1:
            parts.append(nm)
        elif e > 1:
            parts.append(f"{nm}^{e}")
    return "*".join(parts)


def format_polynomial(f: Polynomial, order: TermOrder | None = None) -> str:
    """Canonical text: terms in descending order, explicit ``^`` and ``*``."""
    if not f.terms:
        return "0"
    pieces = []
    for m, c in f.sorted_terms(order):
        cs = _format_coeff(f.ring.field, c)
        ms = _format_monomial(f.ring.names, m)
        if not ms:
            s = cs
        elif cs == "1":
            s = ms
        elif cs == "-1":
            s = "-" + ms
        else:
            s = f"{cs}*{ms}"
        if pieces and not s.startswith("-"):
            s = "+" + s
        pieces.append(s)
    return "".join(pieces)


# ---------------------------------------------------------------- parsing


class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        super().__init__(f"{message} at position {position}" + (f" in {text!r}" if text else ""))
        self.position = position


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokenize(text):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            out.append(("num", int(m.group(1)), start))
        elif m.group(2) is not None:
            out.append(("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*^()/":
                raise ParseError(f"unexpected character {ch!r}", start, text)
            out.append((ch, ch, start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    def __init__(self, text, ring):
        self.text = text
        self.ring = ring
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        t = self.toks[self.i]
        if kind is not None and t[0] != kind:
            what = "end of input" if t[0] == "end" else repr(t[1])
            raise ParseError(f"expected {kind!r}, found {what}", t[2], self.text)
        self.i += 1
        return t

    def parse(self):
        if self.peek()[0] == "end":
            raise ParseError("empty expression", 0, self.text)
        f = self.expr()
        t = self.peek()
        if t[0] != "end":
            raise ParseError(f"unexpected token {t[1]!r}", t[2], self.text)
        return f

    def expr(self):
        f = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            g = self.term()
            f = f + g if op == "+" else f - g
        return f

    def term(self):
        f = self.unary()
        while self.peek()[0] in ("*", "/"):
            op, _, pos = self.take()
            g = self.unary()
            if op == "*":
                f = f * g
            else:
                if not g.is_constant() or g.is_zero():
                    raise ParseError("division only by a nonzero constant", pos, self.text)
                f = f.scale(self.ring.field.inv(g.constant_term()))
        return f

    def unary(self):
        t = self.peek()
        if t[0] == "-":
            self.take()
            return -self.unary()
        if t[0] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            t = self.take("num")
            base = base ** t[1]
        return base

    def atom(self):
        t = self.peek()
        if t[0] == "num":
            self.take()
            return self.ring.constant(t[1])
        if t[0] == "name":
            self.take()
            if t[1] not in self.ring.names:
                raise ParseError(f"unknown variable {t[1]!r}", t[2], self.text)
            return self.ring.var(t[1])
        if t[0] == "(":
            self.take()
            f = self.expr()
            self.take(")")
            return f
        what = "end of input" if t[0] == "end" else repr(t[1])
        raise ParseError(f"unexpected {what}", t[2], self.text)


def parse_polynomial(text: str, ring_or_vars, field=None) -> Polynomial:
    """Parse ``text`` (integer coefficients, ``^ * + - ( )``) into a Polynomial.

    ``ring_or_vars`` is a :class:`PolyRing` or a list of variable names, in
    which case a degrevlex ring over ``field`` (default GF(1048583)) is built.
    """
    ring = ring_or_vars
    if not isinstance(ring, PolyRing):
        ring = PolyRing(field or PrimeField(), ring_or_vars)
    return _Parser(text, ring).parse()


def poly_arith(op: str, f: Polynomial, g) -> Polynomial:
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    if op == "scale":
        return f.scale(g)
    raise ValueError(f"unknown operation {op!r}")


def parse_many(texts: Iterable[str], ring: PolyRing) -> list:
    return [parse_polynomial(t, ring) for t in texts]
