"""Sparse exact multivariate polynomials with monomial orders.

Monomials are exponent tuples.  A `Ring` fixes the field, the variable
names, and the monomial order ("grevlex", "lex", or an elimination block
order); a `Poly` is an immutable map from exponent tuples to nonzero
scalars of the ring's field.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from functools import lru_cache

from .errors import InputError, ParseError, PreconditionError
from .field import FieldSpec

Monomial = tuple  # exponent vector, length = number of ring variables

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")

GREVLEX = ("grevlex",)
LEX = ("lex",)


def block_order(k: int) -> tuple:
    """Elimination block order: the first k variables form the leading
    block; grevlex inside each block."""
    return ("block", k)


def monomial_degree(e: Monomial) -> int:
    return sum(e)


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def monomial_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def grevlex_key(e: Monomial):
    return (sum(e), tuple(-x for x in reversed(e)))


def lex_key(e: Monomial):
    return e


@dataclass(frozen=True)
class Ring:
    """A polynomial ring: field, ordered variables, monomial order."""

    field: FieldSpec
    variables: tuple
    order: tuple = GREVLEX

    def __post_init__(self):
        if not self.variables:
            raise InputError("a ring needs at least one variable")
        seen = set()
        for v in self.variables:
            if not isinstance(v, str) or not _IDENT.match(v):
                raise InputError(f"bad variable name {v!r}")
            if v in seen:
                raise InputError(f"duplicate variable name {v!r}")
            seen.add(v)
        if self.order not in (GREVLEX, LEX):
            if not (len(self.order) == 2 and self.order[0] == "block"
                    and 0 < self.order[1] < len(self.variables)):
                raise InputError(f"bad monomial order {self.order!r}")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def var_index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise InputError(f"unknown variable {name!r}") from None

    def key(self, e: Monomial):
        """Sort key: larger key = larger monomial in this ring's order."""
        if self.order == GREVLEX:
            return grevlex_key(e)
        if self.order == LEX:
            return e
        k = self.order[1]
        return (grevlex_key(e[:k]), grevlex_key(e[k:]))

    def unit_monomial(self) -> Monomial:
        return (0,) * self.nvars

    def variable_monomial(self, i: int) -> Monomial:
        return tuple(1 if j == i else 0 for j in range(self.nvars))

    def monomial_str(self, e: Monomial) -> str:
        parts = []
        for name, exp in zip(self.variables, e):
            if exp == 1:
                parts.append(name)
            elif exp > 1:
                parts.append(f"{name}^{exp}")
        return "*".join(parts) if parts else "1"


def ring_make(field: FieldSpec, variables, order=GREVLEX) -> Ring:
    """Construct a ring handle; validates variables and order."""
    if isinstance(order, str):
        order = {"grevlex": GREVLEX, "lex": LEX}.get(order)
        if order is None:
            raise InputError("order must be grevlex, lex, or block(k)")
    return Ring(field, tuple(variables), order)


@lru_cache(maxsize=None)
def monomials_of_degree(nvars: int, d: int) -> tuple:
    """All exponent tuples of total degree d, in grevlex-descending order."""
    if d < 0:
        return ()

    def gen(rest, total):
        if rest == 1:
            yield (total,)
            return
        for first in range(total, -1, -1):
            for tail in gen(rest - 1, total - first):
                yield (first,) + tail

    exps = list(gen(nvars, d))
    exps.sort(key=grevlex_key, reverse=True)
    return tuple(exps)


class Poly:
    """Immutable sparse polynomial.  `terms` maps exponent tuples to
    nonzero scalars; iteration order is unspecified, use sorted_terms()."""

    __slots__ = ("ring", "terms", "_sorted", "_hash")

    def __init__(self, ring: Ring, terms: dict):
        self.ring = ring
        zero = ring.field.zero
        self.terms = {e: c for e, c in terms.items() if c != zero}
        self._sorted = None
        self._hash = None

    # --- constructors -----------------------------------------------------
    @staticmethod
    def zero(ring: Ring) -> "Poly":
        return Poly(ring, {})

    @staticmethod
    def constant(ring: Ring, c) -> "Poly":
        return Poly(ring, {ring.unit_monomial(): c})

    @staticmethod
    def one(ring: Ring) -> "Poly":
        return Poly.constant(ring, ring.field.one)

    @staticmethod
    def variable(ring: Ring, name: str) -> "Poly":
        i = ring.var_index(name)
        return Poly(ring, {ring.variable_monomial(i): ring.field.one})

    @staticmethod
    def monomial(ring: Ring, e: Monomial, c=None) -> "Poly":
        return Poly(ring, {tuple(e): ring.field.one if c is None else c})

    # --- basic structure ---------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self):
        if self._sorted is None:
            self._sorted = sorted(self.terms.items(),
                                  key=lambda t: self.ring.key(t[0]),
                                  reverse=True)
        return self._sorted

    def leading_monomial(self) -> Monomial:
        return self.sorted_terms()[0][0]

    def leading_coefficient(self):
        return self.sorted_terms()[0][1]

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def homogeneous_components(self) -> dict:
        comps: dict[int, dict] = {}
        for e, c in self.terms.items():
            comps.setdefault(sum(e), {})[e] = c
        return {d: Poly(self.ring, t) for d, t in sorted(comps.items())}

    def degree_in(self, i: int) -> int:
        """Largest exponent of variable i; -1 for zero."""
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    # --- arithmetic ---------------------------------------------------------
    def _check(self, other: "Poly"):
        if self.ring != other.ring:
            raise InputError("ring mismatch")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        f = self.ring.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = f.add(out.get(e, f.zero), c)
        return Poly(self.ring, out)

    def __sub__(self, other: "Poly") -> "Poly":
        self._check(other)
        f = self.ring.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = f.sub(out.get(e, f.zero), c)
        return Poly(self.ring, out)

    def __neg__(self) -> "Poly":
        f = self.ring.field
        return Poly(self.ring, {e: f.neg(c) for e, c in self.terms.items()})

    def __mul__(self, other) -> "Poly":
        f = self.ring.field
        if not isinstance(other, Poly):  # scalar
            return Poly(self.ring,
                        {e: f.mul(c, other) for e, c in self.terms.items()})
        self._check(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = monomial_mul(e1, e2)
                prod = f.mul(c1, c2)
                if e in out:
                    out[e] = f.add(out[e], prod)
                else:
                    out[e] = prod
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise InputError("negative power")
        result = Poly.one(self.ring)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> "Poly":
        return self * c

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        f = self.ring.field
        inv = f.inv(self.leading_coefficient())
        return self * inv

    def term_shifted(self, e: Monomial, c) -> "Poly":
        """c * x^e * self, the single reduction step workhorse."""
        f = self.ring.field
        return Poly(self.ring, {monomial_mul(e, e1): f.mul(c, c1)
                                for e1, c1 in self.terms.items()})

    def derivative(self, i: int) -> "Poly":
        """Formal partial derivative with respect to variable i."""
        f = self.ring.field
        out: dict = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            coeff = f.mul(c, f.from_int(e[i]))
            if coeff == f.zero:
                continue
            e2 = list(e)
            e2[i] -= 1
            out[tuple(e2)] = f.add(out.get(tuple(e2), f.zero), coeff)
        return Poly(self.ring, out)

    # --- comparisons ---------------------------------------------------------
    def __eq__(self, other) -> bool:
        return (isinstance(other, Poly) and self.ring == other.ring
                and self.terms == other.terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring,
                               frozenset(self.terms.items())))
        return self._hash

    def __str__(self) -> str:
        return format_poly(self)

    __repr__ = __str__


# --- ring moves -------------------------------------------------------------

def rename_into(p: Poly, target: Ring) -> Poly:
    """Reinterpret p in `target`, matching variables by name.

    Every variable actually appearing in p must exist in the target ring.
    """
    if p.ring.variables == target.variables and p.ring.field == target.field:
        return Poly(target, dict(p.terms))
    pos = []
    for i, name in enumerate(p.ring.variables):
        pos.append(target.variables.index(name)
                   if name in target.variables else None)
    out: dict = {}
    for e, c in p.terms.items():
        e2 = [0] * target.nvars
        for i, exp in enumerate(e):
            if exp == 0:
                continue
            if pos[i] is None:
                raise InputError(
                    f"variable {p.ring.variables[i]!r} not present in target ring")
            e2[pos[i]] = exp
        key = tuple(e2)
        if key in out:
            out[key] = target.field.add(out[key], c)
        else:
            out[key] = c
    return Poly(target, out)


def substitute_scalar(p: Poly, name: str, value) -> Poly:
    """Substitute a field scalar for a variable (result stays in p.ring)."""
    i = p.ring.var_index(name)
    f = p.ring.field
    out: dict = {}
    for e, c in p.terms.items():
        coeff = c
        for _ in range(e[i]):
            coeff = f.mul(coeff, value)
        e2 = list(e)
        e2[i] = 0
        key = tuple(e2)
        out[key] = f.add(out.get(key, f.zero), coeff)
    return Poly(p.ring, out)


# --- ideals -----------------------------------------------------------------

@dataclass(frozen=True)
class Ideal:
    """An ideal presented by generators.  Immutable and hashable so that
    Groebner bases and saturations can be cached per ideal."""

    ring: Ring
    generators: tuple

    def __post_init__(self):
        for g in self.generators:
            if g.ring != self.ring:
                raise InputError("generator from a different ring")

    @property
    def homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def nonzero_generators(self):
        return tuple(g for g in self.generators if not g.is_zero())

    def require_homogeneous(self, what: str = "operation"):
        if not self.homogeneous:
            raise PreconditionError(f"{what} requires a homogeneous ideal")

    def __str__(self):
        return "(" + ", ".join(format_poly(g) for g in self.generators) + ")"


def ideal(ring: Ring, generators) -> Ideal:
    return Ideal(ring, tuple(generators))


# --- parsing ----------------------------------------------------------------
#
# poly   := ['+'|'-'] term (('+'|'-') term)*
# term   := coeff ('*' factor)* | factor ('*' factor)*
# factor := var ('^' uint)?
# coeff  := uint | uint '/' uint
#
# Whitespace is insignificant.  The optional leading sign is a convenience
# so that printed polynomials round-trip.

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|([-+*/^]))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise ParseError(f"unexpected character {stripped[0]!r}",
                             position=len(text) - len(stripped))
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), m.start(2)))
        else:
            tokens.append(("op", m.group(3), m.start(3)))
        pos = m.end()
    return tokens


def parse_poly(text: str, ring: Ring) -> Poly:
    """Parse ASCII polynomial text into a Poly of the given ring."""
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty polynomial", position=0)
    f = ring.field
    result = Poly.zero(ring)
    i = 0
    sign = 1
    if tokens[0][0] == "op" and tokens[0][1] in "+-":
        sign = -1 if tokens[0][1] == "-" else 1
        i = 1

    def term_end_pos():
        return tokens[i - 1][2] + len(str(tokens[i - 1][1])) if i > 0 else 0

    while True:
        if i >= len(tokens):
            raise ParseError("expected a term", position=term_end_pos())
        # term
        coeff = f.one
        exps = [0] * ring.nvars
        saw_factor = False
        kind, val, pos = tokens[i]
        if kind == "int":
            num = int(val)
            i += 1
            if i < len(tokens) and tokens[i][0] == "op" and tokens[i][1] == "/":
                i += 1
                if i >= len(tokens) or tokens[i][0] != "int":
                    raise ParseError("expected denominator",
                                     position=tokens[i - 1][2] + 1)
                coeff = f.from_fraction(num, int(tokens[i][1]))
                i += 1
            else:
                coeff = f.from_int(num)
            saw_factor = True
            expect_star = True
        else:
            expect_star = False

        while True:
            if expect_star:
                if i < len(tokens) and tokens[i][0] == "op" and tokens[i][1] == "*":
                    i += 1
                else:
                    break
            expect_star = True
            if i >= len(tokens) or tokens[i][0] != "name":
                raise ParseError("expected a variable",
                                 position=tokens[i][2] if i < len(tokens)
                                 else term_end_pos())
            name = tokens[i][1]
            idx = ring.variables.index(name) if name in ring.variables else None
            if idx is None:
                raise ParseError(f"unknown variable {name!r}",
                                 position=tokens[i][2])
            i += 1
            exp = 1
            if i < len(tokens) and tokens[i][0] == "op" and tokens[i][1] == "^":
                i += 1
                if i >= len(tokens) or tokens[i][0] != "int":
                    raise ParseError("expected an exponent",
                                     position=tokens[i - 1][2] + 1)
                exp = int(tokens[i][1])
                i += 1
            exps[idx] += exp
            saw_factor = True

        if not saw_factor:
            raise ParseError("expected a term",
                             position=tokens[i][2] if i < len(tokens) else 0)
        c = coeff if sign > 0 else f.neg(coeff)
        result = result + Poly.monomial(ring, tuple(exps), c)

        if i >= len(tokens):
            return result
        kind, val, pos = tokens[i]
        if kind != "op" or val not in "+-":
            raise ParseError(f"expected + or -", position=pos)
        sign = -1 if val == "-" else 1
        i += 1


def format_poly(p: Poly) -> str:
    """Deterministic printer; round-trips through parse_poly."""
    if p.is_zero():
        return "0"
    f = p.ring.field
    pieces = []
    for j, (e, c) in enumerate(p.sorted_terms()):
        mono = p.ring.monomial_str(e)
        negative = (f.kind == "rationals" and c < 0)
        mag = f.neg(c) if negative else c
        if mono == "1":
            body = f.to_str(mag)
        elif mag == f.one:
            body = mono
        else:
            body = f"{f.to_str(mag)}*{mono}"
        if j == 0:
            pieces.append(("-" if negative else "") + body)
        else:
            pieces.append(("- " if negative else "+ ") + body)
    return " ".join(pieces)


def parse_ideal_file(text: str, ring: Ring) -> Ideal:
    """One polynomial per line; '#' starts a comment; blank lines ignored."""
    gens = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        gens.append(parse_poly(line, ring))
    return ideal(ring, gens)
