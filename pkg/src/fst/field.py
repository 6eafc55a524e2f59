"""Exact coefficient fields: the rationals and prime fields F_p.

Scalars are `fractions.Fraction` over the rationals and plain ints in
[0, p) over a prime field.  A `FieldSpec` carries the arithmetic so that
polynomial and matrix code stays field-agnostic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError, ParseError

MAX_CHARACTERISTIC = 2**31


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for p in small:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """A coefficient field: QQ, or F_p for a prime p < 2**31."""

    kind: str  # "rationals" | "prime-field"
    characteristic: int = 0

    def __post_init__(self):
        if self.kind == "rationals":
            if self.characteristic != 0:
                raise InputError("rationals have characteristic 0")
        elif self.kind == "prime-field":
            p = self.characteristic
            if p >= MAX_CHARACTERISTIC:
                raise InputError(f"characteristic {p} exceeds 2^31")
            if not is_prime(p):
                raise InputError(f"{p} is not prime")
        else:
            raise InputError(f"unknown field kind {self.kind!r}")

    # --- arithmetic on scalars -------------------------------------------
    @property
    def zero(self):
        return 0 if self.kind == "prime-field" else Fraction(0)

    @property
    def one(self):
        return 1 if self.kind == "prime-field" else Fraction(1)

    def add(self, a, b):
        if self.kind == "prime-field":
            return (a + b) % self.characteristic
        return a + b

    def sub(self, a, b):
        if self.kind == "prime-field":
            return (a - b) % self.characteristic
        return a - b

    def mul(self, a, b):
        if self.kind == "prime-field":
            return (a * b) % self.characteristic
        return a * b

    def neg(self, a):
        if self.kind == "prime-field":
            return (-a) % self.characteristic
        return -a

    def inv(self, a):
        if self.kind == "prime-field":
            if a % self.characteristic == 0:
                raise ZeroDivisionError("inverse of 0")
            return pow(a, -1, self.characteristic)
        return Fraction(1) / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == 0

    def eq(self, a, b) -> bool:
        return self.sub(a, b) == 0

    # --- construction and formatting -------------------------------------
    def from_int(self, n: int):
        if self.kind == "prime-field":
            return n % self.characteristic
        return Fraction(n)

    def from_fraction(self, num: int, den: int):
        if den == 0:
            raise ParseError("zero denominator")
        if self.kind == "prime-field":
            p = self.characteristic
            if den % p == 0:
                raise ParseError(f"coefficient {num}/{den} not reducible mod {p}")
            return (num * pow(den, -1, p)) % p
        return Fraction(num, den)

    def to_str(self, a) -> str:
        return str(a)

    def parse_scalar(self, text: str):
        """Parse "3", "-3", or "3/2" into a scalar of this field."""
        text = text.strip()
        if "/" in text:
            num, _, den = text.partition("/")
            try:
                return self.from_fraction(int(num), int(den))
            except ValueError:
                raise ParseError(f"bad scalar {text!r}") from None
        try:
            return self.from_int(int(text))
        except ValueError:
            raise ParseError(f"bad scalar {text!r}") from None

    def scalar_sequence(self, count: int):
        """The fixed sequence 0, 1, 2, ... of distinct field elements.

        Raises InputError when the field has fewer than `count` elements;
        the message suggests a scalar extension rather than extending
        silently.
        """
        if self.kind == "prime-field" and count > self.characteristic:
            raise InputError(
                f"needs {count} distinct scalars, F_{self.characteristic} has "
                f"only {self.characteristic}; extend the field first"
            )
        return [self.from_int(i) for i in range(count)]

    def random(self, rng: random.Random, span: int = 100):
        if self.kind == "prime-field":
            return rng.randrange(self.characteristic)
        return Fraction(rng.randint(-span, span))


QQ = FieldSpec("rationals", 0)


def GF(p: int) -> FieldSpec:
    return FieldSpec("prime-field", p)


def parse_field(text: str) -> FieldSpec:
    """Parse the CLI notation: "QQ" or "GF:p"."""
    if text == "QQ":
        return QQ
    if text.startswith("GF:"):
        try:
            return GF(int(text[3:]))
        except ValueError:
            raise InputError(f"bad field spec {text!r}") from None
    raise InputError(f"bad field spec {text!r}; expected QQ or GF:p")


# --- arithmetic in F_{p^k}, used for scalar extension --------------------
#
# Elements are coefficient tuples of length k (little-endian) modulo a
# fixed irreducible monic polynomial.  This realizes the "adjoin one
# variable with an irreducible relation" extension without growing the
# multivariate polynomial ring.

def _upoly_trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _upoly_mulmod(a, b, m, p):
    prod = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    return _upoly_divmod(prod, m, p)[1]


def _upoly_divmod(a, b, p):
    a = list(a)
    deg_b = len(b) - 1
    lead_inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - deg_b, 0)
    while len(_upoly_trim(a)) - 1 >= deg_b and a:
        shift = len(a) - 1 - deg_b
        factor = a[-1] * lead_inv % p
        q[shift] = factor
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - factor * bi) % p
        _upoly_trim(a)
    return q, a


def _upoly_powmod(base, e, m, p):
    result = [1]
    base = _upoly_divmod(base, m, p)[1]
    while e:
        if e & 1:
            result = _upoly_mulmod(result, base, m, p)
        base = _upoly_mulmod(base, base, m, p)
        e >>= 1
    return result


def _upoly_gcd(a, b, p):
    a, b = _upoly_trim(list(a)), _upoly_trim(list(b))
    while b:
        a, b = b, _upoly_trim(_upoly_divmod(a, b, p)[1])
    return a


def _is_irreducible(m, p, k):
    # m monic of degree k; irreducible iff x^(p^k) = x mod m and
    # gcd(x^(p^(k/q)) - x, m) = 1 for each prime q | k.  Here k is a
    # power of 2, so q = 2 is the only prime divisor.
    x = [0, 1]
    xpk = _upoly_powmod(x, p**k, m, p)
    if _upoly_trim([(a - b) % p for a, b in
                    zip(xpk + [0] * 2, x + [0] * len(xpk))]):
        return False
    if k > 1:
        xph = _upoly_powmod(x, p ** (k // 2), m, p)
        diff = [(a - b) % p for a, b in zip(xph + [0] * 2, x + [0] * len(xph))]
        g = _upoly_gcd(diff, m, p)
        if len(g) != 1:
            return False
    return True


def find_irreducible(p: int, k: int, rng: random.Random) -> list[int]:
    """A monic irreducible polynomial of degree k over F_p (coefficient list)."""
    while True:
        m = [rng.randrange(p) for _ in range(k)] + [1]
        if _is_irreducible(m, p, k):
            return m


class ExtField:
    """F_{p^k} presented as F_p[u]/(m(u)); elements are k-tuples of ints."""

    def __init__(self, p: int, modulus: list[int]):
        self.p = p
        self.modulus = modulus
        self.k = len(modulus) - 1
        self.zero = (0,) * self.k
        self.one = (1,) + (0,) * (self.k - 1)

    def _wrap(self, coeffs):
        c = _upoly_trim(list(coeffs))
        return tuple(c) + (0,) * (self.k - len(c))

    def lift(self, a: int):
        return self._wrap([a % self.p])

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        return tuple((-x) % self.p for x in a)

    def mul(self, a, b):
        return self._wrap(_upoly_mulmod(_upoly_trim(list(a)),
                                        _upoly_trim(list(b)),
                                        self.modulus, self.p))

    def inv(self, a):
        # extended Euclid on polynomials
        r0, r1 = self.modulus, _upoly_trim(list(a))
        if not r1:
            raise ZeroDivisionError("inverse of 0")
        s0, s1 = [], [1]
        while r1:
            q, rem = _upoly_divmod(r0, r1, self.p)
            r0, r1 = r1, _upoly_trim(rem)
            prod = [0] * (len(q) + len(s1) - 1) if q and s1 else []
            for i, qi in enumerate(q):
                if qi:
                    for j, sj in enumerate(s1):
                        prod[i + j] = (prod[i + j] + qi * sj) % self.p
            new_s = [(x - y) % self.p
                     for x, y in zip(s0 + [0] * len(prod), prod + [0] * len(s0))]
            s0, s1 = s1, _upoly_trim(new_s)
        lead_inv = pow(r0[-1], -1, self.p)
        return self._wrap([c * lead_inv % self.p for c in s0])

    def is_zero(self, a) -> bool:
        return all(x == 0 for x in a)

    def random(self, rng: random.Random, span: int = 0):
        return tuple(rng.randrange(self.p) for _ in range(self.k))
