"""Divided-power forms, the contraction action, Veronese evaluation
functionals, catalecticant matrices and apolar ideals.

A DPForm of degree d lives in the graded dual of the degree-d piece of its
ring: the basis is the divided-power monomials x1^(p1)...xn^(pn) dual to
the ring's degree-d monomials.  Contraction by a ring element sigma is the
exponent shift  alpha^q . x^(p) = x^(p-q)  (coefficient 1), which is what
makes the divided-power basis the right dual object in any characteristic;
no multiplication on the dual side is ever needed here.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .errors import InputError, ParseError, PreconditionError
from .linalg import kernel_basis, rank as matrix_rank
from .poly import (Ideal, Monomial, Poly, Ring, grevlex_key, ideal,
                   monomial_div, monomial_divides, monomials_of_degree)


class DPForm:
    """Element of the degree-d divided-power space attached to `ring`.

    `ring` is the dual polynomial ring (its variables act by contraction);
    coefficients index exponent tuples of total degree exactly d.  The zero
    form is allowed and keeps its degree.
    """

    __slots__ = ("ring", "degree", "coeffs", "_hash")

    def __init__(self, ring: Ring, degree: int, coeffs: dict):
        if degree < 0:
            raise InputError("negative divided-power degree")
        self.ring = ring
        self.degree = degree
        clean = {}
        for e, c in coeffs.items():
            if c == ring.field.zero:
                continue
            if len(e) != ring.nvars or sum(e) != degree:
                raise InputError(
                    f"exponent {e} is not of total degree {degree}")
            clean[tuple(e)] = c
        self.coeffs = clean
        self._hash = None

    @staticmethod
    def zero(ring: Ring, degree: int) -> "DPForm":
        return DPForm(ring, degree, {})

    def is_zero(self) -> bool:
        return not self.coeffs

    def sorted_coeffs(self):
        return sorted(self.coeffs.items(),
                      key=lambda t: grevlex_key(t[0]), reverse=True)

    def __add__(self, other: "DPForm") -> "DPForm":
        if self.ring != other.ring or self.degree != other.degree:
            raise InputError("cannot add forms of different type")
        f = self.ring.field
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = f.add(out.get(e, f.zero), c)
        return DPForm(self.ring, self.degree, out)

    def __sub__(self, other: "DPForm") -> "DPForm":
        return self + other.scale(self.ring.field.neg(self.ring.field.one))

    def scale(self, c) -> "DPForm":
        f = self.ring.field
        return DPForm(self.ring, self.degree,
                      {e: f.mul(c, v) for e, v in self.coeffs.items()})

    def __eq__(self, other) -> bool:
        return (isinstance(other, DPForm) and self.ring == other.ring
                and self.degree == other.degree and self.coeffs == other.coeffs)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.degree,
                               frozenset(self.coeffs.items())))
        return self._hash

    def __str__(self) -> str:
        return format_dp(self)

    __repr__ = __str__


def contract(sigma: Poly, F: DPForm) -> DPForm:
    """The contraction sigma . F: on basis elements an exponent shift,
    alpha^q . x^(p) = x^(p-q) when p >= q componentwise, else 0.

    sigma must be homogeneous of degree <= deg(F); apply a general sigma
    one homogeneous component at a time.
    """
    if sigma.ring != F.ring:
        raise InputError("ring mismatch between contraction arguments")
    if not sigma.is_homogeneous():
        raise PreconditionError(
            "contract expects homogeneous sigma; split into components")
    if sigma.is_zero():
        return DPForm.zero(F.ring, F.degree)
    i = sigma.degree()
    if i > F.degree:
        raise PreconditionError(
            f"contraction degree {i} exceeds form degree {F.degree}")
    f = F.ring.field
    out: dict = {}
    for q, cs in sigma.terms.items():
        for p, cf in F.coeffs.items():
            if monomial_divides(q, p):
                e = monomial_div(p, q)
                prod = f.mul(cs, cf)
                out[e] = f.add(out.get(e, f.zero), prod)
    return DPForm(F.ring, F.degree - i, out)


def veronese_point(ring: Ring, coords, d: int) -> DPForm:
    """The degree-d evaluation functional of a point: coefficient
    a1^p1 ... an^pn on the divided-power monomial x^(p)."""
    if d < 1:
        raise InputError("degree must be positive")
    coords = list(coords)
    if len(coords) != ring.nvars:
        raise InputError("coordinate vector has wrong length")
    f = ring.field
    if all(c == f.zero for c in coords):
        raise InputError("zero coordinate vector")
    out = {}
    for p in monomials_of_degree(ring.nvars, d):
        c = f.one
        for a, e in zip(coords, p):
            for _ in range(e):
                c = f.mul(c, a)
        out[p] = c
    return DPForm(ring, d, out)


def sum_of_powers(ring: Ring, points, d: int) -> DPForm:
    """Sum of Veronese evaluation functionals.  The empty list and exact
    cancellations both give the zero form."""
    total = DPForm.zero(ring, d)
    for v in points:
        total = total + veronese_point(ring, v, d)
    return total


@dataclass(frozen=True)
class CatalecticantMatrix:
    """Matrix of sigma -> sigma . F from degree-i ring elements to
    degree-(d-i) divided powers, on grevlex-ordered monomial bases."""

    d: int
    i: int
    rows: tuple      # degree-i exponent tuples, grevlex descending
    cols: tuple      # degree-(d-i) exponent tuples, grevlex descending
    entries: tuple   # tuple of row tuples

    def rank(self, field) -> int:
        return matrix_rank([list(r) for r in self.entries], field)


def catalecticant_matrix(F: DPForm, i: int) -> CatalecticantMatrix:
    """entry(q, m) = coefficient of x^(m) in alpha^q . F = F[q + m]."""
    if not 0 <= i <= F.degree:
        raise PreconditionError(
            f"catalecticant index {i} out of range 0..{F.degree}")
    n = F.ring.nvars
    rows = monomials_of_degree(n, i)
    cols = monomials_of_degree(n, F.degree - i)
    zero = F.ring.field.zero
    entries = tuple(
        tuple(F.coeffs.get(tuple(q + m for q, m in zip(row, col)), zero)
              for col in cols)
        for row in rows)
    return CatalecticantMatrix(F.degree, i, rows, cols, entries)


def catalecticant_rank(F: DPForm, i: int) -> int:
    return catalecticant_matrix(F, i).rank(F.ring.field)


def apolar_ideal(F: DPForm) -> Ideal:
    """Generators of Ann(F): per-degree catalecticant kernels through
    degree d, plus every monomial of degree d+1.  Emitted degree by degree
    with no minimalization; the quotient is a graded algebra of dimension
    sum_i rank Cat_i(F)."""
    if F.is_zero():
        raise InputError("the apolar ideal of the zero form is the whole ring")
    ring = F.ring
    field = ring.field
    gens = []
    for i in range(F.degree + 1):
        cat = catalecticant_matrix(F, i)
        # left kernel: coefficient vectors over the degree-i monomials
        transpose = [[cat.entries[r][c] for r in range(len(cat.rows))]
                     for c in range(len(cat.cols))]
        for vec in kernel_basis(transpose, field):
            terms = {m: c for m, c in zip(cat.rows, vec) if c != field.zero}
            gens.append(Poly(ring, terms))
    gens.extend(Poly.monomial(ring, m)
                for m in monomials_of_degree(ring.nvars, F.degree + 1))
    return ideal(ring, gens)


def dp_space_dimension(n: int, d: int) -> int:
    return comb(n - 1 + d, d)


# --- text formats -------------------------------------------------------------
#
#   term format:     "2 * x1^(3)*x2^(1); 1 * x2^(4)"
#   compact format:  "dp d=4 n=2: 1,0,0,0,1"   (grevlex exponent order)

def format_dp(F: DPForm, compact: bool = False) -> str:
    if compact:
        coeffs = [F.ring.field.to_str(
            F.coeffs.get(m, F.ring.field.zero))
            for m in monomials_of_degree(F.ring.nvars, F.degree)]
        return f"dp d={F.degree} n={F.ring.nvars}: " + ",".join(coeffs)
    if F.is_zero():
        return "0"
    parts = []
    for e, c in F.sorted_coeffs():
        mono = "*".join(f"x{i + 1}^({p})" for i, p in enumerate(e) if p)
        if not mono:
            parts.append(F.ring.field.to_str(c))
        else:
            parts.append(f"{F.ring.field.to_str(c)} * {mono}")
    return "; ".join(parts)


def parse_dp(text: str, ring: Ring = None, field=None) -> DPForm:
    """Parse either DPForm text format.  For the compact format a ring can
    be synthesized (variables a1..an over `field`) when none is given."""
    text = text.strip()
    if text.startswith("dp"):
        return _parse_dp_compact(text, ring, field)
    if ring is None:
        raise InputError("term-format divided powers need an explicit ring")
    return _parse_dp_terms(text, ring)


def _parse_dp_compact(text: str, ring, field) -> DPForm:
    import re

    m = re.match(r"dp\s+d=(\d+)\s+n=(\d+)\s*:\s*(.*)\Z", text)
    if not m:
        raise ParseError("bad compact divided-power format")
    d, n = int(m.group(1)), int(m.group(2))
    if ring is None:
        if field is None:
            raise InputError("need a ring or a field to parse a form")
        ring = Ring(field, tuple(f"a{i + 1}" for i in range(n)))
    if ring.nvars != n:
        raise InputError(f"form has n={n} but the ring has {ring.nvars} variables")
    raw = [s.strip() for s in m.group(3).split(",")] if m.group(3).strip() else []
    monos = monomials_of_degree(n, d)
    if len(raw) != len(monos):
        raise ParseError(
            f"expected {len(monos)} coefficients for d={d}, n={n}, got {len(raw)}")
    coeffs = {}
    for mono, s in zip(monos, raw):
        c = ring.field.parse_scalar(s)
        if c != ring.field.zero:
            coeffs[mono] = c
    return DPForm(ring, d, coeffs)


def _parse_dp_terms(text: str, ring: Ring) -> DPForm:
    import re

    f = ring.field
    degree = None
    coeffs: dict = {}
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk or chunk == "0":
            continue
        if "*" in chunk:
            coeff_txt, _, mono_txt = chunk.partition("*")
            c = f.parse_scalar(coeff_txt)
        else:
            c = f.parse_scalar(chunk)
            mono_txt = ""
        e = [0] * ring.nvars
        if mono_txt.strip():
            for piece in mono_txt.split("*"):
                m = re.match(r"\s*x(\d+)\^\((\d+)\)\s*\Z", piece)
                if not m:
                    raise ParseError(f"bad divided-power factor {piece!r}")
                idx = int(m.group(1)) - 1
                if not 0 <= idx < ring.nvars:
                    raise ParseError(f"variable index out of range in {piece!r}")
                e[idx] += int(m.group(2))
        d = sum(e)
        if degree is None:
            degree = d
        elif degree != d:
            raise ParseError("mixed degrees in divided-power form")
        key = tuple(e)
        coeffs[key] = f.add(coeffs.get(key, f.zero), c)
    if degree is None:
        raise ParseError("empty divided-power form (write an explicit degree "
                         "with the compact format instead)")
    return DPForm(ring, degree, coeffs)
