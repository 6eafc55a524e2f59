"""Invariants of finite schemes: degree, embedding dimension, socle,
Gorenstein test, Hilbert functions, span dimensions, linear normality.

Affine inputs are never saturated; projective inputs are always saturated
by the irrelevant ideal before the Hilbert function is measured.
"""

from __future__ import annotations

import random
from math import comb

from .errors import InconclusiveError, InputError, PreconditionError
from .field import ExtField, find_irreducible
from .groebner import (buchberger, contains_one, graded_piece_dim,
                       normal_form, quotient_basis, saturate_irrelevant)
from .linalg import kernel_basis, rank as matrix_rank
from .poly import Ideal, Poly, monomial_mul


def _affine_basis(I: Ideal):
    """Groebner basis and standard-monomial basis of a finite affine quotient."""
    gb = buchberger(I)
    return gb, quotient_basis(gb)


def _nf_vector(p: Poly, basis, index):
    zero = p.ring.field.zero
    vec = [zero] * len(basis)
    for e, c in p.terms.items():
        j = index.get(e)
        if j is None:
            raise InputError("normal form left the standard-monomial span")
        vec[j] = c
    return vec


def is_local_at_origin(I: Ideal) -> bool:
    """True iff every variable is nilpotent modulo I (finite quotient
    supported entirely at the origin)."""
    gb, basis = _affine_basis(I)
    bound = max(len(basis), 1)
    ring = I.ring
    for v in ring.variables:
        if not normal_form(Poly.variable(ring, v) ** bound, gb).is_zero():
            return False
    return True


def _cone_dimension(I: Ideal) -> int:
    """Krull dimension of ring/I from the leading-term ideal: the largest
    set of variables supporting no leading monomial (Stanley's
    combinatorial dimension, valid for any monomial order)."""
    lms = buchberger(I).leading_monomials()
    n = I.ring.nvars
    from itertools import combinations

    for size in range(n, 0, -1):
        for subset in combinations(range(n), size):
            inside = set(subset)
            if not any(all(i in inside for i, e in enumerate(m) if e)
                       for m in lms):
                return size
    return 0


def scheme_degree(I: Ideal, ambient: str = "affine") -> int:
    """Degree of the finite scheme presented by I: the vector-space
    dimension of the affine quotient, or the stabilized Hilbert function
    value in the projective case."""
    if ambient == "affine":
        gb, basis = _affine_basis(I)
        return len(basis)
    if ambient != "projective":
        raise InputError("ambient must be 'affine' or 'projective'")
    sat = saturate_irrelevant(I)
    if contains_one(sat):
        raise PreconditionError(
            "not a proper finite subscheme presentation: the ideal saturates "
            "to the unit ideal (empty projective scheme)")
    if _cone_dimension(sat) > 1:
        raise PreconditionError("positive-dimensional scheme")
    # Finite: H strictly increases and then stabilizes at the degree, with
    # stabilization no later than d = degree - 1.
    n = I.ring.nvars
    prev = None
    d = 0
    while True:
        h = comb(n - 1 + d, d) - graded_piece_dim(sat, d)
        if prev is not None and h == prev:
            return h
        prev = h
        d += 1


def hilbert_function(I: Ideal, d: int) -> int:
    """H(d) of the projective scheme of I, measured on the saturation."""
    if d < 0:
        raise InputError("degree must be nonnegative")
    sat = saturate_irrelevant(I)
    n = I.ring.nvars
    return comb(n - 1 + d, d) - graded_piece_dim(sat, d)


def span_dimension(I: Ideal, d: int) -> int:
    """Projective dimension of the span of the d-th Veronese image;
    -1 encodes the empty span."""
    if d < 1:
        raise InputError("d must be positive")
    return hilbert_function(I, d) - 1


def is_linearly_normal(I: Ideal, d: int) -> bool:
    """True iff the degree-d Veronese image spans a space of the maximal
    dimension deg(R) - 1, i.e. H(d) = deg R."""
    return hilbert_function(I, d) == scheme_degree(I, "projective")


# --- local algebra of a finite affine quotient ---------------------------------

def _require_nonempty(basis, what: str):
    if not basis:
        raise PreconditionError(f"{what} needs a nonzero quotient "
                                "(the ideal is the unit ideal)")


def _require_local(I: Ideal, what: str):
    if not is_local_at_origin(I):
        raise PreconditionError(
            f"{what} requires a quotient supported at the origin "
            "(every variable nilpotent modulo the ideal)")


def _variable_products(I: Ideal, basis, index, depth: int):
    """Normal-form vectors of (monomial of degree `depth`) * basis element."""
    gb = buchberger(I)
    ring = I.ring
    rows = []
    from .poly import monomials_of_degree

    for m in monomials_of_degree(ring.nvars, depth):
        for b in basis:
            p = normal_form(Poly.monomial(ring, monomial_mul(m, b)), gb)
            rows.append(_nf_vector(p, basis, index))
    return rows


def embedding_dimension(I: Ideal) -> int:
    """dim m/m^2 for the local quotient at the origin."""
    _require_local(I, "embedding_dimension")
    gb, basis = _affine_basis(I)
    _require_nonempty(basis, "embedding_dimension")
    index = {b: j for j, b in enumerate(basis)}
    field = I.ring.field
    m1 = _variable_products(I, basis, index, 1)
    m2 = _variable_products(I, basis, index, 2)
    return matrix_rank(m1, field) - matrix_rank(m2, field)


def multiplication_matrix(I: Ideal, var: str, basis=None, index=None):
    """Matrix of multiplication by `var` on the quotient basis (columns
    indexed by basis elements)."""
    gb = buchberger(I)
    if basis is None:
        basis = quotient_basis(gb)
        index = {b: j for j, b in enumerate(basis)}
    ring = I.ring
    i = ring.var_index(var)
    cols = []
    for b in basis:
        e = list(b)
        e[i] += 1
        p = normal_form(Poly.monomial(ring, tuple(e)), gb)
        cols.append(_nf_vector(p, basis, index))
    # transpose: rows indexed by basis, columns by input basis element
    return [[cols[j][l] for j in range(len(basis))] for l in range(len(basis))]


def socle_dimension(I: Ideal) -> int:
    """dim (0 : m), the kernel of the stacked multiplication-by-variable
    maps on the quotient basis."""
    _require_local(I, "socle_dimension")
    gb, basis = _affine_basis(I)
    _require_nonempty(basis, "socle_dimension")
    index = {b: j for j, b in enumerate(basis)}
    stacked = []
    for v in I.ring.variables:
        stacked.extend(multiplication_matrix(I, v, basis, index))
    return len(kernel_basis(stacked, I.ring.field))


# --- Gorenstein test ------------------------------------------------------------

def _structure_constants(I: Ideal):
    gb, basis = _affine_basis(I)
    _require_nonempty(basis, "is_gorenstein")
    index = {b: j for j, b in enumerate(basis)}
    ring = I.ring
    D = len(basis)
    struct = [[None] * D for _ in range(D)]
    for i in range(D):
        for j in range(i + 1):
            p = normal_form(Poly.monomial(ring, monomial_mul(basis[i], basis[j])),
                            gb)
            vec = _nf_vector(p, basis, index)
            struct[i][j] = vec
            struct[j][i] = vec
    return basis, struct


def _gram_full_rank(struct, f_vec, ops) -> bool:
    D = len(struct)
    gram = []
    for i in range(D):
        row = []
        for j in range(D):
            acc = ops.zero
            for l, c in enumerate(struct[i][j]):
                if not ops.is_zero(c):
                    acc = ops.add(acc, ops.mul(c, f_vec[l]))
            row.append(acc)
        gram.append(row)
    return matrix_rank(gram, ops) == D


_SAMPLES_PER_ROUND = 8


def is_gorenstein(I: Ideal, seed: int = 0) -> bool:
    """Gorenstein test for a finite affine quotient.

    Local at the origin: exact, via socle dimension 1.  Otherwise a
    randomized principal-dual-generator test: the quotient is Gorenstein
    iff some functional f has an invertible Gram matrix (b_i, b_j) ->
    f(b_i b_j).  Over a small prime field the sampling retries after
    scalar extensions of degree 2, 4, 8; if every round fails, the test
    raises InconclusiveError rather than guessing.
    """
    if is_local_at_origin(I):
        return socle_dimension(I) == 1
    basis, struct = _structure_constants(I)
    D = len(basis)
    rng = random.Random(seed)
    field = I.ring.field
    # scale the lifted structure constants once per extension
    if field.kind == "rationals":
        for round_ in range(4):
            span = 4 * D * (2 ** round_) + 4
            for _ in range(_SAMPLES_PER_ROUND):
                f_vec = [field.random(rng, span) for _ in range(D)]
                if _gram_full_rank(struct, f_vec, field):
                    return True
        raise InconclusiveError(
            "no principal dual generator found after sampling; the quotient "
            "is most likely not Gorenstein, but this is not certified")
    p = field.characteristic
    for _ in range(_SAMPLES_PER_ROUND):
        f_vec = [field.random(rng) for _ in range(D)]
        if _gram_full_rank(struct, f_vec, field):
            return True
    for ext_degree in (2, 4, 8):
        ext = ExtField(p, find_irreducible(p, ext_degree, rng))
        lifted = [[[ext.lift(c) for c in struct[i][j]] for j in range(D)]
                  for i in range(D)]
        for _ in range(_SAMPLES_PER_ROUND):
            f_vec = [ext.random(rng) for _ in range(D)]
            if _gram_full_rank(lifted, f_vec, ext):
                return True
    raise InconclusiveError(
        f"no principal dual generator found up to the degree-8 extension of "
        f"F_{p}; refusing to guess")
