"""Buchberger's algorithm and the ideal-theoretic operations built on it:
normal forms, quotient bases, saturation, elimination, intersection and
graded-piece dimensions.

Desk-scale implementation: normal (degree-lexicographic) pair selection
with Buchberger's coprimality and chain criteria, full interreduction.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import InputError, PreconditionError
from .linalg import rank as matrix_rank
from .poly import (GREVLEX, Ideal, Monomial, Poly, Ring, block_order, ideal,
                   monomial_div, monomial_divides, monomial_lcm, monomial_mul,
                   monomials_of_degree, rename_into)


@dataclass(frozen=True)
class GroebnerBasis:
    ring: Ring
    elements: tuple  # monic, interreduced, sorted by decreasing leading monomial

    def leading_monomials(self):
        return tuple(g.leading_monomial() for g in self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)


def spoly(f: Poly, g: Poly) -> Poly:
    lm_f, lm_g = f.leading_monomial(), g.leading_monomial()
    lcm = monomial_lcm(lm_f, lm_g)
    field = f.ring.field
    cf = field.inv(f.leading_coefficient())
    cg = field.inv(g.leading_coefficient())
    return (f.term_shifted(monomial_div(lcm, lm_f), cf)
            - g.term_shifted(monomial_div(lcm, lm_g), cg))


def normal_form(p: Poly, basis) -> Poly:
    """Remainder of full multivariate division of p by the basis.

    Zero iff p lies in the ideal generated, provided the basis is a
    Groebner basis for p's ring order.
    """
    if isinstance(basis, GroebnerBasis):
        divisors = basis.elements
        if divisors and divisors[0].ring != p.ring:
            raise InputError("ring mismatch")
    else:
        divisors = tuple(g for g in basis if not g.is_zero())
        for g in divisors:
            if g.ring != p.ring:
                raise InputError("ring mismatch")
    ring = p.ring
    field = ring.field
    lead = [(g.leading_monomial(), g.leading_coefficient(), g) for g in divisors]
    work = dict(p.terms)
    remainder: dict = {}
    key = ring.key
    while work:
        m = max(work, key=key)
        c = work.pop(m)
        for lm, lc, g in lead:
            if monomial_divides(lm, m):
                factor = field.div(c, lc)
                shift = monomial_div(m, lm)
                for e, ce in g.terms.items():
                    if e == lm:
                        continue
                    e2 = monomial_mul(shift, e)
                    v = field.sub(work.get(e2, field.zero),
                                  field.mul(factor, ce))
                    if v == field.zero:
                        work.pop(e2, None)
                    else:
                        work[e2] = v
                break
        else:
            remainder[m] = c
    return Poly(ring, remainder)


def _buchberger(generators) -> list:
    basis = [g.monic() for g in generators if not g.is_zero()]
    if not basis:
        return []
    ring = basis[0].ring
    key = ring.key

    # quick exit: a nonzero constant generates the unit ideal
    for g in basis:
        if g.degree() == 0:
            return [Poly.one(ring)]

    pairs = {(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))}
    lm = [g.leading_monomial() for g in basis]
    lcms: dict = {}

    def lcm_of(pair):
        got = lcms.get(pair)
        if got is None:
            got = lcms[pair] = monomial_lcm(lm[pair[0]], lm[pair[1]])
        return got

    while pairs:
        pair = min(pairs, key=lambda pr: (sum(lcm_of(pr)), key(lcm_of(pr))))
        pairs.discard(pair)
        i, j = pair
        lcm = lcm_of(pair)
        # first criterion: coprime leading monomials
        if lcm == monomial_mul(lm[i], lm[j]):
            continue
        # chain criterion: some k divides the lcm and both companion pairs
        # are already handled
        skip = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if (monomial_divides(lm[k], lcm)
                    and (min(i, k), max(i, k)) not in pairs
                    and (min(j, k), max(j, k)) not in pairs):
                skip = True
                break
        if skip:
            continue
        r = normal_form(spoly(basis[i], basis[j]), basis)
        if r.is_zero():
            continue
        r = r.monic()
        if r.degree() == 0:
            return [Poly.one(ring)]
        basis.append(r)
        lm.append(r.leading_monomial())
        m = len(basis) - 1
        pairs.update((k, m) for k in range(m))
    return basis


def _reduce_basis(basis: list) -> tuple:
    if not basis:
        return ()
    ring = basis[0].ring
    # minimalize: drop elements whose leading monomial is divisible by another's
    basis = sorted(basis, key=lambda g: ring.key(g.leading_monomial()))
    minimal = []
    for g in basis:
        if not any(monomial_divides(h.leading_monomial(), g.leading_monomial())
                   for h in minimal):
            minimal.append(g)
    # interreduce tails
    reduced = []
    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        reduced.append(normal_form(g, others).monic())
    reduced = [g for g in reduced if not g.is_zero()]
    reduced.sort(key=lambda g: ring.key(g.leading_monomial()), reverse=True)
    return tuple(reduced)


@lru_cache(maxsize=4096)
def _groebner_cached(ring: Ring, generators: tuple) -> GroebnerBasis:
    return GroebnerBasis(ring, _reduce_basis(_buchberger(list(generators))))


def buchberger(I: Ideal) -> GroebnerBasis:
    """The reduced Groebner basis of I for its ring's order."""
    return _groebner_cached(I.ring, I.nonzero_generators())


def contains_one(I: Ideal) -> bool:
    gb = buchberger(I)
    return len(gb) == 1 and gb.elements[0].degree() == 0


def ideal_member(p: Poly, I: Ideal) -> bool:
    return normal_form(p, buchberger(I)).is_zero()


def ideal_contains(I: Ideal, J: Ideal) -> bool:
    """True iff J ⊆ I."""
    gb = buchberger(I)
    return all(normal_form(g, gb).is_zero() for g in J.generators)


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    return ideal_contains(I, J) and ideal_contains(J, I)


# --- quotient bases -----------------------------------------------------------

def quotient_basis(G: GroebnerBasis) -> list:
    """Standard monomials of the quotient ring, sorted increasingly.

    Their count is the vector-space dimension of ring/ideal (the degree of
    the affine scheme).  Raises PreconditionError when the quotient is
    infinite-dimensional.  The unit ideal yields the empty list.
    """
    ring = G.ring
    n = ring.nvars
    lms = G.leading_monomials()
    if any(sum(m) == 0 for m in lms):
        return []
    caps = []
    for i in range(n):
        cap = None
        for m in lms:
            if m[i] > 0 and all(m[j] == 0 for j in range(n) if j != i):
                cap = m[i] if cap is None else min(cap, m[i])
        if cap is None:
            raise PreconditionError(
                f"infinite-dimensional quotient: no leading-term power of "
                f"{ring.variables[i]!r} (positive-dimensional scheme)")
        caps.append(cap)

    standard = []

    def walk(prefix, i):
        if i == n:
            standard.append(tuple(prefix))
            return
        for e in range(caps[i]):
            prefix.append(e)
            cand = tuple(prefix) + (0,) * (n - i - 1)
            # prune early when a leading monomial in the first i+1 vars divides
            if not any(monomial_divides(m, cand) for m in lms
                       if all(m[j] == 0 for j in range(i + 1, n))):
                walk(prefix, i + 1)
            prefix.pop()

    walk([], 0)
    standard = [m for m in standard
                if not any(monomial_divides(lm, m) for lm in lms)]
    standard.sort(key=ring.key)
    return standard


def quotient_dimension(I: Ideal) -> int:
    return len(quotient_basis(buchberger(I)))


# --- ring extension helpers ----------------------------------------------------

def _fresh_name(base: str, taken) -> str:
    if base not in taken:
        return base
    i = 0
    while f"{base}{i}" in taken:
        i += 1
    return f"{base}{i}"


def eliminate(I: Ideal, drop_vars) -> Ideal:
    """I ∩ k[remaining variables], via an elimination-block Groebner basis.

    The result lives in the ring on the remaining variables (same field,
    grevlex order).
    """
    drop = list(drop_vars)
    for v in drop:
        if v not in I.ring.variables:
            raise InputError(f"cannot eliminate unknown variable {v!r}")
    keep = [v for v in I.ring.variables if v not in drop]
    if not drop:
        return I
    if not keep:
        raise InputError("cannot eliminate every variable")
    elim_ring = Ring(I.ring.field, tuple(drop) + tuple(keep),
                     block_order(len(drop)))
    gens = tuple(rename_into(g, elim_ring) for g in I.generators)
    gb = _groebner_cached(elim_ring, tuple(g for g in gens if not g.is_zero()))
    target = Ring(I.ring.field, tuple(keep), GREVLEX)
    kept = []
    for g in gb:
        if all(e[i] == 0 for e in g.terms for i in range(len(drop))):
            kept.append(rename_into(g, target))
    return ideal(target, kept)


def ideal_intersect(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J by the one-extra-variable elimination trick; the ideal of the
    scheme-theoretic union."""
    if I.ring != J.ring:
        raise InputError("ring mismatch")
    ring = I.ring
    u = _fresh_name("u_", ring.variables)
    big = Ring(ring.field, (u,) + ring.variables, block_order(1))
    up = Poly.variable(big, u)
    one_minus_u = Poly.one(big) - up
    gens = [up * rename_into(g, big) for g in I.generators]
    gens += [one_minus_u * rename_into(g, big) for g in J.generators]
    gb = _groebner_cached(big, tuple(g for g in gens if not g.is_zero()))
    kept = [rename_into(g, ring) for g in gb
            if all(e[0] == 0 for e in g.terms)]
    return ideal(ring, kept)


def _exact_div(p: Poly, f: Poly) -> Poly:
    """p / f when f divides p exactly (division must leave remainder 0)."""
    q_terms: dict = {}
    ring = p.ring
    field = ring.field
    lm, lc = f.leading_monomial(), f.leading_coefficient()
    work = dict(p.terms)
    while work:
        m = max(work, key=ring.key)
        c = work[m]
        if not monomial_divides(lm, m):
            raise InputError("inexact division")
        shift = monomial_div(m, lm)
        factor = field.div(c, lc)
        q_terms[shift] = factor
        for e, ce in f.terms.items():
            e2 = monomial_mul(shift, e)
            v = field.sub(work.get(e2, field.zero), field.mul(factor, ce))
            if v == field.zero:
                work.pop(e2, None)
            else:
                work[e2] = v
    return Poly(ring, q_terms)


def _saturate_by_variable(I: Ideal, name: str) -> Ideal:
    # Bayer's trick: for homogeneous I and grevlex with `name` last, the
    # saturation I : name^inf is generated by the basis elements with all
    # powers of `name` divided out.
    ring = I.ring
    others = tuple(v for v in ring.variables if v != name)
    r2 = Ring(ring.field, others + (name,), GREVLEX)
    gens = tuple(rename_into(g, r2) for g in I.nonzero_generators())
    gb = _groebner_cached(r2, gens)
    idx = r2.nvars - 1
    out = []
    for g in gb:
        k = min(e[idx] for e in g.terms)
        if k:
            g = Poly(r2, {e[:idx] + (e[idx] - k,): c for e, c in g.terms.items()})
        out.append(g)
    return ideal(ring, [rename_into(g, ring) for g in out])


def _saturate_by_poly(I: Ideal, f: Poly) -> Ideal:
    # Rabinowitsch: (I + (1 - y f)) ∩ k[x]
    ring = I.ring
    y = _fresh_name("y_", ring.variables)
    big = Ring(ring.field, (y,) + ring.variables, block_order(1))
    gens = [rename_into(g, big) for g in I.generators]
    gens.append(Poly.one(big) - Poly.variable(big, y) * rename_into(f, big))
    gb = _groebner_cached(big, tuple(g for g in gens if not g.is_zero()))
    kept = [rename_into(g, ring) for g in gb
            if all(e[0] == 0 for e in g.terms)]
    return ideal(ring, kept)


def saturate(I: Ideal, J: Ideal) -> Ideal:
    """I : J^inf.  Computed per generator f of J (I : f^inf) and then
    intersected; for a homogeneous I and a variable f this uses the
    grevlex division trick, otherwise Rabinowitsch elimination."""
    if I.ring != J.ring:
        raise InputError("ring mismatch")
    ring = I.ring
    gens = [g for g in J.nonzero_generators()]
    if not gens:
        return I
    results = []
    for f in gens:
        var_like = (len(f.terms) == 1 and sum(f.leading_monomial()) == 1
                    and f.leading_coefficient() == ring.field.one)
        if var_like and I.homogeneous:
            idx = f.leading_monomial().index(1)
            results.append(_saturate_by_variable(I, ring.variables[idx]))
        else:
            results.append(_saturate_by_poly(I, f))
    # intersect only the distinct results (the per-generator saturations
    # often coincide, e.g. when I was already saturated)
    distinct = []
    for r in results:
        if not any(set(r.generators) == set(d.generators) for d in distinct):
            distinct.append(r)
    out = distinct[0]
    for other in distinct[1:]:
        out = ideal_intersect(out, other)
    return out


@lru_cache(maxsize=1024)
def saturate_irrelevant(I: Ideal) -> Ideal:
    """Saturation by the irrelevant maximal ideal (all ring variables)."""
    I.require_homogeneous("saturation by the irrelevant ideal")
    ring = I.ring
    m = ideal(ring, [Poly.variable(ring, v) for v in ring.variables])
    return saturate(I, m)


# --- graded pieces -------------------------------------------------------------

def graded_piece_dim(I: Ideal, d: int) -> int:
    """Dimension of span{m*g : g generator, deg(m*g) = d} by exact row
    reduction.  Equals dim I_d only when I is saturated in the relevant
    sense; callers saturate first."""
    I.require_homogeneous("graded_piece_dim")
    if d < 0:
        raise InputError("degree must be nonnegative")
    ring = I.ring
    cols = {m: j for j, m in enumerate(monomials_of_degree(ring.nvars, d))}
    rows = []
    zero = ring.field.zero
    for g in I.nonzero_generators():
        e = g.degree()
        if e > d:
            continue
        for m in monomials_of_degree(ring.nvars, d - e):
            shifted = g.term_shifted(m, ring.field.one)
            row = [zero] * len(cols)
            for mon, c in shifted.terms.items():
                row[cols[mon]] = c
            rows.append(row)
    if not rows:
        return 0
    return matrix_rank(rows, ring.field)
