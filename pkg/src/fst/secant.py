"""Secant and cactus membership via catalecticant rank loci, secant ideals
of rational normal curves, elimination-based relative spans, and
span-intersection checks.

Membership answers are always reported as catalecticant-locus membership:
the locus equals the cactus variety of the Veronese in the tested range,
and equals the secant variety exactly when the Gorenstein-smoothability
condition holds for the given dimension, rank and characteristic; the
`star_condition` lookup encodes the known table of that condition.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .apolarity import DPForm, catalecticant_rank
from .errors import InputError, PreconditionError
from .field import QQ, FieldSpec
from .groebner import graded_piece_dim, saturate_irrelevant
from .linalg import rank as matrix_rank
from .poly import (GREVLEX, Ideal, Poly, Ring, ideal, monomials_of_degree)
from .schemes import span_dimension


@dataclass(frozen=True)
class RankProfile:
    d: int
    ranks: tuple  # entry i = rank of the i-th catalecticant

    def maximum(self) -> int:
        return max(self.ranks)


def rank_profile(F: DPForm) -> RankProfile:
    """Exact catalecticant ranks for i = 0..deg(F)."""
    return RankProfile(F.degree,
                       tuple(catalecticant_rank(F, i)
                             for i in range(F.degree + 1)))


def in_secant_locus(F: DPForm, r: int) -> bool:
    """True iff every catalecticant rank with r <= i <= d-r is at most r.

    Checks the whole admissible range rather than one index: the single-i
    statement is equivalent for the reduced locus, and the full sweep is
    strictly stronger diagnostically at desk scale.  Requires d >= 2r.
    """
    if r < 1:
        raise InputError("r must be positive")
    if F.degree < 2 * r:
        raise PreconditionError(
            f"membership test requires d >= 2r (d={F.degree}, r={r})")
    return all(catalecticant_rank(F, i) <= r
               for i in range(r, F.degree - r + 1))


def cactus_rank_lower_bound(F: DPForm) -> int:
    """max_i rank Cat_i(F): every point of the rank-r cactus locus keeps
    all catalecticant ranks at most r, so the profile maximum bounds the
    cactus rank (hence border and smoothable rank) from below."""
    if F.degree == 0:
        return 0 if F.is_zero() else 1
    return rank_profile(F).maximum()


def star_condition(dim_x: int, r: int, characteristic: int) -> str:
    """Status of the Gorenstein-smoothability condition for smooth X of
    the given dimension over a field of the given characteristic:
    "holds", "fails", or "unknown"."""
    if dim_x <= 3 or r <= 2:
        return "holds"
    if characteristic in (2, 3):
        if r >= 140 and dim_x >= 4:
            return "fails"
        if r >= 42 and dim_x >= 5:
            return "fails"
        if r >= 14 and dim_x >= 6:
            return "fails"
        return "unknown"
    # characteristic 0 or p >= 5
    if r <= 13:
        return "holds"
    if r == 14 and dim_x <= 5:
        return "holds"
    if r >= 140 and dim_x >= 4:
        return "fails"
    if r >= 42 and dim_x >= 5:
        return "fails"
    if r == 14 and dim_x >= 6:
        return "fails" if characteristic == 0 else "unknown"
    if 15 <= r <= 41 and dim_x >= 6:
        return "fails" if characteristic == 0 else "unknown"
    return "unknown"


def membership_report(F: DPForm, r: int) -> dict:
    """JSON-ready membership report for the rank-r catalecticant locus of
    the degree-d Veronese of projective space."""
    profile = rank_profile(F)
    member = in_secant_locus(F, r)
    star = star_condition(F.ring.nvars - 1, r, F.ring.field.characteristic)
    return {
        "d": F.degree,
        "r": r,
        "ranks": list(profile.ranks),
        "member_catalecticant_locus": member,
        "star_condition": star,
        "interpretation": "sigma_r" if star == "holds" else "kappa_r only",
    }


def secant_ideal_rnc(d: int, r: int, field: FieldSpec = QQ) -> Ideal:
    """Ideal of (r+1)-minors of the most-square generic catalecticant of a
    degree-d binary form, in the coordinates a0..ad; cuts out the rank-r
    secant locus of the rational normal curve set-theoretically.
    Requires d >= 2r."""
    if r < 1 or d < 1:
        raise InputError("d and r must be positive")
    if d < 2 * r:
        raise PreconditionError(f"requires d >= 2r (d={d}, r={r})")
    ring = Ring(field, tuple(f"a{k}" for k in range(d + 1)), GREVLEX)
    i = d // 2
    rows, cols = i + 1, d - i + 1
    matrix = [[Poly.variable(ring, f"a{j + k}") for k in range(cols)]
              for j in range(rows)]
    from itertools import combinations

    gens = []
    size = r + 1
    for rsel in combinations(range(rows), size):
        for csel in combinations(range(cols), size):
            sub = [[matrix[a][b] for b in csel] for a in rsel]
            gens.append(_poly_det(sub))
    return ideal(ring, gens)


def _poly_det(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = None
    for j in range(n):
        minor = [[rows[i][k] for k in range(n) if k != j]
                 for i in range(1, n)]
        term = rows[0][j] * _poly_det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total


def _leading_param_coefficients(I: Ideal, params) -> list:
    """For a block order with the ambient variables leading, collect each
    basis element's coefficient (a polynomial in the parameters) of its
    leading ambient monomial."""
    from .groebner import buchberger as _gb
    from .poly import Ring, block_order, rename_into

    ring = I.ring
    ambient = [v for v in ring.variables if v not in params]
    work = Ring(ring.field, tuple(ambient) + tuple(params),
                block_order(len(ambient)))
    na = len(ambient)
    param_ring = Ring(ring.field, tuple(params))
    coeffs = []
    J = ideal(work, [rename_into(g, work) for g in I.generators])
    for g in _gb(J):
        lead_amb = g.leading_monomial()[:na]
        c_terms = {e[na:]: c for e, c in g.terms.items() if e[:na] == lead_amb}
        c = Poly(param_ring, c_terms)
        if c.degree() > 0:
            coeffs.append(c)
    return coeffs


def span_closure_eliminate(incidence: Ideal, params) -> Ideal:
    """Project a parametrized family of spans to the ambient space: the
    set-theoretic relative linear span over the generic parameter point.

    Components of the incidence locus sitting over proper closed subsets
    of the parameter space (degenerate fibers) do not belong to the image
    of the generic fiber, so the incidence ideal is first saturated by the
    leading parameter-coefficients of a block basis (iterated to a fixed
    point); then the parameters are eliminated and the result is saturated
    by the ambient irrelevant ideal.  The incidence ideal must be
    homogeneous in the ambient variables."""
    params = list(params)
    ambient = [v for v in incidence.ring.variables if v not in params]
    for p in params:
        if p not in incidence.ring.variables:
            raise InputError(f"parameter {p!r} is not a ring variable")
    if not ambient:
        raise InputError("parameters exhaust the ring variables")
    idx = [incidence.ring.var_index(v) for v in ambient]
    for g in incidence.generators:
        degs = {sum(e[i] for i in idx) for e in g.terms}
        if len(degs) > 1:
            raise PreconditionError(
                "incidence ideal must be homogeneous in the ambient variables")
    if not params:
        return saturate_irrelevant(incidence)
    from .groebner import eliminate, ideal_equal, saturate
    from .poly import Poly as _Poly, rename_into

    # the span of a fiber is cut out by the ambient-linear part of its
    # ideal, so only generators of ambient degree <= 1 present the family
    # of spans (degree 0 generators constrain the base and are kept)
    span_gens = [g for g in incidence.generators
                 if max((sum(e[i] for i in idx) for e in g.terms), default=0) <= 1]
    J = ideal(incidence.ring, span_gens)

    # Vertical components live where some leading coefficient vanishes, so
    # saturate by each in turn (composition = saturation by the product).
    # The composite stays saturated with respect to everything already
    # applied, so only genuinely new coefficients trigger another round.
    done = set()
    while True:
        simplified = set()
        for c in _leading_param_coefficients(J, params):
            if len(c.terms) == 1:
                # a monomial coefficient saturates like its squarefree part
                e = c.leading_monomial()
                sqfree = tuple(1 if x else 0 for x in e)
                simplified.add(_Poly.monomial(c.ring, sqfree))
            else:
                simplified.add(c.monic())
        new = sorted(simplified - done, key=str)
        if not new:
            break
        for c in new:
            J = saturate(J, ideal(J.ring, [rename_into(c, J.ring)]))
            done.add(c)

    projected = eliminate(J, params)
    return saturate_irrelevant(projected)


@dataclass(frozen=True)
class SpanIntersection:
    d: int
    lhs_dim: int
    rhs_dim: int
    equal: bool

    def to_json(self) -> dict:
        return {"d": self.d, "lhs_dim": self.lhs_dim,
                "rhs_dim": self.rhs_dim, "equal": self.equal}


def span_intersection_check(I_R: Ideal, I_X: Ideal, d: int) -> SpanIntersection:
    """Compare the intersection of Veronese spans with the span of the
    scheme intersection, in degree d.

    The left side is read off perpendicularly: the span intersection is
    the annihilator of the sum of the degree-d pieces of the two saturated
    ideals.  The right side is the span dimension of the scheme-theoretic
    intersection (ideal sum, saturated)."""
    if I_R.ring != I_X.ring:
        raise InputError("the two ideals must share a ring")
    if d < 1:
        raise InputError("d must be positive")
    I_R.require_homogeneous("span_intersection_check")
    I_X.require_homogeneous("span_intersection_check")
    ring = I_R.ring
    n = ring.nvars
    sat_r = saturate_irrelevant(I_R)
    sat_x = saturate_irrelevant(I_X)
    total = comb(n - 1 + d, d)
    sum_ideal = ideal(ring, sat_r.generators + sat_x.generators)
    lhs = total - graded_piece_dim(sum_ideal, d) - 1
    rhs = span_dimension(ideal(ring, I_R.generators + I_X.generators), d)
    return SpanIntersection(d, lhs, rhs, lhs == rhs)
