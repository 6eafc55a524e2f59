"""One-parameter smoothing families for finite schemes: construction
(triangular perturbation, distraction of monomial ideals, products),
fibers, flatness certificates, and the etale-fiber test.

A family presents Z inside affine space times the t-line.  Its ring lists
any adjoined base parameters first, then the active variables, then the
distinguished parameter (always last, named "t" by the constructors).
When a certificate monomial basis is attached, check_flat_finite proves
that the coordinate ring is a free module over the base with that basis;
otherwise it falls back to sampled-fiber evidence.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import InputError, PreconditionError
from .groebner import (buchberger, contains_one, quotient_basis,
                       quotient_dimension)
from .poly import (LEX, GREVLEX, Ideal, Poly, Ring, ideal, rename_into,
                   substitute_scalar)

RESERVED_PARAM = "t"


@dataclass(frozen=True)
class SmoothingFamily:
    ring: Ring                 # base_params + actives + (param,), param last
    generators: tuple
    param: str
    base_params: tuple
    claimed_rank: int
    provenance: str            # degree2 | triangular | distraction | product | user
    basis: tuple | None = None  # certificate: exponent tuples over the actives

    def __post_init__(self):
        if self.ring.variables[-1] != self.param:
            raise InputError("the family parameter must be the last variable")
        for p in self.base_params:
            if p not in self.ring.variables:
                raise InputError(f"unknown base parameter {p!r}")

    @property
    def actives(self) -> tuple:
        return tuple(v for v in self.ring.variables
                     if v != self.param and v not in self.base_params)

    @property
    def ambient_ring(self) -> Ring:
        return Ring(self.ring.field,
                    tuple(v for v in self.ring.variables if v != self.param),
                    GREVLEX)


def make_family(ring: Ring, generators, claimed_rank: int,
                basis=None, base_params=(), provenance: str = "user",
                param: str | None = None) -> SmoothingFamily:
    """User-supplied family; the last ring variable is the parameter unless
    `param` names another convention."""
    param = param or ring.variables[-1]
    return SmoothingFamily(ring, tuple(generators), param,
                           tuple(base_params), claimed_rank, provenance,
                           tuple(tuple(b) for b in basis) if basis else None)


def _check_no_reserved(ring: Ring):
    if RESERVED_PARAM in ring.variables:
        raise InputError(
            f"{RESERVED_PARAM!r} is reserved for the family parameter; "
            "present it without t and let the constructor append it")


def _triangular_shape(f: Poly, active_index: int, later_actives) -> int:
    """Validate the upper-triangular shape of f in its active variable and
    return the degree of the monic power."""
    ring = f.ring
    d = f.degree_in(active_index)
    if d < 1:
        raise InputError(
            f"generator {f} is not monic in {ring.variables[active_index]!r}")
    one = ring.field.one
    top = [e for e in f.terms if e[active_index] == d]
    pure = tuple(d if i == active_index else 0 for i in range(ring.nvars))
    if top != [pure] or f.terms[pure] != one:
        raise InputError(
            f"generator {f} is not monic of degree {d} in "
            f"{ring.variables[active_index]!r}")
    for e in f.terms:
        if e == pure:
            continue
        if any(e[j] for j in later_actives) or e[active_index] >= d:
            raise InputError(
                f"generator {f} is not triangular: lower terms may only "
                "involve earlier variables")
    return d


def triangular_smoothing(fs, base_params=()) -> SmoothingFamily:
    """Family F_i = (1-t) f_i + t g_i for a triangular system f_i monic of
    degree d_i in the i-th active variable with lower coefficients in the
    earlier variables; g_i is the split polynomial with roots 0..d_i-1.

    The quotient is free over the base with the box of monomials below the
    degrees as certificate basis.
    """
    fs = list(fs)
    if not fs:
        raise InputError("empty triangular system")
    ring0 = fs[0].ring
    _check_no_reserved(ring0)
    for f in fs:
        if f.ring != ring0:
            raise InputError("all generators must share a ring")
    base_params = tuple(base_params)
    actives = [v for v in ring0.variables if v not in base_params]
    if len(fs) != len(actives):
        raise InputError(
            f"need one generator per active variable: {len(actives)} "
            f"active variables, {len(fs)} generators")
    active_pos = [ring0.var_index(v) for v in actives]
    degrees = []
    for i, f in enumerate(fs):
        degrees.append(_triangular_shape(f, active_pos[i], active_pos[i + 1:]))

    field = ring0.field
    roots = field.scalar_sequence(max(degrees))
    big = Ring(field, tuple(base_params) + tuple(actives) + (RESERVED_PARAM,),
               GREVLEX)
    t = Poly.variable(big, RESERVED_PARAM)
    one_minus_t = Poly.one(big) - t
    gens = []
    for v, f, d in zip(actives, fs, degrees):
        x = Poly.variable(big, v)
        g = Poly.one(big)
        for j in range(d):
            g = g * (x - Poly.constant(big, roots[j]))
        gens.append(one_minus_t * rename_into(f, big) + t * g)

    box = _box_basis(degrees)
    rank = 1
    for d in degrees:
        rank *= d
    provenance = "degree2" if degrees == [2] and len(actives) == 1 else "triangular"
    return SmoothingFamily(big, tuple(gens), RESERVED_PARAM, base_params,
                           rank, provenance, box)


def _box_basis(degrees):
    box = [()]
    for d in degrees:
        box = [b + (e,) for b in box for e in range(d)]
    return tuple(sorted(box))


def distraction_family(I: Ideal) -> SmoothingFamily:
    """Replace each monomial generator x^a by the product of the shifted
    linear factors (x_i - j t) for j < a_i; the fixed scalar sequence
    0, 1, 2, ... keeps the construction deterministic.  Certificate basis:
    the standard monomials of I."""
    ring0 = I.ring
    _check_no_reserved(ring0)
    exps = []
    for g in I.generators:
        if g.is_zero():
            continue
        if len(g.terms) != 1:
            raise InputError(f"non-monomial generator {g}")
        exps.append(g.leading_monomial())
    if not exps:
        raise InputError("distraction needs at least one monomial generator")
    standard = quotient_basis(buchberger(I))  # raises if infinite colength
    max_exp = max(max(e) for e in exps)
    scalars = ring0.field.scalar_sequence(max_exp)

    big = Ring(ring0.field, ring0.variables + (RESERVED_PARAM,), GREVLEX)
    t = Poly.variable(big, RESERVED_PARAM)
    gens = []
    for a in exps:
        g = Poly.one(big)
        for i, power in enumerate(a):
            x = Poly.variable(big, ring0.variables[i])
            for j in range(power):
                g = g * (x - Poly.constant(big, scalars[j]) * t)
        gens.append(g)
    return SmoothingFamily(big, tuple(gens), RESERVED_PARAM, (),
                           len(standard), "distraction", tuple(standard))


def product_family(Z1: SmoothingFamily, Z2: SmoothingFamily) -> SmoothingFamily:
    """Family for the product scheme: both generator sets in a combined
    ring over the shared parameter; rank multiplies, fibers tensor."""
    if Z1.ring.field != Z2.ring.field:
        raise InputError("field mismatch between the factors")
    used = set(Z1.ring.variables) | set(Z2.ring.variables)
    taken = set(Z1.ring.variables)
    renames = {}
    for v in Z2.ring.variables[:-1]:
        if v in taken:
            i = 1
            while f"{v}_{i}" in used:
                i += 1
            renames[v] = f"{v}_{i}"
            used.add(renames[v])
        taken.add(renames.get(v, v))

    def re(name):
        return renames.get(name, name)

    params = Z1.base_params + tuple(re(p) for p in Z2.base_params)
    actives = Z1.actives + tuple(re(a) for a in Z2.actives)
    big = Ring(Z1.ring.field, params + actives + (Z1.param,), GREVLEX)

    z2_ring = Ring(Z2.ring.field,
                   tuple(re(v) for v in Z2.ring.variables[:-1]) + (Z1.param,),
                   GREVLEX)
    gens = [rename_into(g, big) for g in Z1.generators]
    for g in Z2.generators:
        gens.append(rename_into(Poly(z2_ring, dict(g.terms)), big))

    basis = None
    if Z1.basis is not None and Z2.basis is not None:
        basis = tuple(sorted(b1 + b2 for b1 in Z1.basis for b2 in Z2.basis))
    return SmoothingFamily(big, tuple(gens), Z1.param, params,
                           Z1.claimed_rank * Z2.claimed_rank, "product", basis)


def fiber_at(Z: SmoothingFamily, t0) -> Ideal:
    """Specialize the parameter to the scalar t0; the result lives in the
    ambient ring without the parameter variable."""
    field = Z.ring.field
    if isinstance(t0, int) and not isinstance(t0, bool):
        value = field.from_int(t0)
    else:
        value = t0  # already a scalar of the field
    ambient = Z.ambient_ring
    gens = []
    for g in Z.generators:
        h = substitute_scalar(g, Z.param, value)
        gens.append(rename_into(h, ambient))
    return ideal(ambient, gens)


def _lex_check_ring(Z: SmoothingFamily) -> Ring:
    # actives get top lex priority (in reverse listing order, so that a
    # triangular system's monic powers lead), then base params, then t
    vs = tuple(reversed(Z.actives)) + Z.base_params + (Z.param,)
    return Ring(Z.ring.field, vs, LEX)


def relative_degree(I: Ideal, base_params=()) -> int:
    """Size of the standard-monomial spanning set of ring/I as a module
    over the polynomial subring on `base_params`.  Plain vector-space
    dimension when there are no base parameters.  Raises when the quotient
    is not module-finite."""
    if not base_params:
        return quotient_dimension(I)
    actives = tuple(v for v in I.ring.variables if v not in base_params)
    check = Ring(I.ring.field, tuple(reversed(actives)) + tuple(base_params),
                 LEX)
    gb = buchberger(ideal(check, [rename_into(g, check) for g in I.generators]))
    na = len(actives)
    lms = [m for m in gb.leading_monomials() if not any(m[na:])]
    for i in range(na):
        if not any(m[i] > 0 and not any(m[j] for j in range(na) if j != i)
                   for m in lms):
            raise PreconditionError(
                f"quotient is not module-finite over {base_params}: no pure "
                f"power of {check.variables[i]!r} leads")
    sub = Ring(I.ring.field, check.variables[:na], LEX)
    restricted = ideal(sub, [Poly.monomial(sub, m[:na]) for m in lms])
    return len(quotient_basis(buchberger(restricted)))


@dataclass(frozen=True)
class FlatReport:
    mode: str                 # "proof" | "evidence"
    flat_evidence: bool
    rank: int
    per_sample_degrees: dict

    def to_json(self) -> dict:
        return {"mode": self.mode, "flat_evidence": self.flat_evidence,
                "rank": self.rank,
                "per_sample_degrees": dict(self.per_sample_degrees)}


def _certificate_holds(Z: SmoothingFamily) -> bool:
    """Freeness proof: in a lex order with the actives leading, every
    leading monomial of the family ideal is purely active and the active
    staircase complement equals the certificate basis.  Then the quotient
    is a free module over k[base][t] with exactly that monomial basis."""
    check = _lex_check_ring(Z)
    gb = buchberger(ideal(check, [rename_into(g, check) for g in Z.generators]))
    na = len(Z.actives)
    lms = gb.leading_monomials()
    if any(any(m[na:]) for m in lms):
        return False
    sub = Ring(Z.ring.field, check.variables[:na], LEX)
    restricted = ideal(sub, [Poly.monomial(sub, m[:na]) for m in lms])
    try:
        standard = quotient_basis(buchberger(restricted))
    except PreconditionError:
        return False
    # standard monomials are over reversed actives; flip back
    got = {tuple(reversed(m)) for m in standard}
    return got == set(Z.basis or ())


def check_flat_finite(Z: SmoothingFamily, samples) -> FlatReport:
    """Certificate verification when a basis is attached (a proof of
    freeness over the base), otherwise sampled-fiber degree constancy
    (evidence only).  Samples must be nonempty and include 0."""
    samples = list(samples)
    field = Z.ring.field
    values = [field.from_int(s) if isinstance(s, int) and not isinstance(s, bool)
              else s for s in samples]
    if not values or field.zero not in values:
        raise InputError("samples must be nonempty and include 0")
    degrees = {}
    for raw, value in zip(samples, values):
        fib = fiber_at(Z, value)
        degrees[str(raw)] = relative_degree(fib, Z.base_params)

    if Z.basis is not None:
        proof = (_certificate_holds(Z)
                 and len(Z.basis) == Z.claimed_rank
                 and all(d == Z.claimed_rank for d in degrees.values()))
        return FlatReport("proof", proof, Z.claimed_rank, degrees)

    distinct = set(degrees.values())
    rank = degrees.get("0", next(iter(degrees.values())))
    return FlatReport("evidence", len(distinct) == 1, rank, degrees)


def _det(rows, field):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = None
    for j in range(n):
        if rows[0][j].is_zero():
            continue
        minor = [[rows[i][k] for k in range(n) if k != j] for i in range(1, n)]
        term = rows[0][j] * _det(minor, field)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        return rows[0][0]  # a zero entry; the zero polynomial
    return total


def is_etale_fiber(I: Ideal, actives=None) -> bool:
    """Unramifiedness certificate for a finite quotient: 1 lies in I plus
    the maximal minors of the Jacobian with respect to the active
    variables.  Together with finiteness this certifies that the fiber is
    a disjoint union of separable points."""
    ring = I.ring
    actives = tuple(actives) if actives is not None else ring.variables
    base = tuple(v for v in ring.variables if v not in actives)
    relative_degree(I, base)  # raises if the quotient is not finite
    gens = [g for g in I.generators if not g.is_zero()]
    na = len(actives)
    if len(gens) < na:
        return False
    jac = [[g.derivative(ring.var_index(v)) for v in actives] for g in gens]
    minors = []
    for rows in combinations(range(len(gens)), na):
        minors.append(_det([jac[r] for r in rows], ring.field))
    J = ideal(ring, list(gens) + minors)
    return contains_one(J)
