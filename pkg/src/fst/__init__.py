"""Exact computational toolkit for finite schemes over QQ and prime
fields: apolarity and catalecticants, Gorenstein and Hilbert-function
analysis, smoothing families with flatness certificates, and secant and
cactus membership via rank loci."""

from .apolarity import (CatalecticantMatrix, DPForm, apolar_ideal,
                        catalecticant_matrix, catalecticant_rank, contract,
                        format_dp, parse_dp, sum_of_powers, veronese_point)
from .errors import (AlgebraError, InconclusiveError, InputError, ParseError,
                     PreconditionError)
from .field import GF, QQ, FieldSpec, parse_field
from .groebner import (GroebnerBasis, buchberger, contains_one, eliminate,
                       graded_piece_dim, ideal_contains, ideal_equal,
                       ideal_intersect, ideal_member, normal_form,
                       quotient_basis, quotient_dimension, saturate,
                       saturate_irrelevant, spoly)
from .poly import (GREVLEX, LEX, Ideal, Poly, Ring, block_order, format_poly,
                   ideal, parse_ideal_file, parse_poly, ring_make)
from .schemes import (embedding_dimension, hilbert_function, is_gorenstein,
                      is_linearly_normal, is_local_at_origin, scheme_degree,
                      socle_dimension, span_dimension)
from .secant import (RankProfile, cactus_rank_lower_bound, in_secant_locus,
                     membership_report, rank_profile, secant_ideal_rnc,
                     span_closure_eliminate, span_intersection_check,
                     star_condition)
from .smoothing import (FlatReport, SmoothingFamily, check_flat_finite,
                        distraction_family, fiber_at, is_etale_fiber,
                        make_family, product_family, relative_degree,
                        triangular_smoothing)

__all__ = [name for name in dir() if not name.startswith("_")]
