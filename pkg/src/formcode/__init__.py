"""Equidistant subspace codes for linear network coding built from coprime forms over F_q."""

from .gf import FieldElement, FieldSpec, fe_add, fe_inv, fe_mul, field_for_order, field_new
from .homopoly import (
    HomogeneousPoly,
    Monomial,
    NormalizedPoly,
    count_normalized,
    divides,
    format_poly,
    monomial_basis,
    normalize,
    parse_poly,
    poly_mul,
    rank,
    unrank,
)
from .irreducibles import census, count_irreducible, linear_powers, pairwise_coprime, sieve_irreducible
from .subspace import Subspace, dist, intersect_dim, intersection, subspace_from_vectors, sum_dim
from .codes import (
    CodeParameters,
    SubspaceCode,
    build_code,
    build_codeword,
    code_params,
    min_distance_bruteforce,
    theoretical_distance,
)
from .channel import ChannelConfig, DecodeResult, corrupt, decode, simulate

__version__ = "0.1.0"
