"""Representations of bound quivers over an algebra A, i.e. modules over A ⊗ kQ/I."""

from representations.rep import (
    LambdaAlgebra, LambdaMorphism, LambdaRep, RepresentationError, ShortExactSeq, direct_sum,
    is_exact, path_map, rep_payload, reps_equal, validate_rep, zero_rep,
)
from representations.constructions import (
    adjunction_map, cokernel, direct_sum_all, hom_basis, hom_dim, image, kernel, quotient_rep,
    random_rep, tensor_pv, tensor_slots,
)
from representations.resolution import (
    CounitCover, counit_cover, direct_gp_check, ext_dims_lambda, is_projective_rep,
    projective_resolution_lambda, regular_rep,
)
