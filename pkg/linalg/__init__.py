"""Exact linear algebra over F_p and Q."""

from linalg.field import Field, FieldError, Matrix, PrimeField, RationalField, make_field
from linalg.subspace import (
    Subspace, DirectSumCheck, Quotient, image_space, kernel_basis,
    quotient_with_projection, sum_is_direct, sum_of,
)
