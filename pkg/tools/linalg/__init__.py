from .scalars import Field, ModP, field_from_descriptor, prime_field, rational_field
from .echelon import (
    EchelonBasis,
    QuotientPresentation,
    free_columns,
    kernel_basis,
    kernel_from_echelon,
    keyed_quotient,
    make_quotient,
    rank,
    solve_linear,
)
from .matrix import ExactMatrix, kernel_matrix
