from .graded import (
    DoubleComplex,
    GradedComplex,
    Subquotient,
    TotalComplex,
    cochain_total,
    homology_dims,
    homotopy_check,
    induced_on_homology,
    is_chain_map,
)
from .mixed import CyclicHomology, MixedComplexData, column_complex, cyclic_from_mixed
from .spectral import FilteredComplex, SpectralPage, spectral_pages, verify_pages
