from .structure import StructureAlgebra, StructureCoalgebra, as_tensor, as_vector
from .bialgebra import (
    WeakBialgebra,
    WeakHopfAlgebra,
    projection_maps,
    verify_antipode,
    verify_structure_identities,
    verify_weak_bialgebra,
    verify_weak_hopf,
)
