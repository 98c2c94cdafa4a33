from .presented import PresentedSpace, RelationFamily, Slot, factor_multilinear, induce_map, relation_witness
from .hom import HomSpace, induce_hom_map
from .tensor import (
    Bimodule,
    QuotientModule,
    RelTensorSpace,
    SidedModule,
    coinvariants,
    quotient_module,
    tensor_chain,
    tensor_over,
)
