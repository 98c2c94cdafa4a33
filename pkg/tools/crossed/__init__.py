from .measure import (
    StableSubalgebra,
    WeakMeasure,
    full_module_witness,
    minimal_stable_subalgebra,
    stable_subalgebra,
    verify_weak_measure,
    verify_weak_module_algebra,
)
from .cocycle import (
    CocyclePair,
    bilinear_from_tensor,
    bilinear_to_tensor,
    convolution,
    evaluate,
    invert_cocycle,
    is_valued_in,
    trivial_cocycle,
    u2,
    verify_cocycle_pair,
    verify_crossed_hypotheses,
)
from .bundle import (
    CrossedProductBundle,
    build_checks,
    build_crossed_product,
    verify_cleft_identities,
    tensor_power_checks,
    verify_comodule_algebra,
)
