from .spaces import CleftSetting, Coefficients, hochschild_space, xbar, xbar_cochain, xhat, xhat_cochain
from .canonical import canonical_cohomology, canonical_homology, canonical_mixed_complex
from .chain import CleftChainComplex, build_chain_complex, cleft_homology, verify_cleft_homology
from .theta import chain_theta_lambda, cochain_theta_lambda, verify_theta_lambda
from .module_action import (
    coinvariant_module,
    homology_module,
    verify_a_equals_k_homology,
    verify_module_structure,
    verify_spectral_e2,
)
from .cochain import (
    CleftCochainComplex,
    build_cochain_complex,
    cleft_cohomology,
    cohomology_module,
    invariant_module,
    verify_a_equals_k_cohomology,
    verify_cleft_cohomology,
    verify_cohomology_e2,
    verify_right_module,
)
from .products import Chain, Cochain, ProductSetting, cap, cup, unit_cochain, verify_products
from .connes import build_connes, t_basis, verify_cyclic, verify_t_maps
