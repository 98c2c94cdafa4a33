from .homology import (
    cohomology_of_H,
    ext_dims,
    homology_of_H,
    hopf_chain_complex,
    hopf_cochain_complex,
    regular_module,
    tor_complex,
    trivial_left_module,
    trivial_right_module,
    verify_hopf_cohomology,
    verify_hopf_homology,
    verify_trivial_modules,
)
from .resolution import BarTail, Resolution, bar_space, build_resolution
