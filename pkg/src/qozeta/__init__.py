"""Exact zeta functions, Milnor fiber and spectrum of quasi-ordinary branches."""

from .branch import QOBranchData, QOInvariants, derive_invariants, is_normalized, random_branch, validate
from .fan import build_fan, classify_vector, enumerate_orders
from .motivic import milnor_fiber_closed, z_mono, z_naive
from .spectrum import spectrum_prime, spectrum_sp
from .ztop import candidate_poles, z_top

__all__ = [
    "QOBranchData",
    "QOInvariants",
    "build_fan",
    "candidate_poles",
    "classify_vector",
    "derive_invariants",
    "enumerate_orders",
    "is_normalized",
    "milnor_fiber_closed",
    "random_branch",
    "spectrum_prime",
    "spectrum_sp",
    "validate",
    "z_mono",
    "z_naive",
    "z_top",
]
