"""Exact construction and certification of complete sets of mutually unbiased bases."""

from .bent import FunctionTable, MubentSet, is_bent_odd, is_bent_z4, verify_mubent, walsh_bent_oracle
from .constructions import (
    SpreadSet,
    mubent_from_spread_z2,
    quadratic_odd,
    quadratic_z4,
    scalar_spread_set_z2,
    trace_family_odd,
    verify_spread_set,
)
from .cyclotomic import CyclotomicInt, GaussianInt, norm_sq, root_power
from .engine import MubFamily, PhaseMatrix, build_basis, build_mub_family, verify_complete_mub
from .gf import GaloisField, find_self_dual_basis, trace

__version__ = "0.1.0"

__all__ = [
    "CyclotomicInt",
    "FunctionTable",
    "GaloisField",
    "GaussianInt",
    "MubFamily",
    "MubentSet",
    "PhaseMatrix",
    "SpreadSet",
    "build_basis",
    "build_mub_family",
    "find_self_dual_basis",
    "is_bent_odd",
    "is_bent_z4",
    "mubent_from_spread_z2",
    "norm_sq",
    "quadratic_odd",
    "quadratic_z4",
    "root_power",
    "scalar_spread_set_z2",
    "trace",
    "trace_family_odd",
    "verify_complete_mub",
    "verify_mubent",
    "verify_spread_set",
    "walsh_bent_oracle",
]
