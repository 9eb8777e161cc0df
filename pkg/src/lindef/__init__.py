"""Linearity defect of Stanley-Reisner rings, computed exactly."""
from .builtins import parse_builtin
from .invariants import ld_delta, ld_irr, ld_via_ext, ld_via_lin
from .linalg import FieldSpec
from .resolution import minimal_free_resolution
from .simplicial import SimplicialComplex
from .sqmod import alexander_functor, stanley_reisner_module

__version__ = "0.1.0"
__all__ = ["FieldSpec", "SimplicialComplex", "alexander_functor", "ld_delta", "ld_irr",
           "ld_via_ext", "ld_via_lin", "minimal_free_resolution", "parse_builtin",
           "stanley_reisner_module"]
