"""Minimally transitive permutation groups and their reductions."""

from .kernels import BACKEND
from .perm_core import (
    OrbitSystem,
    PermGroup,
    Permutation,
    compose,
    format_permutation,
    group_closure,
    inverse,
    orbits_and_transitivity,
    parse_permutation,
    power,
)

__version__ = "0.1.0"
