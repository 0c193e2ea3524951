"""Exact computation of maximal antipodal sets in classical compact symmetric spaces."""

__version__ = "0.1.0"

from .catalog import canonical_maximal_set, catalog_list, expected_two_number, get_entry
from .groups import ExtendedGroup, GroupSpec, InvolutionSpec, Theta
from .space import AntipodalSet, CosetPoint, SpaceModel, build_F2, saturate
from .search import (enumerate_maximal_classes, make_pool, maximality_certificate, two_number,
                     weyl_pool)

__all__ = [
    "GroupSpec", "InvolutionSpec", "Theta", "ExtendedGroup", "SpaceModel", "CosetPoint",
    "AntipodalSet", "build_F2", "saturate", "make_pool", "two_number", "maximality_certificate",
    "enumerate_maximal_classes", "weyl_pool", "catalog_list", "get_entry",
    "canonical_maximal_set", "expected_two_number",
]
