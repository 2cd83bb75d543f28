"""Finite groups, labelings, skew products, G-extensions and cohomology tests in one namespace.

The implementations live in :mod:`finite_group`, :mod:`extension`,
:mod:`cohomology` and :mod:`subshift`; this module gathers them.
"""

from __future__ import annotations

from .cohomology import coboundary_search_one_block, periodic_orbit_obstruction
from .extension import (
    GExtensionLGS,
    check_extension_characterization,
    check_g_action,
    check_presentation_correspondence,
    g_extension,
    quotient_extension,
    quotient_of,
)
from .finite_group import FiniteGroup, load_group, make_cyclic
from .subshift import skew_product_spec

__all__ = [
    "FiniteGroup",
    "GExtensionLGS",
    "check_extension_characterization",
    "check_g_action",
    "check_presentation_correspondence",
    "coboundary_search_one_block",
    "g_extension",
    "load_group",
    "make_cyclic",
    "periodic_orbit_obstruction",
    "quotient_extension",
    "quotient_of",
    "skew_product_spec",
]
