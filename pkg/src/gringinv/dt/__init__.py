"""Truncated p-adic computation of DT(Z_p[G]) for p-groups."""

from .components import (ComponentUnits, WedderburnComponent, WedderburnData, component_units_from_center,
                         congruence_check, nrd_batch, nrd_truncated, project_quotient,
                         random_component_units, wedderburn)
from .engine import (DTGroup, FiniteAbelianGroup, dt_at_precision, dt_class, dt_compute, dt_membership,
                     group_ring_unit_generators)
from .local_ring import LocalRing, local_ring

__all__ = [
    "ComponentUnits",
    "DTGroup",
    "FiniteAbelianGroup",
    "LocalRing",
    "WedderburnComponent",
    "WedderburnData",
    "component_units_from_center",
    "congruence_check",
    "dt_at_precision",
    "dt_class",
    "dt_compute",
    "dt_membership",
    "group_ring_unit_generators",
    "local_ring",
    "nrd_batch",
    "nrd_truncated",
    "project_quotient",
    "random_component_units",
    "wedderburn",
]
