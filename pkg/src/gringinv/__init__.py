"""Exact character theory, reduced norms and DT groups for group rings of finite p-groups."""

from .center import CenterElement, GroupRingElement, induce_center, nrd, twist
from .characters import CharacterTable, ClassFunction, character_table, inner_product, monomial_rep
from .cyclotomic import Cyc, root_of_unity
from .errors import (InputError, InvalidDatumError, InvalidGroupError, PrecisionExhausted,
                     UnsupportedGroupError)
from .groups import FiniteGroup, Subgroup, builtin_group, load_group, normal_subgroups, quotient_group, xi_set
from .ramification import (GlobalExtData, LocalRamData, WildPlace, global_c, load_global, load_local,
                           twisted_c, validate_local)

__version__ = "0.1.0"

__all__ = [
    "CenterElement",
    "CharacterTable",
    "ClassFunction",
    "Cyc",
    "FiniteGroup",
    "GlobalExtData",
    "GroupRingElement",
    "InputError",
    "InvalidDatumError",
    "InvalidGroupError",
    "LocalRamData",
    "PrecisionExhausted",
    "Subgroup",
    "UnsupportedGroupError",
    "WildPlace",
    "builtin_group",
    "character_table",
    "global_c",
    "induce_center",
    "inner_product",
    "load_global",
    "load_group",
    "load_local",
    "monomial_rep",
    "normal_subgroups",
    "nrd",
    "quotient_group",
    "root_of_unity",
    "twist",
    "twisted_c",
    "validate_local",
    "xi_set",
]
