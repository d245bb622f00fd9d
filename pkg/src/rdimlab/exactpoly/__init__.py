"""Exact polynomial arithmetic, Groebner bases and syzygies."""

from .groebner import (
    GroebnerBasis,
    buchberger,
    elimination_ideal,
    ideal_contains,
    normal_form,
    restrict_ring,
)
from .modules import (
    FreeModuleVector,
    ModuleGroebnerBasis,
    apply_columns,
    module_groebner,
    module_normal_form,
    syzygy_basis,
)
from .orders import DEGREVLEX, LEX, MonomialOrder, elimination, order_from_name
from .parse import parse_expression, parse_polynomial
from .ring import Polynomial, PolyRing

__all__ = [
    "DEGREVLEX",
    "LEX",
    "FreeModuleVector",
    "GroebnerBasis",
    "ModuleGroebnerBasis",
    "MonomialOrder",
    "Polynomial",
    "PolyRing",
    "apply_columns",
    "buchberger",
    "elimination",
    "elimination_ideal",
    "ideal_contains",
    "module_groebner",
    "module_normal_form",
    "normal_form",
    "order_from_name",
    "parse_expression",
    "parse_polynomial",
    "restrict_ring",
    "syzygy_basis",
]
