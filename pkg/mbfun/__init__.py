# mbfun/__init__.py
from .errors import CapabilityError, CertificationError, MBFunError, PolySyntaxError, SignatureError
from .exact import BFunction, format_rational, parse_rational, polynomial_ring, rational
from .weyl import AlgebraSignature, WeylElement
from .groebner import LeftIdeal, MonomialOrder, eliminate, groebner_left, initial_ideal_weight
from .annihilator import PowerProductSymbol, ann_fs, bernstein_sato, sabbah_line
from .mero import b_mero, b_simple, reduced_b, residue_profile, divisibility_chain, verify_functional_equation
from .resolution import NCChart, bound_set, check_lemma4, check_thm41, load_charts, member, roots_nc
from .multiplier import MonomialIdeal, check_cor_jump, is_in_multiplier_ideal, jumping_numbers_nc, multiplier_ideal_nc
from .parser import PolyExpr, parse_poly, parse_polys
from .report import Report

__all__ = [
    "MBFunError",
    "CapabilityError",
    "CertificationError",
    "SignatureError",
    "PolySyntaxError",
    "BFunction",
    "rational",
    "format_rational",
    "parse_rational",
    "polynomial_ring",
    "AlgebraSignature",
    "WeylElement",
    "LeftIdeal",
    "MonomialOrder",
    "groebner_left",
    "eliminate",
    "initial_ideal_weight",
    "PowerProductSymbol",
    "ann_fs",
    "bernstein_sato",
    "sabbah_line",
    "b_mero",
    "b_simple",
    "reduced_b",
    "residue_profile",
    "divisibility_chain",
    "verify_functional_equation",
    "NCChart",
    "roots_nc",
    "bound_set",
    "member",
    "check_lemma4",
    "check_thm41",
    "load_charts",
    "MonomialIdeal",
    "multiplier_ideal_nc",
    "is_in_multiplier_ideal",
    "jumping_numbers_nc",
    "check_cor_jump",
    "PolyExpr",
    "parse_poly",
    "parse_polys",
    "Report",
]


"""
mbfun - b-fonctions de Bernstein-Sato de fonctions méromorphes f = F/G.
"""

__version__ = "0.1.0"
__author__ = "Simonin"
