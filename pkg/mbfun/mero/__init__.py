# mbfun/mero/__init__.py
from .sections import LaurentSection, SectionContext, add_sections, apply_operator
from .oracle import OracleResult, verify_functional_equation, homogeneity_weights
from .sigma import (
    CERTIFIED,
    FAILED,
    UNCERTIFIED,
    BMeroResult,
    ResidueProfile,
    SigmaPresentation,
    b_mero,
    b_section_along_t,
    b_simple,
    build_sigma,
    certified_sabbah_line,
    generic_lower_bound,
    lower_bound,
    residue_profile,
)
from .reduced import ChainReport, divisibility_chain, is_quasi_homogeneous, reduced_b, smoothness_test

__all__ = [
    'LaurentSection',
    'SectionContext',
    'add_sections',
    'apply_operator',
    'OracleResult',
    'verify_functional_equation',
    'homogeneity_weights',
    'CERTIFIED',
    'UNCERTIFIED',
    'FAILED',
    'SigmaPresentation',
    'BMeroResult',
    'ResidueProfile',
    'build_sigma',
    'b_section_along_t',
    'b_mero',
    'b_simple',
    'residue_profile',
    'certified_sabbah_line',
    'generic_lower_bound',
    'lower_bound',
    'ChainReport',
    'divisibility_chain',
    'is_quasi_homogeneous',
    'reduced_b',
    'smoothness_test',
]
