"""Mechanical checkers for structural statements about interval completions."""

from .anatomy import clique_anatomy, verify_clique_characterization
from .bounds import verify_bounds
from .fillin import verify_fill_in_structure
from .laws import verify_canonical_laws, verify_module_stays
from .report import HOLDS, PRECONDITION_FAILED, VIOLATED, LemmaReport, Summary
from .sections import verify_section_reconstruction
from .separation import verify_small_separation

__all__ = [
    "HOLDS",
    "PRECONDITION_FAILED",
    "VIOLATED",
    "LemmaReport",
    "Summary",
    "clique_anatomy",
    "verify_bounds",
    "verify_canonical_laws",
    "verify_clique_characterization",
    "verify_fill_in_structure",
    "verify_module_stays",
    "verify_section_reconstruction",
    "verify_small_separation",
]
