"""Generalized de Bruijn words and the state complexity of uniform-length languages."""

from gdebruijn.words import (
    CircularWord,
    canonical_rotation,
    circular_factors,
    conjugates,
    expected_factor_sum,
    factor_sum,
    gamma,
    gamma_profile,
    ilog,
    is_generalized_de_bruijn,
    parse_word,
)
from gdebruijn.construct import generate
from gdebruijn.automata import (
    UniformLanguage,
    minimal_dfa,
    state_complexity,
    sc_bound,
    conjugate_sc_bound,
    verify_theorem1,
    verify_conjugate_theorem,
)
from gdebruijn.enumeration import (
    count_gdb,
    debruijn_count_formula,
    list_gdb,
    max_sc_search,
    ternary_spot_checks,
)

__version__ = "0.1.0"

__all__ = [
    "CircularWord",
    "UniformLanguage",
    "canonical_rotation",
    "circular_factors",
    "conjugate_sc_bound",
    "conjugates",
    "count_gdb",
    "debruijn_count_formula",
    "expected_factor_sum",
    "factor_sum",
    "gamma",
    "gamma_profile",
    "generate",
    "ilog",
    "is_generalized_de_bruijn",
    "list_gdb",
    "max_sc_search",
    "minimal_dfa",
    "parse_word",
    "sc_bound",
    "state_complexity",
    "ternary_spot_checks",
    "verify_conjugate_theorem",
    "verify_theorem1",
]
