"""Translate alternating weak Büchi automata into unambiguous Büchi automata
by tracking total preorders, with lasso-word oracles to check the result."""

from .constructions import (brv_construct, bu_construct, build, miyano_hayashi,
                            safety_fallback, u_construct)
from .core import Awa, Nba, complete, dualize, scc_analyze, validate_weak
from .io import parse_awa, print_awa, print_hoa
from .lasso import LassoWord, normalize
from .semantics import awa_accepts, distance_profile, unique_sequence
from .verification import ambiguity_check, bounded_language_diff, nba_lasso_accepts

__all__ = [
    "Awa", "Nba", "LassoWord", "complete", "dualize", "scc_analyze", "validate_weak",
    "miyano_hayashi", "brv_construct", "bu_construct", "u_construct", "safety_fallback",
    "build", "parse_awa", "print_awa", "print_hoa", "normalize", "awa_accepts",
    "unique_sequence", "distance_profile", "ambiguity_check", "bounded_language_diff",
    "nba_lasso_accepts",
]
