"""Ordinal concavity for set functions on a finite Boolean lattice.

Set functions are dense tables indexed by bitmask; ``NEG_INF`` marks subsets
outside the effective domain.
"""

from .choice import (
    IntervalResult,
    PathForm,
    Direction,
    canonical_choice,
    check_dual_substitutability,
    check_path_independence,
    check_sen_alpha,
    check_substitutability,
    choice_correspondence,
    choice_sets,
    enclosure,
    interval_maximizers,
    is_proper_set,
    preimage,
)
from .core import (
    MAX_GROUND,
    NEG_INF,
    GroundSet,
    SetFunction,
    Subset,
    contraction,
    dual,
    dual_convex,
    evaluate,
    is_finite,
    minor,
    neighborhood,
    reduction,
)
from .errors import *  # noqa: F401,F403
from .io import load, load_fixture, parse_document, to_document
from .lexico import LexSetFunction, LexValue, check_lex_wconcavity, lex_compare, lex_compose
from .optimize import (
    ClimbMode,
    ClimbTrace,
    ImprovingPath,
    Quantifier,
    hill_climb,
    improving_path,
    increasing_ordering,
    local_maximizers,
    maximize_contractive,
    prefix_chain,
)
from .verify import (
    FunctionKind,
    PropertyReport,
    SubsetFamily,
    Violation,
    Witness,
    argmax_family,
    check_MN_characterization,
    check_mnat_convex_family,
    check_ordinal_concavity,
    check_ordinal_wconcavity,
    check_unique_maximizer,
    corpus,
    generate,
    replay,
)

__version__ = "0.1.0"
