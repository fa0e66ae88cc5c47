"""Graph products of groups over cycles of cliques: normal forms,
decompositions, automorphisms and brute-force checks."""

from .errors import (
    BudgetExhausted,
    GraphProdError,
    HypothesisViolation,
    InvalidMorphism,
    KindMismatch,
    ParseError,
    PresentationMismatch,
    SupportViolation,
)
from .graphs import Graph, flower_graph, maximal_cliques, recognize_cc1, retract_to_flower
from .groups import Cyclic, DirectSum, Free, Integers, SplitWreath, parse_group
from .words import CanonicalWord, Presentation, Syllable, canonicalize, equal, normalize, parse_word, format_word

__version__ = "0.1.0"
