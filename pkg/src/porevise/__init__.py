"""Revision of partially ordered epistemic states.

Epistemic states are partial pre-orders over interpretations; belief bases
are labelled formulas with a partial pre-order over the labels.  Both levels
support history-based and possibilistic revision, and ``bridge`` connects
them.
"""

from .bridge import beliefs_syn, check_belief_equivalence, check_commutation, infers, we_map
from .logic import Vocabulary, parse_formula
from .preorder import Mode, PartialPreorder
from .semantic import EpistemicState, Operator, beliefs_sem, revise_sem
from .syntactic import BeliefBase, load_base, parse_base, revise_syn

__version__ = "0.1.0"

__all__ = [
    "BeliefBase",
    "EpistemicState",
    "Mode",
    "Operator",
    "PartialPreorder",
    "Vocabulary",
    "beliefs_sem",
    "beliefs_syn",
    "check_belief_equivalence",
    "check_commutation",
    "infers",
    "load_base",
    "parse_base",
    "parse_formula",
    "revise_sem",
    "revise_syn",
    "we_map",
]
