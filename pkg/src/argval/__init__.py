"""Argumentation frameworks, value-based audiences, dialogue games and DKQ proof checking."""

from .af import Framework, Semantics, Status, argument_status, enumerate_extensions, grounded_extension, legal_labellings
from .builder import BuilderConfig, StructuredArgument, attacks, build_arguments, framework_from_kb
from .dialogue import RuleSet, initial_state, legal_moves, play_script, preset, proponent_wins
from .dkq import check_derivation, match_axiom, parse_fo
from .formats import load_af, load_vaf
from .logic import KnowledgeBase, entails, is_consistent, parse_formula, render_formula
from .vaf import Audience, ValueFramework, practice_ordering, preferred_for_audience

__version__ = "0.1.0"
