"""Preference-based argumentation for choosing an explainer that suits its audience."""

from .arguments import (
    Argument,
    ArgumentationFramework,
    AttackEdge,
    PreferenceRelation,
    abstract_framework,
    apply_preferences,
    build_candidate_arguments,
    build_framework,
    compute_attacks,
    load_af,
)
from .engine import Solution, solve
from .grounder import collect_constants, ground_program, ground_rule
from .kb import Compound, Const, Literal, Preference, Program, Rule, Var, print_program
from .parser import ParseError, Query, parse_file, parse_program, parse_query
from .selector import ExplainerProfile, StakeholderModel, facts_from_profile, select_explainer
from .solver import (
    Label,
    Labelling,
    accept,
    enumerate_admissible,
    enumerate_preferred,
    grounded_labelling,
    is_admissible,
    is_conflict_free,
)
from .validation import merge_programs, validate_program

__version__ = "0.1.0"
