"""Grammar-driven planning queries with constraint oracles for tool-using agents."""
from .common import GenerationError, Mode
from .grammar import ParagraphSkeleton, enumerate_expansion_options, expand_sentence, parse_skeleton, serialize_skeleton
from .lexicon import Lexicon, builtin_lexicon
from .solver import ConstraintSet, canonicalize, check_sat, equivalent, evaluate, feasible_schedule
from .synthesis import (ActionSpec, QueryCase, derive_constraints, extend_with_time, fill_text, generate_case,
                        synthesize_equivalent, synthesize_paragraph)

__version__ = "0.1.0"
