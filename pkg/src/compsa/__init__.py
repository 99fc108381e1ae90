"""Unsupervised, syntax-driven sentiment analysis over universal dependency trees."""

from .deptree import (DepSentence, TaggedToken, ancestor, children, lm_branch, parse_conll,
                      postorder, serialize_conll)
from .engine import analyze_document, analyze_sentence, init_so
from .lexicon import LexiconBundle, load_bundle, lookup_beta, lookup_so
from .ruleset import (OperationSpec, ScopeCandidate, TransformSpec, TriggerPredicate,
                      apply_transform, builtin_universal_rules, load_rules_xml, matches,
                      resolve_scope)

__version__ = "0.1.0"
