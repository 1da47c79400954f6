"""Discourse connective disambiguation over constituency-parsed text.

Candidate connectives are found with a lexicon, described by six local
lexical/syntactic features and classified as discourse-usage or
non-discourse-usage with a maximum-entropy model.
"""

__version__ = "0.1.0"

from .treebank import Node, ParseTree, SyntacticContext, TreeParseError, node_context, parse_bracketed_tree
from .lexicon import CandidateMatch, Lexicon, LexiconError, load_lexicon, match_connectives
from .corpus import (
    CorpusFormatError,
    Document,
    Instance,
    Label,
    Sentence,
    build_instances,
    load_corpus,
)
from .features import FEATURES, FeatureVector, extract_features
from .classifier import BaselineModel, MaxEntModel, TrainConfig, TrainingError, load_model, train_baseline, train_maxent

__all__ = [
    "BaselineModel",
    "CandidateMatch",
    "CorpusFormatError",
    "Document",
    "FEATURES",
    "FeatureVector",
    "Instance",
    "Label",
    "Lexicon",
    "LexiconError",
    "MaxEntModel",
    "Node",
    "ParseTree",
    "Sentence",
    "SyntacticContext",
    "TrainConfig",
    "TrainingError",
    "TreeParseError",
    "build_instances",
    "extract_features",
    "load_corpus",
    "load_lexicon",
    "load_model",
    "match_connectives",
    "node_context",
    "parse_bracketed_tree",
    "train_baseline",
    "train_maxent",
]
