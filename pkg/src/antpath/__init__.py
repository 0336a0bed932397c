"""Prerequisite learning paths from a frequent-pattern term graph.

Build the graph from term definitions and classroom QA logs (``corpus``,
``fpgraph``), then answer "what should I learn before X?" with an
ant-colony search verified against an exhaustive oracle (``aco``).
``service`` exposes the whole thing over HTTP; ``cli`` is the command-line
entry point.
"""

from .aco import (
    ACOParams,
    AntTour,
    LearningPath,
    PheromoneTable,
    TourOutcome,
    brute_force_oracle,
    construct_tour,
    count_associations,
    enumerate_feasible_paths,
    feasible_neighborhood,
    initialize_pheromone,
    learning_path,
    run_search,
    select_best,
    transition_probabilities,
    update_trail,
)
from .corpus import (
    TermDefinition,
    Transaction,
    TransactionKind,
    Vocabulary,
    normalize_term,
    parse_definitions,
    parse_qa_log,
    serialize_definitions,
    serialize_qa_log,
    to_transaction,
)
from .errors import (
    AntPathError,
    CorpusParseError,
    DuplicateDefinitionError,
    EmptyNeighborhoodError,
    InvalidParameterError,
    InvalidTermError,
    NoPathError,
    OracleTooLargeError,
    SnapshotError,
    UnknownTermError,
)
from .fpgraph import ROOT, EdgeStats, FPGraph, MatchReport, TermNode

__version__ = "0.1.0"

__all__ = [
    "ACOParams",
    "AntPathError",
    "AntTour",
    "CorpusParseError",
    "DuplicateDefinitionError",
    "EdgeStats",
    "EmptyNeighborhoodError",
    "FPGraph",
    "InvalidParameterError",
    "InvalidTermError",
    "LearningPath",
    "MatchReport",
    "NoPathError",
    "OracleTooLargeError",
    "PheromoneTable",
    "ROOT",
    "SnapshotError",
    "TermDefinition",
    "TermNode",
    "TourOutcome",
    "Transaction",
    "TransactionKind",
    "UnknownTermError",
    "Vocabulary",
    "brute_force_oracle",
    "construct_tour",
    "count_associations",
    "enumerate_feasible_paths",
    "feasible_neighborhood",
    "initialize_pheromone",
    "learning_path",
    "normalize_term",
    "parse_definitions",
    "parse_qa_log",
    "run_search",
    "select_best",
    "serialize_definitions",
    "serialize_qa_log",
    "to_transaction",
    "transition_probabilities",
    "update_trail",
]
