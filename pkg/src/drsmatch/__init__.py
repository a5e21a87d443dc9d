"""Toolkit for DRS clausal forms: parsing, validation, conversion and matching."""

from .amr import (
    AmrEdge,
    AmrGraph,
    ConversionDictionary,
    amr_to_drs,
    default_dictionary,
    load_dictionary,
    parse_penman,
    parse_penman_corpus,
)
from .clausefile import (
    CorpusDocument,
    corpus_to_json,
    form_to_json_obj,
    parse_corpus,
    parse_document,
    serialize_corpus,
    serialize_form,
)
from .core import (
    Clause,
    ClausalForm,
    ClauseTag,
    KIND_BOX,
    KIND_DUAL,
    KIND_REFERENT,
    Term,
    ValidationReport,
    build_form,
    classify_clause,
    infer_variable_kinds,
    validate_form,
)
from .exact import OracleLimits, naive_optimal, optimal_match
from .matching import (
    MatchConfig,
    MatchResult,
    SEED_CONCEPT,
    SEED_RANDOM,
    SEED_ROLE,
    generate_seed,
    hill_climb,
    match_forms,
    score_mapping,
)
from .metrics import (
    ClauseTypeStats,
    CorpusScore,
    SweepReport,
    aggregate,
    clause_type_stats,
    prf,
    sweep_report,
)
from .normalize import RenamingTable, remove_redundant_refs, rename_variables, standardize_variables
from .spar import spar_rank, spar_select

__version__ = "0.1.0"

__all__ = [
    "AmrEdge",
    "AmrGraph",
    "Clause",
    "ClausalForm",
    "ClauseTag",
    "ClauseTypeStats",
    "ConversionDictionary",
    "CorpusDocument",
    "CorpusScore",
    "KIND_BOX",
    "KIND_DUAL",
    "KIND_REFERENT",
    "MatchConfig",
    "MatchResult",
    "OracleLimits",
    "RenamingTable",
    "SEED_CONCEPT",
    "SEED_RANDOM",
    "SEED_ROLE",
    "SweepReport",
    "Term",
    "ValidationReport",
    "aggregate",
    "amr_to_drs",
    "build_form",
    "classify_clause",
    "clause_type_stats",
    "corpus_to_json",
    "default_dictionary",
    "form_to_json_obj",
    "generate_seed",
    "hill_climb",
    "infer_variable_kinds",
    "load_dictionary",
    "match_forms",
    "naive_optimal",
    "optimal_match",
    "parse_corpus",
    "parse_document",
    "parse_penman",
    "parse_penman_corpus",
    "prf",
    "remove_redundant_refs",
    "rename_variables",
    "score_mapping",
    "serialize_corpus",
    "serialize_form",
    "spar_rank",
    "spar_select",
    "standardize_variables",
    "sweep_report",
    "validate_form",
]
