"""Blood-relationship search over pedigree graphs."""

from .complexity import bfs_count, bidi_count, pbba_count, table1
from .errors import (
    ConfigInvalid,
    CycleDetected,
    DanglingParent,
    DuplicateId,
    InsufficientPopulation,
    KinsearchError,
    NotRelated,
    NotRelatedWithinLimit,
    ParentSexMismatch,
    ParseError,
    UnknownPerson,
)
from .genfam import GenConfig, GenLedger, generate, population, sample_pairs
from .kinship import KinshipInput, KinshipTerm, classify, name_relationship
from .pedigree import PedigreeBuilder, PedigreeGraph, Person, Sex, build_graph, load_csv, save_csv
from .search import (
    Algorithm,
    Route,
    SearchResult,
    SearchStats,
    bidi_bfs_search,
    lca_oracle,
    pbba_search,
    plain_bfs_search,
)

__version__ = "0.1.0"
