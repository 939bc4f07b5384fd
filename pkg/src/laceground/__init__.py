"""Enumeration and verification of toroidal 2-in/2-out lace ground embeddings."""

from .geometry import Arc, TorusDims, arcs_cross, direction_slot, step_length, wrap
from .paths import LacePath, count_lace_paths, generate_lace_paths, is_valid_lace_path
from .embedding import (
    GroundEmbedding,
    GroundFileError,
    add_path,
    deserialize,
    new_embedding,
    serialize,
    valid_embedding,
    valid_vertex,
)
from .canonical import (
    canonical_id,
    canonical_representative,
    identifier,
    identifier_text,
    is_canonical,
    prune_predicate,
    transform,
    translate,
    vertex_label,
)
from .validator import (
    CircuitPartition,
    PropertyReport,
    WindingVector,
    check_connected,
    check_no_contractible_directed_cycles,
    check_rotationally_consecutive,
    check_thread_conservation,
    check_two_regular,
    full_report,
    partition_circuits,
)
from .braid import BraidWord, is_alternating, to_braid_word
from .search import SearchConfig, SearchResult, count_table, enumerate_grounds

__version__ = "0.1.0"
