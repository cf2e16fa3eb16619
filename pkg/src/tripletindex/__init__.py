"""Constant-size triplet bit index for exact, prefix, suffix and substring search."""
from .analysis import (CalibrationError, CorpusProfile, CostModel, calibrate, choose_strategy,
                       expected_prefix_searches, expected_times, false_positive_bound,
                       index_search_pays, index_search_pays_closed_form, p_char, p_char_end,
                       p_false_positive, p_prefix, p_triplet, p_triplet_end, profile_of)
from .bitgrid import (BitGrid, EncodingError, IndexConfig, KeyLengthError, PositionVector,
                      TripletId, default_alphabet, footprint_bits)
from .containers import ListContainer, ShortKeyStore, TreeContainer, make_container
from .datagen import GenSpec, Workload, build_workload, generate_keys, zipf_probabilities
from .family import IndexFamily, ReverseIndex, ShiftedIndex, family_footprint_bits
from .index import QueryResult, SearchOutcome, Strategy, TripletIndex, triplets_of
from .oracle import Oracle
from .serialize import FormatError, load, loads, save, dumps

__version__ = "0.1.0"
