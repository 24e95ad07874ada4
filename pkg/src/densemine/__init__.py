"""densemine: exact mining of window-dense itemsets and their intervals."""

from .db import (
    DbFormatError,
    TransactionDB,
    build_item_index,
    from_rows,
    interval_support,
    load_db,
    occ_intersect,
    read_db,
    save_db,
    write_db,
)
from .estimator import DensePatternMiner
from .evalkit import (
    evaluate,
    expand_day_timestamps,
    f1,
    mean_jaccard,
    mean_temporal_precision,
    promo_overlap_ratio,
    span_reference,
)
from .intervals import coalesce, region_intersect, region_union_measure
from .miner import (
    MODES,
    MiningCounters,
    MiningParams,
    MiningResult,
    apriori_join,
    cand_ranges,
    mine,
    prune_subsets,
)
from .oracle import EnumerationBoundError, brute_dense_intervals, brute_mine
from .scan import advance_on_sparse, initial_start, keep_position, scan, scan_unit_step
from .serialize import load_patterns, result_to_dict, write_result
from .synthgen import GenParams, GroundTruth, generate, write_ground_truth

__version__ = "0.1.0"

__all__ = [
    "DbFormatError",
    "TransactionDB",
    "build_item_index",
    "from_rows",
    "interval_support",
    "load_db",
    "occ_intersect",
    "read_db",
    "save_db",
    "write_db",
    "DensePatternMiner",
    "evaluate",
    "expand_day_timestamps",
    "f1",
    "mean_jaccard",
    "mean_temporal_precision",
    "promo_overlap_ratio",
    "span_reference",
    "coalesce",
    "region_intersect",
    "region_union_measure",
    "MODES",
    "MiningCounters",
    "MiningParams",
    "MiningResult",
    "apriori_join",
    "cand_ranges",
    "mine",
    "prune_subsets",
    "EnumerationBoundError",
    "brute_dense_intervals",
    "brute_mine",
    "advance_on_sparse",
    "initial_start",
    "keep_position",
    "scan",
    "scan_unit_step",
    "load_patterns",
    "result_to_dict",
    "write_result",
    "GenParams",
    "GroundTruth",
    "generate",
    "write_ground_truth",
    "__version__",
]
