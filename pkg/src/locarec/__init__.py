"""Location-boosted user-based collaborative filtering engine.

The pipeline keeps every rating in memory, scores candidate peers with the
Pearson correlation over co-rated items, adds a configurable boost to
candidates sharing the active user's location, threshold-filters the
result, and recommends the peers' top-rated unseen items. An evaluation
harness measures how the boost shifts peer and recommendation locality
across a grid of boost values.
"""

from .errors import (
    ConfigMismatchError,
    ConflictingItemCountryError,
    ConflictingUserCountryError,
    EmptyDatasetError,
    EmptyItemSetError,
    InfeasibleSpecError,
    LocarecError,
    MissingHeaderError,
    UnknownUserError,
)
from .evaluate import EvalReport, UserEval, evaluate, report_delta, sweep
from .ingest import (
    IngestReport,
    SyntheticSpec,
    dataset_fingerprint,
    default_spec,
    export_csv,
    generate_synthetic,
    parse_csv,
    to_csv_bytes,
)
from .model import Dataset, RatingRecord, build_dataset
from .peering import PeeringConfig, PeerList, ScoredPeer, peers_for, score_candidates, select_peers
from .recommend import Recommendation, RecommendConfig, RecommendedItem, recommend
from .similarity import Similarity, co_rated, mean_rating, pearson

__version__ = "0.1.0"

__all__ = [
    "ConfigMismatchError",
    "ConflictingItemCountryError",
    "ConflictingUserCountryError",
    "Dataset",
    "EmptyDatasetError",
    "EmptyItemSetError",
    "EvalReport",
    "IngestReport",
    "InfeasibleSpecError",
    "LocarecError",
    "MissingHeaderError",
    "PeerList",
    "PeeringConfig",
    "RatingRecord",
    "Recommendation",
    "RecommendConfig",
    "RecommendedItem",
    "ScoredPeer",
    "Similarity",
    "SyntheticSpec",
    "UnknownUserError",
    "UserEval",
    "build_dataset",
    "co_rated",
    "dataset_fingerprint",
    "default_spec",
    "evaluate",
    "export_csv",
    "generate_synthetic",
    "mean_rating",
    "parse_csv",
    "pearson",
    "peers_for",
    "recommend",
    "report_delta",
    "score_candidates",
    "select_peers",
    "sweep",
    "to_csv_bytes",
]
