"""Top-N item recommendation from a selected peer list.

Candidate items are those rated at or above the "top rated" cutoff by at
least one peer and not yet rated by the active user. Each candidate is
scored with the similarity-weighted average of its qualifying peer ratings,
so a rating only contributes when the peer itself considered the item a
top pick.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import Country, Dataset, ItemId, UserId
from .model import RATING_MAX, RATING_MIN
from .peering import PeerList

DEFAULT_TOP_N = 10
DEFAULT_MIN_PEER_RATING = 4


@dataclass(frozen=True)
class RecommendConfig:
    """List length and the rating cutoff that defines a peer's top items."""

    top_n: int = DEFAULT_TOP_N
    min_peer_rating: int = DEFAULT_MIN_PEER_RATING

    def __post_init__(self):
        if self.top_n < 1:
            raise ValueError(f"top_n must be positive, got {self.top_n}")
        if not RATING_MIN <= self.min_peer_rating <= RATING_MAX:
            raise ValueError(
                f"min_peer_rating must be in [{RATING_MIN}, {RATING_MAX}], "
                f"got {self.min_peer_rating}"
            )


@dataclass(frozen=True)
class RecommendedItem:
    item: ItemId
    score: float
    item_country: Country


@dataclass(frozen=True)
class Recommendation:
    """Ranked items for the active user, highest score first."""

    active_user: UserId
    items: tuple[RecommendedItem, ...]
    config: RecommendConfig

    def __len__(self) -> int:
        return len(self.items)


def recommend(dataset: Dataset, peers: PeerList, config: RecommendConfig) -> Recommendation:
    """Produce the ranked recommendation list for the peer list's active user.

    score(item) = sum(boosted_sim * rating) / sum(boosted_sim) over the
    peers whose rating of the item reaches `min_peer_rating`; peers are
    visited in peer-list order so scores are bit-reproducible. Items the
    active user already rated are excluded, ties break by ascending item
    id, and the list is cut to `top_n`.
    """
    seen = dataset.require_user(peers.active_user).ratings.keys()

    weight_sum: dict[ItemId, float] = {}
    weighted_ratings: dict[ItemId, float] = {}
    for peer in peers.peers:
        for item, rating in dataset.users[peer.peer].ratings.items():
            if rating < config.min_peer_rating or item in seen:
                continue
            weighted_ratings[item] = (
                weighted_ratings.get(item, 0.0) + peer.boosted_similarity * rating
            )
            weight_sum[item] = weight_sum.get(item, 0.0) + peer.boosted_similarity

    scored = []
    for item in sorted(weighted_ratings):
        if weight_sum[item] == 0.0:
            continue
        scored.append((item, weighted_ratings[item] / weight_sum[item]))
    scored.sort(key=lambda pair: (-pair[1], pair[0]))

    chosen = tuple(
        RecommendedItem(item=item, score=score, item_country=dataset.items[item].country)
        for item, score in scored[: config.top_n]
    )
    return Recommendation(active_user=peers.active_user, items=chosen, config=config)
