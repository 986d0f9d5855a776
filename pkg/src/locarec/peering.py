"""Peer scoring and selection for an active user.

Every other user in the dataset is scored with the Pearson kernel, the
location boost is added to candidates sharing the active user's country,
and only then is the threshold filter applied. Survivors are ranked by
boosted similarity (ties broken by ascending user id) and truncated to the
configured peer budget.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .model import Dataset, UserId
from .similarity import pearson

DEFAULT_THRESHOLD = 0.5
DEFAULT_MAX_PEERS = 20


@dataclass(frozen=True)
class PeeringConfig:
    """Knobs for peer selection.

    alpha: constant added to the similarity of same-country candidates.
    threshold: minimum boosted similarity a peer must reach (closed bound).
    max_peers: peer list budget; None means unbounded.
    """

    alpha: float = 0.0
    threshold: float = DEFAULT_THRESHOLD
    max_peers: int | None = DEFAULT_MAX_PEERS

    def __post_init__(self):
        if self.alpha < 0:
            raise ValueError(f"alpha must be >= 0, got {self.alpha}")
        if not math.isfinite(self.threshold):
            raise ValueError("threshold must be finite")
        if self.max_peers is not None and self.max_peers < 1:
            raise ValueError(f"max_peers must be positive or None, got {self.max_peers}")


@dataclass(frozen=True)
class ScoredPeer:
    """One candidate peer with raw and location-boosted similarity."""

    peer: UserId
    raw_similarity: float
    boosted_similarity: float
    co_rated_count: int
    same_location: bool


@dataclass(frozen=True)
class PeerList:
    """The active user's selected neighbors, in ranking order."""

    active_user: UserId
    peers: tuple[ScoredPeer, ...]
    config: PeeringConfig

    def __len__(self) -> int:
        return len(self.peers)


def score_candidates(dataset: Dataset, active: UserId, config: PeeringConfig) -> list[ScoredPeer]:
    """Score every other user against the active user.

    The boost is applied exactly when the candidate's country equals the
    active user's country; boosted values are not clamped, so they may
    exceed 1 by up to alpha.
    """
    active_country = dataset.require_user(active).country
    scored = []
    for candidate in dataset.user_ids():
        if candidate == active:
            continue
        sim = pearson(dataset, active, candidate)
        same = dataset.users[candidate].country == active_country
        boosted = sim.value + config.alpha if same else sim.value
        scored.append(
            ScoredPeer(
                peer=candidate,
                raw_similarity=sim.value,
                boosted_similarity=boosted,
                co_rated_count=sim.co_rated_count,
                same_location=same,
            )
        )
    return scored


def select_peers(active: UserId, scored: list[ScoredPeer], config: PeeringConfig) -> PeerList:
    """Threshold, rank, and truncate scored candidates into a peer list.

    Candidates whose boosted similarity falls below the threshold are
    dropped; the rest are ordered by descending boosted similarity with
    ties broken by ascending user id, then cut to `max_peers`.
    """
    kept = [p for p in scored if p.boosted_similarity >= config.threshold]
    kept.sort(key=lambda p: (-p.boosted_similarity, p.peer))
    if config.max_peers is not None:
        kept = kept[: config.max_peers]
    return PeerList(active_user=active, peers=tuple(kept), config=config)


def peers_for(dataset: Dataset, active: UserId, config: PeeringConfig) -> PeerList:
    """Run scoring and selection in one step."""
    return select_peers(active, score_candidates(dataset, active, config), config)
