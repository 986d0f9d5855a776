"""Pearson correlation between two users over their co-rated items.

Means and deviations are taken over the co-rated set only, which keeps the
raw coefficient in [-1, 1]. Pairs with fewer than two co-rated items, or
where either user has zero rating variance over the shared items, carry no
usable evidence and get a similarity of 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import EmptyItemSetError
from .model import Dataset, ItemId, UserId


@dataclass(frozen=True)
class Similarity:
    """Correlation value plus the size of the co-rated set it came from."""

    value: float
    co_rated_count: int


def co_rated(dataset: Dataset, a: UserId, b: UserId) -> set[ItemId]:
    """Items rated by both users."""
    ratings_a = dataset.require_user(a).ratings
    ratings_b = dataset.require_user(b).ratings
    return set(ratings_a.keys() & ratings_b.keys())


def mean_rating(dataset: Dataset, user: UserId, over: set[ItemId]) -> float:
    """Arithmetic mean of the user's ratings on the given items.

    `over` must be a non-empty subset of the user's rated items.
    """
    ratings = dataset.require_user(user).ratings
    if not over:
        raise EmptyItemSetError(f"no items to average for user {user!r}")
    return sum(ratings[item] for item in over) / len(over)


def pearson(dataset: Dataset, a: UserId, b: UserId) -> Similarity:
    """Pearson correlation of two users' ratings over their co-rated items.

    Deviations are accumulated in double precision over the shared items in
    sorted order, and the final value is clamped to [-1, 1]. Degenerate
    pairs (fewer than two shared items, or zero variance on either side)
    return value 0.
    """
    ratings_a = dataset.require_user(a).ratings
    ratings_b = dataset.require_user(b).ratings
    shared = sorted(ratings_a.keys() & ratings_b.keys())
    n = len(shared)
    if n < 2:
        return Similarity(value=0.0, co_rated_count=n)

    mean_a = sum(ratings_a[item] for item in shared) / n
    mean_b = sum(ratings_b[item] for item in shared) / n

    num = 0.0
    den_a = 0.0
    den_b = 0.0
    for item in shared:
        dev_a = ratings_a[item] - mean_a
        dev_b = ratings_b[item] - mean_b
        num += dev_a * dev_b
        den_a += dev_a * dev_a
        den_b += dev_b * dev_b

    if den_a == 0.0 or den_b == 0.0:
        return Similarity(value=0.0, co_rated_count=n)

    value = num / math.sqrt(den_a * den_b)
    value = min(1.0, max(-1.0, value))
    return Similarity(value=value, co_rated_count=n)
