"""Core domain types: rating records and the immutable in-memory dataset.

A dataset is a flat list of (user, item, rating, user-country, description,
item-country) observations plus two derived indexes: per-user rating profiles
and the item catalog. Every user carries exactly one country, and so does
every item; a violation of either rule is a construction error, not a
recoverable condition.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import (
    ConflictingItemCountryError,
    ConflictingUserCountryError,
    EmptyDatasetError,
    UnknownUserError,
)

UserId = str
ItemId = str
Country = str

RATING_MIN = 1
RATING_MAX = 5


@dataclass(frozen=True)
class RatingRecord:
    """One observation: a user rated an item, with both locations attached."""

    user: UserId
    item: ItemId
    rating: int
    user_country: Country
    item_description: str
    item_country: Country

    def __post_init__(self):
        if not self.user:
            raise ValueError("user id must be a non-empty string")
        if not self.item:
            raise ValueError("item id must be a non-empty string")
        if not self.user_country or not self.item_country:
            raise ValueError("countries must be non-empty strings")
        if not isinstance(self.rating, int) or isinstance(self.rating, bool):
            raise ValueError(f"rating must be an integer, got {self.rating!r}")
        if not RATING_MIN <= self.rating <= RATING_MAX:
            raise ValueError(
                f"rating must be in [{RATING_MIN}, {RATING_MAX}], got {self.rating}"
            )


@dataclass(frozen=True)
class UserProfile:
    """A user's country and their item -> rating map."""

    country: Country
    ratings: dict[ItemId, int]


@dataclass(frozen=True)
class ItemInfo:
    """An item's country of origin and its free-text description."""

    country: Country
    description: str


@dataclass(frozen=True)
class Dataset:
    """Immutable rating store with per-user and per-item indexes.

    `records` is sorted by (user, item) and holds exactly one record per
    (user, item) pair. `users` and `items` are consistent projections of
    `records`, keyed in sorted order. Instances are safe for concurrent
    read access; treat the contained dicts as read-only.
    """

    records: tuple[RatingRecord, ...]
    users: dict[UserId, UserProfile]
    items: dict[ItemId, ItemInfo]

    def user_ids(self) -> list[UserId]:
        """All user ids in ascending order."""
        return list(self.users)

    def item_ids(self) -> list[ItemId]:
        return list(self.items)

    def require_user(self, user: UserId) -> UserProfile:
        """Return the user's profile or raise UnknownUserError."""
        try:
            return self.users[user]
        except KeyError:
            raise UnknownUserError(user) from None

    @property
    def n_users(self) -> int:
        return len(self.users)

    @property
    def n_records(self) -> int:
        return len(self.records)

    def country_histogram(self) -> dict[Country, int]:
        """Number of users per country."""
        counts: dict[Country, int] = {}
        for profile in self.users.values():
            counts[profile.country] = counts.get(profile.country, 0) + 1
        return dict(sorted(counts.items()))


def build_dataset(records: Iterable[RatingRecord]) -> Dataset:
    """Build a Dataset from rating records.

    Duplicate (user, item) pairs are resolved by keeping the last occurrence
    in input order, before the one-country-per-user and one-country-per-item
    invariants are checked over the survivors.

    Raises:
        EmptyDatasetError: no records were given.
        ConflictingUserCountryError: a user survives with two countries.
        ConflictingItemCountryError: an item survives with two countries.
    """
    survivors: dict[tuple[UserId, ItemId], RatingRecord] = {}
    for rec in records:
        survivors[(rec.user, rec.item)] = rec
    if not survivors:
        raise EmptyDatasetError("cannot build a dataset from zero records")

    ordered = tuple(sorted(survivors.values(), key=lambda r: (r.user, r.item)))

    user_country: dict[UserId, Country] = {}
    item_country: dict[ItemId, Country] = {}
    item_description: dict[ItemId, str] = {}
    for rec in ordered:
        seen = user_country.setdefault(rec.user, rec.user_country)
        if seen != rec.user_country:
            raise ConflictingUserCountryError(rec.user, (seen, rec.user_country))
        seen = item_country.setdefault(rec.item, rec.item_country)
        if seen != rec.item_country:
            raise ConflictingItemCountryError(rec.item, (seen, rec.item_country))
        item_description.setdefault(rec.item, rec.item_description)

    ratings_by_user: dict[UserId, dict[ItemId, int]] = {}
    for rec in ordered:
        ratings_by_user.setdefault(rec.user, {})[rec.item] = rec.rating

    users = {
        uid: UserProfile(country=user_country[uid], ratings=ratings_by_user[uid])
        for uid in sorted(ratings_by_user)
    }
    items = {
        iid: ItemInfo(country=item_country[iid], description=item_description[iid])
        for iid in sorted(item_country)
    }
    return Dataset(records=ordered, users=users, items=items)
