"""Exception types shared across the package."""

from __future__ import annotations


class LocarecError(Exception):
    """Base class for every error this package raises deliberately."""


class EmptyDatasetError(LocarecError):
    """Raised when a dataset would contain no rating records."""


class ConflictingUserCountryError(LocarecError):
    """Raised when one user appears with two distinct countries."""

    def __init__(self, user: str, countries: tuple[str, str]):
        self.user = user
        self.countries = countries
        super().__init__(
            f"user {user!r} appears with conflicting countries "
            f"{countries[0]!r} and {countries[1]!r}"
        )


class ConflictingItemCountryError(LocarecError):
    """Raised when one item appears with two distinct countries."""

    def __init__(self, item: str, countries: tuple[str, str]):
        self.item = item
        self.countries = countries
        super().__init__(
            f"item {item!r} appears with conflicting countries "
            f"{countries[0]!r} and {countries[1]!r}"
        )


class MissingHeaderError(LocarecError):
    """Raised when a CSV file lacks the mandatory header row."""


class UnknownUserError(LocarecError):
    """Raised when an operation references a user absent from the dataset."""

    def __init__(self, user: str):
        self.user = user
        super().__init__(f"unknown user: {user!r}")


class EmptyItemSetError(LocarecError):
    """Raised when an aggregate is requested over an empty item set."""


class InfeasibleSpecError(LocarecError):
    """Raised when a synthetic dataset spec cannot be satisfied."""


class ConfigMismatchError(LocarecError):
    """Raised when two evaluation reports are not comparable."""
