"""Reference implementations and dataset builders used to cross-check the engine.

The correlation oracle evaluates the textbook formula in exact rational
arithmetic and stays independent of the engine's accumulation strategy.
The baseline pipeline helpers implement peer selection and recommendation
with no location-boost logic at all, for the alpha=0 equivalence checks.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

from locarec.model import Dataset, RatingRecord, build_dataset
from locarec.similarity import pearson


def oracle_pearson(ratings_a: dict, ratings_b: dict) -> float:
    """Brute-force correlation over shared keys, exact until the final sqrt."""
    shared = sorted(set(ratings_a) & set(ratings_b))
    if len(shared) < 2:
        return 0.0
    xs = [Fraction(ratings_a[i]) for i in shared]
    ys = [Fraction(ratings_b[i]) for i in shared]
    mean_x = sum(xs) / len(xs)
    mean_y = sum(ys) / len(ys)
    num = sum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys))
    den_x = sum((x - mean_x) ** 2 for x in xs)
    den_y = sum((y - mean_y) ** 2 for y in ys)
    if den_x == 0 or den_y == 0:
        return 0.0
    value = float(num) / math.sqrt(float(den_x) * float(den_y))
    return max(-1.0, min(1.0, value))


def rec(user, item, rating, user_country="AA", item_country="XX", description=""):
    return RatingRecord(
        user=user,
        item=item,
        rating=rating,
        user_country=user_country,
        item_description=description,
        item_country=item_country,
    )


def pair_dataset(ratings_a: dict, ratings_b: dict,
                 country_a="AA", country_b="AA") -> Dataset:
    """Two-user dataset with the given item -> rating maps."""
    records = []
    for item, rating in ratings_a.items():
        records.append(rec("a", item, rating, user_country=country_a))
    for item, rating in ratings_b.items():
        records.append(rec("b", item, rating, user_country=country_b))
    return build_dataset(records)


NASTY_DESCRIPTIONS = [
    "",
    "plain title",
    "comma, separated, title",
    'says "quoted"',
    "mixed, \"both\" kinds",
    "  leading and trailing  ",
    "ünïcödé tîtle",
    "line\nbreak",
]


def random_dataset(rng: random.Random, n_users=10, n_items=14,
                   countries=("AA", "BB", "CC"), min_ratings=3,
                   max_ratings=None, nasty=False) -> Dataset:
    """Seeded random dataset with one country per user and per item."""
    if max_ratings is None:
        max_ratings = n_items
    item_ids = [f"m{k:03d}" for k in range(1, n_items + 1)]
    item_country = {i: rng.choice(countries) for i in item_ids}
    descriptions = {
        i: (rng.choice(NASTY_DESCRIPTIONS) if nasty else f"title {i}")
        for i in item_ids
    }
    records = []
    for k in range(1, n_users + 1):
        user = f"u{k:03d}"
        user_country = rng.choice(countries)
        count = rng.randint(min_ratings, max_ratings)
        for item in rng.sample(item_ids, count):
            records.append(
                RatingRecord(
                    user=user,
                    item=item,
                    rating=rng.randint(1, 5),
                    user_country=user_country,
                    item_description=descriptions[item],
                    item_country=item_country[item],
                )
            )
    return build_dataset(records)


def baseline_peers(dataset: Dataset, active: str, threshold: float,
                   max_peers: int | None) -> list[tuple[str, float]]:
    """Peer selection with no boost logic anywhere: raw similarity only."""
    kept = []
    for other in dataset.user_ids():
        if other == active:
            continue
        sim = pearson(dataset, active, other)
        if sim.value >= threshold:
            kept.append((other, sim.value))
    kept.sort(key=lambda pair: (-pair[1], pair[0]))
    if max_peers is not None:
        kept = kept[:max_peers]
    return kept


def baseline_recommend(dataset: Dataset, active: str,
                       peers: list[tuple[str, float]], top_n: int,
                       min_peer_rating: int) -> list[tuple[str, float, str]]:
    """Boost-free top-N: similarity-weighted average of qualifying ratings."""
    seen = dataset.users[active].ratings.keys()
    weighted: dict[str, float] = {}
    weights: dict[str, float] = {}
    for peer_id, sim in peers:
        for item, rating in dataset.users[peer_id].ratings.items():
            if rating < min_peer_rating or item in seen:
                continue
            weighted[item] = weighted.get(item, 0.0) + sim * rating
            weights[item] = weights.get(item, 0.0) + sim
    scored = [
        (item, weighted[item] / weights[item])
        for item in sorted(weighted)
        if weights[item] != 0.0
    ]
    scored.sort(key=lambda pair: (-pair[1], pair[0]))
    return [
        (item, score, dataset.items[item].country)
        for item, score in scored[:top_n]
    ]
