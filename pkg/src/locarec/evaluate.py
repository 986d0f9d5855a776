"""Locality metrics over the full pipeline, plus alpha sweeps.

For every user in turn as the active user this module runs similarity ->
peering -> recommendation and aggregates two macro-averaged rates: the
share of selected peers located with the active user, and the share of
recommended items whose country matches the active user's. Users come out
of the denominator when they have nothing to measure (no peers for the
peer rate, no recommendations for the item rate).
"""

from __future__ import annotations

import csv
import dataclasses
import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .errors import ConfigMismatchError
from .model import Dataset, UserId
from .peering import PeeringConfig, peers_for
from .recommend import Recommendation, RecommendConfig, recommend

SUMMARY_CSV_HEADER = [
    "alpha",
    "threshold",
    "peers_locality_rate",
    "item_locality_rate",
    "users_evaluated",
    "users_skipped",
]


@dataclass(frozen=True)
class UserEval:
    """Per-user numerators and denominators for both locality rates."""

    user: UserId
    peer_count: int
    same_location_peers: int
    recommended_count: int
    same_location_items: int


@dataclass(frozen=True)
class EvalReport:
    """Aggregate of one full-pipeline evaluation at a fixed alpha."""

    alpha: float
    threshold: float
    peers_locality_rate: float
    item_locality_rate: float
    users_evaluated: int
    users_skipped_empty_peers: int
    per_user: tuple[UserEval, ...]


def _evaluate_user(
    dataset: Dataset,
    user: UserId,
    peering_config: PeeringConfig,
    rec_config: RecommendConfig,
) -> UserEval:
    user_country = dataset.users[user].country
    peers = peers_for(dataset, user, peering_config)
    rec: Recommendation = recommend(dataset, peers, rec_config)
    return UserEval(
        user=user,
        peer_count=len(peers),
        same_location_peers=sum(1 for p in peers.peers if p.same_location),
        recommended_count=len(rec),
        same_location_items=sum(1 for it in rec.items if it.item_country == user_country),
    )


def evaluate(
    dataset: Dataset,
    peering_config: PeeringConfig,
    rec_config: RecommendConfig,
    *,
    jobs: int = 1,
) -> EvalReport:
    """Run the pipeline for every user and macro-average the locality rates.

    Per-user work is independent; with jobs > 1 it runs on a thread pool.
    Results are always aggregated in ascending user order, so the report
    does not depend on the degree of parallelism.
    """
    users = dataset.user_ids()
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(
                pool.map(
                    lambda u: _evaluate_user(dataset, u, peering_config, rec_config),
                    users,
                )
            )
    else:
        rows = [_evaluate_user(dataset, u, peering_config, rec_config) for u in users]

    peer_fracs = [r.same_location_peers / r.peer_count for r in rows if r.peer_count > 0]
    item_fracs = [
        r.same_location_items / r.recommended_count for r in rows if r.recommended_count > 0
    ]
    return EvalReport(
        alpha=peering_config.alpha,
        threshold=peering_config.threshold,
        peers_locality_rate=sum(peer_fracs) / len(peer_fracs) if peer_fracs else 0.0,
        item_locality_rate=sum(item_fracs) / len(item_fracs) if item_fracs else 0.0,
        users_evaluated=len(peer_fracs),
        users_skipped_empty_peers=len(rows) - len(peer_fracs),
        per_user=tuple(rows),
    )


def sweep(
    dataset: Dataset,
    alphas: list[float],
    peering_config: PeeringConfig,
    rec_config: RecommendConfig,
    *,
    jobs: int = 1,
) -> list[EvalReport]:
    """One EvalReport per alpha, all other configuration held fixed."""
    if not alphas:
        raise ValueError("alphas must not be empty")
    return [
        evaluate(
            dataset,
            dataclasses.replace(peering_config, alpha=alpha),
            rec_config,
            jobs=jobs,
        )
        for alpha in alphas
    ]


def report_delta(baseline: EvalReport, variant: EvalReport) -> tuple[float, float]:
    """Percentage-point deltas (variant minus baseline) for both rates.

    The two reports must come from the same dataset and the same non-alpha
    configuration; threshold and user totals are checked as proxies.
    """
    if variant.threshold != baseline.threshold:
        raise ConfigMismatchError(
            f"threshold differs: {baseline.threshold} vs {variant.threshold}"
        )
    if len(variant.per_user) != len(baseline.per_user):
        raise ConfigMismatchError(
            f"user totals differ: {len(baseline.per_user)} vs {len(variant.per_user)}"
        )
    return (
        (variant.peers_locality_rate - baseline.peers_locality_rate) * 100.0,
        (variant.item_locality_rate - baseline.item_locality_rate) * 100.0,
    )


def report_to_dict(report: EvalReport) -> dict:
    """JSON-ready dict of a report, including every per-user row."""
    return {
        "alpha": report.alpha,
        "threshold": report.threshold,
        "peers_locality_rate": report.peers_locality_rate,
        "item_locality_rate": report.item_locality_rate,
        "users_evaluated": report.users_evaluated,
        "users_skipped_empty_peers": report.users_skipped_empty_peers,
        "per_user": [
            {
                "user": row.user,
                "peer_count": row.peer_count,
                "same_location_peers": row.same_location_peers,
                "recommended_count": row.recommended_count,
                "same_location_items": row.same_location_items,
            }
            for row in report.per_user
        ],
    }


def summary_csv_bytes(reports: list[EvalReport]) -> bytes:
    """One summary row per report, in sweep order."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SUMMARY_CSV_HEADER)
    for r in reports:
        writer.writerow(
            [
                r.alpha,
                r.threshold,
                r.peers_locality_rate,
                r.item_locality_rate,
                r.users_evaluated,
                r.users_skipped_empty_peers,
            ]
        )
    return buf.getvalue().encode("utf-8")


def write_summary_csv(reports: list[EvalReport], path: str | Path) -> None:
    Path(path).write_bytes(summary_csv_bytes(reports))


def rates_csv_bytes(reports: list[EvalReport]) -> bytes:
    """Long-format rate-vs-alpha rows, ready for external charting."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["alpha", "metric", "rate"])
    for r in reports:
        writer.writerow([r.alpha, "peers_locality_rate", r.peers_locality_rate])
        writer.writerow([r.alpha, "item_locality_rate", r.item_locality_rate])
    return buf.getvalue().encode("utf-8")


def write_rates_csv(reports: list[EvalReport], path: str | Path) -> None:
    Path(path).write_bytes(rates_csv_bytes(reports))
