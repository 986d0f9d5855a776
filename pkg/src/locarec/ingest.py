"""Dataset I/O: the CSV wire format and the seeded synthetic generator.

Wire format: UTF-8, comma-separated, double-quote escaping, mandatory
header ``user_id,item_id,rating,user_country,item_description,item_country``;
export writes rows sorted by (user, item) with LF line endings so equal
datasets always serialize to equal bytes.

The synthetic generator is a pure function of its spec. All randomness is
drawn from the Mersenne Twister (MT19937) behind ``random.Random``, using
only the ``random()`` float stream, whose seeded output CPython documents
as stable; identical specs therefore reproduce identical datasets across
runs and platforms.
"""

from __future__ import annotations

import csv
import hashlib
import io
import math
import random
from dataclasses import dataclass, field
from pathlib import Path

from .errors import EmptyDatasetError, InfeasibleSpecError, MissingHeaderError
from .model import Country, Dataset, RatingRecord, build_dataset
from .model import RATING_MAX, RATING_MIN

CSV_HEADER = [
    "user_id",
    "item_id",
    "rating",
    "user_country",
    "item_description",
    "item_country",
]

# Shape of the reference dataset: five countries, 2296 ratings.
DEFAULT_COUNTRY_USER_COUNTS = {"DE": 6, "DK": 41, "FR": 26, "UK": 31, "US": 17}
DEFAULT_TOTAL_RECORDS = 2296
DEFAULT_RATING_BIAS = 0.7
DEFAULT_SEED = 42


@dataclass(frozen=True)
class IngestReport:
    """Row-level accounting for one CSV parse.

    Every data row lands in exactly one bucket: accepted into the dataset,
    rejected with a reason, or replaced by a later duplicate of the same
    (user, item) pair, so rows_accepted + len(rejected_rows) +
    duplicates_replaced == rows_read.
    """

    rows_read: int
    rows_accepted: int
    duplicates_replaced: int
    rejected_rows: tuple[tuple[int, str], ...]

    def to_dict(self) -> dict:
        return {
            "rows_read": self.rows_read,
            "rows_accepted": self.rows_accepted,
            "duplicates_replaced": self.duplicates_replaced,
            "rejected_rows": [
                {"line": line, "reason": reason} for line, reason in self.rejected_rows
            ],
        }


def _validate_row(row: list[str]) -> RatingRecord | str:
    """Turn one CSV row into a RatingRecord, or a rejection reason string.

    All fields except the free-text description are stripped of surrounding
    whitespace before validation.
    """
    if len(row) != len(CSV_HEADER):
        return f"MalformedRow: expected {len(CSV_HEADER)} fields, got {len(row)}"
    user, item, rating_text, user_country, description, item_country = row
    user = user.strip()
    item = item.strip()
    user_country = user_country.strip()
    item_country = item_country.strip()
    if not user:
        return "EmptyField: user_id"
    if not item:
        return "EmptyField: item_id"
    if not user_country:
        return "EmptyField: user_country"
    if not item_country:
        return "EmptyField: item_country"
    try:
        rating = int(rating_text.strip())
    except ValueError:
        return f"RatingNotInteger: {rating_text.strip()!r}"
    if not RATING_MIN <= rating <= RATING_MAX:
        return f"RatingOutOfRange: {rating} not in [{RATING_MIN}, {RATING_MAX}]"
    return RatingRecord(
        user=user,
        item=item,
        rating=rating,
        user_country=user_country,
        item_description=description,
        item_country=item_country,
    )


def parse_csv(path: str | Path) -> tuple[Dataset, IngestReport]:
    """Parse a dataset CSV file, collecting bad rows instead of aborting.

    Rows that are malformed, out of range, or that contradict a previously
    established user or item country are rejected individually. Duplicate
    (user, item) rows replace the earlier occurrence. The parse only fails
    outright when the header is missing/wrong (MissingHeaderError) or when
    no row at all was accepted (EmptyDatasetError).
    """
    path = Path(path)
    with path.open("r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise MissingHeaderError(f"{path}: file is empty") from None
        if header != CSV_HEADER:
            raise MissingHeaderError(
                f"{path}: expected header {','.join(CSV_HEADER)!r}, got {','.join(header)!r}"
            )

        rows_read = 0
        duplicates_replaced = 0
        rejected: list[tuple[int, str]] = []
        accepted: dict[tuple[str, str], RatingRecord] = {}
        user_country: dict[str, Country] = {}
        item_country: dict[str, Country] = {}

        for row in reader:
            rows_read += 1
            line = reader.line_num
            result = _validate_row(row)
            if isinstance(result, str):
                rejected.append((line, result))
                continue
            rec = result
            # The first accepted row fixes a user's (or item's) country;
            # later rows must agree or they are rejected, never merged.
            seen = user_country.setdefault(rec.user, rec.user_country)
            if seen != rec.user_country:
                rejected.append(
                    (line, f"ConflictingUserCountry: {rec.user} is {seen}, row says {rec.user_country}")
                )
                continue
            seen = item_country.setdefault(rec.item, rec.item_country)
            if seen != rec.item_country:
                rejected.append(
                    (line, f"ConflictingItemCountry: {rec.item} is {seen}, row says {rec.item_country}")
                )
                continue
            key = (rec.user, rec.item)
            if key in accepted:
                duplicates_replaced += 1
            accepted[key] = rec

    report = IngestReport(
        rows_read=rows_read,
        rows_accepted=len(accepted),
        duplicates_replaced=duplicates_replaced,
        rejected_rows=tuple(rejected),
    )
    if not accepted:
        raise EmptyDatasetError(f"{path}: no rows accepted ({rows_read} read)")
    return build_dataset(accepted.values()), report


def to_csv_bytes(dataset: Dataset) -> bytes:
    """Serialize a dataset to its canonical CSV bytes."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for rec in dataset.records:  # already sorted by (user, item)
        writer.writerow(
            [rec.user, rec.item, rec.rating, rec.user_country,
             rec.item_description, rec.item_country]
        )
    return buf.getvalue().encode("utf-8")


def export_csv(dataset: Dataset, path: str | Path) -> None:
    """Write the canonical CSV serialization to a file."""
    Path(path).write_bytes(to_csv_bytes(dataset))


def dataset_fingerprint(dataset: Dataset) -> str:
    """SHA-256 of the canonical CSV export; ties results to exact inputs."""
    return hashlib.sha256(to_csv_bytes(dataset)).hexdigest()


@dataclass(frozen=True)
class SyntheticSpec:
    """Parameters of a generated dataset.

    rating_bias is the probability that a rating on an item from the
    user's own country is bumped one point (capped at 5), which plants a
    measurable same-location taste correlation in the data.
    """

    country_user_counts: dict[Country, int] = field(
        default_factory=lambda: dict(DEFAULT_COUNTRY_USER_COUNTS)
    )
    total_records: int = DEFAULT_TOTAL_RECORDS
    rating_bias: float = DEFAULT_RATING_BIAS
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if not self.country_user_counts:
            raise ValueError("country_user_counts must not be empty")
        for country, count in self.country_user_counts.items():
            if not country:
                raise ValueError("country codes must be non-empty")
            if count < 1:
                raise ValueError(f"user count for {country!r} must be positive, got {count}")
        if self.total_records < 1:
            raise ValueError(f"total_records must be positive, got {self.total_records}")
        if not 0.0 <= self.rating_bias <= 1.0:
            raise ValueError(f"rating_bias must be in [0, 1], got {self.rating_bias}")

    @property
    def n_users(self) -> int:
        return sum(self.country_user_counts.values())


def default_spec(seed: int = DEFAULT_SEED) -> SyntheticSpec:
    """The reference-shaped spec with a caller-chosen seed."""
    return SyntheticSpec(seed=seed)


def _below(rng: random.Random, n: int) -> int:
    # Uniform index in [0, n) derived from the documented-stable float stream.
    return min(int(rng.random() * n), n - 1)


def generate_synthetic(spec: SyntheticSpec) -> Dataset:
    """Generate a dataset with exactly the spec'd users, countries, and size.

    Users are assigned to countries in sorted-country order; the item
    catalog is sized to roughly twice the average per-user rating count so
    user pairs co-rate enough items for correlations to be meaningful.
    Item countries are uniform over the country vocabulary. Per-user rating
    counts start near-equal and are then perturbed by seeded one-rating
    moves, so counts vary while summing exactly to total_records.

    Raises InfeasibleSpecError when total_records < number of users.
    """
    n_users = spec.n_users
    if spec.total_records < n_users:
        raise InfeasibleSpecError(
            f"total_records={spec.total_records} cannot cover {n_users} users "
            "with at least one rating each"
        )

    rng = random.Random(spec.seed)
    countries = sorted(spec.country_user_counts)

    user_width = max(3, len(str(n_users)))
    user_ids: list[str] = []
    user_country: dict[str, str] = {}
    serial = 0
    for country in countries:
        for _ in range(spec.country_user_counts[country]):
            serial += 1
            uid = f"u{serial:0{user_width}d}"
            user_ids.append(uid)
            user_country[uid] = country

    n_items = max(10, 2 * math.ceil(spec.total_records / n_users))
    item_width = max(3, len(str(n_items)))
    item_ids = [f"m{k:0{item_width}d}" for k in range(1, n_items + 1)]
    item_country = {iid: countries[_below(rng, len(countries))] for iid in item_ids}
    item_description = {iid: f"movie {k}" for k, iid in enumerate(item_ids, start=1)}

    # Near-equal base counts, then seeded single-rating moves for variety.
    base, extra = divmod(spec.total_records, n_users)
    counts = [base + 1 if k < extra else base for k in range(n_users)]
    if n_users > 1:
        for _ in range(3 * n_users):
            src = _below(rng, n_users)
            dst = _below(rng, n_users)
            if src != dst and counts[src] > 1 and counts[dst] < n_items:
                counts[src] -= 1
                counts[dst] += 1

    records: list[RatingRecord] = []
    for uid, count in zip(user_ids, counts):
        # Partial Fisher-Yates draw of `count` distinct items.
        pool = list(item_ids)
        for t in range(count):
            swap = t + _below(rng, n_items - t)
            pool[t], pool[swap] = pool[swap], pool[t]
        chosen = sorted(pool[:count])
        country = user_country[uid]
        for iid in chosen:
            rating = 1 + _below(rng, 5)
            if item_country[iid] == country and rng.random() < spec.rating_bias:
                rating = min(rating + 1, RATING_MAX)
            records.append(
                RatingRecord(
                    user=uid,
                    item=iid,
                    rating=rating,
                    user_country=country,
                    item_description=item_description[iid],
                    item_country=item_country[iid],
                )
            )
    return build_dataset(records)


def parse_country_counts(text: str) -> dict[str, int]:
    """Parse 'DK:41,FR:26,...' into a country -> user-count map."""
    counts: dict[str, int] = {}
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        country, _, count_text = chunk.partition(":")
        country = country.strip()
        if not country or not count_text.strip():
            raise ValueError(f"bad country count {chunk!r}, expected CODE:COUNT")
        if country in counts:
            raise ValueError(f"country {country!r} listed twice")
        counts[country] = int(count_text.strip())
    if not counts:
        raise ValueError("no country counts given")
    return counts


def load_spec_config(path: str | Path) -> SyntheticSpec:
    """Read a synthetic spec from a key-value text file.

    Recognized keys: countries, total_records, rating_bias, seed. Lines
    starting with '#' and blank lines are ignored; missing keys fall back
    to the reference defaults.
    """
    values: dict[str, str] = {}
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ValueError(f"{path}: bad config line {raw!r}, expected key = value")
        values[key.strip()] = value.strip()

    known = {"countries", "total_records", "rating_bias", "seed"}
    unknown = set(values) - known
    if unknown:
        raise ValueError(f"{path}: unknown config keys {sorted(unknown)}")

    return SyntheticSpec(
        country_user_counts=(
            parse_country_counts(values["countries"])
            if "countries" in values
            else dict(DEFAULT_COUNTRY_USER_COUNTS)
        ),
        total_records=int(values.get("total_records", DEFAULT_TOTAL_RECORDS)),
        rating_bias=float(values.get("rating_bias", DEFAULT_RATING_BIAS)),
        seed=int(values.get("seed", DEFAULT_SEED)),
    )
