"""Command-line entry point.

Subcommands mirror the pipeline stages plus dataset tooling: `ingest`,
`generate`, `recommend`, `evaluate`, `sweep`. Exit codes are stable:
0 success, 1 usage, 2 data error, 3 I/O error. Every run emits a
reproducibility stanza (seed, config, dataset fingerprint) so results can
be tied to their exact inputs; `--jobs` only changes how much work runs in
parallel, never the output bytes.

Flag defaults can be overridden with environment variables prefixed
``LOCAREC_`` (for example ``LOCAREC_ALPHA=0.2``); explicit flags win.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .errors import LocarecError
from .evaluate import (
    EvalReport,
    evaluate,
    report_to_dict,
    summary_csv_bytes,
    sweep,
    write_rates_csv,
    write_summary_csv,
)
from .ingest import (
    DEFAULT_SEED,
    SyntheticSpec,
    dataset_fingerprint,
    default_spec,
    export_csv,
    generate_synthetic,
    load_spec_config,
    parse_country_counts,
    parse_csv,
)
from .model import Dataset
from .peering import DEFAULT_MAX_PEERS, DEFAULT_THRESHOLD, PeeringConfig, peers_for
from .recommend import DEFAULT_MIN_PEER_RATING, DEFAULT_TOP_N, RecommendConfig, recommend

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_IO = 3


def _env(name: str, fallback: str) -> str:
    return os.environ.get(f"LOCAREC_{name}", fallback)


def _parse_max_peers(text: str) -> int | None:
    if text.strip().lower() in {"none", "unbounded", "0"}:
        return None
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"max peers must be positive or 'none', got {text!r}")
    return value


def _parse_alpha_list(text: str) -> list[float]:
    values = [float(chunk) for chunk in text.split(",") if chunk.strip()]
    if not values:
        raise argparse.ArgumentTypeError("alpha list must not be empty")
    return values


class _Parser(argparse.ArgumentParser):
    """ArgumentParser reporting usage problems with exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_synthetic_args(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("synthetic dataset")
    group.add_argument("--countries", metavar="CODE:N,...",
                       help="users per country, e.g. DK:41,FR:26")
    group.add_argument("--total-records", type=int, metavar="N",
                       help="total number of ratings to generate")
    group.add_argument("--rating-bias", type=float, metavar="P",
                       help="probability of the same-country rating bump")
    group.add_argument("--seed", type=int, default=_env("SEED", str(DEFAULT_SEED)),
                       help="generator seed (default %(default)s)")
    group.add_argument("--spec-config",  metavar="FILE",
                       help="key-value spec file; replaces the flags above")


def _add_dataset_source_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input", metavar="CSV", help="dataset CSV file to load")
    parser.add_argument("--synthetic", action="store_true",
                        help="generate the dataset in memory instead of loading a file")
    _add_synthetic_args(parser)


def _add_pipeline_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--alpha", type=float, default=_env("ALPHA", "0.0"),
                        help="location boost added to same-country peers (default %(default)s)")
    parser.add_argument("--threshold", type=float,
                        default=_env("THRESHOLD", str(DEFAULT_THRESHOLD)),
                        help="minimum boosted similarity for a peer (default %(default)s)")
    parser.add_argument("--max-peers", type=_parse_max_peers,
                        default=_env("MAX_PEERS", str(DEFAULT_MAX_PEERS)),
                        help="peer list budget, or 'none' for unbounded (default %(default)s)")
    parser.add_argument("--top-n", type=int, default=_env("TOP_N", str(DEFAULT_TOP_N)),
                        help="recommendation list length (default %(default)s)")
    parser.add_argument("--min-peer-rating", type=int,
                        default=_env("MIN_PEER_RATING", str(DEFAULT_MIN_PEER_RATING)),
                        help="rating a peer item needs to count as top rated (default %(default)s)")


def _build_spec(args) -> SyntheticSpec:
    if args.spec_config:
        return load_spec_config(args.spec_config)
    base = default_spec(seed=args.seed)
    return SyntheticSpec(
        country_user_counts=(
            parse_country_counts(args.countries) if args.countries
            else base.country_user_counts
        ),
        total_records=(
            args.total_records if args.total_records is not None else base.total_records
        ),
        rating_bias=(
            args.rating_bias if args.rating_bias is not None else base.rating_bias
        ),
        seed=args.seed,
    )


def _resolve_dataset(args, parser: argparse.ArgumentParser) -> tuple[Dataset, int | None]:
    """Load or generate the dataset; returns it with the seed (None for files)."""
    wants_synthetic = args.synthetic or args.spec_config
    if args.input and wants_synthetic:
        parser.error("--input and --synthetic/--spec-config are mutually exclusive")
    if args.input:
        dataset, report = parse_csv(args.input)
        if report.rejected_rows:
            print(f"warning: {len(report.rejected_rows)} rows rejected during ingest",
                  file=sys.stderr)
        return dataset, None
    if wants_synthetic:
        spec = _build_spec(args)
        return generate_synthetic(spec), spec.seed
    parser.error("a dataset source is required: --input CSV or --synthetic")
    raise AssertionError("unreachable")


def _provenance(dataset: Dataset, seed: int | None, config: dict) -> dict:
    return {
        "dataset_sha256": dataset_fingerprint(dataset),
        "seed": seed,
        "config": config,
    }


def _print_stanza(provenance: dict) -> None:
    print("# provenance " + json.dumps(provenance, sort_keys=True), file=sys.stderr)


def _cmd_ingest(args, parser) -> int:
    dataset, report = parse_csv(args.input)
    payload = report.to_dict()
    payload["users"] = dataset.n_users
    payload["items"] = len(dataset.items)
    payload["dataset_sha256"] = dataset_fingerprint(dataset)
    text = json.dumps(payload, indent=2, sort_keys=True)
    print(text)
    if args.report_out:
        Path(args.report_out).write_text(text + "\n", encoding="utf-8")
    return EXIT_OK


def _cmd_generate(args, parser) -> int:
    spec = _build_spec(args)
    dataset = generate_synthetic(spec)
    export_csv(dataset, args.out)
    _print_stanza(_provenance(dataset, spec.seed, {
        "countries": spec.country_user_counts,
        "total_records": spec.total_records,
        "rating_bias": spec.rating_bias,
    }))
    print(f"wrote {dataset.n_records} records for {dataset.n_users} users to {args.out}")
    return EXIT_OK


def _pipeline_configs(args) -> tuple[PeeringConfig, RecommendConfig]:
    peering = PeeringConfig(alpha=args.alpha, threshold=args.threshold,
                            max_peers=args.max_peers)
    rec = RecommendConfig(top_n=args.top_n, min_peer_rating=args.min_peer_rating)
    return peering, rec


def _config_dict(peering: PeeringConfig, rec: RecommendConfig, **extra) -> dict:
    config = {
        "threshold": peering.threshold,
        "max_peers": peering.max_peers,
        "top_n": rec.top_n,
        "min_peer_rating": rec.min_peer_rating,
    }
    config.update(extra)
    return config


def _cmd_recommend(args, parser) -> int:
    dataset, seed = _resolve_dataset(args, parser)
    peering_config, rec_config = _pipeline_configs(args)
    peers = peers_for(dataset, args.user, peering_config)
    result = recommend(dataset, peers, rec_config)
    provenance = _provenance(dataset, seed,
                             _config_dict(peering_config, rec_config, alpha=args.alpha))
    if args.format == "json":
        print(json.dumps({
            "active_user": result.active_user,
            "items": [
                {"item": it.item, "score": it.score, "item_country": it.item_country}
                for it in result.items
            ],
            "provenance": provenance,
        }, indent=2, sort_keys=True))
    else:
        _print_stanza(provenance)
        print("item_id,score,item_country")
        for it in result.items:
            print(f"{it.item},{it.score},{it.item_country}")
    return EXIT_OK


def _cmd_evaluate(args, parser) -> int:
    dataset, seed = _resolve_dataset(args, parser)
    peering_config, rec_config = _pipeline_configs(args)
    report = evaluate(dataset, peering_config, rec_config, jobs=args.jobs)
    provenance = _provenance(dataset, seed,
                             _config_dict(peering_config, rec_config, alpha=args.alpha))
    if args.format == "json":
        payload = report_to_dict(report)
        payload["provenance"] = provenance
        text = json.dumps(payload, indent=2, sort_keys=True)
    else:
        _print_stanza(provenance)
        text = summary_csv_bytes([report]).decode("utf-8").rstrip("\n")
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)
    return EXIT_OK


def _cmd_sweep(args, parser) -> int:
    dataset, seed = _resolve_dataset(args, parser)
    peering_config, rec_config = _pipeline_configs(args)
    reports = sweep(dataset, args.alphas, peering_config, rec_config, jobs=args.jobs)

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    base_config = _config_dict(peering_config, rec_config, alphas=args.alphas)
    for report in reports:
        payload = report_to_dict(report)
        payload["provenance"] = _provenance(
            dataset, seed, dict(base_config, alpha=report.alpha))
        path = out_dir / f"report_alpha_{report.alpha}.json"
        path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n",
                        encoding="utf-8")
    write_summary_csv(reports, out_dir / "summary.csv")
    write_rates_csv(reports, out_dir / "rates_vs_alpha.csv")
    if not args.no_plot:
        from .plots import render_locality_figure

        render_locality_figure(reports, out_dir / "locality_vs_alpha.png")

    _print_stanza(_provenance(dataset, seed, base_config))
    for r in reports:
        print(f"alpha={r.alpha}: peers_locality={r.peers_locality_rate:.4f} "
              f"item_locality={r.item_locality_rate:.4f} "
              f"(evaluated {r.users_evaluated}, skipped {r.users_skipped_empty_peers})")
    print(f"reports written to {out_dir}")
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="locarec",
                     description="Location-boosted collaborative filtering toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", parents=[], help="parse and validate a dataset CSV")
    p.add_argument("input", help="dataset CSV file")
    p.add_argument("--report-out", metavar="FILE", help="also write the report JSON here")
    p.set_defaults(func=_cmd_ingest)

    p = sub.add_parser("generate", help="write a seeded synthetic dataset CSV")
    p.add_argument("--out", required=True, metavar="FILE", help="output CSV path")
    _add_synthetic_args(p)
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("recommend", help="recommend items for one user")
    _add_dataset_source_args(p)
    _add_pipeline_args(p)
    p.add_argument("--user", required=True, help="active user id")
    p.add_argument("--format", choices=["json", "csv"], default=_env("FORMAT", "json"))
    p.set_defaults(func=_cmd_recommend)

    p = sub.add_parser("evaluate", help="locality metrics over all users")
    _add_dataset_source_args(p)
    _add_pipeline_args(p)
    p.add_argument("--format", choices=["json", "csv"], default=_env("FORMAT", "json"))
    p.add_argument("--out", metavar="FILE", help="write the report here instead of stdout")
    p.add_argument("--jobs", type=int, default=_env("JOBS", "1"),
                   help="parallel per-user evaluations (default %(default)s)")
    p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("sweep", help="evaluate across an alpha grid")
    _add_dataset_source_args(p)
    _add_pipeline_args(p)
    p.add_argument("--alphas", type=_parse_alpha_list, default=_env("ALPHAS", "0,0.1,0.2,0.3"),
                   metavar="A,B,...", help="comma-separated alpha grid (default %(default)s)")
    p.add_argument("--out-dir", default="sweep-report", metavar="DIR",
                   help="directory for reports, CSVs, and the figure (default %(default)s)")
    p.add_argument("--no-plot", action="store_true", help="skip the locality figure")
    p.add_argument("--jobs", type=int, default=_env("JOBS", "1"),
                   help="parallel per-user evaluations (default %(default)s)")
    p.set_defaults(func=_cmd_sweep)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args, parser)
    except SystemExit as exc:  # argparse usage errors and --help
        return int(exc.code or 0)
    except LocarecError as exc:
        print(f"locarec: error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ValueError as exc:
        print(f"locarec: error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"locarec: i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


def run() -> None:
    sys.exit(main())
