"""Command-line interface.

Subcommands: ingest (corpus summary), typical (per-category typical words),
markers (marker significance matrix), distributions (pattern distribution
dump), sweep (genre-vs-author divergence by window size), dump-lexicons
(write the lexicons in effect).

Exit codes: 0 success, 2 input/configuration errors, 3 analysis errors
(degenerate partitions, undefined statistics).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict
from pathlib import Path
from statistics import fmean

from .config import CONFIG_ENV_VAR, RunConfig, parse_windows, resolve_config, serialize_config
from .configurational import category_distribution, distribution_tsv_rows
from .corpus import PARTITION_KINDS, Corpus, ingest_corpus
from .discriminability import RNG_SCHEME, report_tsv_rows, window_sweep
from .errors import AnalysisError, InputError
from .features import (
    FeatureFunction,
    make_clause_feature,
    measure_markers,
    typical_words,
)
from .lexicons import (
    BUILTIN_LEXICONS,
    CLAUSE_MARKERS,
    MARKER_FAMILIES,
    MarkerLexicon,
    dump_lexicon,
    load_lexicon,
)
from .stats import mann_whitney_u, u_statistics
from .textproc import load_abbreviations

EXIT_OK = 0
EXIT_INPUT_ERROR = 2
EXIT_ANALYSIS_ERROR = 3

MARKER_COLUMNS = MARKER_FAMILIES + ("chars_per_word",)
RUN_CONFIG_FILENAME = "run_config.txt"


def _warn(message: str) -> None:
    print(f"stylovar: warning: {message}", file=sys.stderr)


def _load_corpus(config: RunConfig) -> Corpus:
    if config.corpus is None:
        raise InputError("no corpus path configured (use --corpus or a config file)")
    return ingest_corpus(config.corpus, config.format)


def _resolve_lexicons(config: RunConfig) -> dict[str, MarkerLexicon]:
    lexicons = dict(BUILTIN_LEXICONS)
    for family, path in config.lexicons.items():
        lexicons[family] = load_lexicon(path, family)
    return lexicons


def _resolve_abbreviations(config: RunConfig) -> frozenset[str] | None:
    if config.abbreviations is None:
        return None
    return load_abbreviations(config.abbreviations)


def _clause_feature(config: RunConfig) -> FeatureFunction:
    clause_lexicon = _resolve_lexicons(config)[CLAUSE_MARKERS]
    return make_clause_feature(clause_lexicon, config.clause_threshold)


def _prepare_output_dir(config: RunConfig) -> Path:
    out_dir = Path(config.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / RUN_CONFIG_FILENAME).write_text(
        serialize_config(config), encoding="utf-8"
    )
    return out_dir


def _write_tsv(path: Path, rows) -> None:
    path.write_text(
        "\n".join("\t".join(row) for row in rows) + "\n", encoding="utf-8"
    )


def _safe_filename(label: str) -> str:
    return "".join(ch if ch.isalnum() or ch in "-_" else "_" for ch in label)


def cmd_ingest(config: RunConfig) -> int:
    corpus = _load_corpus(config)
    print(f"documents\t{len(corpus)}")
    for kind in PARTITION_KINDS:
        tagged = corpus.tagged_count(kind)
        print(f"{kind}_tagged\t{tagged}")
        print(f"{kind}_untagged\t{len(corpus) - tagged}")
    for kind in PARTITION_KINDS:
        counts = corpus.label_counts(kind)
        for label, count in sorted(counts.items(), key=lambda item: (-item[1], item[0])):
            print(f"{kind}\t{label}\t{count}")
    return EXIT_OK


def cmd_typical(config: RunConfig) -> int:
    corpus = _load_corpus(config)
    categories = corpus.labels(config.partition)
    if not categories:
        raise AnalysisError(f"no documents carry a {config.partition} label")
    out_dir = _prepare_output_dir(config)
    header = ("word", "chi_squared", "direction", "df_in", "df_out")
    for category in categories:
        rows = typical_words(
            corpus, config.partition, category, config.min_df, config.top_k
        )
        if not rows:
            _warn(f"no over-represented words for category {category!r}")
        path = out_dir / f"typical_{_safe_filename(category)}.tsv"
        _write_tsv(
            path,
            [header]
            + [
                (
                    row.word,
                    f"{row.chi_squared:.12g}",
                    row.direction,
                    str(row.df_in),
                    str(row.df_out),
                )
                for row in rows
            ],
        )
        print(f"{category}\t{path}\t{len(rows)}")
    return EXIT_OK


def cmd_markers(config: RunConfig) -> int:
    corpus = _load_corpus(config)
    lexicons = _resolve_lexicons(config)
    family_lexicons = [lexicons[name] for name in MARKER_FAMILIES]
    groups = corpus.partition(config.partition)
    if not groups:
        raise AnalysisError(f"no documents carry a {config.partition} label")
    vectors = {
        doc.id: measure_markers(doc, family_lexicons).by_family()
        for docs in groups.values()
        for doc in docs
    }
    out_dir = _prepare_output_dir(config)
    matrix_rows = [("category",) + MARKER_COLUMNS]
    value_rows = [
        ("category", "marker", "n_in", "n_out", "mean_in", "mean_out", "u", "p", "mark")
    ]
    for category in sorted(groups):
        in_docs = groups[category]
        out_docs = [
            doc for label, docs in groups.items() if label != category for doc in docs
        ]
        cells = []
        if len(in_docs) < config.min_category_size or not out_docs:
            _warn(
                f"category {category!r} skipped: needs >= {config.min_category_size} "
                "documents and a non-empty complement"
            )
            cells = ["."] * len(MARKER_COLUMNS)
            matrix_rows.append((category, *cells))
            continue
        for column in MARKER_COLUMNS:
            xs = [vectors[doc.id][column] for doc in in_docs]
            ys = [vectors[doc.id][column] for doc in out_docs]
            result = mann_whitney_u(xs, ys, config.alpha)
            if not result.significant:
                mark = "."
            else:
                u1, u2 = u_statistics(xs, ys)
                mark = "+" if u1 > u2 else "-"
            cells.append(mark)
            value_rows.append(
                (
                    category,
                    column,
                    str(len(xs)),
                    str(len(ys)),
                    f"{fmean(xs):.12g}",
                    f"{fmean(ys):.12g}",
                    f"{result.u_statistic:.12g}",
                    f"{result.p_value:.12g}",
                    mark,
                )
            )
        matrix_rows.append((category, *cells))
    _write_tsv(out_dir / "markers.tsv", matrix_rows)
    _write_tsv(out_dir / "markers_values.tsv", value_rows)
    for row in matrix_rows:
        print("\t".join(row))
    return EXIT_OK


def cmd_distributions(config: RunConfig) -> int:
    corpus = _load_corpus(config)
    feature = _clause_feature(config)
    abbreviations = _resolve_abbreviations(config)
    categories = corpus.labels(config.partition)
    if not categories:
        raise AnalysisError(f"no documents carry a {config.partition} label")
    out_dir = _prepare_output_dir(config)
    rows = [("category", "window", "pattern", "count", "prob", "epsilon")]
    for category in categories:
        for window in sorted(set(config.windows)):
            dist = category_distribution(
                corpus,
                config.partition,
                category,
                feature,
                window,
                config.epsilon,
                abbreviations,
            )
            rows.extend(distribution_tsv_rows(dist))
    path = out_dir / "distributions.tsv"
    _write_tsv(path, rows)
    print(f"{path}\t{len(rows) - 1}")
    return EXIT_OK


def cmd_sweep(config: RunConfig) -> int:
    corpus = _load_corpus(config)
    feature = _clause_feature(config)
    abbreviations = _resolve_abbreviations(config)
    report = window_sweep(
        corpus,
        feature,
        config.windows,
        seed=config.seed,
        epsilon=config.epsilon,
        sample_size=config.sample_size,
        rounds=config.rounds,
        min_windows=config.min_windows,
        abbreviations=abbreviations,
        jobs=config.jobs,
    )
    for message in report.warnings:
        _warn(message)
    out_dir = _prepare_output_dir(config)
    tsv_path = out_dir / "sweep.tsv"
    _write_tsv(tsv_path, report_tsv_rows(report))
    audit = {
        "rng_scheme": RNG_SCHEME,
        "epsilon": report.epsilon,
        "feature": report.feature_name,
        "rows": [asdict(row) for row in report.rows],
        "author_rounds": {
            str(window): list(values)
            for window, values in sorted(report.author_rounds.items())
        },
        "warnings": list(report.warnings),
        "config": dict(
            line.split("=", 1) for line in serialize_config(config).splitlines()
        ),
    }
    json_path = out_dir / "sweep.json"
    json_path.write_text(
        json.dumps(audit, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    for row in report_tsv_rows(report):
        print("\t".join(row))
    return EXIT_OK


def cmd_dump_lexicons(config: RunConfig) -> int:
    lexicons = _resolve_lexicons(config)
    out_dir = _prepare_output_dir(config)
    for name in sorted(lexicons):
        path = out_dir / f"lexicon_{name}.txt"
        dump_lexicon(lexicons[name], path)
        print(f"{name}\t{path}\t{len(lexicons[name].entries)}")
    return EXIT_OK


_COMMANDS = {
    "ingest": cmd_ingest,
    "typical": cmd_typical,
    "markers": cmd_markers,
    "distributions": cmd_distributions,
    "sweep": cmd_sweep,
    "dump-lexicons": cmd_dump_lexicons,
}

_OVERRIDE_FIELDS = (
    "corpus",
    "format",
    "partition",
    "output_dir",
    "epsilon",
    "alpha",
    "sample_size",
    "rounds",
    "seed",
    "min_windows",
    "min_df",
    "top_k",
    "clause_threshold",
    "min_category_size",
    "abbreviations",
    "jobs",
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stylovar",
        description="Genre and author style variation measurements over text corpora.",
    )
    parser.add_argument(
        "--config",
        help=f"key=value config file (default: ${CONFIG_ENV_VAR} if set)",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--corpus", help="corpus path (JSONL file or directory)")
    common.add_argument("--format", choices=("auto", "jsonl", "directory"))
    common.add_argument("--partition", choices=PARTITION_KINDS)
    common.add_argument("--output-dir", dest="output_dir")
    common.add_argument("--windows", help="comma-separated window sizes, e.g. 1,2,3")
    common.add_argument("--epsilon", type=float, help="additive smoothing per pattern")
    common.add_argument("--alpha", type=float, help="significance level")
    common.add_argument("--sample-size", dest="sample_size", type=int)
    common.add_argument("--rounds", type=int)
    common.add_argument("--seed", type=int)
    common.add_argument("--min-windows", dest="min_windows", type=int)
    common.add_argument("--min-df", dest="min_df", type=int)
    common.add_argument("--top-k", dest="top_k", type=int)
    common.add_argument("--clause-threshold", dest="clause_threshold", type=int)
    common.add_argument("--min-category-size", dest="min_category_size", type=int)
    common.add_argument("--abbreviations", help="abbreviation list file")
    common.add_argument(
        "--lexicon",
        action="append",
        metavar="FAMILY=PATH",
        help="override one lexicon family (repeatable)",
    )
    common.add_argument("--jobs", type=int, help="worker threads for resampling rounds")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        subparsers.add_parser(name, parents=[common])
    return parser


def _overrides_from_args(args: argparse.Namespace) -> dict[str, object]:
    overrides: dict[str, object] = {
        name: getattr(args, name) for name in _OVERRIDE_FIELDS
    }
    if args.windows is not None:
        overrides["windows"] = parse_windows(args.windows)
    if args.lexicon:
        lexicons = {}
        for item in args.lexicon:
            if "=" not in item:
                raise InputError(f"bad --lexicon value {item!r}, expected FAMILY=PATH")
            family, _, path = item.partition("=")
            lexicons[family.strip()] = path.strip()
        overrides["lexicons"] = lexicons
    return overrides


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = resolve_config(args.config, _overrides_from_args(args))
        return _COMMANDS[args.command](config)
    except InputError as exc:
        print(f"stylovar: error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except AnalysisError as exc:
        print(f"stylovar: error: {exc}", file=sys.stderr)
        return EXIT_ANALYSIS_ERROR
    except (ValueError, OSError) as exc:
        print(f"stylovar: error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
