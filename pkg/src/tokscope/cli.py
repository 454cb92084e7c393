"""Command-line driver and report serialization (markdown, csv, json)."""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import sys
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

from . import __version__, datafiles
from .charset import default_symbol_set, load_symbol_set, special_char_proportion
from .coldstart import (
    apply_temperature,
    load_distribution,
    metrics_report,
    validate_dump,
)
from .compare import (
    COMPARISON_COLUMNS,
    distillation_delta,
    load_manifest,
    quantization_sweep,
    run_comparison,
)
from .errors import TokscopeError
from .keywords import (
    DEFAULT_MATCH_MODE,
    MatchMode,
    coverage,
    keyword_ranks,
    keyword_union,
    load_keyword_sets,
)
from .vocab import load_vocabulary

REPORT_KINDS = ("coverage", "ranks", "charset", "coldstart", "comparison", "delta", "sweep")

FORMATS = ("md", "csv", "json")

_MATCH_MODE_FLAGS = {"bare": MatchMode.BARE_ONLY, "prefixed": MatchMode.BARE_OR_PREFIXED}


@dataclass(frozen=True)
class ReportDocument:
    kind: str
    payload: dict
    metadata: dict


def _sha256(path: Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for chunk in iter(lambda: handle.read(1 << 16), b""):
            digest.update(chunk)
    return digest.hexdigest()


def _metadata(inputs: dict[str, Path], settings: dict, deterministic: bool) -> dict:
    return {
        "tool": "tokscope",
        "version": __version__,
        "created": None if deterministic else datetime.now(timezone.utc).isoformat(),
        "inputs": {
            label: {"path": str(path), "sha256": _sha256(path)}
            for label, path in inputs.items()
        },
        "settings": settings,
    }


def _fmt(value) -> str:
    """Cell formatting: probabilities get >= 4 significant digits."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return f"{value:.4g}"
    return str(value)


def _escape_cell(text: str) -> str:
    """Tokens may contain newlines or pipes; keep table cells one-line."""
    return text.encode("unicode_escape").decode("ascii").replace("|", "\\|")


def _md_table(headers: list[str], rows: list[list[str]]) -> str:
    lines = ["| " + " | ".join(headers) + " |"]
    lines.append("|" + "|".join(" --- " for _ in headers) + "|")
    for row in rows:
        lines.append("| " + " | ".join(row) + " |")
    return "\n".join(lines)


def _csv_table(headers: list[str], rows: list[list[str]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(headers)
    writer.writerows(rows)
    return buffer.getvalue()


def _join_tokens(tokens) -> str:
    return ", ".join(_escape_cell(t) for t in tokens)


# ---------------------------------------------------------------- renderers

def _comparison_cells(row: dict) -> list[str]:
    return [
        _escape_cell(str(row.get("model", ""))),
        _fmt(row.get("keyw_prob")),
        _fmt(row.get("spec_tok_prob")),
        _fmt(row.get("keyw_avg_prob")),
        _fmt(row.get("spec_tok_avg_prob")),
        _fmt(row.get("nl_prob")),
        _join_tokens(row.get("top3_keyw") or []),
        _join_tokens(row.get("top3_spec") or []),
    ]


_COMPARISON_HEADERS = ["Model", *COMPARISON_COLUMNS]

_FORMATTING_HEADERS = ["Model", "Tab", "New line", "Two spaces", "Four spaces"]


def _render_coverage(payload: dict, fmt: str) -> str:
    headers = ["Language", "Keywords", "Present", "Coverage %"]
    rows = [
        [row["language"], str(row["keywords"]), str(row["present"]), str(row["percentage"])]
        for row in payload["rows"]
    ]
    if fmt == "csv":
        return _csv_table(headers, rows)
    title = f"# Keyword coverage: {payload['vocab']} (match mode: {payload['match_mode']})"
    return title + "\n\n" + _md_table(headers, rows) + "\n"


def _render_ranks(payload: dict, fmt: str) -> str:
    headers = ["Keyword", "Languages", "Bare rank", "Prefixed rank", "Min rank"]
    rows = [
        [
            _escape_cell(row["keyword"]),
            ";".join(row["languages"]),
            _fmt(row["rank_bare"]),
            _fmt(row["rank_prefixed"]),
            _fmt(row["min_rank"]),
        ]
        for row in payload["rows"]
    ]
    if fmt == "csv":
        return _csv_table(headers, rows)
    summary = payload["summary"]
    lines = [
        f"# Keyword ranks: {payload['vocab']}",
        "",
        f"Present: {summary['present']}/{summary['total']} keywords; "
        f"mean min rank {_fmt(summary['mean_min_rank'])}, "
        f"median {_fmt(summary['median_min_rank'])}",
        "",
        _md_table(headers, rows),
    ]
    return "\n".join(lines) + "\n"


def _render_charset(payload: dict, fmt: str) -> str:
    headers = ["Tokenizer", "Tokens with Special Chars", "Total Tokens", "Percentage (%)"]
    row = [
        payload["vocab"],
        str(payload["matching"]),
        str(payload["total"]),
        str(payload["percentage"]),
    ]
    if fmt == "csv":
        return _csv_table(headers, [row])
    parts = [f"# Special-character token proportion: {payload['vocab']}", ""]
    parts.append(_md_table(headers, [row]))
    reference = payload.get("published_reference") or []
    if reference:
        parts += ["", "Published reference values:", ""]
        parts.append(
            _md_table(
                headers,
                [
                    [
                        ref["tokenizer"],
                        str(ref["special_char_tokens"]),
                        str(ref["total_tokens"]),
                        str(ref["percentage"]),
                    ]
                    for ref in reference
                ],
            )
        )
    return "\n".join(parts) + "\n"


def _render_coldstart(payload: dict, fmt: str) -> str:
    stats_row = _comparison_cells(payload)
    fmt_probs = payload["formatting"]
    formatting_row = [
        _escape_cell(str(payload.get("model", ""))),
        _fmt(fmt_probs["tab"]),
        _fmt(fmt_probs["newline"]),
        _fmt(fmt_probs["two_spaces"]),
        _fmt(fmt_probs["four_spaces"]),
    ]
    if fmt == "csv":
        headers = _COMPARISON_HEADERS + _FORMATTING_HEADERS[1:] + ["Sparse"]
        row = stats_row + formatting_row[1:] + [_fmt(payload["sparse"])]
        return _csv_table(headers, [row])
    parts = [f"# Cold-start metrics: {payload['model']}", ""]
    parts.append(_md_table(_COMPARISON_HEADERS, [stats_row]))
    parts += ["", "Formatting token probabilities:", ""]
    parts.append(_md_table(_FORMATTING_HEADERS, [formatting_row]))
    if payload["sparse"]:
        parts += ["", "Note: sparse dump; cumulative metrics are lower bounds."]
    if fmt_probs["missing"]:
        parts += ["", f"Formatting surfaces absent from vocabulary: {', '.join(fmt_probs['missing'])}"]
    return "\n".join(parts) + "\n"


def _table_cell(value) -> str:
    if isinstance(value, list):
        return _join_tokens(value)
    if isinstance(value, str):
        return _escape_cell(value)
    return _fmt(value)


def _render_comparison(payload: dict, fmt: str) -> str:
    # published tables carry their own column headers and row-key order
    headers = payload.get("columns") or list(_COMPARISON_HEADERS)
    keys = payload.get("keys") or [
        "model",
        "keyw_prob",
        "spec_tok_prob",
        "keyw_avg_prob",
        "spec_tok_avg_prob",
        "nl_prob",
        "top3_keyw",
        "top3_spec",
    ]
    rows = [[_table_cell(row.get(key)) for key in keys] for row in payload["rows"]]
    if fmt == "csv":
        return _csv_table(headers, rows)
    title = payload.get("title") or "Model comparison"
    parts = [f"# {title}", "", _md_table(headers, rows)]
    errors = [
        (row["model"], row["error"]) for row in payload["rows"] if row.get("error")
    ]
    if errors:
        parts += ["", "Failed rows:", ""]
        parts += [f"- {model}: {message}" for model, message in errors]
    return "\n".join(parts) + "\n"


def _render_delta(payload: dict, fmt: str) -> str:
    headers = ["Metric", "Base", "Compared", "Absolute", "Relative %"]
    rows = []
    for name, cell in payload["metrics"].items():
        relative = cell["relative_pct"]
        rows.append(
            [
                name,
                _fmt(cell["base"]),
                _fmt(cell["compared"]),
                _fmt(cell["absolute"]),
                _fmt(round(relative, 1)) if relative is not None else "",
            ]
        )
    if fmt == "csv":
        return _csv_table(headers, rows)
    parts = [
        f"# Delta: {payload['base_model']} -> {payload['compared_model']}",
        "",
        _md_table(headers, rows),
        "",
        f"Top-keyword Jaccard: {_fmt(payload['top_keyword_jaccard'])}; "
        f"top-special Jaccard: {_fmt(payload['top_special_jaccard'])}",
    ]
    return "\n".join(parts) + "\n"


def _render_sweep(payload: dict, fmt: str) -> str:
    headers = ["Quant", "KeyW Prob", "Spec tok Prob", "KeyW Avg Prob", "NL prob", "L1 vs ref", "Flagged"]
    rows = [
        [
            row["quant_label"],
            _fmt(row["pkp"]),
            _fmt(row["stp"]),
            _fmt(row["kap"]),
            _fmt(row["nlp"]),
            _fmt(row["distance"]),
            "yes" if row["flagged"] else "",
        ]
        for row in payload["rows"]
    ]
    if fmt == "csv":
        return _csv_table(headers, rows)
    parts = [
        f"# Quantization sweep: {payload['family']}",
        "",
        f"Reference: {payload['reference']}; nearest level: {payload['nearest']}; "
        f"stp threshold: {payload['stp_threshold']}",
        "",
        _md_table(headers, rows),
    ]
    return "\n".join(parts) + "\n"


_RENDERERS = {
    "coverage": _render_coverage,
    "ranks": _render_ranks,
    "charset": _render_charset,
    "coldstart": _render_coldstart,
    "comparison": _render_comparison,
    "delta": _render_delta,
    "sweep": _render_sweep,
}


def serialize(report: ReportDocument, fmt: str) -> str:
    """Render a report document as markdown, csv, or json text."""
    if fmt not in FORMATS:
        raise ValueError(f"format must be one of {FORMATS}")
    if fmt == "json":
        document = {
            "kind": report.kind,
            "payload": report.payload,
            "metadata": report.metadata,
        }
        return json.dumps(document, indent=2) + "\n"
    return _RENDERERS[report.kind](report.payload, fmt)


# ---------------------------------------------------------------- commands

def _analysis_inputs(args):
    """Shared keyword/word/symbol configuration for metric commands."""
    sets = load_keyword_sets(getattr(args, "keywords_dir", None))
    union = keyword_union(sets)
    words = datafiles.natural_words()
    symbols = (
        load_symbol_set(args.symbols)
        if getattr(args, "symbols", None)
        else default_symbol_set()
    )
    return sets, union, words, symbols


def _metrics_row(model_id: str, report, extra: dict | None = None) -> dict:
    row = {
        "model": model_id,
        "keyw_prob": report.pkp,
        "spec_tok_prob": report.stp,
        "keyw_avg_prob": report.kap,
        "spec_tok_avg_prob": report.stap,
        "nl_prob": report.nlp,
        "top3_keyw": [token for token, _ in report.top_keywords],
        "top3_spec": [token for token, _ in report.top_specials],
        "sparse": report.sparse,
        "error": None,
    }
    if extra:
        row.update(extra)
    return row


def cmd_coverage(args) -> ReportDocument:
    vocab = load_vocabulary(args.vocab)
    sets = load_keyword_sets(args.keywords_dir)
    mode = _MATCH_MODE_FLAGS.get(args.match_mode, DEFAULT_MATCH_MODE)
    rows = []
    for kwset in sets:
        active = coverage(vocab, kwset, mode)
        bare = coverage(vocab, kwset, MatchMode.BARE_ONLY)
        either = coverage(vocab, kwset, MatchMode.BARE_OR_PREFIXED)
        rows.append(
            {
                "language": kwset.language,
                "keywords": active.total,
                "present": active.present,
                "percentage": active.percentage,
                "present_bare": bare.present,
                "percentage_bare": bare.percentage,
                "present_prefixed": either.present,
                "percentage_prefixed": either.percentage,
                "missing": list(active.missing),
                "variant_detail": active.variant_detail,
            }
        )
    payload = {"vocab": vocab.name, "match_mode": mode.value, "rows": rows}
    metadata = _metadata(
        {"vocab": Path(args.vocab)},
        {"match_mode": mode.value, "identity_decoding": vocab.identity_mode},
        args.deterministic,
    )
    return ReportDocument(kind="coverage", payload=payload, metadata=metadata)


def cmd_ranks(args) -> ReportDocument:
    vocab = load_vocabulary(args.vocab)
    sets = load_keyword_sets(args.keywords_dir)
    union = keyword_union(sets)
    records, summary = keyword_ranks(vocab, union, sets)
    payload = {
        "vocab": vocab.name,
        "summary": {
            "present": summary.present,
            "total": summary.total,
            "mean_min_rank": summary.mean_min_rank,
            "median_min_rank": summary.median_min_rank,
        },
        "rows": [
            {
                "keyword": record.keyword,
                "languages": list(record.languages),
                "rank_bare": record.rank_bare,
                "rank_prefixed": record.rank_prefixed,
                "min_rank": record.min_rank,
            }
            for record in records
        ],
    }
    metadata = _metadata({"vocab": Path(args.vocab)}, {}, args.deterministic)
    return ReportDocument(kind="ranks", payload=payload, metadata=metadata)


def cmd_charset(args) -> ReportDocument:
    vocab = load_vocabulary(args.vocab)
    symbols = load_symbol_set(args.symbols) if args.symbols else default_symbol_set()
    result = special_char_proportion(vocab, symbols)
    payload = {
        "vocab": result.vocab_name,
        "matching": result.matching,
        "total": result.total,
        "percentage": result.percentage,
        "published_reference": datafiles.published_table("charset_proportions")["rows"],
    }
    metadata = _metadata(
        {"vocab": Path(args.vocab)},
        {"symbols": sorted(symbols.characters)},
        args.deterministic,
    )
    return ReportDocument(kind="charset", payload=payload, metadata=metadata)


def cmd_coldstart(args) -> ReportDocument:
    vocab = load_vocabulary(args.vocab)
    _, union, words, symbols = _analysis_inputs(args)
    dist = load_distribution(args.dump, vocab)
    if args.temperature is not None and args.temperature != 1.0:
        dist = apply_temperature(dist, args.temperature)
    report = metrics_report(dist, vocab, union, words, symbols, k=args.top_k)
    payload = _metrics_row(report.model_id, report)
    payload.update(
        {
            "vocab": vocab.name,
            "residual_mass": dist.residual_mass,
            "temperature_applied": dist.temperature_applied,
            "top_keywords": [[token, p] for token, p in report.top_keywords],
            "top_specials": [[token, p] for token, p in report.top_specials],
            "formatting": report.formatting.as_dict(),
            "debug": report.debug,
        }
    )
    metadata = _metadata(
        {"vocab": Path(args.vocab), "dump": Path(args.dump)},
        {"top_k": args.top_k, "temperature": args.temperature},
        args.deterministic,
    )
    return ReportDocument(kind="coldstart", payload=payload, metadata=metadata)


def cmd_compare(args) -> ReportDocument:
    if args.published:
        table = datafiles.published_table(args.published)
        payload = {
            "title": table.get("title"),
            "source": "published",
            "columns": table["columns"],
            "rows": table["rows"],
        }
        metadata = _metadata({}, {"published": args.published}, args.deterministic)
        return ReportDocument(kind="comparison", payload=payload, metadata=metadata)

    manifest = load_manifest(args.manifest)
    _, union, words, symbols = _analysis_inputs(args)
    table = run_comparison(manifest, union, words, symbols, k=args.top_k)
    rows = []
    for row in table.rows:
        extra = {
            "family": row.entry.family,
            "variant": row.entry.variant,
            "size_label": row.entry.size_label,
            "quant_label": row.entry.quant_label,
        }
        if row.metrics is not None:
            rows.append(_metrics_row(row.entry.model_id, row.metrics, extra))
        else:
            blank = {
                "model": row.entry.model_id,
                "keyw_prob": None,
                "spec_tok_prob": None,
                "keyw_avg_prob": None,
                "spec_tok_avg_prob": None,
                "nl_prob": None,
                "top3_keyw": [],
                "top3_spec": [],
                "sparse": None,
                "error": row.error,
            }
            blank.update(extra)
            rows.append(blank)
    payload = {
        "title": "Model comparison",
        "source": "computed",
        "columns": list(_COMPARISON_HEADERS),
        "keys": [
            "model",
            "keyw_prob",
            "spec_tok_prob",
            "keyw_avg_prob",
            "spec_tok_avg_prob",
            "nl_prob",
            "top3_keyw",
            "top3_spec",
        ],
        "rows": rows,
    }
    metadata = _metadata(
        {"manifest": Path(args.manifest)},
        {"top_k": args.top_k},
        args.deterministic,
    )
    return ReportDocument(kind="comparison", payload=payload, metadata=metadata)


def cmd_delta(args) -> ReportDocument:
    vocab = load_vocabulary(args.vocab)
    _, union, words, symbols = _analysis_inputs(args)
    base = metrics_report(
        load_distribution(args.base_dump, vocab), vocab, union, words, symbols, k=args.top_k
    )
    compared = metrics_report(
        load_distribution(args.dump, vocab), vocab, union, words, symbols, k=args.top_k
    )
    delta = distillation_delta(base, compared)
    payload = {
        "base_model": delta.base_model,
        "compared_model": delta.compared_model,
        "metrics": delta.metrics,
        "top_keyword_jaccard": delta.top_keyword_jaccard,
        "top_special_jaccard": delta.top_special_jaccard,
    }
    metadata = _metadata(
        {
            "vocab": Path(args.vocab),
            "base_dump": Path(args.base_dump),
            "dump": Path(args.dump),
        },
        {"top_k": args.top_k},
        args.deterministic,
    )
    return ReportDocument(kind="delta", payload=payload, metadata=metadata)


def cmd_sweep(args) -> ReportDocument:
    manifest = load_manifest(args.manifest)
    _, union, words, symbols = _analysis_inputs(args)
    table = run_comparison(manifest, union, words, symbols, k=args.top_k)
    summary = quantization_sweep(
        table, reference_id=args.reference, stp_threshold=args.stp_threshold
    )
    rows = []
    for row in table.rows:
        if row.metrics is None or not row.entry.quant_label:
            continue
        label = row.entry.quant_label
        rows.append(
            {
                "quant_label": label,
                "model": row.entry.model_id,
                "pkp": row.metrics.pkp,
                "stp": row.metrics.stp,
                "kap": row.metrics.kap,
                "nlp": row.metrics.nlp,
                "distance": summary.distances.get(label),
                "flagged": label in summary.flagged,
            }
        )
    payload = {
        "family": summary.family,
        "reference": summary.reference,
        "nearest": summary.nearest,
        "stp_threshold": summary.stp_threshold,
        "flagged": list(summary.flagged),
        "trajectories": summary.trajectories,
        "distances": summary.distances,
        "rows": rows,
    }
    metadata = _metadata(
        {"manifest": Path(args.manifest)},
        {"stp_threshold": args.stp_threshold, "reference": args.reference},
        args.deterministic,
    )
    return ReportDocument(kind="sweep", payload=payload, metadata=metadata)


def cmd_validate_dump(args) -> str:
    vocab = load_vocabulary(args.vocab) if args.vocab else None
    summary = validate_dump(args.dump, vocab)
    return (
        f"OK: {summary['path']} (model {summary['model_id']!r}, "
        f"{summary['entries']} entries, dense={summary['dense']}, "
        f"residual_mass={summary['residual_mass']:.6g})\n"
    )


# ---------------------------------------------------------------- parser

def _add_common(parser, *, vocab=False, dump=False, manifest=False):
    if vocab:
        parser.add_argument("--vocab", required=True, help="tokenizer.json or vocab.json path")
    if dump:
        parser.add_argument("--dump", required=True, help="coldstart-dump/1 file")
    if manifest:
        parser.add_argument("--manifest", help="model manifest JSON file")
    parser.add_argument("--format", choices=FORMATS, default="md", dest="format")
    parser.add_argument("--out", help="write the report here instead of stdout")
    parser.add_argument(
        "--deterministic",
        action="store_true",
        help="omit timestamps so identical inputs serialize byte-identically",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tokscope",
        description="Tokenizer vocabulary analysis and cold-start token metrics.",
    )
    parser.add_argument("--version", action="version", version=f"tokscope {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coverage", help="per-language keyword coverage of a vocabulary")
    _add_common(p, vocab=True)
    p.add_argument("--match-mode", choices=sorted(_MATCH_MODE_FLAGS), default="bare")
    p.add_argument("--keywords-dir", help="directory of keyword dataset files")
    p.set_defaults(func=cmd_coverage)

    p = sub.add_parser("ranks", help="vocabulary ranks of the keyword union")
    _add_common(p, vocab=True)
    p.add_argument("--keywords-dir", help="directory of keyword dataset files")
    p.set_defaults(func=cmd_ranks)

    p = sub.add_parser("charset", help="proportion of tokens with programming symbols")
    _add_common(p, vocab=True)
    p.add_argument("--symbols", help="symbol override file, one character per line")
    p.set_defaults(func=cmd_charset)

    p = sub.add_parser("coldstart", help="cold-start metrics for one model dump")
    _add_common(p, vocab=True, dump=True)
    p.add_argument("--keywords-dir", help="directory of keyword dataset files")
    p.add_argument("--symbols", help="symbol override file")
    p.add_argument("--top-k", type=int, default=3)
    p.add_argument("--temperature", type=float, help="rescale the distribution before analysis")
    p.set_defaults(func=cmd_coldstart)

    p = sub.add_parser("compare", help="comparison table over a model manifest")
    _add_common(p, manifest=True)
    p.add_argument("--keywords-dir", help="directory of keyword dataset files")
    p.add_argument("--symbols", help="symbol override file")
    p.add_argument("--top-k", type=int, default=3)
    p.add_argument(
        "--published",
        help="render a bundled published table instead of computing "
        f"(one of: {', '.join(datafiles.published_table_names())})",
    )
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("delta", help="metric deltas between two dumps of one vocabulary")
    _add_common(p, vocab=True, dump=True)
    p.add_argument("--base-dump", required=True, help="reference model dump")
    p.add_argument("--keywords-dir", help="directory of keyword dataset files")
    p.add_argument("--symbols", help="symbol override file")
    p.add_argument("--top-k", type=int, default=3)
    p.set_defaults(func=cmd_delta)

    p = sub.add_parser("sweep", help="quantization sweep over one model family")
    _add_common(p, manifest=True)
    p.add_argument("--keywords-dir", help="directory of keyword dataset files")
    p.add_argument("--symbols", help="symbol override file")
    p.add_argument("--top-k", type=int, default=3)
    p.add_argument("--reference", help="model_id of the reference row")
    p.add_argument("--stp-threshold", type=float, default=0.4)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("validate-dump", help="validate a coldstart-dump/1 file")
    p.add_argument("--dump", required=True)
    p.add_argument("--vocab", help="optional vocabulary to check token ids against")
    p.set_defaults(func=cmd_validate_dump, format=None, out=None, deterministic=True)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2

    if getattr(args, "manifest", "-") is None and not getattr(args, "published", None):
        print("error: a --manifest file is required", file=sys.stderr)
        return 2

    try:
        result = args.func(args)
    except (TokscopeError, FileNotFoundError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    if isinstance(result, ReportDocument):
        text = serialize(result, args.format)
    else:
        text = result
    if getattr(args, "out", None):
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
