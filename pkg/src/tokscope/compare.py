"""Multi-model aggregation: comparison tables, distillation deltas, quantization sweeps."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

from .coldstart import MetricsReport, load_distribution, metrics_report
from .errors import InsufficientRows, ManifestError, TokscopeError
from .vocab import Vocabulary, load_vocabulary

VARIANTS = ("base", "instruct", "coder", "coder_instruct", "distilled")

# column order of the published comparison tables
COMPARISON_COLUMNS = (
    "KeyW Prob",
    "Spec tok Prob",
    "KeyW Avg Prob",
    "Spec tok Avg Prob",
    "NL prob",
    "Top-3 KeyW",
    "Top-3 Spec",
)

DELTA_METRICS = ("pkp", "stp", "kap", "stap", "nlp")

# sweep metrics used for the nearest-to-reference L1 distance
SWEEP_METRICS = ("pkp", "stp", "kap", "nlp")

STP_NOISE_THRESHOLD = 0.4


@dataclass(frozen=True)
class ManifestEntry:
    model_id: str
    vocab_path: Path
    dump_path: Path | None
    family: str
    variant: str
    size_label: str
    quant_label: str | None = None


@dataclass(frozen=True)
class ModelManifest:
    entries: tuple[ManifestEntry, ...]


def load_manifest(path: str | Path) -> ModelManifest:
    """Read a manifest file: a JSON array of model entries.

    Relative vocab/dump paths are resolved against the manifest's directory.
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"manifest not found: {path}")
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ManifestError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, list):
        raise ManifestError(f"{path}: manifest must be a JSON array")

    base = path.parent
    entries = []
    seen = set()
    for i, item in enumerate(doc):
        if not isinstance(item, dict):
            raise ManifestError(f"{path}: entry {i} must be an object")
        try:
            model_id = item["model_id"]
            vocab_path = base / item["vocab_path"]
            family = item["family"]
            variant = item["variant"]
            size_label = item["size_label"]
        except KeyError as exc:
            raise ManifestError(f"{path}: entry {i} missing field {exc.args[0]!r}") from None
        if model_id in seen:
            raise ManifestError(f"{path}: duplicate model_id {model_id!r}")
        seen.add(model_id)
        if variant not in VARIANTS:
            raise ManifestError(
                f"{path}: entry {model_id!r} has unknown variant {variant!r}"
            )
        if not vocab_path.exists():
            raise ManifestError(f"{path}: vocab file missing for {model_id!r}: {vocab_path}")
        dump = item.get("dump_path")
        entries.append(
            ManifestEntry(
                model_id=model_id,
                vocab_path=vocab_path,
                dump_path=base / dump if dump else None,
                family=family,
                variant=variant,
                size_label=size_label,
                quant_label=item.get("quant_label"),
            )
        )
    return ModelManifest(entries=tuple(entries))


@dataclass(frozen=True)
class ComparisonRow:
    entry: ManifestEntry
    metrics: MetricsReport | None
    error: str | None = None


@dataclass(frozen=True)
class ComparisonTable:
    columns: tuple[str, ...]
    rows: tuple[ComparisonRow, ...]


def run_comparison(
    manifest: ModelManifest,
    keyword_union: frozenset[str] | set[str],
    natural_words: frozenset[str] | set[str],
    symbol_set: frozenset[str] | set[str],
    k: int = 3,
) -> ComparisonTable:
    """One metrics row per manifest entry, in manifest order.

    A row that fails to load keeps its slot with an error message instead of
    aborting the whole comparison. Rows without a dump stay blank (coverage-
    style entries); their metric cells are None in serialized output.
    """
    vocab_cache: dict[Path, Vocabulary] = {}
    rows = []
    for entry in manifest.entries:
        if entry.dump_path is None:
            rows.append(ComparisonRow(entry=entry, metrics=None))
            continue
        try:
            vocab = vocab_cache.get(entry.vocab_path)
            if vocab is None:
                vocab = load_vocabulary(entry.vocab_path)
                vocab_cache[entry.vocab_path] = vocab
            dist = load_distribution(entry.dump_path, vocab)
            report = metrics_report(
                dist, vocab, keyword_union, natural_words, symbol_set, k=k
            )
            rows.append(ComparisonRow(entry=entry, metrics=report))
        except (TokscopeError, FileNotFoundError) as exc:
            rows.append(ComparisonRow(entry=entry, metrics=None, error=str(exc)))
    return ComparisonTable(columns=COMPARISON_COLUMNS, rows=tuple(rows))


@dataclass(frozen=True)
class DeltaReport:
    base_model: str
    compared_model: str
    # metric -> {base, compared, absolute, relative_pct (None when base == 0)}
    metrics: dict[str, dict]
    top_keyword_jaccard: float
    top_special_jaccard: float


def _jaccard(a: tuple[tuple[str, float], ...], b: tuple[tuple[str, float], ...]) -> float:
    sa = {tok for tok, _ in a}
    sb = {tok for tok, _ in b}
    if not sa and not sb:
        return 1.0
    return len(sa & sb) / len(sa | sb)


def distillation_delta(base: MetricsReport, distilled: MetricsReport) -> DeltaReport:
    """Per-metric absolute and relative change from a base model to a derived one.

    Relative change is (compared - base) / base * 100 and is reported absent
    (None) for metrics whose base value is 0.
    """
    metrics = {}
    for name in DELTA_METRICS:
        b = getattr(base, name)
        c = getattr(distilled, name)
        metrics[name] = {
            "base": b,
            "compared": c,
            "absolute": c - b,
            "relative_pct": (c - b) / b * 100.0 if b != 0 else None,
        }
    return DeltaReport(
        base_model=base.model_id,
        compared_model=distilled.model_id,
        metrics=metrics,
        top_keyword_jaccard=_jaccard(base.top_keywords, distilled.top_keywords),
        top_special_jaccard=_jaccard(base.top_specials, distilled.top_specials),
    )


@dataclass(frozen=True)
class SweepSummary:
    family: str
    reference: str
    # metric -> [(quant_label, value), ...] in manifest order
    trajectories: dict[str, list]
    flagged: tuple[str, ...]
    nearest: str
    distances: dict[str, float]
    stp_threshold: float


def quantization_sweep(
    table: ComparisonTable,
    reference_id: str | None = None,
    stp_threshold: float = STP_NOISE_THRESHOLD,
) -> SweepSummary:
    """Summarize one family's quantization levels against a reference row.

    The reference is the named row, else the first unquantized row, else the
    Q8_0 row. Nearest-to-reference minimizes the L1 distance over
    (pkp, stp, kap, nlp); rows whose stp exceeds the threshold are flagged as
    noise-prone.
    """
    usable = [row for row in table.rows if row.metrics is not None]
    quant_rows = [row for row in usable if row.entry.quant_label]
    if len(quant_rows) < 2:
        raise InsufficientRows(
            f"quantization sweep needs at least 2 quantized rows, got {len(quant_rows)}"
        )

    reference = None
    if reference_id is not None:
        reference = next(
            (row for row in usable if row.entry.model_id == reference_id), None
        )
        if reference is None:
            raise InsufficientRows(f"reference row {reference_id!r} not in table")
    else:
        reference = next((row for row in usable if not row.entry.quant_label), None)
        if reference is None:
            reference = next(
                (row for row in quant_rows if row.entry.quant_label == "Q8_0"), None
            )
    if reference is None:
        raise InsufficientRows("no reference row (unquantized or Q8_0) available")

    families = {row.entry.family for row in quant_rows} | {reference.entry.family}
    if len(families) > 1:
        raise InsufficientRows(f"sweep rows span multiple families: {sorted(families)}")

    trajectories: dict[str, list] = {m: [] for m in SWEEP_METRICS}
    for row in quant_rows:
        for metric in SWEEP_METRICS:
            trajectories[metric].append(
                (row.entry.quant_label, getattr(row.metrics, metric))
            )

    flagged = tuple(
        row.entry.quant_label for row in quant_rows if row.metrics.stp > stp_threshold
    )

    distances = {}
    for row in quant_rows:
        if row is reference:
            continue
        distances[row.entry.quant_label] = math.fsum(
            abs(getattr(row.metrics, m) - getattr(reference.metrics, m))
            for m in SWEEP_METRICS
        )
    nearest = min(distances, key=lambda label: (distances[label], label))

    return SweepSummary(
        family=reference.entry.family,
        reference=reference.entry.model_id,
        trajectories=trajectories,
        flagged=flagged,
        nearest=nearest,
        distances=distances,
        stp_threshold=stp_threshold,
    )
