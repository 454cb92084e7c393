"""Cold-start first-token distributions and the derived code-capability metrics.

A cold-start dump records the probability of every token being generated
first, with no prompt. The metrics sum that mass over token classes:

  pkp  cumulative mass on programming-keyword tokens
  stp  cumulative mass on special (symbol/formatting) tokens
  kap  pkp averaged over all keyword-classified token ids in the vocabulary
  stap stp averaged over all special-classified token ids
  nlp  cumulative mass on common natural-language words (control baseline)

Sparse dumps (top-K plus residual) yield lower bounds for the cumulative
metrics; reports carry a `sparse` flag for them.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import (
    MassViolation,
    NoKeywordTokens,
    NonPositiveTemperature,
    OutOfRangeProbability,
    SchemaViolation,
    SparseDistribution,
    VocabMismatch,
)
from .vocab import ClassIndex, TokenClass, Vocabulary, class_index

MASS_EPS = 1e-6

DUMP_SCHEMA = "coldstart-dump/1"

FORMATTING_SURFACES = {
    "tab": "\t",
    "newline": "\n",
    "two_spaces": "  ",
    "four_spaces": "    ",
}


@dataclass(frozen=True)
class ColdStartDistribution:
    model_id: str
    vocab_ref: str
    entries: dict[int, float]
    residual_mass: float
    temperature_applied: float
    dense: bool

    @property
    def sparse(self) -> bool:
        return self.residual_mass > 0 or not self.dense


@dataclass(frozen=True)
class FormattingProbs:
    tab: float
    newline: float
    two_spaces: float
    four_spaces: float
    # labels whose exact surface is not a single token in the vocabulary
    missing: tuple[str, ...] = ()

    def as_dict(self) -> dict:
        return {
            "tab": self.tab,
            "newline": self.newline,
            "two_spaces": self.two_spaces,
            "four_spaces": self.four_spaces,
            "missing": list(self.missing),
        }


@dataclass(frozen=True)
class MetricsReport:
    model_id: str
    vocab_ref: str
    pkp: float
    stp: float
    kap: float
    stap: float
    nlp: float
    top_keywords: tuple[tuple[str, float], ...]
    top_specials: tuple[tuple[str, float], ...]
    formatting: FormattingProbs
    sparse: bool
    debug: dict = field(default_factory=dict, compare=False)


def _coerce_probability(value, index: int) -> float:
    if isinstance(value, bool):
        raise SchemaViolation(f"entry {index}: probability must be a number or string")
    if isinstance(value, (int, float)):
        p = float(value)
    elif isinstance(value, str):
        try:
            p = float(value)
        except ValueError:
            raise SchemaViolation(f"entry {index}: unparseable probability {value!r}") from None
    else:
        raise SchemaViolation(f"entry {index}: probability must be a number or string")
    if not math.isfinite(p) or p < 0.0 or p > 1.0:
        raise OutOfRangeProbability(f"entry {index}: probability {p} outside [0, 1]")
    return p


def _read_dump(path: Path) -> dict:
    if not path.exists():
        raise FileNotFoundError(f"dump file not found: {path}")
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SchemaViolation(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("schema") != DUMP_SCHEMA:
        raise SchemaViolation(f"{path}: expected schema {DUMP_SCHEMA!r}")
    return doc


def _validate_dump_doc(doc: dict, path: Path, vocab: Vocabulary | None):
    """Shared schema/mass validation; id membership checks use `vocab` when given."""
    for key in ("model_id", "vocab_size", "temperature", "dense", "entries"):
        if key not in doc:
            raise SchemaViolation(f"{path}: missing field {key!r}")
    vocab_size = doc["vocab_size"]
    if not isinstance(vocab_size, int) or isinstance(vocab_size, bool) or vocab_size < 1:
        raise SchemaViolation(f"{path}: vocab_size must be a positive integer")
    if not isinstance(doc["dense"], bool):
        raise SchemaViolation(f"{path}: dense must be a boolean")
    if not isinstance(doc["entries"], list):
        raise SchemaViolation(f"{path}: entries must be a list")
    temperature = doc["temperature"]
    if isinstance(temperature, bool) or not isinstance(temperature, (int, float)) or temperature <= 0:
        raise SchemaViolation(f"{path}: temperature must be a positive number")

    if vocab is not None and vocab_size != vocab.size:
        raise VocabMismatch(
            f"{path} declares vocab_size {vocab_size}, vocabulary "
            f"{vocab.name!r} has {vocab.size}"
        )

    entries: dict[int, float] = {}
    previous = -1
    for i, item in enumerate(doc["entries"]):
        if not isinstance(item, dict) or "id" not in item or "p" not in item:
            raise SchemaViolation(f"{path}: entry {i} must be an object with id and p")
        token_id = item["id"]
        if isinstance(token_id, bool) or not isinstance(token_id, int):
            raise SchemaViolation(f"{path}: entry {i} id must be an integer")
        if token_id <= previous:
            raise SchemaViolation(
                f"{path}: entries must be strictly id-sorted (entry {i}, id {token_id})"
            )
        previous = token_id
        if vocab is not None:
            if token_id not in vocab.entries:
                raise SchemaViolation(
                    f"{path}: entry {i} id {token_id} not in vocabulary {vocab.name!r}"
                )
        elif not 0 <= token_id < vocab_size:
            raise SchemaViolation(
                f"{path}: entry {i} id {token_id} outside [0, {vocab_size})"
            )
        entries[token_id] = _coerce_probability(item["p"], i)

    dense = doc["dense"]
    total = math.fsum(entries.values())
    if total > 1.0 + MASS_EPS or (dense and total < 1.0 - MASS_EPS):
        raise MassViolation(f"{path}: total probability mass {total!r} outside tolerance")
    residual = 1.0 - total
    if residual < 0.0:
        warnings.warn(
            f"{path}: mass exceeds 1 by {-residual:.2e} (within tolerance); clamping residual to 0",
            stacklevel=3,
        )
        residual = 0.0
    if dense:
        residual = 0.0
    return str(doc["model_id"]), entries, residual, float(temperature), dense


def load_distribution(path: str | Path, vocab: Vocabulary) -> ColdStartDistribution:
    """Load and validate a coldstart-dump/1 file against a vocabulary."""
    path = Path(path)
    doc = _read_dump(path)
    model_id, entries, residual, temperature, dense = _validate_dump_doc(doc, path, vocab)
    return ColdStartDistribution(
        model_id=model_id,
        vocab_ref=vocab.name,
        entries=entries,
        residual_mass=residual,
        temperature_applied=temperature,
        dense=dense,
    )


def validate_dump(path: str | Path, vocab: Vocabulary | None = None) -> dict:
    """Validate a dump file, with or without a vocabulary to check ids against.

    Returns a summary dict; raises SchemaViolation / MassViolation /
    OutOfRangeProbability / VocabMismatch on the first violation found.
    """
    path = Path(path)
    doc = _read_dump(path)
    model_id, entries, residual, temperature, dense = _validate_dump_doc(doc, path, vocab)
    return {
        "path": str(path),
        "model_id": model_id,
        "vocab_size": doc["vocab_size"],
        "entries": len(entries),
        "dense": dense,
        "residual_mass": residual,
        "temperature": temperature,
    }


def _mass_over(dist: ColdStartDistribution, ids: frozenset[int]) -> float:
    return math.fsum(p for tid, p in dist.entries.items() if tid in ids)


def compute_pkp(
    dist: ColdStartDistribution,
    vocab: Vocabulary,
    keyword_union: frozenset[str] | set[str],
    index: ClassIndex | None = None,
) -> float:
    """Cumulative probability of keyword tokens (bare and space-prefixed forms)."""
    index = index or class_index(vocab, keyword_union, frozenset(), frozenset())
    return _mass_over(dist, index.keyword_ids)


def compute_stp(
    dist: ColdStartDistribution,
    vocab: Vocabulary,
    symbol_set: frozenset[str] | set[str],
    keyword_union: frozenset[str] | set[str] = frozenset(),
    index: ClassIndex | None = None,
) -> float:
    """Cumulative probability of special tokens (symbols and whitespace runs)."""
    index = index or class_index(vocab, keyword_union, frozenset(), symbol_set)
    return _mass_over(dist, index.special_ids)


def compute_kap(
    dist: ColdStartDistribution,
    vocab: Vocabulary,
    keyword_union: frozenset[str] | set[str],
    index: ClassIndex | None = None,
) -> float:
    """Mean keyword probability: pkp over the count of keyword token ids."""
    index = index or class_index(vocab, keyword_union, frozenset(), frozenset())
    if not index.keyword_ids:
        raise NoKeywordTokens(f"vocabulary {vocab.name!r} has no keyword-classified tokens")
    return _mass_over(dist, index.keyword_ids) / len(index.keyword_ids)


def compute_nlp(
    dist: ColdStartDistribution,
    vocab: Vocabulary,
    natural_words: frozenset[str] | set[str],
    index: ClassIndex | None = None,
) -> float:
    """Cumulative probability of common natural-language word tokens."""
    index = index or class_index(vocab, frozenset(), natural_words, frozenset())
    return _mass_over(dist, index.natural_ids)


def top_k_by_class(
    dist: ColdStartDistribution,
    vocab: Vocabulary,
    token_class: TokenClass,
    k: int,
    index: ClassIndex,
) -> list[tuple[str, float]]:
    """k most probable tokens of a class, ties broken by ascending token id."""
    if k < 1:
        raise ValueError("k must be >= 1")
    ids = {
        TokenClass.PROGRAMMING_KEYWORD: index.keyword_ids,
        TokenClass.SPECIAL_TOKEN: index.special_ids,
        TokenClass.NATURAL_WORD: index.natural_ids,
        TokenClass.FORMATTING: index.formatting_ids,
    }[token_class]
    scored = [(tid, dist.entries.get(tid, 0.0)) for tid in ids]
    scored.sort(key=lambda pair: (-pair[1], pair[0]))
    return [
        (vocab.decoded[tid].decode("utf-8", "backslashreplace"), p)
        for tid, p in scored[:k]
    ]


def formatting_probs(dist: ColdStartDistribution, vocab: Vocabulary) -> FormattingProbs:
    """Probability of the exact tab / newline / two-space / four-space tokens.

    A label is reported 0 and flagged missing when its surface is not a
    single token of the vocabulary; no multi-token composition is attempted.
    """
    values = {}
    missing = []
    for label, text in FORMATTING_SURFACES.items():
        token_id = vocab.lookup(text)
        if token_id is None:
            values[label] = 0.0
            missing.append(label)
        else:
            values[label] = dist.entries.get(token_id, 0.0)
    return FormattingProbs(missing=tuple(missing), **values)


def apply_temperature(dist: ColdStartDistribution, temperature: float) -> ColdStartDistribution:
    """Rescale a dense distribution: p_i' proportional to p_i ** (1/T).

    Equivalent to softmax(logits / T) when the input was itself a softmax.
    Requires a dense distribution because renormalization needs the full mass.
    """
    if temperature <= 0:
        raise NonPositiveTemperature(f"temperature must be > 0, got {temperature}")
    if dist.sparse:
        raise SparseDistribution("temperature rescaling needs a dense distribution")

    ids = np.fromiter(dist.entries.keys(), dtype=np.int64, count=len(dist.entries))
    probs = np.fromiter(dist.entries.values(), dtype=np.float64, count=len(dist.entries))
    with np.errstate(divide="ignore"):
        logp = np.where(probs > 0.0, np.log(probs), -np.inf)
    scaled = logp / temperature
    scaled -= scaled.max()
    weights = np.exp(scaled)
    weights /= weights.sum()

    return ColdStartDistribution(
        model_id=dist.model_id,
        vocab_ref=dist.vocab_ref,
        entries={int(tid): float(p) for tid, p in zip(ids, weights)},
        residual_mass=0.0,
        temperature_applied=dist.temperature_applied * temperature,
        dense=True,
    )


def metrics_report(
    dist: ColdStartDistribution,
    vocab: Vocabulary,
    keyword_union: frozenset[str] | set[str],
    natural_words: frozenset[str] | set[str],
    symbol_set: frozenset[str] | set[str],
    k: int = 3,
) -> MetricsReport:
    """Full metric set for one model, classified in a single vocabulary scan."""
    index = class_index(vocab, keyword_union, natural_words, symbol_set)
    pkp = _mass_over(dist, index.keyword_ids)
    stp = _mass_over(dist, index.special_ids)
    if not index.keyword_ids:
        raise NoKeywordTokens(f"vocabulary {vocab.name!r} has no keyword-classified tokens")
    kap = pkp / len(index.keyword_ids)
    stap = stp / len(index.special_ids) if index.special_ids else 0.0
    nlp = _mass_over(dist, index.natural_ids)

    nonzero_keyword_ids = sum(
        1 for tid in index.keyword_ids if dist.entries.get(tid, 0.0) > 0.0
    )
    debug = {
        # alternative kap denominators, for auditability
        "kap_over_nonzero_ids": pkp / nonzero_keyword_ids if nonzero_keyword_ids else None,
        "kap_over_keyword_strings": pkp / len(keyword_union) if keyword_union else None,
        "keyword_token_ids": len(index.keyword_ids),
        "special_token_ids": len(index.special_ids),
    }

    return MetricsReport(
        model_id=dist.model_id,
        vocab_ref=vocab.name,
        pkp=pkp,
        stp=stp,
        kap=kap,
        stap=stap,
        nlp=nlp,
        top_keywords=tuple(
            top_k_by_class(dist, vocab, TokenClass.PROGRAMMING_KEYWORD, k, index)
        ),
        top_specials=tuple(top_k_by_class(dist, vocab, TokenClass.SPECIAL_TOKEN, k, index)),
        formatting=formatting_probs(dist, vocab),
        sparse=dist.sparse,
        debug=debug,
    )
