"""Reserved-keyword datasets and per-language coverage / rank statistics.

Twelve languages and frameworks are bundled; each dataset file records its
source in a comment header and must match the expected cardinality below, so
silent drift in a list is refused at load time.
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

from . import datafiles
from .errors import CardinalityMismatch, EmptyPresence, MissingDataset
from .vocab import Vocabulary

# language -> expected dataset size, in report row order
LANGUAGE_COUNTS = {
    "C": 59,
    "C#": 77,
    "TypeScript": 46,
    "Ruby": 41,
    "PHP": 62,
    "Rust": 51,
    "JavaScript": 46,
    "Java": 51,
    "Python": 35,
    "Go": 25,
    "React": 30,
    "C++": 93,
}

UNION_SIZE = 276


class MatchMode(str, Enum):
    BARE_ONLY = "bare_only"
    BARE_OR_PREFIXED = "bare_or_prefixed"


# Bare-only matching reproduces the published coverage table; the
# space-prefixed variant is still computed and emitted for every keyword.
DEFAULT_MATCH_MODE = MatchMode.BARE_ONLY


@dataclass(frozen=True)
class KeywordSet:
    language: str
    keywords: tuple[str, ...]

    def __post_init__(self):
        seen = set()
        for kw in self.keywords:
            if not kw or kw != kw.strip() or any(c in kw for c in "\t\n\r"):
                raise ValueError(f"{self.language}: bad keyword {kw!r}")
            if kw in seen:
                raise ValueError(f"{self.language}: duplicate keyword {kw!r}")
            seen.add(kw)

    def __len__(self) -> int:
        return len(self.keywords)


@dataclass(frozen=True)
class CoverageResult:
    language: str
    total: int
    present: int
    percentage: float
    missing: tuple[str, ...]
    variant_detail: dict[str, str]  # keyword -> bare | prefixed | both | none
    match_mode: MatchMode


@dataclass(frozen=True)
class KeywordRankResult:
    keyword: str
    languages: tuple[str, ...]
    rank_bare: int | None
    rank_prefixed: int | None
    min_rank: int | None


@dataclass(frozen=True)
class RankSummary:
    present: int
    total: int
    mean_min_rank: float
    median_min_rank: float


def load_keyword_sets(data_dir: Path | None = None) -> list[KeywordSet]:
    """Load the 12 bundled datasets (or same-named files from `data_dir`).

    Dataset files hold one keyword per line; the filename is the lowercased
    language name. A set whose size differs from the expected count raises
    CardinalityMismatch rather than silently skewing every percentage.
    """
    directory = Path(data_dir) if data_dir else datafiles.keywords_dir()
    sets = []
    for language, expected in LANGUAGE_COUNTS.items():
        path = directory / f"{language.lower()}.txt"
        if not path.exists():
            raise MissingDataset(f"no dataset file for {language} at {path}")
        keywords = datafiles.read_lines(path)
        if len(keywords) != expected:
            raise CardinalityMismatch(
                f"{language}: dataset has {len(keywords)} keywords, expected {expected}"
            )
        sets.append(KeywordSet(language=language, keywords=tuple(keywords)))
    return sets


def keyword_union(sets: list[KeywordSet]) -> frozenset[str]:
    """Deduplicated union across keyword sets."""
    if not sets:
        raise ValueError("keyword_union needs at least one set")
    union = set()
    for kwset in sets:
        union.update(kwset.keywords)
    return frozenset(union)


def _variant(vocab: Vocabulary, keyword: str) -> str:
    bare = vocab.lookup(keyword) is not None
    # multi-word keywords have no space-prefixed variant
    prefixed = " " not in keyword and vocab.lookup(" " + keyword) is not None
    if bare and prefixed:
        return "both"
    if bare:
        return "bare"
    if prefixed:
        return "prefixed"
    return "none"


def coverage(
    vocab: Vocabulary,
    keyword_set: KeywordSet,
    match_mode: MatchMode = DEFAULT_MATCH_MODE,
) -> CoverageResult:
    """Fraction of a language's keywords present as single tokens."""
    detail = {kw: _variant(vocab, kw) for kw in keyword_set.keywords}
    if match_mode == MatchMode.BARE_ONLY:
        hits = {"bare", "both"}
    else:
        hits = {"bare", "both", "prefixed"}
    present = sum(1 for v in detail.values() if v in hits)
    missing = tuple(sorted(kw for kw, v in detail.items() if v not in hits))
    total = len(keyword_set)
    return CoverageResult(
        language=keyword_set.language,
        total=total,
        present=present,
        percentage=round(present / total * 100, 1),
        missing=missing,
        variant_detail=detail,
        match_mode=match_mode,
    )


def keyword_ranks(
    vocab: Vocabulary,
    keywords: frozenset[str] | set[str],
    sets: list[KeywordSet] | None = None,
) -> tuple[list[KeywordRankResult], RankSummary]:
    """Per-keyword vocabulary ranks plus mean/median of the minimum rank.

    Both the bare and the space-prefixed token are looked up for every
    keyword; the summary is computed over keywords with at least one form
    present. Raises EmptyPresence when nothing is present at all.
    """
    by_language: dict[str, list[str]] = {}
    if sets:
        for kwset in sets:
            for kw in kwset.keywords:
                by_language.setdefault(kw, []).append(kwset.language)

    results = []
    min_ranks = []
    for kw in sorted(keywords):
        rank_bare = vocab.lookup(kw)
        rank_prefixed = None if " " in kw else vocab.lookup(" " + kw)
        present = [r for r in (rank_bare, rank_prefixed) if r is not None]
        min_rank = min(present) if present else None
        if min_rank is not None:
            min_ranks.append(min_rank)
        results.append(
            KeywordRankResult(
                keyword=kw,
                languages=tuple(by_language.get(kw, ())),
                rank_bare=rank_bare,
                rank_prefixed=rank_prefixed,
                min_rank=min_rank,
            )
        )
    if not min_ranks:
        raise EmptyPresence(
            f"none of the {len(results)} keywords is present in {vocab.name!r}"
        )
    summary = RankSummary(
        present=len(min_ranks),
        total=len(results),
        mean_min_rank=statistics.mean(min_ranks),
        median_min_rank=float(statistics.median(min_ranks)),
    )
    return results, summary
