"""tokscope: tokenizer vocabulary analysis and cold-start token-probability metrics."""

__version__ = "0.1.0"

from .charset import CharsetResult, SymbolSet, default_symbol_set, special_char_proportion
from .coldstart import (
    ColdStartDistribution,
    FormattingProbs,
    MetricsReport,
    apply_temperature,
    compute_kap,
    compute_nlp,
    compute_pkp,
    compute_stp,
    formatting_probs,
    load_distribution,
    metrics_report,
    top_k_by_class,
    validate_dump,
)
from .compare import (
    ComparisonTable,
    DeltaReport,
    ManifestEntry,
    ModelManifest,
    SweepSummary,
    distillation_delta,
    load_manifest,
    quantization_sweep,
    run_comparison,
)
from .keywords import (
    CoverageResult,
    KeywordRankResult,
    KeywordSet,
    MatchMode,
    RankSummary,
    coverage,
    keyword_ranks,
    keyword_union,
    load_keyword_sets,
)
from .vocab import (
    ByteCodec,
    ClassIndex,
    TokenClass,
    Vocabulary,
    byte_level_codec,
    class_index,
    classify_token,
    decode_surface,
    load_vocabulary,
    rank_of,
)

__all__ = [
    "ByteCodec",
    "CharsetResult",
    "ClassIndex",
    "ColdStartDistribution",
    "ComparisonTable",
    "CoverageResult",
    "DeltaReport",
    "FormattingProbs",
    "KeywordRankResult",
    "KeywordSet",
    "ManifestEntry",
    "MatchMode",
    "MetricsReport",
    "ModelManifest",
    "RankSummary",
    "SweepSummary",
    "SymbolSet",
    "TokenClass",
    "Vocabulary",
    "apply_temperature",
    "byte_level_codec",
    "class_index",
    "classify_token",
    "compute_kap",
    "compute_nlp",
    "compute_pkp",
    "compute_stp",
    "coverage",
    "decode_surface",
    "default_symbol_set",
    "distillation_delta",
    "formatting_probs",
    "keyword_ranks",
    "keyword_union",
    "load_distribution",
    "load_keyword_sets",
    "load_manifest",
    "load_vocabulary",
    "metrics_report",
    "quantization_sweep",
    "rank_of",
    "run_comparison",
    "special_char_proportion",
    "top_k_by_class",
    "validate_dump",
]
