#!/usr/bin/env python3
"""Run the tokenizer-level analyses on the three bundled vocabularies.

Prints keyword coverage (with the published percentages alongside),
special-character proportions, and the keyword rank summaries. Decompresses
the gzipped tokenizer files from tests/data/tokenizers/ into a scratch
directory first.
"""
from __future__ import annotations

import argparse
import gzip
import shutil
import sys
import tempfile
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO / "src"))

from tokscope import (  # noqa: E402
    coverage,
    keyword_ranks,
    keyword_union,
    load_keyword_sets,
    load_vocabulary,
    special_char_proportion,
)
from tokscope.datafiles import published_table  # noqa: E402

FILES = {
    "qwen2.5": ("qwen25.json.gz", "qwen25_coder_pct", "Qwen2.5"),
    "deepseek-r1": ("deepseek_r1.json.gz", "deepseek_r1_pct", "DeepSeek-V3"),
    "llama3.1": ("llama31.json.gz", "llama_pct", "Llama"),
}


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--tokenizers",
        type=Path,
        default=REPO / "tests" / "data" / "tokenizers",
        help="directory holding the gzipped tokenizer files",
    )
    args = parser.parse_args()

    sets = load_keyword_sets()
    union = keyword_union(sets)
    published_cov = {r["language"]: r for r in published_table("keyword_coverage")["rows"]}
    published_charset = {r["tokenizer"]: r for r in published_table("charset_proportions")["rows"]}

    with tempfile.TemporaryDirectory() as scratch:
        vocabs = {}
        for name, (filename, _, _) in FILES.items():
            src = args.tokenizers / filename
            if not src.exists():
                print(f"missing {src}; run scripts/fetch_tokenizers.py first")
                return 1
            dst = Path(scratch) / filename.removesuffix(".gz")
            with gzip.open(src, "rb") as fin, open(dst, "wb") as fout:
                shutil.copyfileobj(fin, fout)
            vocabs[name] = load_vocabulary(dst, name=name)

        print("== keyword coverage (computed vs published) ==")
        header = f"{'language':12s}" + "".join(f"{n:>28s}" for n in FILES)
        print(header)
        for kwset in sets:
            cells = []
            for name, (_, column, _) in FILES.items():
                result = coverage(vocabs[name], kwset)
                cells.append(
                    f"{result.present}/{result.total} = {result.percentage:5.1f}"
                    f" (pub {published_cov[kwset.language][column]:5.1f})"
                )
            print(f"{kwset.language:12s}" + "".join(f"{c:>28s}" for c in cells))

        print("\n== special-character proportions ==")
        for name, (_, _, charset_key) in FILES.items():
            result = special_char_proportion(vocabs[name])
            pub = published_charset[charset_key]
            print(
                f"{name:12s} {result.matching:7d}/{result.total} = {result.percentage:5.1f}%"
                f"  (published {pub['special_char_tokens']}/{pub['total_tokens']}"
                f" = {pub['percentage']}%)"
            )

        print("\n== keyword rank summaries over the union ==")
        for name, vocab in vocabs.items():
            _, summary = keyword_ranks(vocab, union, sets)
            print(
                f"{name:12s} present {summary.present}/{summary.total}"
                f"  mean min-rank {summary.mean_min_rank:9.1f}"
                f"  median {summary.median_min_rank:9.1f}"
            )
    return 0


if __name__ == "__main__":
    sys.exit(main())
