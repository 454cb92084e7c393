#!/usr/bin/env python3
"""Fetch the three public tokenizer files the reference analyses run against.

The Llama 3.1 base repository is gated on Hugging Face, so its vocabulary is
taken from DeepSeek-R1-Distill-Llama-8B, which ships the identical 128,000-entry
base vocabulary. Files are stored gzipped under tests/data/tokenizers/.
"""
from __future__ import annotations

import argparse
import gzip
import json
import sys
import urllib.request
from pathlib import Path

SOURCES = {
    "qwen25.json.gz": "Qwen/Qwen2.5-7B",
    "deepseek_r1.json.gz": "deepseek-ai/DeepSeek-R1",
    "llama31.json.gz": "deepseek-ai/DeepSeek-R1-Distill-Llama-8B",
}

DEFAULT_ENDPOINT = "https://huggingface.co"


def fetch(repo: str, endpoint: str) -> bytes:
    url = f"{endpoint}/{repo}/resolve/main/tokenizer.json"
    print(f"fetching {url}")
    with urllib.request.urlopen(url, timeout=120) as response:
        return response.read()


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--endpoint",
        default=DEFAULT_ENDPOINT,
        help="Hugging Face endpoint or mirror base URL",
    )
    parser.add_argument(
        "--dest",
        type=Path,
        default=Path(__file__).resolve().parent.parent / "tests" / "data" / "tokenizers",
        help="output directory",
    )
    args = parser.parse_args()
    args.dest.mkdir(parents=True, exist_ok=True)

    for filename, repo in SOURCES.items():
        raw = fetch(repo, args.endpoint.rstrip("/"))
        # sanity: must be a tokenizer.json with a model.vocab section
        doc = json.loads(raw)
        vocab_size = len(doc["model"]["vocab"])
        target = args.dest / filename
        with gzip.open(target, "wb", compresslevel=9) as out:
            out.write(raw)
        print(f"  -> {target} ({vocab_size} vocabulary entries)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
