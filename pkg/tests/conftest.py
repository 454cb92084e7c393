import gzip
import json
import shutil
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "ci",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture],
)
settings.load_profile("ci")

TESTS_DIR = Path(__file__).parent
FIXTURES = TESTS_DIR / "data" / "fixtures"
TOKENIZERS = TESTS_DIR / "data" / "tokenizers"

# bundled gzipped copies of the three public tokenizer files
REAL_TOKENIZERS = {
    "qwen2.5": "qwen25.json.gz",
    "deepseek-r1": "deepseek_r1.json.gz",
    "llama3.1": "llama31.json.gz",
}


@pytest.fixture(scope="session")
def real_vocab_paths(tmp_path_factory) -> dict[str, Path]:
    """Decompress the bundled tokenizer files once per session."""
    out = tmp_path_factory.mktemp("tokenizers")
    paths = {}
    for name, filename in REAL_TOKENIZERS.items():
        src = TOKENIZERS / filename
        if not src.exists():
            pytest.fail(
                f"bundled tokenizer file missing: {src} "
                "(run scripts/fetch_tokenizers.py to restore it)"
            )
        dst = out / filename.removesuffix(".gz")
        with gzip.open(src, "rb") as fin, open(dst, "wb") as fout:
            shutil.copyfileobj(fin, fout)
        paths[name] = dst
    return paths


@pytest.fixture(scope="session")
def real_vocabs(real_vocab_paths):
    from tokscope import load_vocabulary

    return {
        name: load_vocabulary(path, name=name)
        for name, path in real_vocab_paths.items()
    }


@pytest.fixture(scope="session")
def bundle():
    """Default analysis configuration: keyword sets, union, words, symbols."""
    from tokscope import default_symbol_set, keyword_union, load_keyword_sets
    from tokscope.datafiles import natural_words

    sets = load_keyword_sets()
    return {
        "sets": sets,
        "union": keyword_union(sets),
        "words": natural_words(),
        "symbols": default_symbol_set(),
    }


@pytest.fixture
def tiny_vocab():
    from tokscope import load_vocabulary

    return load_vocabulary(FIXTURES / "tiny_vocab.json", name="tiny")


def make_vocab_file(
    directory: Path, mapping: dict[str, int], added=None, flat=False, name="vocab.json"
) -> Path:
    """Write a throwaway vocabulary file and return its path."""
    path = directory / name
    if flat:
        doc = mapping
    else:
        doc = {"model": {"type": "BPE", "vocab": mapping}}
        if added is not None:
            doc["added_tokens"] = [
                {"id": tid, "content": content} for content, tid in added.items()
            ]
    path.write_text(json.dumps(doc, ensure_ascii=False), encoding="utf-8")
    return path


def make_dump_file(
    directory: Path,
    probs: dict[int, float | str],
    vocab_size: int,
    model_id: str = "fixture",
    dense: bool = True,
    temperature: float = 1.0,
    name: str = "dump.json",
) -> Path:
    path = directory / name
    doc = {
        "schema": "coldstart-dump/1",
        "model_id": model_id,
        "vocab_size": vocab_size,
        "temperature": temperature,
        "dense": dense,
        "entries": [{"id": tid, "p": probs[tid]} for tid in sorted(probs)],
    }
    path.write_text(json.dumps(doc), encoding="utf-8")
    return path
