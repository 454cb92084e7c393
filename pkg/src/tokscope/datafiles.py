"""Access to the bundled datasets (keyword lists, word list, symbol set, published tables)."""

from __future__ import annotations

import json
import os
from pathlib import Path

ENV_DATA_DIR = "TOKSCOPE_DATA_DIR"

_BUNDLED = Path(__file__).parent / "data"

_ESCAPES = {"\\t": "\t", "\\n": "\n", "\\r": "\r", "\\\\": "\\"}


def data_dir() -> Path:
    """Bundled data directory, overridable via TOKSCOPE_DATA_DIR."""
    override = os.environ.get(ENV_DATA_DIR)
    return Path(override) if override else _BUNDLED


def keywords_dir() -> Path:
    return data_dir() / "keywords"


def read_lines(path: Path) -> list[str]:
    """Non-empty, non-comment lines of a dataset file."""
    lines = []
    for line in path.read_text(encoding="utf-8").splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        lines.append(line.rstrip("\n"))
    return lines


def natural_words(path: Path | None = None) -> frozenset[str]:
    """Bundled common-word list, lowercased for case-insensitive matching."""
    path = path or data_dir() / "natural_words.txt"
    return frozenset(word.strip().lower() for word in read_lines(path))


def symbol_characters(path: Path | None = None) -> frozenset[str]:
    """Bundled symbol list: one character per line, \\t and \\n escapes honored.

    A line that is exactly "#" is the hash symbol; longer "#"-prefixed lines
    are comments.
    """
    path = path or data_dir() / "symbols.txt"
    chars = set()
    for line in path.read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        if line.startswith("#") and line != "#":
            continue
        token = _ESCAPES.get(line, line)
        if len(token) != 1:
            raise ValueError(f"symbol file line {line!r} is not a single character")
        chars.add(token)
    return frozenset(chars)


def published_table(name: str) -> dict:
    """One of the bundled published-results tables (JSON)."""
    path = _BUNDLED / "published" / f"{name}.json"
    if not path.exists():
        available = sorted(p.stem for p in (_BUNDLED / "published").glob("*.json"))
        raise FileNotFoundError(f"no published table {name!r}; available: {available}")
    return json.loads(path.read_text(encoding="utf-8"))


def published_table_names() -> list[str]:
    return sorted(p.stem for p in (_BUNDLED / "published").glob("*.json"))
