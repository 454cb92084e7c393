"""Proportion of vocabulary tokens containing programming-specific characters."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from . import datafiles
from .vocab import Vocabulary


@dataclass(frozen=True)
class SymbolSet:
    """Characters that count as programming symbols (brackets, operators, ...)."""

    characters: frozenset[str]

    def __post_init__(self):
        if not self.characters:
            raise ValueError("symbol set must not be empty")
        for ch in self.characters:
            if len(ch) != 1:
                raise ValueError(f"symbol {ch!r} is not a single character")
            if ch.isalnum():
                raise ValueError(f"symbol set must not contain alphanumerics ({ch!r})")
            if ch == " ":
                raise ValueError("symbol set must not contain the plain space")

    def __contains__(self, ch: str) -> bool:
        return ch in self.characters

    def __len__(self) -> int:
        return len(self.characters)


def default_symbol_set() -> SymbolSet:
    return SymbolSet(datafiles.symbol_characters())


def load_symbol_set(path: str | Path) -> SymbolSet:
    return SymbolSet(datafiles.symbol_characters(Path(path)))


@dataclass(frozen=True)
class CharsetResult:
    vocab_name: str
    matching: int
    total: int
    percentage: float


def special_char_proportion(
    vocab: Vocabulary, symbols: SymbolSet | None = None
) -> CharsetResult:
    """Count tokens whose decoded form contains at least one symbol character.

    Added/control tokens are not counted as matching; the total is the full
    vocabulary size.
    """
    symbols = symbols or default_symbol_set()
    chars = symbols.characters
    added = vocab.added_ids
    matching = 0
    for token_id, raw in vocab.decoded.items():
        if token_id in added:
            continue
        text = raw.decode("utf-8", "replace")
        if any(ch in chars for ch in text):
            matching += 1
    total = vocab.size
    return CharsetResult(
        vocab_name=vocab.name,
        matching=matching,
        total=total,
        percentage=round(matching / total * 100, 1),
    )
