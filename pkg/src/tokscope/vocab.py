"""Tokenizer vocabulary loading, byte-level surface decoding, and token classification.

Byte-level BPE vocabularies store every token as a printable text surface
produced by a fixed bijection between the 256 byte values and 256 codepoints
(space -> "Ġ", newline -> "Ċ", ...). This module builds that codec,
loads vocabularies from the two common JSON layouts, and classifies decoded
tokens into the categories the cold-start metrics sum over.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from .errors import (
    MalformedVocabulary,
    UnknownCodepoint,
    UnknownToken,
    UnsupportedFormat,
)

# Bytes that count as whitespace for the Formatting class.
WHITESPACE_BYTES = frozenset(b" \t\n\r")

# If more than this fraction of surfaces fails strict byte-level decoding,
# the vocabulary is treated as plain text and decoded by identity.
IDENTITY_FALLBACK_THRESHOLD = 0.01

VOCAB_FORMATS = ("auto", "tokenizer_json", "vocab_json")


def _byte_alphabet() -> dict[int, str]:
    """Map every byte to its surface codepoint.

    Printable ASCII ('!'..'~') and the Latin-1 blocks 0xA1-0xAC and 0xAE-0xFF
    keep their own codepoints; the remaining 68 bytes (controls, space, DEL,
    0xAD) are assigned 256+k in ascending byte order.
    """
    keep = (
        list(range(ord("!"), ord("~") + 1))
        + list(range(0xA1, 0xAC + 1))
        + list(range(0xAE, 0xFF + 1))
    )
    table = {b: chr(b) for b in keep}
    shifted = 0
    for b in range(256):
        if b not in table:
            table[b] = chr(256 + shifted)
            shifted += 1
    return table


@dataclass(frozen=True)
class ByteCodec:
    """Bijection between raw bytes and the byte-level surface alphabet."""

    forward: dict[int, str]
    inverse: dict[str, int]

    def encode(self, data: bytes) -> str:
        """Raw bytes -> surface text."""
        fwd = self.forward
        return "".join(fwd[b] for b in data)

    def decode(self, surface: str) -> bytes:
        """Surface text -> raw bytes; UnknownCodepoint if outside the alphabet."""
        inv = self.inverse
        try:
            return bytes(inv[ch] for ch in surface)
        except KeyError as exc:
            raise UnknownCodepoint(
                f"codepoint {exc.args[0]!r} is not part of the byte-level alphabet"
            ) from None


def byte_level_codec() -> ByteCodec:
    forward = _byte_alphabet()
    return ByteCodec(forward=forward, inverse={v: k for k, v in forward.items()})


DEFAULT_CODEC = byte_level_codec()


def decode_surface(surface: str, codec: ByteCodec | None = None) -> bytes:
    """Decode one byte-level surface into its raw byte string."""
    return (codec or DEFAULT_CODEC).decode(surface)


class TokenClass(str, Enum):
    PROGRAMMING_KEYWORD = "programming_keyword"
    SPECIAL_TOKEN = "special_token"
    NATURAL_WORD = "natural_word"
    FORMATTING = "formatting"
    OTHER = "other"


@dataclass(frozen=True)
class Vocabulary:
    """Immutable token_id -> surface map plus decoded byte forms.

    `entries` holds the base vocabulary only; `added_ids` marks control/added
    token ids declared by the file (they may or may not overlap `entries`).
    `fallback_ids` are entries whose surface failed strict byte-level decoding
    and was kept verbatim (UTF-8 bytes of the surface).
    """

    name: str
    entries: dict[int, str]
    decoded: dict[int, bytes]
    added_ids: frozenset[int]
    fallback_ids: frozenset[int]
    identity_mode: bool
    surface_ids: dict[str, int] = field(compare=False, repr=False)

    @property
    def size(self) -> int:
        return len(self.entries)

    def __contains__(self, token_id: int) -> bool:
        return token_id in self.entries

    def decoded_text(self, token_id: int, errors: str = "replace") -> str:
        return self.decoded[token_id].decode("utf-8", errors)

    def encode_text(self, text: str) -> str:
        """Text -> the surface it would have in this vocabulary's encoding."""
        if self.identity_mode:
            return text
        return DEFAULT_CODEC.encode(text.encode("utf-8"))

    def lookup(self, text: str) -> int | None:
        """Token id whose decoded form equals `text`, or None."""
        return self.surface_ids.get(self.encode_text(text))


def rank_of(token_id: int, vocab: Vocabulary) -> int:
    """Vocabulary rank of a token; lower rank means earlier merge / higher frequency.

    The file's token id is the only positional information available, so
    rank == token_id.
    """
    if token_id not in vocab.entries:
        raise UnknownToken(f"token id {token_id} not in vocabulary {vocab.name!r}")
    return token_id


def _read_json(path: Path):
    def reject_duplicate_keys(pairs):
        obj = {}
        for key, value in pairs:
            if key in obj:
                raise MalformedVocabulary(f"duplicate surface {key!r} in {path}")
            obj[key] = value
        return obj

    try:
        text = path.read_text(encoding="utf-8")
    except IsADirectoryError as exc:
        raise MalformedVocabulary(f"{path} is a directory") from exc
    try:
        return json.loads(text, object_pairs_hook=reject_duplicate_keys)
    except json.JSONDecodeError as exc:
        raise MalformedVocabulary(f"{path} is not valid JSON: {exc}") from exc


def _extract_vocab(doc, path: Path, format_hint: str):
    if format_hint not in VOCAB_FORMATS:
        raise ValueError(f"format_hint must be one of {VOCAB_FORMATS}")
    if format_hint == "auto":
        if isinstance(doc, dict) and "model" in doc:
            format_hint = "tokenizer_json"
        else:
            format_hint = "vocab_json"

    if format_hint == "tokenizer_json":
        model = doc.get("model") if isinstance(doc, dict) else None
        if not isinstance(model, dict) or not isinstance(model.get("vocab"), dict):
            raise UnsupportedFormat(f"{path} has no model.vocab object")
        raw_added = doc.get("added_tokens", [])
        added_ids = set()
        if isinstance(raw_added, list):
            for item in raw_added:
                if isinstance(item, dict) and isinstance(item.get("id"), int):
                    added_ids.add(item["id"])
        return model["vocab"], frozenset(added_ids)

    if not isinstance(doc, dict):
        raise UnsupportedFormat(f"{path} is not a JSON object")
    return doc, frozenset()


def load_vocabulary(
    path: str | Path,
    format_hint: str = "auto",
    name: str | None = None,
) -> Vocabulary:
    """Load a vocabulary from a tokenizer.json or flat vocab.json file.

    Surfaces are decoded through the byte-level codec; surfaces outside the
    alphabet fall back to their verbatim UTF-8 bytes. If more than
    IDENTITY_FALLBACK_THRESHOLD of surfaces fail, the whole vocabulary is
    assumed not to be byte-level encoded and decoded by identity.
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"vocabulary file not found: {path}")
    codec = DEFAULT_CODEC

    raw_vocab, added_ids = _extract_vocab(_read_json(path), path, format_hint)

    pairs = []
    seen_ids = set()
    for surface, token_id in raw_vocab.items():
        if not isinstance(surface, str) or not surface:
            raise MalformedVocabulary(f"empty or non-string surface in {path}")
        if isinstance(token_id, bool) or not isinstance(token_id, int) or token_id < 0:
            raise MalformedVocabulary(
                f"token id for {surface!r} must be a non-negative integer, got {token_id!r}"
            )
        if token_id in seen_ids:
            raise MalformedVocabulary(f"duplicate token id {token_id} in {path}")
        seen_ids.add(token_id)
        pairs.append((token_id, surface))
    if not pairs:
        raise MalformedVocabulary(f"{path} contains no tokens")
    pairs.sort()

    decoded: dict[int, bytes] = {}
    fallback = []
    for token_id, surface in pairs:
        try:
            decoded[token_id] = codec.decode(surface)
        except UnknownCodepoint:
            decoded[token_id] = surface.encode("utf-8")
            fallback.append(token_id)

    identity_mode = len(fallback) / len(pairs) > IDENTITY_FALLBACK_THRESHOLD
    if identity_mode:
        decoded = {tid: surface.encode("utf-8") for tid, surface in pairs}
        fallback = list(decoded)

    return Vocabulary(
        name=name or path.stem,
        entries=dict(pairs),
        decoded=decoded,
        added_ids=added_ids,
        fallback_ids=frozenset(fallback),
        identity_mode=identity_mode,
        surface_ids={surface: tid for tid, surface in pairs},
    )


def _max_alnum_run(text: str) -> int:
    run = best = 0
    for ch in text:
        if ch.isalnum():
            run += 1
            if run > best:
                best = run
        else:
            run = 0
    return best


def _classify_decoded(
    raw: bytes,
    text: str,
    keyword_union: frozenset[str] | set[str],
    natural_words: frozenset[str] | set[str],
    symbol_set: frozenset[str] | set[str],
) -> frozenset[TokenClass]:
    classes = set()

    stripped = text[1:] if text.startswith(" ") else text
    if stripped in keyword_union:
        classes.add(TokenClass.PROGRAMMING_KEYWORD)
    if stripped.lower() in natural_words:
        classes.add(TokenClass.NATURAL_WORD)

    if raw and all(b in WHITESPACE_BYTES for b in raw):
        # whitespace-only tokens are formatting and, by definition, special
        classes.add(TokenClass.FORMATTING)
        classes.add(TokenClass.SPECIAL_TOKEN)
    elif TokenClass.PROGRAMMING_KEYWORD not in classes:
        if any(ch in symbol_set for ch in text) and _max_alnum_run(text) <= 2:
            classes.add(TokenClass.SPECIAL_TOKEN)

    if not classes:
        classes.add(TokenClass.OTHER)
    return frozenset(classes)


def classify_token(
    token_id: int,
    vocab: Vocabulary,
    keyword_union: frozenset[str] | set[str],
    natural_words: frozenset[str] | set[str],
    symbol_set: frozenset[str] | set[str],
) -> frozenset[TokenClass]:
    """Classes of one token. Added/control tokens never join a metric class."""
    if token_id not in vocab.entries:
        raise UnknownToken(f"token id {token_id} not in vocabulary {vocab.name!r}")
    if token_id in vocab.added_ids:
        return frozenset((TokenClass.OTHER,))
    return _classify_decoded(
        vocab.decoded[token_id],
        vocab.decoded_text(token_id),
        keyword_union,
        natural_words,
        symbol_set,
    )


@dataclass(frozen=True)
class ClassIndex:
    """Per-class token id sets for one vocabulary, computed in a single scan."""

    keyword_ids: frozenset[int]
    special_ids: frozenset[int]
    natural_ids: frozenset[int]
    formatting_ids: frozenset[int]


def class_index(
    vocab: Vocabulary,
    keyword_union: frozenset[str] | set[str],
    natural_words: frozenset[str] | set[str],
    symbol_set: frozenset[str] | set[str],
) -> ClassIndex:
    keyword_ids, special_ids, natural_ids, formatting_ids = [], [], [], []
    added = vocab.added_ids
    for token_id, raw in vocab.decoded.items():
        if token_id in added:
            continue
        classes = _classify_decoded(
            raw, raw.decode("utf-8", "replace"), keyword_union, natural_words, symbol_set
        )
        if TokenClass.PROGRAMMING_KEYWORD in classes:
            keyword_ids.append(token_id)
        if TokenClass.SPECIAL_TOKEN in classes:
            special_ids.append(token_id)
        if TokenClass.NATURAL_WORD in classes:
            natural_ids.append(token_id)
        if TokenClass.FORMATTING in classes:
            formatting_ids.append(token_id)
    return ClassIndex(
        keyword_ids=frozenset(keyword_ids),
        special_ids=frozenset(special_ids),
        natural_ids=frozenset(natural_ids),
        formatting_ids=frozenset(formatting_ids),
    )
