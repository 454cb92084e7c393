"""Exception types raised by the analysis modules."""


class TokscopeError(Exception):
    """Base class for all tokscope errors."""


# vocabulary loading / decoding

class MalformedVocabulary(TokscopeError):
    """Vocabulary file is unparseable or violates basic invariants."""


class UnsupportedFormat(TokscopeError):
    """Vocabulary file is valid JSON but not a recognized layout."""


class UnknownCodepoint(TokscopeError):
    """Surface contains a codepoint outside the 256-codepoint byte alphabet."""


class UnknownToken(TokscopeError):
    """Token id is not part of the vocabulary."""


# keyword datasets

class MissingDataset(TokscopeError):
    """A bundled or user-supplied keyword dataset file is absent."""


class CardinalityMismatch(TokscopeError):
    """A keyword dataset has a different size than its expected count."""


class EmptyPresence(TokscopeError):
    """No keyword from the requested set is present in the vocabulary."""


# cold-start distributions

class SchemaViolation(TokscopeError):
    """Dump file does not conform to the coldstart-dump/1 schema."""


class VocabMismatch(TokscopeError):
    """Dump declares a vocabulary size different from the loaded vocabulary."""


class MassViolation(TokscopeError):
    """Total probability mass is outside the accepted tolerance around 1."""


class OutOfRangeProbability(TokscopeError):
    """A probability entry lies outside [0, 1]."""


class NoKeywordTokens(TokscopeError):
    """Vocabulary contains no keyword-classified token ids."""


class NonPositiveTemperature(TokscopeError):
    """Temperature must be strictly positive."""


class SparseDistribution(TokscopeError):
    """Operation requires a dense distribution (zero residual mass)."""


# comparisons

class ManifestError(TokscopeError):
    """Model manifest is malformed or references unreadable files."""


class InsufficientRows(TokscopeError):
    """Not enough rows to run the requested aggregation."""
