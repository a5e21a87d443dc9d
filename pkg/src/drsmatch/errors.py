"""Exception types shared across the toolkit."""

from __future__ import annotations


class DrsMatchError(Exception):
    """Base class for all toolkit errors."""


class ClauseError(DrsMatchError):
    """A token list cannot be classified as a clause."""


class WrongArity(ClauseError):
    """Clause length does not fit the arity of its tag."""


class UnknownTag(ClauseError):
    """Second token is neither an operator, a role, a relation, nor part of a concept."""


class ConstantInBoxPosition(ClauseError):
    """A quoted constant appears where a box variable is required."""


class ParseError(DrsMatchError):
    """Malformed clausal-form or PENMAN text.

    `line` is 1-based within the parsed text; `source` names the file when known.
    """

    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        self.line = line
        self.source = source
        super().__init__(message)

    def __str__(self) -> str:
        prefix = ""
        if self.source is not None:
            prefix += f"{self.source}:"
        if self.line is not None:
            prefix += f"{self.line}:"
        base = super().__str__()
        return f"{prefix} {base}" if prefix else base


class DuplicateDocId(DrsMatchError):
    """Two documents in one corpus carry the same id."""


class InvalidMapping(DrsMatchError):
    """A variable mapping is not injective, not kind-respecting, or names unknown variables."""


class InvalidCounts(DrsMatchError):
    """Matched-clause count exceeds one of the form sizes."""


class TooLarge(DrsMatchError):
    """Input exceeds the exact matcher's variable guard."""


class BudgetExceeded(DrsMatchError):
    """Exact search ran out of nodes; `best` holds the (possibly sub-optimal) incumbent."""

    def __init__(self, message: str, best=None):
        self.best = best
        super().__init__(message)


class UnmappedRelation(DrsMatchError):
    """An AMR relation has no dictionary entry under the fail policy."""


class CorpusTooSmall(DrsMatchError):
    """Baseline selection needs at least two documents."""


class PairingError(DrsMatchError):
    """Two corpora cannot be paired document-by-document."""
