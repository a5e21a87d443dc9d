"""Plain-text clausal-form parsing and serialization.

File format: one clause per line, tokens separated by runs of spaces or tabs,
constants in double quotes (no escapes), ``%`` starts a comment outside
quotes.  Corpus files hold several documents separated by blank lines; a
comment line ``% id: <doc_id>`` immediately before a document names it.
"""

from __future__ import annotations

import json
import logging
import re
from dataclasses import dataclass

from .core import ClausalForm, build_form, classify_clause
from .errors import ClauseError, DuplicateDocId, ParseError

log = logging.getLogger(__name__)

_ID_COMMENT = re.compile(r"^%\s*id:\s*(\S+)\s*$")


@dataclass(frozen=True)
class CorpusDocument:
    doc_id: str
    form: ClausalForm
    source_lines: tuple[int, int]  # 1-based inclusive span of clause lines
    explicit_id: bool = False


def tokenize_line(line: str, lineno: int | None = None, source: str | None = None) -> list[str]:
    """Split one clause line into tokens, honouring quotes and % comments."""
    tokens: list[str] = []
    buf: list[str] = []
    in_quote = False
    for ch in line:
        if in_quote:
            buf.append(ch)
            if ch == '"':
                in_quote = False
        elif ch == "%":
            break
        elif ch in (" ", "\t"):
            if buf:
                tokens.append("".join(buf))
                buf = []
        elif ch == '"':
            if buf:
                raise ParseError(f"stray quote inside token near {''.join(buf)!r}", lineno, source)
            buf.append(ch)
            in_quote = True
        else:
            if buf and buf[0] == '"':
                raise ParseError(f"text after closing quote near {''.join(buf)!r}", lineno, source)
            buf.append(ch)
    if in_quote:
        raise ParseError("unbalanced quote", lineno, source)
    if buf:
        tokens.append("".join(buf))
    return tokens


def _parse_lines(numbered_lines, doc_id: str | None, source: str | None) -> ClausalForm:
    clauses = []
    for lineno, line in numbered_lines:
        tokens = tokenize_line(line, lineno, source)
        if not tokens:
            continue
        if len(tokens) < 3 or len(tokens) > 4:
            raise ParseError(f"expected 3 or 4 tokens, got {len(tokens)}", lineno, source)
        try:
            clauses.append(classify_clause(tokens))
        except ClauseError as exc:
            raise ParseError(str(exc), lineno, source) from exc
    form = build_form(clauses, doc_id)
    for clause in form.duplicates_removed:
        log.warning(
            "%s: duplicate clause collapsed: %s", doc_id or source or "<text>", clause.text()
        )
    return form


def parse_document(text: str, doc_id: str | None = None, source: str | None = None) -> ClausalForm:
    """Parse one document's clausal form from text."""
    return _parse_lines(enumerate(text.splitlines(), start=1), doc_id, source)


def parse_corpus(text: str, source: str | None = None) -> list[CorpusDocument]:
    """Parse a multi-document file into CorpusDocuments, order preserved."""
    docs: list[CorpusDocument] = []
    block: list[tuple[int, str]] = []
    pending_id: str | None = None

    def flush() -> None:
        nonlocal block, pending_id
        if not block:
            pending_id = None
            return
        explicit = pending_id is not None
        doc_id = pending_id if explicit else str(len(docs) + 1)
        try:
            form = _parse_lines(block, doc_id, source)
        except ParseError as exc:
            raise ParseError(
                f"document {len(docs) + 1}: {Exception.__str__(exc)}", exc.line, exc.source
            ) from exc
        docs.append(CorpusDocument(doc_id, form, (block[0][0], block[-1][0]), explicit))
        block = []
        pending_id = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        id_match = _ID_COMMENT.match(stripped)
        if id_match and not block:
            pending_id = id_match.group(1)
            continue
        if not stripped:
            flush()
            continue
        if tokenize_line(raw, lineno, source):
            block.append((lineno, raw))
    flush()

    seen: dict[str, int] = {}
    for pos, doc in enumerate(docs):
        if doc.doc_id in seen:
            raise DuplicateDocId(
                f"documents {seen[doc.doc_id] + 1} and {pos + 1} share id {doc.doc_id!r}"
            )
        seen[doc.doc_id] = pos
    return docs


def serialize_form(form: ClausalForm) -> str:
    """Render a form back to text; one clause per line, constants re-quoted."""
    return "".join(clause.text() + "\n" for clause in form.clauses)


def serialize_corpus(docs) -> str:
    """Render documents with ``% id:`` headers, blank-line separated."""
    chunks = []
    for doc in docs:
        if isinstance(doc, CorpusDocument):
            doc_id, form = doc.doc_id, doc.form
        else:
            form = doc
            doc_id = form.doc_id
        header = f"% id: {doc_id}\n" if doc_id is not None else ""
        chunks.append(header + serialize_form(form))
    return "\n".join(chunks)


def form_to_json_obj(form: ClausalForm) -> dict:
    """JSON-ready view of one form: doc_id plus an array of token arrays."""
    return {
        "doc_id": form.doc_id,
        "clauses": [list(clause.tokens()) for clause in form.clauses],
    }


def corpus_to_json(docs: list[CorpusDocument]) -> str:
    return json.dumps([form_to_json_obj(d.form) for d in docs], ensure_ascii=False, indent=2)
