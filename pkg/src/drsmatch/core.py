"""Core clause and form types: classification, variable kinds, structural validation.

A clausal form is a flat set of 3- or 4-token clauses.  The first token is
always a box (scope label); the second token decides the clause family:

  * operator   -- one of the fixed operator set (REF, NOT, IMP, TPR, ...)
  * role       -- a Capitalized token such as ``Agent`` or ``Theme``
  * concept    -- a lowercase lemma followed by a sense token (``hurt v.02``)
  * rel        -- an all-uppercase discourse relation such as ``CONTINUATION``

Variables never carry quotes; constants always do in the text format and are
stored unquoted with a flag here, so the variable ``now`` and the constant
``"now"`` never compare equal.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import ConstantInBoxPosition, UnknownTag, WrongArity

# Variable kinds, inferred from occurrence positions.
KIND_BOX = "box"
KIND_REFERENT = "referent"
KIND_DUAL = "dual"

# Operators taking exactly one argument after the box.
UNARY_OPS = frozenset({"REF", "NOT", "POS", "NEC", "DRS", "PRP"})
# Operators taking exactly two arguments after the box.
BINARY_BOX_OPS = frozenset({"IMP", "DIS"})
COMPARISON_OPS = frozenset({"EQU", "NEQ", "APX", "LES", "LEQ", "TPR", "TAB"})
OPERATORS = UNARY_OPS | BINARY_BOX_OPS | COMPARISON_OPS

# Operators whose arguments are themselves boxes.
BOX_ARG_OPS = frozenset({"NOT", "POS", "NEC", "DRS"}) | BINARY_BOX_OPS

_SENSE_SHAPE = re.compile(r"^[nvar]\.[0-9]+$")
_SENSE_STRICT = re.compile(r"^[nvar]\.[0-9]{2}$")
_ROLE_SHAPE = re.compile(r"^[A-Z][A-Za-z0-9-]*$")
_UPPER_SHAPE = re.compile(r"^[A-Z][A-Z0-9_-]*$")


@dataclass(frozen=True)
class Term:
    """One argument slot: a variable name or an (unquoted) constant."""

    text: str
    is_const: bool = False

    def token(self) -> str:
        return f'"{self.text}"' if self.is_const else self.text


@dataclass(frozen=True)
class ClauseTag:
    """Second-token classification of a clause.

    kind is one of {"operator", "role", "concept", "rel"}; concept tags also
    carry a sense (``n.01`` style).
    """

    kind: str
    name: str
    sense: str | None = None

    def tokens(self) -> tuple[str, ...]:
        if self.kind == "concept":
            return (self.name, self.sense or "")
        return (self.name,)


@dataclass(frozen=True)
class Clause:
    box: str
    tag: ClauseTag
    args: tuple[Term, ...]

    def tokens(self) -> tuple[str, ...]:
        return (self.box, *self.tag.tokens(), *(a.token() for a in self.args))

    def text(self) -> str:
        return " ".join(self.tokens())

    def variables(self) -> tuple[str, ...]:
        """All distinct variable names in this clause, box first."""
        seen = [self.box]
        for a in self.args:
            if not a.is_const and a.text not in seen:
                seen.append(a.text)
        return tuple(seen)


@dataclass(frozen=True, eq=False)
class ClausalForm:
    """An ordered, duplicate-free collection of clauses plus the variable table.

    Equality compares clauses and inferred kinds; doc_id and the record of
    collapsed duplicate lines are bookkeeping only.
    """

    clauses: tuple[Clause, ...]
    variables: dict[str, str]
    doc_id: str | None = None
    duplicates_removed: tuple[Clause, ...] = field(default=())

    def __eq__(self, other) -> bool:
        if not isinstance(other, ClausalForm):
            return NotImplemented
        return self.clauses == other.clauses and self.variables == other.variables

    def __len__(self) -> int:
        return len(self.clauses)


def _is_const_token(token: str) -> bool:
    return len(token) >= 2 and token.startswith('"') and token.endswith('"')


def _term(token: str) -> Term:
    if _is_const_token(token):
        return Term(token[1:-1], is_const=True)
    return Term(token)


def _require_var(token: str, what: str) -> str:
    if _is_const_token(token):
        raise ConstantInBoxPosition(f"constant {token} cannot fill the {what} position")
    return token


def classify_clause(tokens: list[str] | tuple[str, ...]) -> Clause:
    """Classify a 3- or 4-token clause line into a Clause.

    Tokens must be pre-split; constants keep their surrounding double quotes.
    Raises WrongArity, UnknownTag or ConstantInBoxPosition.
    """
    toks = tuple(tokens)
    if len(toks) < 3 or len(toks) > 4:
        raise WrongArity(f"clause must have 3 or 4 tokens, got {len(toks)}: {' '.join(toks)}")
    box = _require_var(toks[0], "box")
    head = toks[1]

    if head in OPERATORS:
        if head in UNARY_OPS:
            if len(toks) != 3:
                raise WrongArity(f"{head} takes exactly one argument: {' '.join(toks)}")
            if head in BOX_ARG_OPS:
                arg = Term(_require_var(toks[2], f"{head} box-argument"))
            else:
                arg = _term(toks[2])
            return Clause(box, ClauseTag("operator", head), (arg,))
        if head in BINARY_BOX_OPS:
            if len(toks) != 4:
                raise WrongArity(f"{head} takes exactly two arguments: {' '.join(toks)}")
            args = tuple(Term(_require_var(t, f"{head} box-argument")) for t in toks[2:])
            return Clause(box, ClauseTag("operator", head), args)
        # comparison operator over two terms
        if len(toks) != 4:
            raise WrongArity(f"{head} takes exactly two arguments: {' '.join(toks)}")
        return Clause(box, ClauseTag("operator", head), (_term(toks[2]), _term(toks[3])))

    if len(toks) == 4 and _SENSE_SHAPE.match(toks[2]) and head and not _is_const_token(head) \
            and not head[0].isupper():
        # concept: lowercase lemma + sense token + one term
        return Clause(box, ClauseTag("concept", head, toks[2]), (_term(toks[3]),))

    if _UPPER_SHAPE.match(head) and head == head.upper():
        # discourse relation; one or two box arguments both occur in the wild
        if len(toks) not in (3, 4):
            raise WrongArity(f"{head} takes one or two arguments: {' '.join(toks)}")
        args = tuple(Term(_require_var(t, f"{head} box-argument")) for t in toks[2:])
        return Clause(box, ClauseTag("rel", head), args)

    if _ROLE_SHAPE.match(head) and any(c.islower() for c in head):
        if len(toks) != 4:
            raise WrongArity(f"role {head} takes exactly two arguments: {' '.join(toks)}")
        return Clause(box, ClauseTag("role", head), (_term(toks[2]), _term(toks[3])))

    raise UnknownTag(f"cannot classify second token {head!r} in: {' '.join(toks)}")


def _box_positions(clause: Clause) -> list[str]:
    """Variables this clause uses in box positions (label or box-argument)."""
    out = [clause.box]
    if clause.tag.kind == "rel" or (
        clause.tag.kind == "operator" and clause.tag.name in BOX_ARG_OPS
    ):
        out.extend(a.text for a in clause.args if not a.is_const)
    return out


def _referent_positions(clause: Clause) -> list[str]:
    """Variables this clause uses in term/referent positions."""
    if clause.tag.kind == "rel" or (
        clause.tag.kind == "operator" and clause.tag.name in BOX_ARG_OPS
    ):
        return []
    return [a.text for a in clause.args if not a.is_const]


def infer_variable_kinds(clauses) -> dict[str, str]:
    """Derive each variable's kind from the positions it occupies.

    Box-only occurrences give KIND_BOX, term-only give KIND_REFERENT, both
    give KIND_DUAL (PRP referents that also label an embedded DRS).
    Order-independent by construction.
    """
    as_box: set[str] = set()
    as_ref: set[str] = set()
    for clause in clauses:
        as_box.update(_box_positions(clause))
        as_ref.update(_referent_positions(clause))
    kinds: dict[str, str] = {}
    for clause in clauses:
        for name in clause.variables():
            if name in kinds:
                continue
            if name in as_box and name in as_ref:
                kinds[name] = KIND_DUAL
            elif name in as_box:
                kinds[name] = KIND_BOX
            else:
                kinds[name] = KIND_REFERENT
    return kinds


def build_form(clauses, doc_id: str | None = None) -> ClausalForm:
    """Assemble a form: collapse duplicate clauses, infer variable kinds."""
    unique: list[Clause] = []
    seen: set[Clause] = set()
    dups: list[Clause] = []
    for clause in clauses:
        if clause in seen:
            dups.append(clause)
            continue
        seen.add(clause)
        unique.append(clause)
    kept = tuple(unique)
    return ClausalForm(kept, infer_variable_kinds(kept), doc_id, tuple(dups))


BASIC_CONDITION_KINDS = frozenset({"concept", "role"})


def is_basic_condition(clause: Clause) -> bool:
    """Concept, role and comparison clauses; the shapes that assert content."""
    if clause.tag.kind in BASIC_CONDITION_KINDS:
        return True
    return clause.tag.kind == "operator" and clause.tag.name in COMPARISON_OPS


@dataclass(frozen=True)
class ValidationIssue:
    code: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[ValidationIssue, ...]
    warnings: tuple[ValidationIssue, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_form(form: ClausalForm) -> ValidationReport:
    """Structural lint for one form; always returns a report, never raises."""
    violations: list[ValidationIssue] = []
    warnings: list[ValidationIssue] = []

    ref_declared = {
        c.args[0].text
        for c in form.clauses
        if c.tag.kind == "operator" and c.tag.name == "REF" and not c.args[0].is_const
    }
    labels = {c.box for c in form.clauses}

    for clause in form.clauses:
        if clause.tag.kind == "concept" and not _SENSE_STRICT.match(clause.tag.sense or ""):
            violations.append(
                ValidationIssue("malformed-sense", f"malformed sense {clause.tag.sense} in: {clause.text()}")
            )
        if is_basic_condition(clause):
            for term in clause.args:
                if term.is_const:
                    continue
                if form.variables.get(term.text) == KIND_BOX:
                    continue
                if term.text not in ref_declared:
                    violations.append(
                        ValidationIssue(
                            "undeclared-referent",
                            f"undeclared referent {term.text} in: {clause.text()}",
                        )
                    )

    for name, kind in form.variables.items():
        if kind == KIND_BOX and name not in labels:
            violations.append(
                ValidationIssue("empty-box", f"box {name} never labels a clause")
            )

    for clause in form.duplicates_removed:
        warnings.append(
            ValidationIssue("duplicate-clause", f"duplicate clause collapsed: {clause.text()}")
        )

    return ValidationReport(tuple(violations), tuple(warnings))
