"""Pre-matching normalization: disjoint renaming and redundant-REF removal."""

from __future__ import annotations

from dataclasses import dataclass

from .core import Clause, ClausalForm, Term, build_form, is_basic_condition


@dataclass(frozen=True)
class RenamingTable:
    """Bijective old-name to new-name map produced by standardize_variables."""

    mapping: dict[str, str]
    prefix: str

    def inverse(self) -> dict[str, str]:
        return {new: old for old, new in self.mapping.items()}


def _substitute(clause: Clause, table: dict[str, str]) -> Clause:
    args = tuple(
        a if a.is_const else Term(table.get(a.text, a.text)) for a in clause.args
    )
    return Clause(table.get(clause.box, clause.box), clause.tag, args)


def rename_variables(form: ClausalForm, table: dict[str, str]) -> ClausalForm:
    """Apply an explicit old-to-new rename; names absent from the table stay."""
    return build_form((_substitute(c, table) for c in form.clauses), form.doc_id)


def standardize_variables(form: ClausalForm, prefix: str) -> tuple[ClausalForm, RenamingTable]:
    """Rename every variable to ``<prefix><k>`` in first-occurrence order.

    Kinds and clause order are preserved; the table is bijective on the
    form's variables.
    """
    if not prefix:
        raise ValueError("prefix must be non-empty")
    table: dict[str, str] = {}
    for clause in form.clauses:
        for name in clause.variables():
            if name not in table:
                table[name] = f"{prefix}{len(table)}"
    return rename_variables(form, table), RenamingTable(table, prefix)


def remove_redundant_refs(form: ClausalForm) -> ClausalForm:
    """Drop REF clauses whose referent occurs in a basic condition of the same box.

    A REF declared in one box and used only inside another (e.g. under
    negation) is kept.  Idempotent; never touches non-REF clauses.
    """
    used_in_box: set[tuple[str, str]] = set()
    for clause in form.clauses:
        if is_basic_condition(clause):
            for term in clause.args:
                if not term.is_const:
                    used_in_box.add((clause.box, term.text))

    kept = []
    for clause in form.clauses:
        if (
            clause.tag.kind == "operator"
            and clause.tag.name == "REF"
            and not clause.args[0].is_const
            and (clause.box, clause.args[0].text) in used_in_box
        ):
            continue
        kept.append(clause)
    if len(kept) == len(form.clauses):
        return form
    return build_form(kept, form.doc_id)
