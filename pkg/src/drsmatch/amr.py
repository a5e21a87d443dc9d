"""Rule-based conversion of AMR graphs (PENMAN notation) to DRS clausal forms.

Each graph node becomes one discourse referent with a REF clause and a
concept clause; each relation becomes a role clause looked up in a
translation dictionary.  Because AMRs carry no tense, four past-tense
clauses are injected for the first verb-like node.  Verb-like concepts
(``lemma-NN``) default to sense v.01, everything else to n.01, unless the
dictionary says otherwise.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field

from .core import Clause, ClausalForm, ClauseTag, Term, build_form
from .errors import ParseError, UnmappedRelation

log = logging.getLogger(__name__)

_VERB_CONCEPT = re.compile(r"^(.+)-(\d{2,})$")
_ARG_REL = re.compile(r"^:ARG\d+$")
_ARG_OF_REL = re.compile(r"^:ARG\d+-of$")
_SENSE = re.compile(r"^[nvar]\.[0-9]{2}$")
_ROLE_NAME = re.compile(r"^[A-Z][A-Za-z0-9-]*$")

SKIP = "skip"
FAIL = "fail"


@dataclass(frozen=True)
class AmrEdge:
    source: str
    relation: str
    target: str
    target_is_node: bool


@dataclass(frozen=True)
class AmrGraph:
    root: str
    nodes: dict[str, str]  # id -> concept, document order
    edges: tuple[AmrEdge, ...]


_TOKEN = re.compile(r"\(|\)|/|\"[^\"]*\"|[^\s()/\"]+")


def _tokenize_penman(text: str) -> list[str]:
    tokens = _TOKEN.findall(text)
    leftover = _TOKEN.sub("", text).strip()
    if leftover:
        raise ParseError(f"unparseable characters {leftover[:20]!r} in graph text")
    return tokens


def parse_penman(text: str) -> AmrGraph:
    """Parse one parenthesized PENMAN expression into an AmrGraph.

    Re-entrant references to declared node ids are allowed (also forward);
    quoted strings and bare non-id symbols become constants.
    """
    tokens = _tokenize_penman(text)
    if not tokens:
        raise ParseError("empty graph text")
    pos = 0
    nodes: dict[str, str] = {}
    raw_edges: list[tuple[str, str, str, bool]] = []  # (src, rel, value, parenthesized)

    def peek() -> str | None:
        return tokens[pos] if pos < len(tokens) else None

    def take(expected: str | None = None) -> str:
        nonlocal pos
        if pos >= len(tokens):
            raise ParseError("unexpected end of graph (unbalanced parentheses?)")
        tok = tokens[pos]
        pos += 1
        if expected is not None and tok != expected:
            raise ParseError(f"expected {expected!r}, found {tok!r}")
        return tok

    def parse_node() -> str:
        take("(")
        var = take()
        if var in ("(", ")", "/") or var.startswith(":") or var.startswith('"'):
            raise ParseError(f"bad node id {var!r}")
        take("/")
        concept = take()
        if concept in ("(", ")", "/") or concept.startswith(":"):
            raise ParseError(f"bad concept {concept!r} for node {var}")
        if var in nodes:
            raise ParseError(f"node id {var!r} defined twice")
        nodes[var] = concept
        while True:
            nxt = peek()
            if nxt is None:
                raise ParseError("unexpected end of graph (unbalanced parentheses?)")
            if nxt == ")":
                take()
                return var
            if not nxt.startswith(":"):
                raise ParseError(f"expected a :relation or ')', found {nxt!r}")
            rel = take()
            val = peek()
            if val is None:
                raise ParseError(f"relation {rel} has no value")
            if val == "(":
                slot = len(raw_edges)  # keep document order despite descending first
                raw_edges.append(None)
                child = parse_node()
                raw_edges[slot] = (var, rel, child, True)
            else:
                raw_edges.append((var, rel, take(), False))

    root = parse_node()
    if pos != len(tokens):
        raise ParseError(f"trailing tokens after graph: {tokens[pos]!r}")

    edges = []
    for src, rel, value, parenthesized in raw_edges:
        if parenthesized:
            edges.append(AmrEdge(src, rel, value, True))
        elif value.startswith('"'):
            edges.append(AmrEdge(src, rel, value[1:-1], False))
        elif value in nodes:
            edges.append(AmrEdge(src, rel, value, True))
        else:
            edges.append(AmrEdge(src, rel, value, False))
    return AmrGraph(root, nodes, tuple(edges))


def parse_penman_corpus(text: str) -> list[AmrGraph]:
    """One graph per blank-line-separated block; ``#`` lines are comments."""
    graphs = []
    block: list[str] = []
    for raw in text.splitlines() + [""]:
        line = raw.rstrip()
        if line.lstrip().startswith("#"):
            continue
        if not line.strip():
            if block:
                graphs.append(parse_penman("\n".join(block)))
                block = []
            continue
        block.append(line)
    return graphs


def _parse_concept_target(target: str) -> tuple[str, str]:
    parts = target.rsplit(".", 2)
    if len(parts) != 3 or not _SENSE.match(f"{parts[1]}.{parts[2]}"):
        raise ValueError(f"concept target must look like lemma.p.NN, got {target!r}")
    return parts[0], f"{parts[1]}.{parts[2]}"


@dataclass(frozen=True)
class ConversionDictionary:
    relations: dict[str, str] = field(default_factory=dict)
    concepts: dict[str, tuple[str, str]] = field(default_factory=dict)
    verb_sense: str = "v.01"
    noun_sense: str = "n.01"


def default_dictionary() -> ConversionDictionary:
    return ConversionDictionary(
        relations={":ARG0": "Agent", ":ARG1": "Patient", ":ARG2": "Theme"},
        concepts={
            "she": ("female", "n.02"),
            "he": ("male", "n.02"),
            "it": ("thing", "n.12"),
            "they": ("person", "n.01"),
        },
    )


def load_dictionary(text: str, base: ConversionDictionary | None = None) -> ConversionDictionary:
    """Parse ``kind<TAB>source<TAB>target`` lines; entries extend/override base."""
    base = base or default_dictionary()
    relations = dict(base.relations)
    concepts = dict(base.concepts)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise ParseError("expected kind<TAB>source<TAB>target", lineno)
        kind, source, target = (p.strip() for p in parts)
        if kind == "rel":
            if not _ROLE_NAME.match(target):
                raise ParseError(f"role target {target!r} must be Capitalized", lineno)
            relations[source] = target
        elif kind == "concept":
            try:
                concepts[source] = _parse_concept_target(target)
            except ValueError as exc:
                raise ParseError(str(exc), lineno) from exc
        else:
            raise ParseError(f"unknown dictionary kind {kind!r}", lineno)
    return ConversionDictionary(relations, concepts, base.verb_sense, base.noun_sense)


def _concept_for(concept: str, dic: ConversionDictionary) -> tuple[str, str]:
    mapped = dic.concepts.get(concept)
    if mapped is not None:
        return mapped
    verbish = _VERB_CONCEPT.match(concept)
    if verbish:
        return verbish.group(1), dic.verb_sense
    return concept, dic.noun_sense


def _role_for(relation: str, dic: ConversionDictionary, on_unmapped: str) -> str | None:
    mapped = dic.relations.get(relation)
    if mapped is not None:
        return mapped
    if _ARG_REL.match(relation):
        # numbered frame arguments need a real dictionary entry
        if on_unmapped == FAIL:
            raise UnmappedRelation(f"no dictionary entry for relation {relation}")
        log.warning("skipping relation %s: no dictionary entry", relation)
        return None
    name = relation[1:]
    return name[:1].upper() + name[1:]


def amr_to_drs(
    graph: AmrGraph,
    dictionary: ConversionDictionary | None = None,
    on_unmapped: str = SKIP,
    doc_id: str | None = None,
) -> ClausalForm:
    """Convert one AMR graph to a clausal form.

    Nodes get two clauses each (REF + concept), edges one role clause, plus
    a four-clause past-tense block when a verb-like node exists.  The first
    verb anchors the main box b0; verb nodes share it, every other node gets
    its own presupposition box.
    """
    if on_unmapped not in (SKIP, FAIL):
        raise ValueError(f"on_unmapped must be {SKIP!r} or {FAIL!r}")
    dic = dictionary or default_dictionary()
    node_order = list(graph.nodes)
    verbs = {v for v in node_order if _VERB_CONCEPT.match(graph.nodes[v])}
    first_verb = next((v for v in node_order if v in verbs), None)

    referent = {v: f"x{i + 1}" for i, v in enumerate(node_order)}
    box: dict[str, str] = {}
    next_box = 1
    for v in node_order:
        if v in verbs:
            box[v] = "b0"
        else:
            box[v] = f"b{next_box}"
            next_box += 1

    # Per nesting owner: the edge to emit (``:ARGn-of`` flipped into ``:ARGn``
    # with swapped endpoints) plus the child node to descend into, if any.
    plan: dict[str, list[tuple[AmrEdge, str | None]]] = {v: [] for v in node_order}
    for edge in graph.edges:
        child = edge.target if edge.target_is_node else None
        if _ARG_OF_REL.match(edge.relation) and edge.target_is_node:
            emit_edge = AmrEdge(edge.target, edge.relation[: -len("-of")], edge.source, True)
        else:
            emit_edge = edge
        plan[edge.source].append((emit_edge, child))

    clauses: list[Clause] = []
    visited: set[str] = set()

    def emit_tense(verb: str) -> None:
        t = f"x{len(node_order) + 1}"
        tense_box = f"b{next_box}"
        clauses.append(Clause(tense_box, ClauseTag("operator", "REF"), (Term(t),)))
        clauses.append(
            Clause(tense_box, ClauseTag("operator", "TPR"), (Term(t), Term("now", is_const=True)))
        )
        clauses.append(Clause(tense_box, ClauseTag("concept", "time", "n.08"), (Term(t),)))
        clauses.append(Clause(box[verb], ClauseTag("role", "Time"), (Term(referent[verb]), Term(t))))

    def emit_node(v: str) -> None:
        visited.add(v)
        lemma, sense = _concept_for(graph.nodes[v], dic)
        clauses.append(Clause(box[v], ClauseTag("operator", "REF"), (Term(referent[v]),)))
        clauses.append(Clause(box[v], ClauseTag("concept", lemma, sense), (Term(referent[v]),)))
        if v == first_verb:
            emit_tense(v)
        for edge, child in plan[v]:
            role = _role_for(edge.relation, dic, on_unmapped)
            if role is not None:
                first = Term(referent[edge.source])
                if edge.target_is_node:
                    second = Term(referent[edge.target])
                else:
                    second = Term(edge.target, is_const=True)
                clauses.append(Clause(box[edge.source], ClauseTag("role", role), (first, second)))
            if child is not None and child not in visited:
                emit_node(child)

    emit_node(graph.root)
    for v in node_order:  # nodes cut off by skipped relations still surface
        if v not in visited:
            emit_node(v)

    return build_form(clauses, doc_id)
