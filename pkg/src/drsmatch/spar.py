"""Trivial single-output baseline: pick the corpus document most similar to the rest."""

from __future__ import annotations

from .core import ClausalForm
from .errors import CorpusTooSmall
from .matching import MatchConfig, match_forms


def spar_rank(corpus: list[ClausalForm], config: MatchConfig | None = None) -> list[float]:
    """Mean F1 of each document against every other, by document index."""
    config = config or MatchConfig()
    n = len(corpus)
    if n < 2:
        raise CorpusTooSmall(f"need at least 2 documents, got {n}")
    sums = [0.0] * n
    for i in range(n):
        for j in range(i + 1, n):
            f1 = match_forms(corpus[i], corpus[j], config).f1
            sums[i] += f1
            sums[j] += f1
    return [s / (n - 1) for s in sums]


def spar_select(corpus: list[ClausalForm], config: MatchConfig | None = None) -> tuple[str, ClausalForm]:
    """The document maximizing mean F1 against all others; ties go to the lowest index."""
    means = spar_rank(corpus, config)
    best = max(range(len(corpus)), key=lambda i: (means[i], -i))
    form = corpus[best]
    doc_id = form.doc_id if form.doc_id is not None else str(best + 1)
    return doc_id, form
