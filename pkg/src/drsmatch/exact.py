"""Exact optimal matching by exhaustive search with branch-and-bound.

Ground truth for the hill-climbing matcher on small instances.  Source
variables are assigned in descending clause-degree order; a node is pruned
when its decided matches plus an optimistic count of still-open clauses
cannot beat the incumbent.  `naive_optimal` enumerates every maximal
kind-respecting injection outright and scores it by clause substitution;
it exists to keep the branch-and-bound honest.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

import numpy as np

from ._encode import encode_pair
from .core import ClausalForm, KIND_BOX, KIND_DUAL, KIND_REFERENT
from .errors import BudgetExceeded, TooLarge
from .metrics import prf
from .matching import MatchResult, substituted_match_count
from .normalize import remove_redundant_refs, standardize_variables

_UNDECIDED = -1
_SKIPPED = -2


@dataclass(frozen=True)
class OracleLimits:
    max_nodes: int = 2_000_000
    max_vars_per_side: int = 40

    def validate(self) -> None:
        if self.max_nodes < 1 or self.max_vars_per_side < 1:
            raise ValueError("limits must be positive")


def optimal_match(
    sys_form: ClausalForm,
    gold_form: ClausalForm,
    limits: OracleLimits | None = None,
    keep_refs: bool = False,
) -> MatchResult:
    """True maximum matched-clause count; raises BudgetExceeded or TooLarge."""
    limits = limits or OracleLimits()
    limits.validate()

    sys_eff = sys_form if keep_refs else remove_redundant_refs(sys_form)
    gold_eff = gold_form if keep_refs else remove_redundant_refs(gold_form)
    if max(len(sys_eff.variables), len(gold_eff.variables)) > limits.max_vars_per_side:
        raise TooLarge(
            f"{len(sys_eff.variables)}/{len(gold_eff.variables)} variables exceed "
            f"the guard of {limits.max_vars_per_side} per side"
        )

    left, lt = standardize_variables(sys_eff, "s")
    right, rt = standardize_variables(gold_eff, "g")
    pair = encode_pair(left, right)
    n_src, n_tgt = pair.n_src, pair.n_tgt
    n_clauses = pair.n_clauses_src

    degree = [pair.var_ptr[u + 1] - pair.var_ptr[u] for u in range(n_src)]
    order = sorted(range(n_src), key=lambda u: (-degree[u], u))

    mapping = np.full(n_src, _UNDECIDED, np.int32)
    occ = np.full(n_tgt, -1, np.int32)
    cp, bp = pair.cand_ptr, pair.bind_ptr
    bs, bt = pair.bind_src, pair.bind_tgt

    best = {"matched": -1, "mapping": None}
    nodes = 0

    def bound() -> int:
        # Optimistic: a clause counts if some candidate is still satisfiable,
        # i.e. decided bindings hold and undecided ones point at free targets.
        total = 0
        for ci in range(n_clauses):
            for c in range(cp[ci], cp[ci + 1]):
                feasible = True
                for k in range(bp[c], bp[c + 1]):
                    s, t = bs[k], bt[k]
                    if mapping[s] == _UNDECIDED:
                        if occ[t] != -1:
                            feasible = False
                            break
                    elif mapping[s] != t:
                        feasible = False
                        break
                if feasible:
                    total += 1
                    break
        return total

    def exact_count() -> int:
        count = 0
        for ci in range(n_clauses):
            for c in range(cp[ci], cp[ci + 1]):
                if all(mapping[bs[k]] == bt[k] for k in range(bp[c], bp[c + 1])):
                    count += 1
                    break
        return count

    def descend(depth: int) -> None:
        nonlocal nodes
        if depth == n_src:
            count = exact_count()
            if count > best["matched"]:
                best["matched"] = count
                best["mapping"] = mapping.copy()
            return
        if bound() <= best["matched"]:
            return
        u = order[depth]
        for t in range(n_tgt):
            if occ[t] != -1 or pair.kind_src[u] != pair.kind_tgt[t]:
                continue
            nodes += 1
            if nodes > limits.max_nodes:
                raise _Budget()
            mapping[u] = t
            occ[t] = u
            descend(depth + 1)
            mapping[u] = _UNDECIDED
            occ[t] = -1
        nodes += 1
        if nodes > limits.max_nodes:
            raise _Budget()
        mapping[u] = _SKIPPED
        descend(depth + 1)
        mapping[u] = _UNDECIDED

    def to_result(matched: int, array) -> MatchResult:
        left_orig, right_orig = lt.inverse(), rt.inverse()
        named = {}
        if array is not None:
            named = {
                left_orig[pair.src_vars[u]]: right_orig[pair.tgt_vars[t]]
                for u, t in enumerate(array)
                if t >= 0
            }
        size_sys, size_gold = len(sys_eff.clauses), len(gold_eff.clauses)
        p, r, f = prf(matched, size_sys, size_gold)
        return MatchResult(named, matched, size_sys, size_gold, p, r, f)

    try:
        descend(0)
    except _Budget:
        partial = to_result(max(best["matched"], 0), best["mapping"])
        raise BudgetExceeded(
            f"node budget of {limits.max_nodes} exhausted; best found {partial.matched}",
            best=partial,
        ) from None
    return to_result(max(best["matched"], 0), best["mapping"])


class _Budget(Exception):
    pass


def _kind_groups(form: ClausalForm) -> dict[str, list[str]]:
    groups: dict[str, list[str]] = {KIND_BOX: [], KIND_REFERENT: [], KIND_DUAL: []}
    for name, kind in form.variables.items():
        groups[kind].append(name)
    return groups


def _injections(sources: list[str], targets: list[str]):
    """All maximal injective assignments between two name lists."""
    if len(sources) <= len(targets):
        for chosen in permutations(targets, len(sources)):
            yield tuple(zip(sources, chosen))
    else:
        for chosen in permutations(sources, len(targets)):
            yield tuple(zip(chosen, targets))


def naive_optimal(sys_form: ClausalForm, gold_form: ClausalForm, keep_refs: bool = False) -> int:
    """Optimum by scoring every maximal kind-respecting injection.

    Any partial mapping extends to a maximal one without losing matches, so
    enumerating maximal injections per kind covers the whole space.  Small
    inputs only.
    """
    sys_eff = sys_form if keep_refs else remove_redundant_refs(sys_form)
    gold_eff = gold_form if keep_refs else remove_redundant_refs(gold_form)
    src_groups = _kind_groups(sys_eff)
    tgt_groups = _kind_groups(gold_eff)

    def explore(kinds: list[str], acc: dict[str, str]) -> int:
        if not kinds:
            return substituted_match_count(sys_eff, gold_eff, acc)
        kind, rest = kinds[0], kinds[1:]
        sources = src_groups[kind]
        targets = tgt_groups[kind]
        if not sources or not targets:
            return explore(rest, acc)
        best = 0
        for pairs in _injections(sources, targets):
            best = max(best, explore(rest, acc | dict(pairs)))
        return best

    return explore([KIND_BOX, KIND_REFERENT, KIND_DUAL], {})
