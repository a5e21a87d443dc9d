"""Approximate clause matching: seeds, hill climbing, restarts.

Two clausal forms are compared by searching for a partial, injective,
kind-respecting variable mapping that maximizes the number of clauses of
one form that become token-identical to clauses of the other.  The search
is a steepest-ascent hill climb restarted from smart (concept/role overlap)
and random initial mappings; the best local optimum across restarts wins.

Scores are symmetric by construction: internally the pair is put into a
canonical orientation before climbing, so f1(A, B) == f1(B, A) exactly and
precision(A, B) == recall(B, A).
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace

import numpy as np

from ._encode import EncodedPair, NODE_ORDERS, encode_pair, score_encoded
from ._kernel import get_kernel
from .clausefile import serialize_form
from .core import Clause, ClausalForm, Term
from .errors import InvalidMapping
from .metrics import prf
from .normalize import remove_redundant_refs, standardize_variables

SEED_CONCEPT = "concept"
SEED_ROLE = "role"
SEED_RANDOM = "random"
SEED_KINDS = (SEED_CONCEPT, SEED_ROLE, SEED_RANDOM)

_SEED_MASK = (1 << 64) - 1
_DEBUG_ENV = "DRSMATCH_DEBUG"


def default_schedule(restarts: int) -> tuple[str, ...]:
    """Concept seed first, role seed second, random seeds after."""
    smart = (SEED_CONCEPT, SEED_ROLE)[:restarts]
    return smart + (SEED_RANDOM,) * (restarts - len(smart))


@dataclass(frozen=True)
class MatchConfig:
    restarts: int = 20
    rng_seed: int = 42
    seed_schedule: tuple[str, ...] | None = None
    keep_refs: bool = False
    node_order: str = "occurrence"
    backend: str | None = None

    def schedule(self) -> tuple[str, ...]:
        if self.seed_schedule is None:
            return default_schedule(self.restarts)
        given = tuple(self.seed_schedule)[: self.restarts]
        return given + (SEED_RANDOM,) * (self.restarts - len(given))

    def validate(self) -> None:
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.node_order not in NODE_ORDERS:
            raise ValueError(f"node_order must be one of {NODE_ORDERS}")
        for kind in self.seed_schedule or ():
            if kind not in SEED_KINDS:
                raise ValueError(f"unknown seed kind {kind!r}")


@dataclass(frozen=True)
class MatchResult:
    best_mapping: dict[str, str]
    matched: int
    size_sys: int
    size_gold: int
    precision: float
    recall: float
    f1: float
    per_restart: tuple[tuple[str, int], ...] = field(default=())


def _validate_mapping(mapping: dict[str, str], sys_form: ClausalForm, gold_form: ClausalForm) -> None:
    targets = set()
    for src, tgt in mapping.items():
        if src not in sys_form.variables:
            raise InvalidMapping(f"unknown source variable {src!r}")
        if tgt not in gold_form.variables:
            raise InvalidMapping(f"unknown target variable {tgt!r}")
        if sys_form.variables[src] != gold_form.variables[tgt]:
            raise InvalidMapping(
                f"kind mismatch: {src} is {sys_form.variables[src]}, {tgt} is {gold_form.variables[tgt]}"
            )
        if tgt in targets:
            raise InvalidMapping(f"target {tgt!r} used twice")
        targets.add(tgt)


def _substitute_clause(clause: Clause, mapping: dict[str, str]) -> Clause | None:
    """Rewrite a clause into the target namespace; None if any variable is unmapped."""
    box = mapping.get(clause.box)
    if box is None:
        return None
    args = []
    for term in clause.args:
        if term.is_const:
            args.append(term)
        else:
            name = mapping.get(term.text)
            if name is None:
                return None
            args.append(Term(name))
    return Clause(box, clause.tag, tuple(args))


def substituted_match_count(sys_form: ClausalForm, gold_form: ClausalForm, mapping: dict[str, str]) -> int:
    """Count sys clauses that substitution makes token-identical to gold clauses.

    Straightforward set-membership scorer, independent of the encoded kernel
    path; used as the reference in cross-checks.
    """
    gold_set = set(gold_form.clauses)
    count = 0
    for clause in sys_form.clauses:
        rewritten = _substitute_clause(clause, mapping)
        if rewritten is not None and rewritten in gold_set:
            count += 1
    return count


def score_mapping(mapping: dict[str, str], sys_form: ClausalForm, gold_form: ClausalForm) -> int:
    """Matched-clause count for an explicit mapping (validated, forms as given)."""
    _validate_mapping(mapping, sys_form, gold_form)
    return substituted_match_count(sys_form, gold_form, mapping)


def _restart_rng(rng_seed: int, restart: int) -> np.random.Generator:
    return np.random.default_rng([rng_seed & _SEED_MASK, restart])


def _greedy_family_seed(pair: EncodedPair, src: ClausalForm, tgt: ClausalForm, family: str) -> np.ndarray:
    """Seed a mapping from clauses with equal concept (lemma+sense) or role name.

    Source clauses are scanned in document order; for each target clause with
    the same key, box and argument variables are paired greedily whenever both
    ends are still free.
    """
    src_index = {name: i for i, name in enumerate(pair.src_vars)}
    tgt_index = {name: i for i, name in enumerate(pair.tgt_vars)}
    mapping = pair.empty_mapping()
    occ = np.full(pair.n_tgt, -1, np.int32)

    def key(clause: Clause):
        if clause.tag.kind != family:
            return None
        return (clause.tag.name, clause.tag.sense)

    by_key: dict[tuple, list[Clause]] = {}
    for clause in tgt.clauses:
        k = key(clause)
        if k is not None:
            by_key.setdefault(k, []).append(clause)

    for clause in src.clauses:
        k = key(clause)
        if k is None:
            continue
        for other in by_key.get(k, ()):
            mine = [clause.box] + [a.text for a in clause.args if not a.is_const]
            theirs = [other.box] + [a.text for a in other.args if not a.is_const]
            for s_name, t_name in zip(mine, theirs):
                s = src_index[s_name]
                t = tgt_index[t_name]
                if mapping[s] == -1 and occ[t] == -1 and pair.kind_src[s] == pair.kind_tgt[t]:
                    mapping[s] = t
                    occ[t] = s
    return mapping


def _random_seed(pair: EncodedPair, rng: np.random.Generator) -> np.ndarray:
    """Uniform kind-respecting injection, as large as the target side allows."""
    mapping = pair.empty_mapping()
    for code in (0, 1, 2):
        src_ids = np.flatnonzero(pair.kind_src == code)
        tgt_ids = np.flatnonzero(pair.kind_tgt == code)
        m = min(len(src_ids), len(tgt_ids))
        if m == 0:
            continue
        chosen_src = rng.permutation(src_ids)[:m]
        chosen_tgt = rng.permutation(tgt_ids)[:m]
        mapping[chosen_src] = chosen_tgt
    return mapping


def _seed_array(kind: str, pair: EncodedPair, src: ClausalForm, tgt: ClausalForm, rng) -> np.ndarray:
    if kind == SEED_CONCEPT:
        return _greedy_family_seed(pair, src, tgt, "concept")
    if kind == SEED_ROLE:
        return _greedy_family_seed(pair, src, tgt, "role")
    if kind == SEED_RANDOM:
        return _random_seed(pair, rng)
    raise ValueError(f"unknown seed kind {kind!r}")


def _debug_enabled() -> bool:
    return os.environ.get(_DEBUG_ENV, "").strip() not in ("", "0")


def _check_mapping_arrays(pair: EncodedPair, mapping: np.ndarray) -> None:
    used: set[int] = set()
    for u, t in enumerate(mapping):
        if t < 0:
            continue
        if t in used:
            raise AssertionError("kernel produced a non-injective mapping")
        if pair.kind_src[u] != pair.kind_tgt[t]:
            raise AssertionError("kernel produced a kind-violating mapping")
        used.add(int(t))


def _climb(pair: EncodedPair, seed: np.ndarray, kernel) -> tuple[np.ndarray, int]:
    mapping = seed.astype(np.int32, copy=True)
    occ = pair.occupancy(mapping)
    matched = int(kernel(*pair.kernel_args(), mapping, occ))
    if _debug_enabled():
        _check_mapping_arrays(pair, mapping)
        recount = score_encoded(pair, mapping)
        if recount != matched:
            raise AssertionError(f"incremental count {matched} != full recount {recount}")
    return mapping, matched


def _canonical_key(form: ClausalForm) -> str:
    return serialize_form(standardize_variables(form, "v")[0])


def match_forms(sys_form: ClausalForm, gold_form: ClausalForm, config: MatchConfig | None = None) -> MatchResult:
    """Best mapping over `config.restarts` hill climbs; deterministic per config."""
    config = config or MatchConfig()
    config.validate()

    sys_eff = sys_form if config.keep_refs else remove_redundant_refs(sys_form)
    gold_eff = gold_form if config.keep_refs else remove_redundant_refs(gold_form)

    flipped = _canonical_key(gold_eff) < _canonical_key(sys_eff)
    left_raw, right_raw = (gold_eff, sys_eff) if flipped else (sys_eff, gold_eff)
    left, left_table = standardize_variables(left_raw, "s")
    right, right_table = standardize_variables(right_raw, "g")

    pair = encode_pair(left, right, config.node_order)
    kernel = get_kernel(config.backend)

    schedule = config.schedule()
    trace: list[tuple[str, int]] = []
    best_matched = -1
    best_array: np.ndarray | None = None
    for restart, kind in enumerate(schedule):
        rng = _restart_rng(config.rng_seed, restart)
        seed = _seed_array(kind, pair, left, right, rng)
        mapping, matched = _climb(pair, seed, kernel)
        trace.append((kind, matched))
        if matched > best_matched:
            best_matched = matched
            best_array = mapping

    left_orig = left_table.inverse()
    right_orig = right_table.inverse()
    pairs_named = [
        (left_orig[pair.src_vars[u]], right_orig[pair.tgt_vars[t]])
        for u, t in enumerate(best_array)
        if t >= 0
    ]
    if flipped:
        mapping_named = {tgt: src for src, tgt in pairs_named}
    else:
        mapping_named = dict(pairs_named)

    matched = max(best_matched, 0)
    size_sys, size_gold = len(sys_eff.clauses), len(gold_eff.clauses)
    p, r, f = prf(matched, size_sys, size_gold)
    return MatchResult(
        best_mapping=mapping_named,
        matched=matched,
        size_sys=size_sys,
        size_gold=size_gold,
        precision=p,
        recall=r,
        f1=f,
        per_restart=tuple(trace),
    )


def generate_seed(kind: str, sys_form: ClausalForm, gold_form: ClausalForm, rng=None) -> dict[str, str]:
    """Initial mapping of the given kind, expressed over the forms' own names."""
    if kind not in SEED_KINDS:
        raise ValueError(f"unknown seed kind {kind!r}")
    if rng is None:
        rng = np.random.default_rng(0)
    left, lt = standardize_variables(sys_form, "s")
    right, rt = standardize_variables(gold_form, "g")
    pair = encode_pair(left, right)
    seed = _seed_array(kind, pair, left, right, rng)
    left_orig, right_orig = lt.inverse(), rt.inverse()
    return {
        left_orig[pair.src_vars[u]]: right_orig[pair.tgt_vars[t]]
        for u, t in enumerate(seed)
        if t >= 0
    }


def hill_climb(
    sys_form: ClausalForm,
    gold_form: ClausalForm,
    initial: dict[str, str] | None = None,
    backend: str | None = None,
) -> tuple[dict[str, str], int]:
    """One climb from an explicit initial mapping; returns (mapping, matched).

    Forms are taken as given (no REF removal); the initial mapping is
    validated against both variable tables.
    """
    initial = initial or {}
    _validate_mapping(initial, sys_form, gold_form)
    left, lt = standardize_variables(sys_form, "s")
    right, rt = standardize_variables(gold_form, "g")
    pair = encode_pair(left, right)
    src_pos = {name: i for i, name in enumerate(pair.src_vars)}
    tgt_pos = {name: i for i, name in enumerate(pair.tgt_vars)}
    seed = pair.empty_mapping()
    for src, tgt in initial.items():
        seed[src_pos[lt.mapping[src]]] = tgt_pos[rt.mapping[tgt]]
    mapping, matched = _climb(pair, seed, get_kernel(backend))
    left_orig, right_orig = lt.inverse(), rt.inverse()
    named = {
        left_orig[pair.src_vars[u]]: right_orig[pair.tgt_vars[t]]
        for u, t in enumerate(mapping)
        if t >= 0
    }
    return named, matched


def with_restarts(config: MatchConfig, restarts: int) -> MatchConfig:
    """Copy of config with a different restart count (schedule stays nested)."""
    return replace(config, restarts=restarts)
