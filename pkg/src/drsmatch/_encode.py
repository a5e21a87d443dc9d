"""Integer encoding of a form pair for the climb kernel.

Variables become integer ids per side; each source clause gets the list of
target clauses it could equal under some mapping, reduced to the variable
bindings that mapping must contain.  Constants and tag tokens are checked
here once, so the kernel only ever compares integers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Clause, ClausalForm, KIND_BOX, KIND_DUAL, KIND_REFERENT

KIND_CODE = {KIND_BOX: 0, KIND_REFERENT: 1, KIND_DUAL: 2}

NODE_ORDERS = ("occurrence", "name")


def variable_order(form: ClausalForm, node_order: str) -> list[str]:
    if node_order == "occurrence":
        return list(form.variables)  # insertion order is first occurrence
    if node_order == "name":
        return sorted(form.variables)
    raise ValueError(f"unknown node_order {node_order!r}; expected one of {NODE_ORDERS}")


def _signature(clause: Clause) -> tuple:
    slots = tuple(("c", a.text) if a.is_const else "v" for a in clause.args)
    return (clause.tag.kind, clause.tag.name, clause.tag.sense, slots)


def _var_positions(clause: Clause) -> list[str]:
    return [clause.box] + [a.text for a in clause.args if not a.is_const]


@dataclass
class EncodedPair:
    src_vars: list[str]
    tgt_vars: list[str]
    kind_src: np.ndarray
    kind_tgt: np.ndarray
    n_clauses_src: int
    n_clauses_tgt: int
    cand_ptr: np.ndarray
    bind_ptr: np.ndarray
    bind_src: np.ndarray
    bind_tgt: np.ndarray
    var_ptr: np.ndarray
    var_idx: np.ndarray
    clause_vars: list[tuple[int, ...]]  # per source clause, distinct variable ids

    @property
    def n_src(self) -> int:
        return len(self.src_vars)

    @property
    def n_tgt(self) -> int:
        return len(self.tgt_vars)

    def kernel_args(self):
        return (
            self.kind_src,
            self.kind_tgt,
            self.cand_ptr,
            self.bind_ptr,
            self.bind_src,
            self.bind_tgt,
            self.var_ptr,
            self.var_idx,
        )

    def empty_mapping(self) -> np.ndarray:
        return np.full(self.n_src, -1, np.int32)

    def occupancy(self, mapping: np.ndarray) -> np.ndarray:
        occ = np.full(self.n_tgt, -1, np.int32)
        for u, t in enumerate(mapping):
            if t >= 0:
                occ[t] = u
        return occ


def encode_pair(src: ClausalForm, tgt: ClausalForm, node_order: str = "occurrence") -> EncodedPair:
    src_vars = variable_order(src, node_order)
    tgt_vars = variable_order(tgt, node_order)
    src_index = {name: i for i, name in enumerate(src_vars)}
    tgt_index = {name: i for i, name in enumerate(tgt_vars)}
    kind_src = np.array([KIND_CODE[src.variables[v]] for v in src_vars], np.int8)
    kind_tgt = np.array([KIND_CODE[tgt.variables[v]] for v in tgt_vars], np.int8)

    buckets: dict[tuple, list[Clause]] = {}
    for clause in tgt.clauses:
        buckets.setdefault(_signature(clause), []).append(clause)

    cand_ptr = [0]
    bind_ptr = [0]
    bind_src: list[int] = []
    bind_tgt: list[int] = []
    clause_vars: list[tuple[int, ...]] = []

    for clause in src.clauses:
        positions = _var_positions(clause)
        clause_vars.append(tuple(dict.fromkeys(src_index[v] for v in positions)))
        for other in buckets.get(_signature(clause), ()):  # same tag, arity, constants
            required: dict[int, int] = {}
            used_tgt: set[int] = set()
            consistent = True
            for mine, theirs in zip(positions, _var_positions(other)):
                s = src_index[mine]
                t = tgt_index[theirs]
                if kind_src[s] != kind_tgt[t]:
                    consistent = False
                    break
                prev = required.get(s)
                if prev is None:
                    if t in used_tgt:  # two sources would need the same target
                        consistent = False
                        break
                    required[s] = t
                    used_tgt.add(t)
                elif prev != t:
                    consistent = False
                    break
            if not consistent:
                continue
            bind_src.extend(required.keys())
            bind_tgt.extend(required.values())
            bind_ptr.append(len(bind_src))
        cand_ptr.append(len(bind_ptr) - 1)

    n_src = len(src_vars)
    touch: list[list[int]] = [[] for _ in range(n_src)]
    for ci, var_ids in enumerate(clause_vars):
        for u in var_ids:
            touch[u].append(ci)
    var_ptr = [0]
    var_idx: list[int] = []
    for u in range(n_src):
        var_idx.extend(touch[u])
        var_ptr.append(len(var_idx))

    return EncodedPair(
        src_vars=src_vars,
        tgt_vars=tgt_vars,
        kind_src=kind_src,
        kind_tgt=kind_tgt,
        n_clauses_src=len(src.clauses),
        n_clauses_tgt=len(tgt.clauses),
        cand_ptr=np.array(cand_ptr, np.int32),
        bind_ptr=np.array(bind_ptr, np.int32),
        bind_src=np.array(bind_src, np.int32),
        bind_tgt=np.array(bind_tgt, np.int32),
        var_ptr=np.array(var_ptr, np.int32),
        var_idx=np.array(var_idx, np.int32),
        clause_vars=clause_vars,
    )


def score_encoded(pair: EncodedPair, mapping: np.ndarray) -> int:
    """Full recount of matched source clauses; slow path for cross-checking."""
    matched = 0
    cp, bp = pair.cand_ptr, pair.bind_ptr
    bs, bt = pair.bind_src, pair.bind_tgt
    for ci in range(pair.n_clauses_src):
        for c in range(cp[ci], cp[ci + 1]):
            if all(mapping[bs[k]] == bt[k] for k in range(bp[c], bp[c + 1])):
                matched += 1
                break
    return matched
