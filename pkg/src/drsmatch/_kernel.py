"""Hill-climbing kernel over integer-encoded clause pairs.

The kernel is written once as a plain function over numpy arrays; the numba
backend compiles the same body with ``@njit``.  Select the backend with the
``DRSMATCH_BACKEND`` environment variable ("numba" or "numpy"); the default
is numba when importable.  Both backends produce bit-identical results.

Encoding (see _encode.py): clause i of the source form can match candidate
pairs ``cand_ptr[i]..cand_ptr[i+1]``; candidate c holds variable bindings
``bind_ptr[c]..bind_ptr[c+1]`` as (bind_src[k] -> bind_tgt[k]) requirements.
``var_ptr``/``var_idx`` list, per source variable, the clauses it occurs in,
so a move re-scores only affected clauses.
"""

from __future__ import annotations

import importlib.util
import os

import numpy as np

ENV_BACKEND = "DRSMATCH_BACKEND"
BACKENDS = ("numba", "numpy")


def climb_kernel(
    kind_src,
    kind_tgt,
    cand_ptr,
    bind_ptr,
    bind_src,
    bind_tgt,
    var_ptr,
    var_idx,
    mapping,
    occ,
):
    """Steepest-ascent hill climb; mutates mapping/occ in place, returns matched.

    Single moves, evaluated in a fixed order (extend an unmapped source to a
    free target, remap a mapped source to a different free target, swap the
    targets of two mapped sources, unmap one source); the first move with the
    largest strictly positive gain is taken; stops at a local optimum.
    """
    n_src = kind_src.shape[0]
    n_tgt = kind_tgt.shape[0]
    n_clauses = cand_ptr.shape[0] - 1

    def clause_ok(ci):
        for c in range(cand_ptr[ci], cand_ptr[ci + 1]):
            sat = True
            for k in range(bind_ptr[c], bind_ptr[c + 1]):
                if mapping[bind_src[k]] != bind_tgt[k]:
                    sat = False
                    break
            if sat:
                return 1
        return 0

    status = np.zeros(n_clauses, np.int32)
    matched = 0
    for ci in range(n_clauses):
        m = clause_ok(ci)
        status[ci] = m
        matched += m

    stamp = np.full(n_clauses, -1, np.int64)
    move_id = 0

    def gain_for(u1, u2, mid):
        g = 0
        for uu in (u1, u2):
            if uu < 0:
                continue
            for p in range(var_ptr[uu], var_ptr[uu + 1]):
                ci = var_idx[p]
                if stamp[ci] == mid:
                    continue
                stamp[ci] = mid
                g += clause_ok(ci) - status[ci]
        return g

    while True:
        best_gain = 0
        best_kind = -1  # 0 extend, 1 remap, 2 swap, 3 unmap
        best_u = -1
        best_v = -1  # target for extend/remap, second source for swap

        # extend: unmapped source -> free kind-compatible target
        for u in range(n_src):
            if mapping[u] >= 0 or var_ptr[u] == var_ptr[u + 1]:
                continue
            for t in range(n_tgt):
                if occ[t] >= 0 or kind_src[u] != kind_tgt[t]:
                    continue
                mapping[u] = t
                move_id += 1
                g = gain_for(u, -1, move_id)
                mapping[u] = -1
                if g > best_gain:
                    best_gain = g
                    best_kind = 0
                    best_u = u
                    best_v = t

        # remap: mapped source -> different free target
        for u in range(n_src):
            t0 = mapping[u]
            if t0 < 0 or var_ptr[u] == var_ptr[u + 1]:
                continue
            for t in range(n_tgt):
                if t == t0 or occ[t] >= 0 or kind_src[u] != kind_tgt[t]:
                    continue
                mapping[u] = t
                move_id += 1
                g = gain_for(u, -1, move_id)
                mapping[u] = t0
                if g > best_gain:
                    best_gain = g
                    best_kind = 1
                    best_u = u
                    best_v = t

        # swap targets of two mapped sources of the same kind
        for u1 in range(n_src):
            t1 = mapping[u1]
            if t1 < 0:
                continue
            for u2 in range(u1 + 1, n_src):
                t2 = mapping[u2]
                if t2 < 0 or kind_src[u1] != kind_src[u2]:
                    continue
                mapping[u1] = t2
                mapping[u2] = t1
                move_id += 1
                g = gain_for(u1, u2, move_id)
                mapping[u1] = t1
                mapping[u2] = t2
                if g > best_gain:
                    best_gain = g
                    best_kind = 2
                    best_u = u1
                    best_v = u2

        # unmap: can never strictly improve the count (satisfied clauses only
        # lose bindings), so it never wins; enumerated to keep the move set whole
        for u in range(n_src):
            t0 = mapping[u]
            if t0 < 0:
                continue
            mapping[u] = -1
            move_id += 1
            g = gain_for(u, -1, move_id)
            mapping[u] = t0
            if g > best_gain:
                best_gain = g
                best_kind = 3
                best_u = u
                best_v = -1

        if best_gain <= 0:
            break

        u2_commit = -1
        if best_kind == 0:
            mapping[best_u] = best_v
            occ[best_v] = best_u
        elif best_kind == 1:
            occ[mapping[best_u]] = -1
            mapping[best_u] = best_v
            occ[best_v] = best_u
        elif best_kind == 2:
            t1 = mapping[best_u]
            t2 = mapping[best_v]
            mapping[best_u] = t2
            mapping[best_v] = t1
            occ[t1] = best_v
            occ[t2] = best_u
            u2_commit = best_v
        else:
            occ[mapping[best_u]] = -1
            mapping[best_u] = -1

        move_id += 1
        for uu in (best_u, u2_commit):
            if uu < 0:
                continue
            for p in range(var_ptr[uu], var_ptr[uu + 1]):
                ci = var_idx[p]
                if stamp[ci] == move_id:
                    continue
                stamp[ci] = move_id
                m = clause_ok(ci)
                matched += m - status[ci]
                status[ci] = m

    return matched


_NUMBA_KERNEL = None


def numba_available() -> bool:
    return importlib.util.find_spec("numba") is not None


def default_backend() -> str:
    env = os.environ.get(ENV_BACKEND, "").strip().lower()
    if env:
        if env not in BACKENDS:
            raise ValueError(f"{ENV_BACKEND} must be one of {BACKENDS}, got {env!r}")
        return env
    return "numba" if numba_available() else "numpy"


def get_kernel(backend: str | None = None):
    """Return the climb kernel for the requested (or default) backend."""
    chosen = backend if backend is not None else default_backend()
    if chosen == "numpy":
        return climb_kernel
    if chosen == "numba":
        global _NUMBA_KERNEL
        if _NUMBA_KERNEL is None:
            import numba

            _NUMBA_KERNEL = numba.njit(cache=True, nogil=True)(climb_kernel)
        return _NUMBA_KERNEL
    raise ValueError(f"unknown backend {chosen!r}; expected one of {BACKENDS}")
