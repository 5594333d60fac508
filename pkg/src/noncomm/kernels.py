"""Backend dispatch for the hot loops.

Three computations dominate everything else in this package: building the
multiplication table of a 2x2 matrix group, building the commute matrix, and
branch-and-bound maximum-clique search.  Each has a numba implementation and
a pure-numpy (or plain python) fallback with identical output, selected by
the NONCOMM_BACKEND environment variable:

    auto   use numba when importable, numpy otherwise (default)
    numba  require numba, fail loudly if it is missing
    numpy  force the fallback path

NONCOMM_THREADS caps the numba thread count.  The value is clamped to what
the host actually has, so oversubscribing is harmless and results stay
identical for any setting (parallel loops write disjoint rows).
"""

from __future__ import annotations

import os
import time

import numpy as np

BACKEND_ENV = "NONCOMM_BACKEND"
THREADS_ENV = "NONCOMM_THREADS"

_nb_mod = None  # cached import of ._kernels_numba; False marks a failed import


def _load_numba_kernels():
    global _nb_mod
    if _nb_mod is None:
        try:
            from . import _kernels_numba

            _nb_mod = _kernels_numba
        except ImportError:
            _nb_mod = False
    return _nb_mod if _nb_mod else None


def _apply_thread_cap() -> None:
    raw = os.environ.get(THREADS_ENV)
    if raw is None:
        return
    try:
        requested = int(raw)
    except ValueError:
        raise ValueError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
    import numba

    cap = numba.config.NUMBA_NUM_THREADS
    numba.set_num_threads(max(1, min(requested, cap)))


def active_backend() -> str:
    """Resolve the backend for the current environment ("numba" or "numpy")."""
    choice = os.environ.get(BACKEND_ENV, "auto").strip().lower()
    if choice not in ("auto", "numba", "numpy"):
        raise ValueError(f"{BACKEND_ENV} must be auto, numba, or numpy, got {choice!r}")
    if choice == "numpy":
        return "numpy"
    mod = _load_numba_kernels()
    if mod is None:
        if choice == "numba":
            raise RuntimeError("numba backend requested but numba is unavailable")
        return "numpy"
    _apply_thread_cap()
    return "numba"


# ---------------------------------------------------------------------------
# matrix-group kernels
#
# A 2x2 matrix over GF(q) is a row (a, b, c, d) of field indices.  `pos` maps
# the packed key ((a*q + b)*q + c)*q + d back to the element's index in the
# group, with -1 for matrices outside the group.


def cayley_table_mat2(
    entries: np.ndarray, pos: np.ndarray, add_t: np.ndarray, mul_t: np.ndarray
) -> np.ndarray:
    if active_backend() == "numba":
        return _load_numba_kernels().cayley_table_mat2(entries, pos, add_t, mul_t)
    return _cayley_table_numpy(entries, pos, add_t, mul_t)


def _cayley_table_numpy(entries, pos, add_t, mul_t):
    n = entries.shape[0]
    q = add_t.shape[0]
    a2, b2, c2, d2 = entries[:, 0], entries[:, 1], entries[:, 2], entries[:, 3]
    out = np.empty((n, n), dtype=np.int32)
    for i in range(n):
        a1, b1, c1, d1 = entries[i]
        e0 = add_t[mul_t[a1, a2], mul_t[b1, c2]]
        e1 = add_t[mul_t[a1, b2], mul_t[b1, d2]]
        e2 = add_t[mul_t[c1, a2], mul_t[d1, c2]]
        e3 = add_t[mul_t[c1, b2], mul_t[d1, d2]]
        out[i] = pos[((e0 * q + e1) * q + e2) * q + e3]
    return out


def product_indices_mat2(
    entries: np.ndarray,
    pos: np.ndarray,
    add_t: np.ndarray,
    mul_t: np.ndarray,
    ia: np.ndarray,
    ib: np.ndarray,
) -> np.ndarray:
    if active_backend() == "numba":
        return _load_numba_kernels().product_indices_mat2(entries, pos, add_t, mul_t, ia, ib)
    q = add_t.shape[0]
    a1, b1, c1, d1 = (entries[ia, k] for k in range(4))
    a2, b2, c2, d2 = (entries[ib, k] for k in range(4))
    e0 = add_t[mul_t[a1, a2], mul_t[b1, c2]]
    e1 = add_t[mul_t[a1, b2], mul_t[b1, d2]]
    e2 = add_t[mul_t[c1, a2], mul_t[d1, c2]]
    e3 = add_t[mul_t[c1, b2], mul_t[d1, d2]]
    return pos[((e0 * q + e1) * q + e2) * q + e3].astype(np.int32)


def commute_matrix_mat2(entries: np.ndarray, add_t: np.ndarray, mul_t: np.ndarray) -> np.ndarray:
    if active_backend() == "numba":
        return _load_numba_kernels().commute_matrix_mat2(entries, add_t, mul_t)
    n = entries.shape[0]
    a2, b2, c2, d2 = entries[:, 0], entries[:, 1], entries[:, 2], entries[:, 3]
    out = np.empty((n, n), dtype=bool)
    for i in range(n):
        a1, b1, c1, d1 = entries[i]
        # xy == yx entrywise; no index lookup needed
        out[i] = (
            (add_t[mul_t[a1, a2], mul_t[b1, c2]] == add_t[mul_t[a2, a1], mul_t[b2, c1]])
            & (add_t[mul_t[a1, b2], mul_t[b1, d2]] == add_t[mul_t[a2, b1], mul_t[b2, d1]])
            & (add_t[mul_t[c1, a2], mul_t[d1, c2]] == add_t[mul_t[c2, a1], mul_t[d2, c1]])
            & (add_t[mul_t[c1, b2], mul_t[d1, d2]] == add_t[mul_t[c2, b1], mul_t[d2, d1]])
        )
    return out


# ---------------------------------------------------------------------------
# maximum clique
#
# Branch and bound with greedy coloring bounds, vertices preordered by a
# degeneracy peel.  Both backends walk the search tree in exactly the same
# order, so they return the same clique, not merely the same size.

DEPTH_CAP = 1024


def _degeneracy_order(adj: np.ndarray) -> np.ndarray:
    n = adj.shape[0]
    deg = adj.sum(axis=1).astype(np.int64)
    alive = np.ones(n, dtype=bool)
    order = np.empty(n, dtype=np.int64)
    big = n + 1
    for k in range(n):
        masked = np.where(alive, deg, big)
        v = int(masked.argmin())  # ties fall to the lowest index
        order[k] = v
        alive[v] = False
        deg[adj[v] & alive] -= 1
    return order


def _pack_rows(adj: np.ndarray) -> np.ndarray:
    n = adj.shape[0]
    nw = (n + 63) // 64
    words = np.zeros((n, nw), dtype=np.uint64)
    bit = np.uint64(1) << (np.arange(n, dtype=np.uint64) % np.uint64(64))
    col_word = np.arange(n) // 64
    for i in range(n):
        np.bitwise_or.at(words[i], col_word[adj[i]], bit[adj[i]])
    return words


def max_clique(
    adj: np.ndarray, budget_s: float | None = None
) -> tuple[list[int], bool]:
    """Largest clique of an undirected graph given as a boolean adjacency matrix.

    Returns (clique_vertices, completed).  When the time budget runs out the
    best clique found so far comes back with completed=False; without a budget
    the search always runs to the end.  Vertices in the returned clique are in
    the internal search order, ascending.
    """
    n = adj.shape[0]
    if n == 0:
        return [], True
    if adj.dtype != bool or adj.shape != (n, n):
        raise ValueError("adjacency must be a square boolean matrix")
    if (adj != adj.T).any() or adj.diagonal().any():
        raise ValueError("adjacency must be symmetric with an empty diagonal")

    order = _degeneracy_order(adj)
    rank = np.empty(n, dtype=np.int64)
    rank[order] = np.arange(n)
    radj = adj[order][:, order]  # vertex k of the search graph = order[k]

    # greedy seed: walk the peel order backwards, keep whatever fits
    seed: list[int] = []
    for v in range(n - 1, -1, -1):
        if all(radj[v, u] for u in seed):
            seed.append(v)
    best = len(seed)
    best_clique = sorted(seed)

    deadline = None if budget_s is None else time.monotonic() + budget_s
    right_deg = np.array([int(radj[v, v + 1 :].sum()) for v in range(n)])
    words = _pack_rows(radj)
    nw = words.shape[1]
    use_numba = active_backend() == "numba"
    if use_numba:
        mod = _load_numba_kernels()
        ws_p = np.zeros((DEPTH_CAP, nw), dtype=np.uint64)
        ws_verts = np.zeros((DEPTH_CAP, n), dtype=np.int32)
        ws_colors = np.zeros((DEPTH_CAP, n), dtype=np.int32)
        ws_cnt = np.zeros(DEPTH_CAP, dtype=np.int32)
        ws_pos = np.zeros(DEPTH_CAP, dtype=np.int32)
        chosen = np.zeros(DEPTH_CAP, dtype=np.int32)
        out = np.zeros(n, dtype=np.int32)
    else:
        masks = [int.from_bytes(words[i].tobytes(), "little") for i in range(n)]

    completed = True
    for root in range(n):
        if deadline is not None and time.monotonic() > deadline:
            completed = False
            break
        if 1 + right_deg[root] <= best:
            continue
        if use_numba:
            size = mod.clique_expand_root(
                words, root, best, ws_p, ws_verts, ws_colors, ws_cnt, ws_pos, chosen, out
            )
            if size > best:
                best = size
                best_clique = sorted(int(x) for x in out[:size])
        else:
            found = _expand_root_python(masks, n, root, best)
            if found is not None and len(found) > best:
                best = len(found)
                best_clique = sorted(found)

    return [int(order[v]) for v in best_clique], completed


def _color_sort_python(masks, p):
    verts, colors = [], []
    uncolored = p
    c = 0
    while uncolored:
        c += 1
        avail = uncolored
        while avail:
            v = (avail & -avail).bit_length() - 1
            verts.append(v)
            colors.append(c)
            uncolored &= ~(1 << v)
            avail &= ~masks[v]
            avail &= ~(1 << v)
    return verts, colors


def _expand_root_python(masks, n, root, best):
    higher = ((1 << n) - 1) & ~((1 << (root + 1)) - 1)
    p0 = masks[root] & higher
    best_clique = None
    if not p0:
        return None
    verts0, colors0 = _color_sort_python(masks, p0)
    stack = [[p0, verts0, colors0, len(verts0) - 1]]
    chosen = [0] * DEPTH_CAP
    while stack:
        frame = stack[-1]
        p, verts, colors, i = frame
        if i < 0:
            stack.pop()
            continue
        v, c = verts[i], colors[i]
        d = len(stack) - 1
        if d + 1 + c <= best:
            stack.pop()  # colors ascend, nothing later in this frame can win
            continue
        frame[3] = i - 1
        chosen[d] = v
        child = p & masks[v]
        frame[0] = p & ~(1 << v)
        if child == 0:
            if d + 2 > best:
                best = d + 2
                best_clique = [root] + chosen[: d + 1]
        else:
            if len(stack) >= DEPTH_CAP:
                raise RuntimeError("clique search depth cap exceeded")
            cv, cc = _color_sort_python(masks, child)
            stack.append([child, cv, cc, len(cv) - 1])
    return best_clique
