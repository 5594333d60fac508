"""numba implementations behind kernels.py; import only through that module."""

import numpy as np
from numba import njit, prange


@njit(cache=True, parallel=True)
def cayley_table_mat2(entries, pos, add_t, mul_t):
    n = entries.shape[0]
    q = add_t.shape[0]
    out = np.empty((n, n), dtype=np.int32)
    for i in prange(n):
        a1, b1, c1, d1 = entries[i, 0], entries[i, 1], entries[i, 2], entries[i, 3]
        for j in range(n):
            a2, b2, c2, d2 = entries[j, 0], entries[j, 1], entries[j, 2], entries[j, 3]
            e0 = add_t[mul_t[a1, a2], mul_t[b1, c2]]
            e1 = add_t[mul_t[a1, b2], mul_t[b1, d2]]
            e2 = add_t[mul_t[c1, a2], mul_t[d1, c2]]
            e3 = add_t[mul_t[c1, b2], mul_t[d1, d2]]
            out[i, j] = pos[((e0 * q + e1) * q + e2) * q + e3]
    return out


@njit(cache=True)
def product_indices_mat2(entries, pos, add_t, mul_t, ia, ib):
    q = add_t.shape[0]
    m = ia.shape[0]
    out = np.empty(m, dtype=np.int32)
    for k in range(m):
        i, j = ia[k], ib[k]
        a1, b1, c1, d1 = entries[i, 0], entries[i, 1], entries[i, 2], entries[i, 3]
        a2, b2, c2, d2 = entries[j, 0], entries[j, 1], entries[j, 2], entries[j, 3]
        e0 = add_t[mul_t[a1, a2], mul_t[b1, c2]]
        e1 = add_t[mul_t[a1, b2], mul_t[b1, d2]]
        e2 = add_t[mul_t[c1, a2], mul_t[d1, c2]]
        e3 = add_t[mul_t[c1, b2], mul_t[d1, d2]]
        out[k] = pos[((e0 * q + e1) * q + e2) * q + e3]
    return out


@njit(cache=True, parallel=True)
def commute_matrix_mat2(entries, add_t, mul_t):
    n = entries.shape[0]
    out = np.empty((n, n), dtype=np.bool_)
    for i in prange(n):
        a1, b1, c1, d1 = entries[i, 0], entries[i, 1], entries[i, 2], entries[i, 3]
        for j in range(n):
            a2, b2, c2, d2 = entries[j, 0], entries[j, 1], entries[j, 2], entries[j, 3]
            ok = (
                add_t[mul_t[a1, a2], mul_t[b1, c2]] == add_t[mul_t[a2, a1], mul_t[b2, c1]]
                and add_t[mul_t[a1, b2], mul_t[b1, d2]] == add_t[mul_t[a2, b1], mul_t[b2, d1]]
                and add_t[mul_t[c1, a2], mul_t[d1, c2]] == add_t[mul_t[c2, a1], mul_t[d2, c1]]
                and add_t[mul_t[c1, b2], mul_t[d1, d2]] == add_t[mul_t[c2, b1], mul_t[d2, d1]]
            )
            out[i, j] = ok
    return out


@njit(cache=True)
def _ctz(w):
    b = 0
    while (w >> np.uint64(b)) & np.uint64(1) == np.uint64(0):
        b += 1
    return b


@njit(cache=True)
def _color_sort(words, pw, verts, colors):
    """Greedy color classes over the bitset pw, lowest vertex first per class.

    Writes the vertices grouped by ascending color into verts/colors and
    returns how many there are.  Must visit vertices in the same order as the
    python fallback or the two backends drift apart.
    """
    nw = pw.shape[0]
    unc = pw.copy()
    avail = np.empty(nw, dtype=np.uint64)
    k = 0
    c = 0
    while True:
        nonzero = False
        for w in range(nw):
            if unc[w] != np.uint64(0):
                nonzero = True
                break
        if not nonzero:
            break
        c += 1
        for w in range(nw):
            avail[w] = unc[w]
        while True:
            vi = -1
            for w in range(nw):
                if avail[w] != np.uint64(0):
                    vi = w * 64 + _ctz(avail[w])
                    break
            if vi < 0:
                break
            verts[k] = vi
            colors[k] = c
            k += 1
            unc[vi // 64] &= ~(np.uint64(1) << np.uint64(vi % 64))
            for w in range(nw):
                avail[w] &= ~words[vi, w]
            avail[vi // 64] &= ~(np.uint64(1) << np.uint64(vi % 64))
    return k


@njit(cache=True)
def clique_expand_root(words, root, best, ws_p, ws_verts, ws_colors, ws_cnt, ws_pos, chosen, out):
    """Branch and bound below one root vertex; returns the best clique size seen.

    Candidates are the root's neighbors with a larger index.  When the return
    value beats the best that was passed in, out[:size] holds the clique.
    """
    nw = words.shape[1]
    depth_cap = ws_p.shape[0]
    for w in range(nw):
        ws_p[0, w] = words[root, w]
    wi = root // 64
    bi = root % 64
    for w in range(wi):
        ws_p[0, w] = np.uint64(0)
    if bi == 63:
        ws_p[0, wi] = np.uint64(0)
    else:
        ws_p[0, wi] &= (~np.uint64(0)) << np.uint64(bi + 1)
    empty = True
    for w in range(nw):
        if ws_p[0, w] != np.uint64(0):
            empty = False
            break
    if empty:
        return best
    cnt = _color_sort(words, ws_p[0], ws_verts[0], ws_colors[0])
    ws_cnt[0] = cnt
    ws_pos[0] = cnt - 1
    d = 0
    while d >= 0:
        i = ws_pos[d]
        if i < 0:
            d -= 1
            continue
        v = ws_verts[d, i]
        c = ws_colors[d, i]
        if d + 1 + c <= best:
            d -= 1  # colors ascend within the frame, nothing left can win
            continue
        ws_pos[d] = i - 1
        chosen[d] = v
        if d + 1 >= depth_cap:
            raise RuntimeError("clique search depth cap exceeded")
        child_empty = True
        for w in range(nw):
            cw = ws_p[d, w] & words[v, w]
            ws_p[d + 1, w] = cw
            if cw != np.uint64(0):
                child_empty = False
        ws_p[d, v // 64] &= ~(np.uint64(1) << np.uint64(v % 64))
        if child_empty:
            if d + 2 > best:
                best = d + 2
                out[0] = root
                for t in range(d + 1):
                    out[t + 1] = chosen[t]
        else:
            cnt = _color_sort(words, ws_p[d + 1], ws_verts[d + 1], ws_colors[d + 1])
            ws_cnt[d + 1] = cnt
            ws_pos[d + 1] = cnt - 1
            d += 1
    return best
