"""Numba twins of the numpy kernels.

Same contracts, same numerics, bit for bit: sequential float
accumulation, stable mergesort ordering, first-maximum tie breaks.  The
scalar loops here and the vector expressions in numpy_backend.py are two
spellings of one algorithm; edit them together or not at all.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def rank_sorted(sorted_vals):
    n = sorted_vals.size
    ranks = np.empty(n)
    tie_term = 0.0
    i = 0
    while i < n:
        j = i + 1
        while j < n and sorted_vals[j] == sorted_vals[i]:
            j += 1
        r = (i + j + 1) * 0.5
        for t in range(i, j):
            ranks[t] = r
        c = j - i
        tie_term += c * c * c - c
        i = j
    return ranks, tie_term


@njit(cache=True)
def pair_counts(a_sorted, b_sorted):
    n = a_sorted.size
    m = b_sorted.size
    greater = 0
    less = 0
    jlo = 0
    jhi = 0
    for i in range(n):
        v = a_sorted[i]
        while jlo < m and b_sorted[jlo] < v:
            jlo += 1
        while jhi < m and b_sorted[jhi] <= v:
            jhi += 1
        greater += jlo
        less += m - jhi
    return greater, less


@njit(cache=True)
def knn_vote(x_train, y_train, x_query, k):
    nq = x_query.shape[0]
    nt = x_train.shape[0]
    p = x_train.shape[1]
    out = np.empty(nq)
    d2 = np.empty(nt)
    for i in range(nq):
        for j in range(nt):
            acc = 0.0
            for f in range(p):
                diff = x_query[i, f] - x_train[j, f]
                acc += diff * diff
            d2[j] = acc
        order = np.argsort(d2, kind="mergesort")
        count = 0.0
        for t in range(k):
            count += y_train[order[t]]
        out[i] = count / k
    return out


@njit(cache=True)
def tree_leaf_ids(node_feat, node_thr, node_left, node_right, x):
    n = x.shape[0]
    ids = np.zeros(n, dtype=np.int64)
    for i in range(n):
        node = 0
        while node_feat[node] >= 0:
            if x[i, node_feat[node]] <= node_thr[node]:
                node = node_left[node]
            else:
                node = node_right[node]
        ids[i] = node
    return ids


@njit(cache=True)
def grow_tree(
    x,
    target,
    hess,
    rows0,
    feat_stream,
    mode,
    max_depth,
    min_leaf,
    node_feat,
    node_thr,
    node_left,
    node_right,
    node_value,
):
    n = rows0.size
    rows = rows0.astype(np.int64).copy()
    buf = np.empty_like(rows)
    max_nodes = node_feat.size
    stack_node = np.empty(max_nodes, np.int64)
    stack_start = np.empty(max_nodes, np.int64)
    stack_end = np.empty(max_nodes, np.int64)
    stack_depth = np.empty(max_nodes, np.int64)
    stack_node[0] = 0
    stack_start[0] = 0
    stack_end[0] = n
    stack_depth[0] = 0
    sp = 1
    n_nodes = 1
    mtry = feat_stream.shape[1]
    vals = np.empty(n)
    sv = np.empty(n)
    st = np.empty(n)
    while sp > 0:
        sp -= 1
        node_id = stack_node[sp]
        start = stack_start[sp]
        end = stack_end[sp]
        depth = stack_depth[sp]
        size = end - start
        tsum = 0.0
        for i in range(start, end):
            tsum += target[rows[i]]
        if mode == 0:
            value = tsum / size
            pure = tsum == 0.0 or tsum == float(size)
        else:
            hsum = 0.0
            for i in range(start, end):
                hsum += hess[rows[i]]
            if hsum > 1e-12:
                value = tsum / hsum
            else:
                value = 0.0
            pure = False
        node_value[node_id] = value
        node_feat[node_id] = -1
        node_thr[node_id] = 0.0
        node_left[node_id] = -1
        node_right[node_id] = -1
        if depth >= max_depth or size < 2 * min_leaf or pure:
            continue
        best_gain = 1e-12
        best_feat = -1
        best_pos = -1
        best_thr = 0.0
        nf = float(size)
        for fi in range(mtry):
            f = feat_stream[node_id, fi]
            for i in range(size):
                vals[i] = x[rows[start + i], f]
            order = np.argsort(vals[:size], kind="mergesort")
            for i in range(size):
                sv[i] = vals[order[i]]
                st[i] = target[rows[start + order[i]]]
            total = 0.0
            for i in range(size):
                total += st[i]
            if mode == 0:
                qp = total / nf
                rp = (nf - total) / nf
                parent = 1.0 - qp * qp - rp * rp
            else:
                parent = total * total / nf
            pl_run = 0.0
            for i in range(1, size):
                pl_run += st[i - 1]
                if i < min_leaf or i > size - min_leaf:
                    continue
                if sv[i - 1] == sv[i]:
                    continue
                nl = float(i)
                nr = nf - nl
                pl = pl_run
                pr = total - pl
                if mode == 0:
                    ql = pl / nl
                    rl = (nl - pl) / nl
                    gl = 1.0 - ql * ql - rl * rl
                    qr = pr / nr
                    rr = (nr - pr) / nr
                    gr = 1.0 - qr * qr - rr * rr
                    gain = parent - (nl * gl + nr * gr) / nf
                else:
                    gain = pl * pl / nl + pr * pr / nr - parent
                if gain > best_gain:
                    best_gain = gain
                    best_feat = f
                    best_pos = i
                    best_thr = 0.5 * (sv[i - 1] + sv[i])
                    if best_thr >= sv[i]:  # midpoint rounded up to the right value
                        best_thr = sv[i - 1]
        if best_feat < 0:
            continue
        for i in range(size):
            vals[i] = x[rows[start + i], best_feat]
        li = start
        ri = start + best_pos
        for i in range(size):
            r = rows[start + i]
            if vals[i] <= best_thr:
                buf[li] = r
                li += 1
            else:
                buf[ri] = r
                ri += 1
        for i in range(start, end):
            rows[i] = buf[i]
        left_id = n_nodes
        right_id = n_nodes + 1
        n_nodes += 2
        node_feat[node_id] = best_feat
        node_thr[node_id] = best_thr
        node_left[node_id] = left_id
        node_right[node_id] = right_id
        stack_node[sp] = right_id
        stack_start[sp] = start + best_pos
        stack_end[sp] = end
        stack_depth[sp] = depth + 1
        sp += 1
        stack_node[sp] = left_id
        stack_start[sp] = start
        stack_end[sp] = start + best_pos
        stack_depth[sp] = depth + 1
        sp += 1
    return n_nodes
