"""Pure-numpy kernel implementations.

Every function here has a numba twin in numba_backend.py and the two
must produce bit-identical results.  That constrains the numerics:
float reductions run sequentially (np.cumsum, never np.sum), sorts are
stable mergesorts, argmax picks the first maximum, and arithmetic is
written as the same sequence of elementwise operations the scalar loops
perform.  Change one side only in lockstep with the other.
"""

from __future__ import annotations

import numpy as np


def rank_sorted(sorted_vals: np.ndarray) -> tuple[np.ndarray, float]:
    """Average ranks (1-based) for an ascending array, plus sum(t^3 - t).

    The second value feeds the tie correction of the normal-approximation
    Mann-Whitney variance.
    """
    n = sorted_vals.size
    if n == 0:
        return np.empty(0), 0.0
    is_start = np.concatenate(([True], sorted_vals[1:] != sorted_vals[:-1]))
    starts = np.flatnonzero(is_start)
    ends = np.concatenate((starts[1:], [n]))
    counts = ends - starts
    rank_vals = (starts + ends + 1).astype(np.float64) * 0.5
    ranks = np.repeat(rank_vals, counts)
    t = counts.astype(np.int64)
    tie_term = float(np.sum(t * t * t - t))
    return ranks, tie_term


def pair_counts(a_sorted: np.ndarray, b_sorted: np.ndarray) -> tuple[int, int]:
    """(#pairs a>b, #pairs a<b) between two ascending arrays."""
    lo = np.searchsorted(b_sorted, a_sorted, side="left")
    hi = np.searchsorted(b_sorted, a_sorted, side="right")
    greater = int(lo.sum())
    less = int((b_sorted.size - hi).sum())
    return greater, less


def knn_vote(
    x_train: np.ndarray, y_train: np.ndarray, x_query: np.ndarray, k: int
) -> np.ndarray:
    """Fraction of positive labels among the k nearest training rows.

    Squared Euclidean distance; ties broken by training-row order via a
    stable sort.
    """
    nq = x_query.shape[0]
    nt = x_train.shape[0]
    d2 = np.zeros((nq, nt))
    for f in range(x_train.shape[1]):
        diff = x_query[:, f][:, None] - x_train[:, f][None, :]
        d2 += diff * diff
    nearest = np.argsort(d2, axis=1, kind="mergesort")[:, :k]
    votes = y_train[nearest]
    out = np.empty(nq)
    for i in range(nq):
        count = 0.0
        for j in range(k):
            count += votes[i, j]
        out[i] = count / k
    return out


def tree_leaf_ids(
    node_feat: np.ndarray,
    node_thr: np.ndarray,
    node_left: np.ndarray,
    node_right: np.ndarray,
    x: np.ndarray,
) -> np.ndarray:
    """Index of the leaf each row of x lands in."""
    n = x.shape[0]
    ids = np.zeros(n, dtype=np.int64)
    while True:
        feats = node_feat[ids]
        active = np.flatnonzero(feats >= 0)
        if active.size == 0:
            return ids
        cur = ids[active]
        vals = x[active, node_feat[cur]]
        go_left = vals <= node_thr[cur]
        ids[active] = np.where(go_left, node_left[cur], node_right[cur])


def _scan_split(
    sv: np.ndarray, st: np.ndarray, size: int, min_leaf: int, mode: int
) -> tuple[float, int]:
    """Best (gain, position) for one feature's sorted values.

    Positions are left-side sizes; gain -inf when no valid cut exists.
    """
    lo = min_leaf
    hi = size - min_leaf
    if lo > hi or lo < 1:
        return -np.inf, -1
    prefix = np.cumsum(st)
    total = prefix[size - 1]
    n = float(size)
    if mode == 0:
        qp = total / n
        rp = (n - total) / n
        parent = 1.0 - qp * qp - rp * rp
    else:
        parent = total * total / n
    i_arr = np.arange(lo, hi + 1)
    nl = i_arr.astype(np.float64)
    nr = n - nl
    pl = prefix[lo - 1 : hi]
    pr = total - pl
    if mode == 0:
        ql = pl / nl
        rl = (nl - pl) / nl
        gl = 1.0 - ql * ql - rl * rl
        qr = pr / nr
        rr = (nr - pr) / nr
        gr = 1.0 - qr * qr - rr * rr
        gains = parent - (nl * gl + nr * gr) / n
    else:
        gains = pl * pl / nl + pr * pr / nr - parent
    gains[sv[lo - 1 : hi] == sv[lo : hi + 1]] = -np.inf
    best = int(np.argmax(gains))
    return float(gains[best]), lo + best


def grow_tree(
    x: np.ndarray,
    target: np.ndarray,
    hess: np.ndarray,
    rows0: np.ndarray,
    feat_stream: np.ndarray,
    mode: int,
    max_depth: int,
    min_leaf: int,
    node_feat: np.ndarray,
    node_thr: np.ndarray,
    node_left: np.ndarray,
    node_right: np.ndarray,
    node_value: np.ndarray,
) -> int:
    """Grow one CART tree; returns the number of nodes written.

    mode 0: classification on 0/1 targets, Gini splits, leaves hold the
    positive fraction.  mode 1: regression on `target` with SSE splits,
    leaves hold sum(target)/sum(hess) (a Newton step when hess carries
    p*(1-p), plain mean when hess is all ones).  feat_stream row i lists
    the candidate features for node i.
    """
    rows = rows0.astype(np.int64).copy()
    buf = np.empty_like(rows)
    n_nodes = 1
    stack = [(0, 0, rows.size, 0)]
    while stack:
        node_id, start, end, depth = stack.pop()
        size = end - start
        node_rows = rows[start:end]
        tvals = target[node_rows]
        tsum = float(np.cumsum(tvals)[size - 1]) if size else 0.0
        if mode == 0:
            value = tsum / size
            pure = tsum == 0.0 or tsum == float(size)
        else:
            hvals = hess[node_rows]
            hsum = float(np.cumsum(hvals)[size - 1]) if size else 0.0
            value = tsum / hsum if hsum > 1e-12 else 0.0
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
        for f in feat_stream[node_id]:
            vals = x[node_rows, f]
            order = np.argsort(vals, kind="mergesort")
            gain, pos = _scan_split(vals[order], tvals[order], size, min_leaf, mode)
            if gain > best_gain:
                best_gain = gain
                best_feat = int(f)
                best_pos = pos
        if best_feat < 0:
            continue
        vals = x[node_rows, best_feat]
        order = np.argsort(vals, kind="mergesort")
        lo_v = float(vals[order[best_pos - 1]])
        hi_v = float(vals[order[best_pos]])
        thr = 0.5 * (lo_v + hi_v)
        if thr >= hi_v:  # midpoint rounded up to the right value
            thr = lo_v
        mask = vals <= thr
        n_left = best_pos
        buf[start : start + n_left] = node_rows[mask]
        buf[start + n_left : end] = node_rows[~mask]
        rows[start:end] = buf[start:end]
        left_id = n_nodes
        right_id = n_nodes + 1
        n_nodes += 2
        node_feat[node_id] = best_feat
        node_thr[node_id] = thr
        node_left[node_id] = left_id
        node_right[node_id] = right_id
        stack.append((right_id, start + n_left, end, depth + 1))
        stack.append((left_id, start, start + n_left, depth + 1))
    return n_nodes
