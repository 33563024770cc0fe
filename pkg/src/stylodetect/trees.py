"""Decision-tree containers and the growth driver over the kernel backends.

Trees are stored as flat parallel arrays (feature, threshold, children,
value) so the same representation serves the forest, the boosted
ensemble, JSON artifacts, and both kernel backends.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels


@dataclass
class Tree:
    """One grown CART tree; feat is -1 at leaves."""

    feat: np.ndarray
    thr: np.ndarray
    left: np.ndarray
    right: np.ndarray
    value: np.ndarray

    def leaf_values(self, x: np.ndarray) -> np.ndarray:
        ids = kernels.tree_leaf_ids(self.feat, self.thr, self.left, self.right, x)
        return self.value[ids]

    def to_dict(self) -> dict:
        return {
            "feat": self.feat.tolist(),
            "thr": self.thr.tolist(),
            "left": self.left.tolist(),
            "right": self.right.tolist(),
            "value": self.value.tolist(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Tree":
        return cls(
            feat=np.asarray(d["feat"], dtype=np.int64),
            thr=np.asarray(d["thr"], dtype=np.float64),
            left=np.asarray(d["left"], dtype=np.int64),
            right=np.asarray(d["right"], dtype=np.int64),
            value=np.asarray(d["value"], dtype=np.float64),
        )


def node_capacity(n_rows: int, max_depth: int, min_leaf: int) -> int:
    """Upper bound on node count: every leaf holds >= min_leaf rows and the
    tree is at most max_depth deep."""
    by_rows = 2 * max(1, n_rows // max(1, min_leaf)) - 1
    by_depth = 2 ** (max_depth + 1) - 1
    return max(1, min(by_rows, by_depth))


def feature_subsets(max_nodes: int, n_features: int, mtry: int, rng=None) -> np.ndarray:
    """Candidate-feature table, one row per prospective node.

    With an rng each row is an independent draw of mtry features without
    replacement; without one every row lists all features in order.
    """
    base = np.tile(np.arange(n_features, dtype=np.int64), (max_nodes, 1))
    if rng is None:
        return base
    return rng.permuted(base, axis=1)[:, : min(mtry, n_features)]


def grow(
    x: np.ndarray,
    target: np.ndarray,
    hess: np.ndarray,
    rows: np.ndarray,
    feat_stream: np.ndarray,
    mode: int,
    max_depth: int,
    min_leaf: int,
) -> Tree:
    """Grow one tree; mode 0 = Gini classification, mode 1 = SSE regression
    with sum(target)/sum(hess) leaves."""
    max_nodes = feat_stream.shape[0]
    node_feat = np.empty(max_nodes, dtype=np.int64)
    node_thr = np.empty(max_nodes, dtype=np.float64)
    node_left = np.empty(max_nodes, dtype=np.int64)
    node_right = np.empty(max_nodes, dtype=np.int64)
    node_value = np.empty(max_nodes, dtype=np.float64)
    n_nodes = kernels.grow_tree(
        x,
        target,
        hess,
        rows,
        feat_stream,
        mode,
        max_depth,
        min_leaf,
        node_feat,
        node_thr,
        node_left,
        node_right,
        node_value,
    )
    return Tree(
        feat=node_feat[:n_nodes].copy(),
        thr=node_thr[:n_nodes].copy(),
        left=node_left[:n_nodes].copy(),
        right=node_right[:n_nodes].copy(),
        value=node_value[:n_nodes].copy(),
    )
