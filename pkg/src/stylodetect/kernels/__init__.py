"""Numeric kernels with two interchangeable backends.

The hot loops of the toolkit (tree growth, tree traversal, neighbor
votes, rank statistics) live here.  `STYLODETECT_NUMBA` picks the
implementation:

* ``auto`` (default): numba when importable, else pure numpy;
* ``1``: numba, failing loudly if it cannot be imported;
* ``0``: pure numpy.

Both backends produce bit-identical outputs, so the flag trades speed,
never results.  `benchmarks/bench_kernels.py` quantifies the gap.
"""

from __future__ import annotations

import os

_FLAG = os.environ.get("STYLODETECT_NUMBA", "auto").strip().lower()

if _FLAG in ("0", "off", "numpy"):
    from . import numpy_backend as _impl

    BACKEND = "numpy"
elif _FLAG in ("1", "on", "numba"):
    from . import numba_backend as _impl

    BACKEND = "numba"
else:
    try:
        from . import numba_backend as _impl

        BACKEND = "numba"
    except ImportError:
        from . import numpy_backend as _impl

        BACKEND = "numpy"

rank_sorted = _impl.rank_sorted
pair_counts = _impl.pair_counts
knn_vote = _impl.knn_vote
tree_leaf_ids = _impl.tree_leaf_ids
grow_tree = _impl.grow_tree

__all__ = [
    "BACKEND",
    "rank_sorted",
    "pair_counts",
    "knn_vote",
    "tree_leaf_ids",
    "grow_tree",
]
