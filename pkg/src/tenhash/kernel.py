"""Anchor-based RBF kernelization of per-view feature matrices.

A view is a d x n matrix with one sample per column. A small set of m
anchor columns is sampled from it, and the view is replaced by the m x n
bipartite similarity graph exp(-||x_i - s_j||^2 / delta).
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import AnchorCountExceedsSamples, NonPositiveBandwidth

# target block size (floats) for the chunked distance computation
_CHUNK_BUDGET = 4_000_000


@dataclass
class AnchorSet:
    """Anchor columns of one view plus the sample indices they came from."""

    anchors: np.ndarray  # d x m
    indices: np.ndarray  # m source column indices, distinct

    @property
    def m(self):
        return self.anchors.shape[1]


def sample_anchors(view, m, seed):
    """Pick m distinct sample columns uniformly without replacement.

    The draw is a seeded partial Fisher-Yates shuffle, so it depends only
    on (n, m, seed): the same seed selects the same sample indices in
    every view, keeping anchors aligned by sample identity across views.
    """
    view = np.asarray(view, dtype=float)
    d, n = view.shape
    if m > n:
        raise AnchorCountExceedsSamples(f"asked for {m} anchors from {n} samples")
    if m < 1:
        raise ValueError(f"anchor count must be >= 1, got {m}")
    rng = np.random.default_rng(seed)
    pool = np.arange(n)
    for i in range(m):
        j = int(rng.integers(i, n))
        pool[i], pool[j] = pool[j], pool[i]
    indices = pool[:m].copy()
    return AnchorSet(anchors=view[:, indices].copy(), indices=indices)


def _squared_distances(view, anchors):
    """m x n matrix of squared sample-anchor distances.

    Computed blockwise from explicit differences so that a sample column
    identical to an anchor column gives an exact zero.
    """
    d, n = view.shape
    m = anchors.shape[1]
    out = np.empty((m, n))
    chunk = max(1, _CHUNK_BUDGET // max(1, d * m))
    a = anchors[:, :, None]  # d x m x 1
    for start in range(0, n, chunk):
        block = view[:, None, start:start + chunk]  # d x 1 x c
        diff = block - a
        out[:, start:start + chunk] = np.einsum("dmc,dmc->mc", diff, diff)
    return out


def estimate_bandwidth(view, anchors):
    """Kernel width heuristic: mean squared sample-anchor distance.

    Falls back to 1.0 in the degenerate case where every sample equals
    every anchor, so the result is always strictly positive.
    """
    view = np.asarray(view, dtype=float)
    anchor_mat = anchors.anchors if isinstance(anchors, AnchorSet) else np.asarray(anchors, dtype=float)
    if view.size == 0 or anchor_mat.size == 0:
        raise ValueError("view and anchors must be nonempty")
    delta = _squared_distances(view, anchor_mat).mean()
    return float(delta) if delta > 0 else 1.0


def kernelize(view, anchors, delta):
    """RBF bipartite graph: entry (j, i) = exp(-||x_i - s_j||^2 / delta)."""
    if delta <= 0:
        raise NonPositiveBandwidth(f"kernel width must be > 0, got {delta}")
    view = np.asarray(view, dtype=float)
    anchor_mat = anchors.anchors if isinstance(anchors, AnchorSet) else np.asarray(anchors, dtype=float)
    return np.exp(-_squared_distances(view, anchor_mat) / delta)


def standardize_features(view):
    """Per-feature z-scoring; constant features are centered only."""
    view = np.asarray(view, dtype=float)
    mean = view.mean(axis=1, keepdims=True)
    std = view.std(axis=1, keepdims=True)
    std[std == 0] = 1.0
    return (view - mean) / std


def kernelize_views(views, m, seed, standardize=True, delta=None):
    """Kernelize every view of a dataset with anchors aligned by sample.

    Returns the list of m x n bipartite graphs. ``delta`` overrides the
    per-view bandwidth heuristic when given.
    """
    graphs = []
    for view in views:
        prepared = standardize_features(view) if standardize else np.asarray(view, dtype=float)
        anchors = sample_anchors(prepared, m, seed)
        width = delta if delta is not None else estimate_bandwidth(prepared, anchors)
        graphs.append(kernelize(prepared, anchors, width))
    return graphs
