"""Pure-NumPy implementation of the projection-statistics kernels.

Mirrors ``_kernels.pyx`` operation for operation so that both backends return
bit-identical results.  Columns of the input are processed independently, so
the work is vectorised across all directions at once.
"""
import numpy as np

MAD_CONSTANT = 1.4826
QN_CONSTANT = 1.1926


def _median_sorted(s):
    n = s.shape[0]
    h = n // 2
    if n % 2:
        return s[h]
    return (s[h - 1] + s[h]) / 2.0


def _lomed_index(n):
    # 0-based index of the floor((n + 1) / 2)-th order statistic
    return (n - 1) // 2


def inner_lomeds_sorted(s):
    """For sorted columns ``s`` (shape ``(n, M)``), return ``lomed_{j != k} |s_k - s_j|``.

    Uses a k-th-of-two-sorted-lists binary search per entry: distances to the
    left of ``s_k`` and to its right are each already sorted.
    """
    s = np.asarray(s, dtype=float)
    squeeze = s.ndim == 1
    if squeeze:
        s = s[:, np.newaxis]
    n, M = s.shape
    q = n // 2  # 1-based rank of the low median among n - 1 distances
    k = np.arange(n)[:, np.newaxis]
    cols = np.arange(M)[np.newaxis, :]
    lo = np.broadcast_to(np.maximum(0, q - (n - 1 - k)), (n, M)).copy()
    hi = np.broadcast_to(np.minimum(q, k), (n, M)).copy()
    while True:
        active = lo < hi
        if not active.any():
            break
        mid = (lo + hi) // 2
        li = np.where(active, k - 1 - mid, 0)
        ri = np.where(active, k + q - mid, 0)
        left = s[k, cols] - s[li, cols]
        right = s[ri, cols] - s[k, cols]
        go_right = active & (left < right)
        lo = np.where(go_right, mid + 1, lo)
        hi = np.where(active & ~go_right, mid, hi)
    i = lo
    neg = -np.inf
    left = np.where(i > 0, s[k, cols] - s[np.where(i > 0, k - i, 0), cols], neg)
    has_r = (q - i) > 0
    right = np.where(has_r, s[np.where(has_r, k + q - i, 0), cols] - s[k, cols], neg)
    out = np.maximum(left, right)
    return out[:, 0] if squeeze else out


def qn_raw(x):
    """``lomed_k lomed_{j != k} |x_k - x_j|`` without the consistency factor."""
    s = np.sort(np.asarray(x, dtype=float))
    inner = inner_lomeds_sorted(s)
    return float(np.partition(inner, _lomed_index(inner.shape[0]))[_lomed_index(inner.shape[0])])


def ps_from_projections(proj, use_qn):
    """Projection statistics from a matrix of projections.

    Parameters
    ----------
    proj : ndarray, shape (N, M)
        ``proj[k, j]`` is point ``k`` projected on direction ``j``.
    use_qn : bool
        Use the nested low-median scale; otherwise the scaled MAD.

    Returns
    -------
    d_ps : ndarray, shape (N,)
    n_used : int
        Number of directions with nonzero scale.
    """
    proj = np.asarray(proj, dtype=float)
    n, M = proj.shape
    if M == 0:
        return np.zeros(n), 0
    s = np.sort(proj, axis=0)
    med = _median_sorted(s)
    if use_qn:
        inner = inner_lomeds_sorted(s)
        idx = _lomed_index(n)
        scale = QN_CONSTANT * np.partition(inner, idx, axis=0)[idx]
    else:
        dev = np.sort(np.abs(proj - med), axis=0)
        scale = MAD_CONSTANT * _median_sorted(dev)
    valid = scale > 0
    n_used = int(valid.sum())
    if n_used == 0:
        return np.zeros(n), 0
    ratios = np.abs(proj[:, valid] - med[valid]) / scale[valid]
    return ratios.max(axis=1), n_used
