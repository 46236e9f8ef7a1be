"""Vectorized float-mode kernels and the greedy degrading merge.

The float path keeps component lists as numpy arrays between transforms; the
merge loop is compiled with numba. A pure-Python twin of the merge serves the
exact mode and doubles as a reference for the compiled version.
"""

from __future__ import annotations

import heapq
import math

import numpy as np
from numba import njit

MERGE_TOL = 1e-12
WEIGHT_TOL = 1e-9


def star_arr(a, b):
    return (1 - a) * b + a * (1 - b)


def diamond_arr(a, b):
    num = a * b
    den = num + (1 - a) * (1 - b)
    boundary = (a == 0) | (a == 1) | (b == 0) | (b == 1)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = num / np.where(boundary, 1.0, den)
    return np.where(boundary, 0.0, out)


def group_starts(eps, tol=MERGE_TOL):
    """Boolean mask of group starts for sorted probabilities in [0, 1].

    Neighbours join a group when their gap is at most ``tol`` times the
    distance to the nearer end of [0, 1]. The tolerance is relative because
    square-root metrics resolve crossovers near 0 far more finely than an
    absolute gap would.
    """
    scale = np.minimum(eps[:-1], 1.0 - eps[1:])
    return np.concatenate(([True], np.diff(eps) > tol * scale))


def canonical_arrays(eps, weights, tol=MERGE_TOL):
    """Fold, drop empty entries, sort and merge near-equal crossovers.

    Groups follow :func:`group_starts`; a group's crossover is the weighted mean.
    """
    eps = np.asarray(eps, dtype=np.float64)
    weights = np.asarray(weights, dtype=np.float64)
    eps = np.where(eps > 0.5, 1.0 - eps, eps)
    keep = weights > 0
    eps, weights = eps[keep], weights[keep]
    order = np.argsort(eps, kind="stable")
    eps, weights = eps[order], weights[order]
    if eps.size == 0:
        return eps, weights
    idx = np.flatnonzero(group_starts(eps, tol))
    w = np.add.reduceat(weights, idx)
    if idx.size == eps.size:
        e = eps
    else:
        # rounding (subnormal products in particular) must not push a mean outside its group
        last = np.append(idx[1:], eps.size) - 1
        e = np.clip(np.add.reduceat(weights * eps, idx) / w, eps[idx], eps[last])
    return np.clip(e, 0.0, 0.5), w / w.sum()


def _pairs(e0, w0, e1, w1, self_pair):
    if self_pair:
        i, j = np.triu_indices(e0.size)
        wp = w0[i] * w0[j]
        wp = np.where(i < j, 2.0 * wp, wp)
        return e0[i], e0[j], wp
    a = np.repeat(e0, e1.size)
    b = np.tile(e1, e0.size)
    wp = np.outer(w0, w1).ravel()
    return a, b, wp


def a0_arrays(e0, w0, e1, w1, self_pair=False):
    a, b, wp = _pairs(e0, w0, e1, w1, self_pair)
    return canonical_arrays(star_arr(a, b), wp)


def a1_arrays(e0, w0, e1, w1, self_pair=False):
    a, b, wp = _pairs(e0, w0, e1, w1, self_pair)
    b_bar = 1 - b
    eps = np.concatenate((diamond_arr(a, b), diamond_arr(a, b_bar)))
    wts = np.concatenate((star_arr(a, b_bar) * wp, star_arr(a, b) * wp))
    return canonical_arrays(eps, wts)


@njit(cache=True, nogil=True)
def _h(e):
    if e <= 0.0 or e >= 1.0:
        return 0.0
    return -e * np.log2(e) - (1.0 - e) * np.log2(1.0 - e)


@njit(cache=True, nogil=True)
def _heap_less(k1, i1, k2, i2):
    return k1 < k2 or (k1 == k2 and i1 < i2)


@njit(cache=True, nogil=True)
def _heap_push(keys, ids, vers, size, k, i, v):
    pos = size
    keys[pos] = k
    ids[pos] = i
    vers[pos] = v
    while pos > 0:
        parent = (pos - 1) // 2
        if _heap_less(keys[pos], ids[pos], keys[parent], ids[parent]):
            keys[pos], keys[parent] = keys[parent], keys[pos]
            ids[pos], ids[parent] = ids[parent], ids[pos]
            vers[pos], vers[parent] = vers[parent], vers[pos]
            pos = parent
        else:
            break
    return size + 1


@njit(cache=True, nogil=True)
def _heap_pop(keys, ids, vers, size):
    k, i, v = keys[0], ids[0], vers[0]
    size -= 1
    keys[0], ids[0], vers[0] = keys[size], ids[size], vers[size]
    pos = 0
    while True:
        left = 2 * pos + 1
        if left >= size:
            break
        child = left
        right = left + 1
        if right < size and _heap_less(keys[right], ids[right], keys[left], ids[left]):
            child = right
        if _heap_less(keys[child], ids[child], keys[pos], ids[pos]):
            keys[pos], keys[child] = keys[child], keys[pos]
            ids[pos], ids[child] = ids[child], ids[pos]
            vers[pos], vers[child] = vers[child], vers[pos]
            pos = child
        else:
            break
    return k, i, v, size


@njit(cache=True, nogil=True)
def greedy_merge_compiled(eps, weights, cap):
    n = eps.size
    e = eps.copy()
    w = weights.copy()
    h = np.empty(n)
    for t in range(n):
        h[t] = _h(e[t])
    prev = np.arange(-1, n - 1)
    nxt = np.arange(1, n + 1)
    nxt[n - 1] = -1
    alive = np.ones(n, dtype=np.bool_)
    version = np.zeros(n, dtype=np.int64)
    cap_heap = 3 * n + 1
    keys = np.empty(cap_heap)
    ids = np.empty(cap_heap, dtype=np.int64)
    vers = np.empty(cap_heap, dtype=np.int64)
    size = 0
    for t in range(n - 1):
        wt = w[t] + w[t + 1]
        et = (w[t] * e[t] + w[t + 1] * e[t + 1]) / wt
        loss = wt * _h(et) - w[t] * h[t] - w[t + 1] * h[t + 1]
        size = _heap_push(keys, ids, vers, size, loss, t, 0)
    count = n
    while count > cap and size > 0:
        _, i, v, size = _heap_pop(keys, ids, vers, size)
        if not alive[i] or version[i] != v or nxt[i] == -1:
            continue
        j = nxt[i]
        wt = w[i] + w[j]
        e[i] = (w[i] * e[i] + w[j] * e[j]) / wt
        w[i] = wt
        h[i] = _h(e[i])
        alive[j] = False
        nxt[i] = nxt[j]
        if nxt[j] != -1:
            prev[nxt[j]] = i
        version[i] += 1
        count -= 1
        p = prev[i]
        if p != -1:
            version[p] += 1
            wt = w[p] + w[i]
            et = (w[p] * e[p] + w[i] * e[i]) / wt
            loss = wt * _h(et) - w[p] * h[p] - w[i] * h[i]
            size = _heap_push(keys, ids, vers, size, loss, p, version[p])
        q = nxt[i]
        if q != -1:
            wt = w[i] + w[q]
            et = (w[i] * e[i] + w[q] * e[q]) / wt
            loss = wt * _h(et) - w[i] * h[i] - w[q] * h[q]
            size = _heap_push(keys, ids, vers, size, loss, i, version[i])
    return e[alive], w[alive]


def _h_py(e):
    e = float(e)
    if e <= 0.0 or e >= 1.0:
        return 0.0
    return -e * math.log2(e) - (1.0 - e) * math.log2(1.0 - e)


def greedy_merge_python(eps, weights, cap):
    """Reference greedy merge on Python sequences (exact or float scalars).

    Repeatedly merges the adjacent pair whose weighted-mean merge loses the
    least capacity; ties go to the pair with the smaller lower crossover.
    """
    e = list(eps)
    w = list(weights)
    n = len(e)
    h = [_h_py(x) for x in e]
    prev = list(range(-1, n - 1))
    nxt = list(range(1, n + 1))
    nxt[-1] = -1
    alive = [True] * n
    version = [0] * n

    def loss(a, b):
        wt = w[a] + w[b]
        et = (w[a] * e[a] + w[b] * e[b]) / wt
        return float(wt) * _h_py(et) - float(w[a]) * h[a] - float(w[b]) * h[b]

    heap = [(loss(t, t + 1), t, 0) for t in range(n - 1)]
    heapq.heapify(heap)
    count = n
    while count > cap and heap:
        _, i, v = heapq.heappop(heap)
        if not alive[i] or version[i] != v or nxt[i] == -1:
            continue
        j = nxt[i]
        wt = w[i] + w[j]
        e[i] = (w[i] * e[i] + w[j] * e[j]) / wt
        w[i] = wt
        h[i] = _h_py(e[i])
        alive[j] = False
        nxt[i] = nxt[j]
        if nxt[j] != -1:
            prev[nxt[j]] = i
        version[i] += 1
        count -= 1
        p = prev[i]
        if p != -1:
            version[p] += 1
            heapq.heappush(heap, (loss(p, i), p, version[p]))
        if nxt[i] != -1:
            heapq.heappush(heap, (loss(i, nxt[i]), i, version[i]))
    keep = [t for t in range(n) if alive[t]]
    return [e[t] for t in keep], [w[t] for t in keep]


@njit(cache=True, nogil=True)
def _bin_add(acc_w, acc_we, e, w, nbins):
    if w <= 0.0:
        return
    if e > 0.5:
        e = 1.0 - e
    b = int(_h(e) * nbins)
    if b >= nbins:
        b = nbins - 1
    acc_w[b] += w
    acc_we[b] += w * e


@njit(cache=True, nogil=True)
def _diamond_scalar(a, b):
    if a == 0.0 or a == 1.0 or b == 0.0 or b == 1.0:
        return 0.0
    num = a * b
    return num / (num + (1.0 - a) * (1.0 - b))


@njit(cache=True, nogil=True)
def transform_binned(bit, e0, w0, e1, w1, self_pair, nbins):
    """Apply ``a0`` (bit 0) or ``a1`` (bit 1) and pool outputs into entropy bins.

    Bin ``j`` collects outputs with ``h(eps)`` in ``[j/nbins, (j+1)/nbins)`` at
    their weighted-mean crossover. Every pooling step is a merge of outputs
    inside one crossover interval, so the result is a degradation of the exact
    transform losing at most ``1/nbins`` bits of capacity.
    """
    acc_w = np.zeros(nbins)
    acc_we = np.zeros(nbins)
    for i in range(e0.size):
        a = e0[i]
        start = i if self_pair else 0
        for j in range(start, e1.size):
            b = e1[j]
            wp = w0[i] * w1[j]
            if self_pair and i < j:
                wp *= 2.0
            if bit == 0:
                _bin_add(acc_w, acc_we, (1.0 - a) * b + a * (1.0 - b), wp, nbins)
            else:
                b_bar = 1.0 - b
                _bin_add(acc_w, acc_we, _diamond_scalar(a, b), ((1.0 - a) * b_bar + a * b) * wp, nbins)
                _bin_add(acc_w, acc_we, _diamond_scalar(a, b_bar), ((1.0 - a) * b + a * b_bar) * wp, nbins)
    keep = acc_w > 0.0
    return acc_we[keep] / acc_w[keep], acc_w[keep]
