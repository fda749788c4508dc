"""Immersion watershed (Vincent & Soille) on a 4-connected pixel grid."""

from collections import deque

import numpy as np

from ..errors import as_plane

INIT = -1
MASK = -2
WSHED = 0
_FICTITIOUS = -1


def _neighbor_lists(h, w):
    idx = np.arange(h * w).reshape(h, w)
    cols = []
    for di, dj in ((-1, 0), (0, -1), (0, 1), (1, 0)):
        shifted = np.full((h, w), -1)
        src = idx[max(di, 0):h + min(di, 0), max(dj, 0):w + min(dj, 0)]
        shifted[max(-di, 0):h + min(-di, 0), max(-dj, 0):w + min(-dj, 0)] = src
        cols.append(shifted.ravel())
    table = np.stack(cols, axis=1).tolist()
    return [tuple(q for q in row if q >= 0) for row in table]


def watershed(gradient):
    """Flood `gradient` from its regional minima.

    Every catchment basin receives a distinct positive label (numbered in
    order of discovery, lowest minimum first) and pixels equidistant from
    two basins become watershed lines with label 0. Plateaus are split by
    geodesic distance to their lower border, so a flat plane is one basin.

    Returns
    -------
    ndarray of int
        Label plane with the same shape as `gradient`.
    """
    g = as_plane(gradient, "gradient", min_size=1)
    height, width = g.shape
    n = g.size
    flat = g.ravel()
    order = np.argsort(flat, kind="stable")
    sorted_vals = flat[order]
    cuts = (np.flatnonzero(np.diff(sorted_vals)) + 1).tolist()
    starts = [0] + cuts
    ends = cuts + [n]
    order = order.tolist()

    nbrs = _neighbor_lists(height, width)
    lab = [INIT] * n
    dist = [0] * n
    current = 0
    fifo = deque()

    for s, e in zip(starts, ends):
        level = order[s:e]
        for p in level:
            lab[p] = MASK
            for q in nbrs[p]:
                if lab[q] >= WSHED:
                    dist[p] = 1
                    fifo.append(p)
                    break

        curdist = 1
        fifo.append(_FICTITIOUS)
        while True:
            p = fifo.popleft()
            if p == _FICTITIOUS:
                if not fifo:
                    break
                fifo.append(_FICTITIOUS)
                curdist += 1
                p = fifo.popleft()
            for q in nbrs[p]:
                lq = lab[q]
                if dist[q] < curdist and lq >= WSHED:
                    if lq > 0:
                        if lab[p] == MASK or lab[p] == WSHED:
                            lab[p] = lq
                        elif lab[p] != lq:
                            lab[p] = WSHED
                    elif lab[p] == MASK:
                        lab[p] = WSHED
                elif lq == MASK and dist[q] == 0:
                    dist[q] = curdist + 1
                    fifo.append(q)

        # whatever is still masked at this level starts a new basin
        for p in level:
            dist[p] = 0
            if lab[p] == MASK:
                current += 1
                lab[p] = current
                fifo.append(p)
                while fifo:
                    q = fifo.popleft()
                    for r in nbrs[q]:
                        if lab[r] == MASK:
                            lab[r] = current
                            fifo.append(r)

    return np.array(lab, dtype=np.int64).reshape(height, width)
