"""Joint segmentation of three sources from their three pairwise class maps.

Each pairwise class map (labels 1..N) is scaled onto its own digit of a
base-(N+1) number, so the per-pixel sum identifies the triple of classes
the pixel belongs to. Distinct sums are the joint regions.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, check_same_shape
from .segmentation import connected_regions


@dataclass
class JointLabelMap:
    """Result of combining three class maps.

    Attributes
    ----------
    labels : ndarray of int
        Per-pixel sum ``A + B + C``.
    dense : ndarray of int
        ``labels`` renumbered 1..K in increasing order of the sum.
    provenance : dict
        Dense index -> (a, b, c) class triple.
    regions : ndarray of int
        4-connected components of ``dense``, numbered 1..R; these are the
        regions handed to fusion.
    n : int
        Cluster count the progressions were built for.
    """

    labels: np.ndarray
    dense: np.ndarray
    provenance: dict = field(default_factory=dict)
    regions: np.ndarray = None
    n: int = 0

    @property
    def num_joint(self):
        return len(self.provenance)


def _check_n(n):
    if int(n) != n or n < 1:
        raise ConfigError(f"cluster count must be a positive integer, got {n!r}")
    return int(n)


def encode(a, b, c, n):
    """Joint label of class triple (a, b, c) for cluster count `n`."""
    n = _check_n(n)
    base = n + 1
    return np.asarray(a) + np.asarray(b) * base + np.asarray(c) * base * base


def decode(label, n):
    """Inverse of :func:`encode`: recover (a, b, c) by base-(n+1) digit extraction."""
    n = _check_n(n)
    base = n + 1
    m = np.asarray(label)
    return m % base, (m // base) % base, m // (base * base)


def relabel_progressions(r_xy, r_xz, r_yz, n):
    """Map the three class maps onto the progressions k, k(N+1) and k(N+1)^2.

    Returns
    -------
    A, B, C : ndarray of int
    """
    n = _check_n(n)
    maps = [np.asarray(r, dtype=np.int64) for r in (r_xy, r_xz, r_yz)]
    check_same_shape(*maps, what="pairwise class maps")
    for name, r in zip(("r_xy", "r_xz", "r_yz"), maps):
        if r.min() < 1 or r.max() > n:
            raise ConfigError(f"{name} has class labels outside [1, {n}]")
    base = n + 1
    return maps[0], maps[1] * base, maps[2] * base * base


def joint_map(a, b, c, n):
    """Sum the three progression planes and enumerate the joint regions."""
    n = _check_n(n)
    check_same_shape(a, b, c, what="progression planes")
    labels = np.asarray(a) + np.asarray(b) + np.asarray(c)
    values, dense = np.unique(labels, return_inverse=True)
    dense = dense.reshape(labels.shape) + 1
    digits = decode(values, n)
    provenance = {i + 1: (int(digits[0][i]), int(digits[1][i]), int(digits[2][i]))
                  for i in range(values.size)}
    return JointLabelMap(labels=labels, dense=dense, provenance=provenance,
                         regions=connected_regions(dense), n=n)


def joint_segmentation(r_xy, r_xz, r_yz, n):
    return joint_map(*relabel_progressions(r_xy, r_xz, r_yz, n), n)
