"""Segmentation of a signed non-similarity map into focus regions.

The chain is: Sobel gradient -> h-minima suppression -> watershed ->
mean value per basin -> fuzzy c-means on those means -> merge basins by
class, absorb watershed lines, and split classes into connected regions.
"""

from dataclasses import dataclass

import numpy as np
from skimage.measure import label as _label_equal

from ..errors import ConfigError, DegenerateInputError, as_plane, check_same_shape
from ._fcm import ClusterResult, fcm
from ._morphology import gradient_magnitude, h_minima, regional_minima
from ._watershed import watershed

__all__ = [
    "ClusterResult", "RegionFeatures", "Segmentation", "SegmentationParams",
    "connected_regions", "fcm", "gradient_magnitude", "h_minima", "merge_regions",
    "region_features", "regional_minima", "segment", "watershed",
]

# spread below which a map counts as constant; values live in [-2, 2]
FLAT_TOL = 1e-12


@dataclass(frozen=True)
class SegmentationParams:
    """Tunables of the segmentation chain.

    ``h`` is a fraction of the gradient's dynamic range when ``h_mode`` is
    "relative" and an absolute depth when it is "absolute".
    """

    n_cluster: int = 5
    h: float = 0.05
    h_mode: str = "relative"
    fuzzifier: float = 2.0
    tol: float = 1e-6
    max_iter: int = 300
    seed: int | None = None
    fcm_init: str = "quantile"

    def __post_init__(self):
        if int(self.n_cluster) != self.n_cluster or self.n_cluster < 2:
            raise ConfigError(f"n_cluster must be an integer >= 2, got {self.n_cluster!r}")
        if self.h_mode not in ("relative", "absolute"):
            raise ConfigError(f"h_mode must be 'relative' or 'absolute', got {self.h_mode!r}")
        if not (np.isfinite(self.h) and self.h >= 0):
            raise ConfigError(f"h must be a finite non-negative number, got {self.h!r}")
        if not self.fuzzifier > 1:
            raise ConfigError(f"fuzzifier must be > 1, got {self.fuzzifier!r}")
        if not self.tol > 0 or int(self.max_iter) != self.max_iter or self.max_iter < 1:
            raise ConfigError("tol must be positive and max_iter a positive integer")
        if self.fcm_init not in ("quantile", "random"):
            raise ConfigError(f"fcm_init must be 'quantile' or 'random', got {self.fcm_init!r}")

    def depth_for(self, gradient):
        if self.h_mode == "absolute":
            return float(self.h)
        return float(self.h * (gradient.max() - gradient.min()))


@dataclass
class RegionFeatures:
    """Mean SSNSIM (``mns``) and pixel count of regions ``1..len(mns)``."""

    mns: np.ndarray
    pixel_count: np.ndarray

    @property
    def num_regions(self):
        return len(self.mns)


@dataclass
class Segmentation:
    """Every stage of one segmentation run.

    ``classes`` holds the cluster index (1..n_cluster) of each pixel and
    ``regions`` the final connected regions numbered 1..K.
    """

    gradient: np.ndarray
    modified_gradient: np.ndarray
    watershed: np.ndarray
    features: RegionFeatures
    cluster: ClusterResult
    classes: np.ndarray
    regions: np.ndarray
    n_cluster: int

    @property
    def num_regions(self):
        return int(self.regions.max())


def region_features(labels, ssnsim):
    """Mean of `ssnsim` over each positive label; label 0 is ignored.

    Labels are expected to be 1..num_regions with every label present.
    """
    labels = np.asarray(labels)
    values = as_plane(ssnsim, "ssnsim")
    check_same_shape(labels, values, what="labels and ssnsim")
    num = int(labels.max())
    if num < 1:
        raise ConfigError("label map contains no region")
    flat = labels.ravel()
    count = np.bincount(flat, minlength=num + 1)[1:]
    if np.any(count == 0):
        raise ConfigError("labels must be consecutive 1..num_regions")
    total = np.bincount(flat, weights=values.ravel(), minlength=num + 1)[1:]
    return RegionFeatures(mns=total / count, pixel_count=count)


def connected_regions(labels):
    """Split every label into its 4-connected components, numbered 1..K in raster order."""
    labels = np.asarray(labels)
    return _label_equal(labels, background=-1, connectivity=1).astype(np.int64)


def merge_regions(labels, cluster, ssnsim):
    """Merge watershed basins by cluster and absorb the watershed lines.

    Each basin takes the class of its cluster. A line pixel touching a
    single class joins it; a line pixel touching several joins the one
    whose center is closest to the pixel's own SSNSIM value. Lines that
    touch no class yet are resolved in later sweeps.

    Returns
    -------
    classes : ndarray of int
        Class index (1..n_cluster) per pixel, no zeros.
    regions : ndarray of int
        Connected components of `classes`, numbered 1..K.
    """
    labels = np.asarray(labels)
    values = as_plane(ssnsim, "ssnsim")
    check_same_shape(labels, values, what="labels and ssnsim")
    lookup = np.concatenate([[0], np.asarray(cluster.assignment, dtype=np.int64)])
    if labels.max() >= lookup.size:
        raise ConfigError("cluster assignment does not cover every region")
    classes = lookup[labels]
    centers = np.asarray(cluster.centers, dtype=np.float64)
    k = np.arange(1, centers.size + 1)[:, None, None]

    while True:
        pending = classes == 0
        if not pending.any():
            break
        padded = np.pad(classes, 1)
        around = np.stack([padded[:-2, 1:-1], padded[2:, 1:-1],
                           padded[1:-1, :-2], padded[1:-1, 2:]])
        present = (around[None] == k[..., None]).any(axis=1)
        ready = pending & present.any(axis=0)
        if not ready.any():
            raise ConfigError("label map has no region to grow from")
        gap = np.where(present, np.abs(values[None] - centers[:, None, None]), np.inf)
        # argmin picks the lowest class on exact ties
        classes = np.where(ready, np.argmin(gap, axis=0) + 1, classes)

    return classes, connected_regions(classes)


def segment(ssnsim, params=None):
    """Run the full segmentation chain on a signed non-similarity map.

    If the watershed leaves fewer distinct region means than
    ``params.n_cluster``, the cluster count is lowered to match.

    Raises
    ------
    DegenerateInputError
        When the map is flat to within `FLAT_TOL` or every region has the
        same mean.
    """
    params = params or SegmentationParams()
    values = as_plane(ssnsim, "ssnsim")
    if np.ptp(values) <= FLAT_TOL:
        # identical sources leave only rounding noise, which would be segmented as texture
        raise DegenerateInputError("the non-similarity map is flat; the sources look identical")
    grad = gradient_magnitude(values)
    modified = h_minima(grad, params.depth_for(grad))
    basins = watershed(modified)
    feats = region_features(basins, values)
    n_eff = max(2, min(params.n_cluster, np.unique(feats.mns).size))
    cluster = fcm(feats, n_eff,
                  m=params.fuzzifier, tol=params.tol, max_iter=params.max_iter,
                  seed=params.seed, init=params.fcm_init)
    classes, regions = merge_regions(basins, cluster, values)
    return Segmentation(gradient=grad, modified_gradient=modified, watershed=basins,
                        features=feats, cluster=cluster, classes=classes,
                        regions=regions, n_cluster=cluster.centers.size)
