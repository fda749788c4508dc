"""Region-wise source selection by average gradient."""

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, as_gray_image, check_same_shape


@dataclass
class RegionDecision:
    region: int
    gradients: tuple
    source: int


def _gradient_terms(a):
    di = a[:-1, :-1] - a[1:, :-1]
    dj = a[:-1, :-1] - a[:-1, 1:]
    return np.sqrt((di * di + dj * dj) / 2.0)


def region_average_gradients(img, labels):
    """Average gradient of every region of `labels` in `img`.

    Only pixels whose lower and right neighbors share their label
    contribute, so no difference straddles two regions. A region without
    such a pixel scores 0.

    Returns
    -------
    ndarray
        Entry ``k - 1`` is the score of label ``k``.
    """
    a = as_gray_image(img)
    labels = np.asarray(labels)
    check_same_shape(a, labels, what="image and labels")
    core = labels[:-1, :-1]
    inside = (core == labels[1:, :-1]) & (core == labels[:-1, 1:])
    n = int(labels.max()) + 1
    keys = core[inside]
    total = np.bincount(keys, weights=_gradient_terms(a)[inside], minlength=n)
    count = np.bincount(keys, minlength=n)
    g = np.divide(total, count, out=np.zeros(n), where=count > 0)
    return g[1:]


def average_gradient_region(img, labels, region):
    g = region_average_gradients(img, labels)
    if not 1 <= region <= g.size:
        raise ConfigError(f"region {region} is not present in the label map")
    return float(g[region - 1])


def select_region_source(gradients):
    """Index of the first source whose gradient is >= every other one."""
    g = np.asarray(gradients, dtype=np.float64)
    if g.size < 2 or not np.all(np.isfinite(g)):
        raise ConfigError("need at least two finite gradient values")
    return int(np.argmax(g))


def fuse(sources, labels):
    """Assemble a fused image region by region from the sharpest source.

    Parameters
    ----------
    sources : sequence of array_like
        Two or more registered gray images of identical shape.
    labels : array_like of int
        Total partition of the image plane (every label >= 1).

    Returns
    -------
    fused : ndarray
        Each pixel copied verbatim from its region's chosen source.
    decisions : list of RegionDecision
        One entry per label present, in increasing label order.
    """
    if len(sources) < 2:
        raise ConfigError("fusion needs at least two sources")
    imgs = [as_gray_image(s, f"source {i}") for i, s in enumerate(sources)]
    labels = np.asarray(labels)
    check_same_shape(*imgs, labels, what="sources and labels")
    if not np.issubdtype(labels.dtype, np.integer) or labels.min() < 1:
        raise ConfigError("labels must be a total partition with positive integer labels")

    g = np.stack([region_average_gradients(im, labels) for im in imgs], axis=1)
    present = np.flatnonzero(np.bincount(labels.ravel())[1:]) + 1
    choice = np.zeros(g.shape[0] + 1, dtype=np.int64)
    decisions = []
    for k in present:
        src = select_region_source(g[k - 1])
        choice[k] = src
        decisions.append(RegionDecision(region=int(k), gradients=tuple(g[k - 1].tolist()),
                                        source=src))
    pick = choice[labels]
    fused = np.choose(pick, imgs)
    return fused, decisions
