import numpy as np
from scipy import ndimage
from skimage.measure import label as _label_equal
from skimage.morphology import reconstruction

from ..errors import ConfigError, as_plane

CROSS = np.array([[0, 1, 0], [1, 1, 1], [0, 1, 0]], dtype=bool)


def gradient_magnitude(plane):
    """Sobel gradient magnitude with replicated borders."""
    a = as_plane(plane)
    gy = ndimage.sobel(a, axis=0, mode="nearest")
    gx = ndimage.sobel(a, axis=1, mode="nearest")
    return np.hypot(gx, gy)


def regional_minima(plane):
    """Boolean mask of the 4-connected regional minima of `plane`.

    A regional minimum is a connected plateau of equal values with no
    strictly lower 4-neighbor. A constant plane is one minimum.
    """
    a = np.asarray(plane, dtype=np.float64)
    _, ranks = np.unique(a, return_inverse=True)
    plateaus = _label_equal(ranks.reshape(a.shape) + 1, background=0, connectivity=1)
    lower = np.zeros(a.shape, dtype=bool)
    lower[1:, :] |= a[:-1, :] < a[1:, :]
    lower[:-1, :] |= a[1:, :] < a[:-1, :]
    lower[:, 1:] |= a[:, :-1] < a[:, 1:]
    lower[:, :-1] |= a[:, 1:] < a[:, :-1]
    spoiled = np.bincount(plateaus.ravel(), weights=lower.ravel()) > 0
    return ~spoiled[plateaus]


def h_minima(gradient, h, raise_minima=False):
    """Suppress regional minima whose depth does not exceed `h`.

    Parameters
    ----------
    gradient : array_like
        Plane to simplify.
    h : float
        Depth threshold, ``h >= 0``.
    raise_minima : bool
        If True return the classical transform, the reconstruction by
        erosion of ``gradient + h`` over ``gradient``: shallow minima are
        filled and the surviving ones are lifted by `h`. The default keeps
        surviving minima at their original values and only fills the
        shallow ones up to their spill level, which makes the operator
        idempotent.

    Returns
    -------
    ndarray
        A plane that is ``>= gradient`` everywhere, equal to it when ``h == 0``.
    """
    if not np.isfinite(h) or h < 0:
        raise ConfigError(f"h must be a finite non-negative depth, got {h!r}")
    g = as_plane(gradient, "gradient", min_size=1)
    if h == 0:
        return g.copy()
    lifted = reconstruction(g + h, g, method="erosion", footprint=CROSS)
    if raise_minima:
        return lifted

    # keep only the deepest pixels of every surviving basin as seeds
    basins, n = ndimage.label(regional_minima(lifted), structure=CROSS)
    floor = ndimage.minimum(g, basins, index=np.arange(1, n + 1))
    seeds = (basins > 0) & (g == np.concatenate([[np.inf], floor])[basins])
    marker = np.where(seeds, g, g.max())
    return reconstruction(marker, g, method="erosion", footprint=CROSS)
