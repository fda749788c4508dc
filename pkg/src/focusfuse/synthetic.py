"""Synthetic multi-focus test data made by blurring parts of a sharp image."""

import numpy as np
from scipy import ndimage

from .errors import ConfigError, as_gray_image


def texture(size=256, seed=0):
    """Deterministic detailed 8-bit test image.

    Band-passed noise at several scales plus a few hard-edged shapes, so
    every part of the image carries fine detail that blurring destroys.
    """
    rng = np.random.default_rng(seed)
    yy, xx = np.mgrid[0:size, 0:size]
    img = np.zeros((size, size))
    for scale, weight in ((0.7, 1.0), (1.5, 0.8), (3.0, 0.6), (8.0, 0.5)):
        layer = ndimage.gaussian_filter(rng.standard_normal((size, size)), scale, mode="wrap")
        img += weight * layer / layer.std()
    img += 1.2 * np.sign(np.sin(xx / 5.0) * np.sin(yy / 7.0))
    for _ in range(6):
        cy, cx = rng.integers(0, size, 2)
        r = rng.integers(size // 16, size // 6)
        img[(yy - cy) ** 2 + (xx - cx) ** 2 < r * r] += rng.choice([-1.5, 1.5])
    img = (img - img.min()) / (img.max() - img.min())
    return np.rint(10 + 235 * img)


def _column_bands(width, parts):
    edges = np.linspace(0, width, parts + 1).round().astype(int)
    return list(zip(edges[:-1], edges[1:]))


def make_sources(base, mode="half", sigma=3.0):
    """Split `base` into partially blurred sources.

    ``mode="half"`` gives two sources, the first blurred on the left half
    and the second on the right half. ``mode="thirds"`` gives three, the
    k-th sharp only in the k-th vertical third. Values are rounded to
    integers as if saved as 8-bit images.
    """
    base = as_gray_image(base, "base")
    if not sigma > 0:
        raise ConfigError(f"blur sigma must be positive, got {sigma!r}")
    blurred = np.rint(ndimage.gaussian_filter(base, sigma, mode="reflect"))
    width = base.shape[1]
    if mode == "half":
        bands = _column_bands(width, 2)
        sharp = [bands[1], bands[0]]
    elif mode == "thirds":
        sharp = _column_bands(width, 3)
    else:
        raise ConfigError(f"mode must be 'half' or 'thirds', got {mode!r}")
    sources = []
    for lo, hi in sharp:
        src = blurred.copy()
        src[:, lo:hi] = base[:, lo:hi]
        sources.append(src)
    return sources


def rmse(a, b):
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    return float(np.sqrt(np.mean((a - b) ** 2)))
