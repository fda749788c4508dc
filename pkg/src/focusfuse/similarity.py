"""Windowed statistics, SSIM and the signed structural non-similarity map.

All statistics use a uniform square window of radius ``r`` that is clipped
at the image border, so every plane has the same shape as its source.
Variances use population normalization.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy import ndimage

from .errors import ConfigError, as_gray_image, check_same_shape

L_MAX = 255.0


@dataclass(frozen=True)
class SsimParams:
    """Exponents, stabilizing constants and window radius for SSIM.

    Defaults follow the usual 8-bit convention: C1 = (0.01 L)^2,
    C2 = (0.03 L)^2, C3 = C2 / 2, unit exponents and a 7x7 window.
    """

    alpha: float = 1.0
    beta: float = 1.0
    gamma: float = 1.0
    c1: float = (0.01 * L_MAX) ** 2
    c2: float = (0.03 * L_MAX) ** 2
    c3: float = (0.03 * L_MAX) ** 2 / 2
    window_radius: int = 3

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma", "c1", "c2", "c3"):
            v = getattr(self, name)
            if not (np.isfinite(v) and v > 0):
                raise ConfigError(f"{name} must be a positive finite number, got {v!r}")
        _check_radius(self.window_radius)


@dataclass
class WindowStats:
    mu: np.ndarray
    sigma: np.ndarray
    window_radius: int


@dataclass
class SsimMaps:
    """Per-pixel similarity planes for a pair of images.

    ``sign`` is +1 where the first image has the larger local standard
    deviation and -1 otherwise (ties included).
    """

    ssim: np.ndarray
    snsim: np.ndarray
    sign: np.ndarray
    ssnsim: np.ndarray
    sigma_xy: np.ndarray
    stats_x: WindowStats = field(repr=False)
    stats_y: WindowStats = field(repr=False)


def _check_radius(r):
    if isinstance(r, bool) or int(r) != r:
        raise ConfigError(f"window_radius must be an integer, got {r!r}")
    if r < 1:
        raise ConfigError("window_radius must be >= 1; a single-pixel window has no spread")


def _window_count(shape, r):
    box = np.ones((2 * r + 1, 2 * r + 1))
    return ndimage.correlate(np.ones(shape), box, mode="constant", cval=0.0)


def _window_mean(a, r):
    # correlating with a box of ones under zero padding gives the clipped-window sum
    box = np.ones((2 * r + 1, 2 * r + 1))
    return ndimage.correlate(a, box, mode="constant", cval=0.0) / _window_count(a.shape, r)


def _offsets(a, r):
    """Yield the window neighbor of every pixel for each offset; NaN outside the image."""
    padded = np.pad(a, r, constant_values=np.nan)
    rows, cols = a.shape
    for di in range(2 * r + 1):
        for dj in range(2 * r + 1):
            yield padded[di:di + rows, dj:dj + cols]


def _centered_moments(planes, means, r):
    """Population second moments about each pixel's own window mean.

    Summing squared deviations from the window mean avoids the cancellation
    of E[x^2] - mu^2 in nearly flat windows.
    """
    count = _window_count(planes[0].shape, r)
    acc = {}
    for views in zip(*(_offsets(p, r) for p in planes)):
        valid = ~np.isnan(views[0])
        dev = [np.where(valid, v - m, 0.0) for v, m in zip(views, means)]
        for i in range(len(dev)):
            for j in range(i, len(dev)):
                acc[i, j] = acc.get((i, j), 0.0) + dev[i] * dev[j]
    return {k: v / count for k, v in acc.items()}


def window_stats(img, window_radius=3):
    """Local mean and population standard deviation over a clipped square window.

    Parameters
    ----------
    img : array_like
        Gray image with values in [0, 255].
    window_radius : int
        Half-width ``r`` of the (2r+1) x (2r+1) window, at least 1.

    Returns
    -------
    WindowStats
    """
    _check_radius(window_radius)
    a = as_gray_image(img)
    return _stats(a, int(window_radius))


def _stats(a, r):
    mu = _window_mean(a, r)
    var = _centered_moments([a], [mu], r)[0, 0]
    return WindowStats(mu=mu, sigma=np.sqrt(var), window_radius=r)


def _pair_stats(x, y, r):
    mx = _window_mean(x, r)
    my = _window_mean(y, r)
    mom = _centered_moments([x, y], [mx, my], r)
    sx = WindowStats(mu=mx, sigma=np.sqrt(mom[0, 0]), window_radius=r)
    sy = WindowStats(mu=my, sigma=np.sqrt(mom[1, 1]), window_radius=r)
    return sx, sy, mom[0, 1]


def _prepare_pair(x, y):
    x = as_gray_image(x, "x")
    y = as_gray_image(y, "y")
    check_same_shape(x, y, what="x and y")
    return x, y


def _components(sx, sy, sigma_xy, p):
    l = (2 * sx.mu * sy.mu + p.c1) / (sx.mu ** 2 + sy.mu ** 2 + p.c1)
    c = (2 * sx.sigma * sy.sigma + p.c2) / (sx.sigma ** 2 + sy.sigma ** 2 + p.c2)
    s = (sigma_xy + p.c3) / (sx.sigma * sy.sigma + p.c3)
    return l, c, s


def ssim_component_maps(x, y, p=None):
    """Luminance, contrast and structure planes of two equally sized images."""
    p = p or SsimParams()
    x, y = _prepare_pair(x, y)
    sx, sy, sigma_xy = _pair_stats(x, y, p.window_radius)
    return _components(sx, sy, sigma_xy, p)


def _combine(l, c, s, p):
    if p.alpha == p.beta == p.gamma == 1:
        return l * c * s
    # structure can be negative; keep its sign under fractional exponents
    return l ** p.alpha * c ** p.beta * np.sign(s) * np.abs(s) ** p.gamma


def ssim_map(x, y, p=None):
    p = p or SsimParams()
    return _combine(*ssim_component_maps(x, y, p), p)


def ssnsim_map(x, y, p=None):
    """Compute SSIM, its complement SNSIM, the focus sign and the signed SNSIM.

    Parameters
    ----------
    x, y : array_like
        Registered gray images of identical shape.
    p : SsimParams, optional

    Returns
    -------
    SsimMaps
        ``ssnsim`` is positive where `x` looks sharper than `y` and negative
        where `y` does; its magnitude is ``1 - ssim``.
    """
    p = p or SsimParams()
    x, y = _prepare_pair(x, y)
    sx, sy, sigma_xy = _pair_stats(x, y, p.window_radius)
    ssim = _combine(*_components(sx, sy, sigma_xy, p), p)
    snsim = 1.0 - ssim
    sign = np.where(sx.sigma > sy.sigma, 1, -1).astype(np.int8)
    # + 0.0 turns the -0.0 of a tie with zero non-similarity into 0.0
    ssnsim = sign * snsim + 0.0
    return SsimMaps(ssim=ssim, snsim=snsim, sign=sign, ssnsim=ssnsim,
                    sigma_xy=sigma_xy, stats_x=sx, stats_y=sy)
