"""Exception hierarchy and shared input validation."""

import numpy as np


class FusionError(Exception):
    """Base class for all errors raised by focusfuse."""


class ImageReadError(FusionError, OSError):
    """An input image could not be read or is not 8-bit grayscale."""


class DimensionMismatchError(FusionError, ValueError):
    """Two images or planes that must share a shape do not."""


class DegenerateInputError(FusionError, ValueError):
    """The input carries no information to segment (e.g. identical sources)."""


class ConfigError(FusionError, ValueError):
    """A parameter lies outside its valid range."""


def as_gray_image(img, name="image"):
    """Return `img` as a float64 2-D array after checking the gray-image contract.

    The array must be at least 2x2, finite, and within [0, 255].
    """
    a = np.asarray(img, dtype=np.float64)
    if a.ndim != 2:
        raise ConfigError(f"{name} must be 2-D, got shape {a.shape}")
    if a.shape[0] < 2 or a.shape[1] < 2:
        raise ConfigError(f"{name} must be at least 2x2, got {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ConfigError(f"{name} contains non-finite values")
    if a.min() < 0 or a.max() > 255:
        raise ConfigError(f"{name} values must lie in [0, 255]")
    return a


def as_plane(p, name="plane", min_size=2):
    a = np.asarray(p, dtype=np.float64)
    if a.ndim != 2 or min(a.shape) < min_size:
        raise ConfigError(f"{name} must be a 2-D array of at least "
                          f"{min_size}x{min_size}, got {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ConfigError(f"{name} contains non-finite values")
    return a


def check_same_shape(*arrays, what="inputs"):
    shapes = {np.shape(a) for a in arrays}
    if len(shapes) != 1:
        raise DimensionMismatchError(f"{what} differ in shape: {sorted(shapes)}")
