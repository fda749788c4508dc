"""Reading and writing 8-bit grayscale images and label maps."""

import colorsys
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from .errors import ImageReadError


def read_gray(path):
    """Load an 8-bit grayscale PNG/PGM as a float64 array.

    Color and higher bit-depth images are rejected.
    """
    path = Path(path)
    try:
        with Image.open(path) as im:
            im.load()
            if im.mode == "1":
                im = im.convert("L")
            if im.mode != "L":
                raise ImageReadError(f"{path}: expected 8-bit grayscale, got mode {im.mode!r}")
            return np.asarray(im, dtype=np.float64)
    except (FileNotFoundError, IsADirectoryError, PermissionError) as exc:
        raise ImageReadError(f"{path}: {exc.strerror or exc}") from exc
    except UnidentifiedImageError as exc:
        raise ImageReadError(f"{path}: not a readable image") from exc


def to_uint8(img):
    return np.clip(np.rint(np.asarray(img, dtype=np.float64)), 0, 255).astype(np.uint8)


def write_gray(path, img):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    Image.fromarray(to_uint8(img), mode="L").save(path)


def rescale(plane):
    """Linearly map [min, max] of `plane` to [0, 255]; a flat plane maps to 0."""
    a = np.asarray(plane, dtype=np.float64)
    lo, hi = a.min(), a.max()
    if hi == lo:
        return np.zeros_like(a)
    return (a - lo) * (255.0 / (hi - lo))


def label_palette(n):
    """Fixed RGB palette; entry 0 (watershed lines) is black."""
    pal = np.zeros((n + 1, 3), dtype=np.uint8)
    for k in range(1, n + 1):
        hue = (k * 0.618033988749895) % 1.0
        sat = 0.55 + 0.35 * ((k * 7) % 3) / 2
        pal[k] = [round(255 * c) for c in colorsys.hsv_to_rgb(hue, sat, 0.95)]
    return pal


def write_labels(path, labels):
    """Render a label map as an RGB PNG with :func:`label_palette`."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    labels = np.asarray(labels, dtype=np.int64)
    rgb = label_palette(int(labels.max()))[labels]
    Image.fromarray(rgb, mode="RGB").save(path)
