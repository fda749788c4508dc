"""Objective fusion-quality metrics.

All metrics expect 8-bit-range gray images. Histogram-based measures
round intensities to the nearest integer and use 256 bins and log base 2.
"""

from dataclasses import asdict, dataclass, field

import numpy as np
from scipy import ndimage

from .errors import ConfigError, as_gray_image, check_same_shape
from .fusion import region_average_gradients


@dataclass(frozen=True)
class QabfParams:
    """Sigmoid constants of the edge-preservation measure (published defaults)."""

    gamma_g: float = 0.9994
    kappa_g: float = -15.0
    sigma_g: float = 0.5
    gamma_a: float = 0.9879
    kappa_a: float = -22.0
    sigma_a: float = 0.8
    weight_exponent: float = 1.0


@dataclass
class MetricsReport:
    """The six scores of a fused image.

    ``v`` is the standard deviation of the fused intensities; the raw
    variance is kept in ``variance``. ``mi`` is the sum of the per-source
    mutual informations listed in ``mi_per_source``.
    """

    v: float
    sf: float
    ag: float
    h: float
    mi: float
    q_abf: float
    variance: float = 0.0
    rf: float = 0.0
    cf: float = 0.0
    mi_per_source: list = field(default_factory=list)
    source_entropy: list = field(default_factory=list)
    mi_convention: str = "sum"

    def to_dict(self):
        return asdict(self)


def variance(img, as_std=True):
    """Population spread of the intensities; standard deviation unless `as_std` is False."""
    a = as_gray_image(img)
    var = float(np.mean((a - a.mean()) ** 2))
    return float(np.sqrt(var)) if as_std else var


def row_column_frequency(img):
    a = as_gray_image(img)
    rf = np.sqrt(np.mean(np.diff(a, axis=1) ** 2))
    cf = np.sqrt(np.mean(np.diff(a, axis=0) ** 2))
    return float(rf), float(cf)


def spatial_frequency(img):
    rf, cf = row_column_frequency(img)
    return float(np.sqrt(rf * rf + cf * cf))


def average_gradient(img):
    a = as_gray_image(img)
    return float(region_average_gradients(a, np.ones(a.shape, dtype=np.int64))[0])


def _levels(a):
    return np.clip(np.rint(a), 0, 255).astype(np.int64)


def _entropy_of_counts(counts):
    p = counts[counts > 0] / counts.sum()
    return float(-np.sum(p * np.log2(p)))


def entropy(img):
    a = as_gray_image(img)
    return _entropy_of_counts(np.bincount(_levels(a).ravel(), minlength=256))


def mutual_information_pair(a, b):
    a = as_gray_image(a, "a")
    b = as_gray_image(b, "b")
    check_same_shape(a, b, what="images")
    joint = np.bincount((_levels(a) * 256 + _levels(b)).ravel(), minlength=256 * 256)
    joint = joint.reshape(256, 256) / a.size
    pa = joint.sum(axis=1)
    pb = joint.sum(axis=0)
    nz = joint > 0
    return float(np.sum(joint[nz] * np.log2(joint[nz] / np.outer(pa, pb)[nz])))


def mutual_information(fused, sources):
    """Sum over sources of MI(fused; source)."""
    return float(sum(mutual_information_pair(fused, s) for s in sources))


def _edge_maps(a):
    sx = ndimage.sobel(a, axis=1, mode="nearest")
    sy = ndimage.sobel(a, axis=0, mode="nearest")
    strength = np.hypot(sx, sy)
    ratio = np.divide(sy, sx, out=np.full_like(sy, np.inf), where=sx != 0)
    return strength, np.arctan(ratio)


def _preservation(g_src, a_src, g_fus, a_fus, p):
    hi = np.maximum(g_src, g_fus)
    rel_strength = np.divide(np.minimum(g_src, g_fus), hi, out=np.ones_like(hi), where=hi > 0)
    rel_orient = 1.0 - np.abs(a_src - a_fus) / (np.pi / 2)
    q_g = p.gamma_g / (1.0 + np.exp(p.kappa_g * (rel_strength - p.sigma_g)))
    q_a = p.gamma_a / (1.0 + np.exp(p.kappa_a * (rel_orient - p.sigma_a)))
    return q_g * q_a


def q_abf(fused, sources, params=None):
    """Gradient-based edge-preservation score in [0, 1].

    Each source pixel's edge preservation in the fused image is weighted by
    the source edge strength. Returns 0 when no source has any edge.
    """
    p = params or QabfParams()
    f = as_gray_image(fused, "fused")
    srcs = [as_gray_image(s, "source") for s in sources]
    check_same_shape(f, *srcs, what="fused image and sources")
    if not srcs:
        raise ConfigError("q_abf needs at least one source")
    g_f, a_f = _edge_maps(f)
    num = 0.0
    den = 0.0
    for s in srcs:
        g_s, a_s = _edge_maps(s)
        w = g_s ** p.weight_exponent
        num += float(np.sum(_preservation(g_s, a_s, g_f, a_f, p) * w))
        den += float(np.sum(w))
    return num / den if den > 0 else 0.0


def evaluate(fused, sources, qabf_params=None):
    """Compute every metric of `fused` against its `sources`."""
    f = as_gray_image(fused, "fused")
    srcs = [as_gray_image(s, "source") for s in sources]
    check_same_shape(f, *srcs, what="fused image and sources")
    rf, cf = row_column_frequency(f)
    mi_each = [mutual_information_pair(f, s) for s in srcs]
    return MetricsReport(
        v=variance(f),
        sf=spatial_frequency(f),
        ag=average_gradient(f),
        h=entropy(f),
        mi=float(sum(mi_each)),
        q_abf=q_abf(f, srcs, qabf_params),
        variance=variance(f, as_std=False),
        rf=rf,
        cf=cf,
        mi_per_source=mi_each,
        source_entropy=[entropy(s) for s in srcs],
    )
