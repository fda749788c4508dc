"""End-to-end fusion of two or three registered sources."""

import dataclasses
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import imageio
from .errors import ConfigError, DegenerateInputError, as_gray_image, check_same_shape
from .fusion import fuse
from .joint import joint_segmentation
from .metrics import evaluate
from .segmentation import SegmentationParams, segment
from .similarity import SsimParams, ssnsim_map

log = logging.getLogger(__name__)

REPORT_SCHEMA = 1
_NONE = "none"


@dataclass
class PipelineConfig:
    """Every tunable of a pipeline run.

    ``n_cluster`` of None means 5 for two sources and 3 for three.
    """

    window_radius: int = 3
    alpha: float = 1.0
    beta: float = 1.0
    gamma: float = 1.0
    c1: float = SsimParams.c1
    c2: float = SsimParams.c2
    c3: float = SsimParams.c3
    h: float = 0.05
    h_mode: str = "relative"
    n_cluster: int | None = None
    fuzzifier: float = 2.0
    tol: float = 1e-6
    max_iter: int = 300
    seed: int | None = None
    fcm_init: str = "quantile"
    dump_intermediates: bool = False
    out: str = "fused.png"
    dump_dir: str | None = None
    report: str | None = None

    def __post_init__(self):
        self.validate()

    def validate(self):
        self.ssim_params()
        self.segmentation_params(2)
        if self.n_cluster is not None and (int(self.n_cluster) != self.n_cluster
                                           or self.n_cluster < 2):
            raise ConfigError(f"n_cluster must be an integer >= 2, got {self.n_cluster!r}")

    def ssim_params(self):
        return SsimParams(alpha=self.alpha, beta=self.beta, gamma=self.gamma,
                          c1=self.c1, c2=self.c2, c3=self.c3,
                          window_radius=self.window_radius)

    def segmentation_params(self, n_sources):
        n = self.n_cluster if self.n_cluster is not None else (5 if n_sources == 2 else 3)
        return SegmentationParams(n_cluster=n, h=self.h, h_mode=self.h_mode,
                                  fuzzifier=self.fuzzifier, tol=self.tol,
                                  max_iter=self.max_iter, seed=self.seed,
                                  fcm_init=self.fcm_init)

    def replace(self, **changes):
        changes = {k: v for k, v in changes.items() if v is not None}
        return dataclasses.replace(self, **changes)

    def to_dict(self):
        return dataclasses.asdict(self)

    def to_text(self):
        lines = []
        for f in dataclasses.fields(self):
            v = getattr(self, f.name)
            if v is None:
                text = _NONE
            elif isinstance(v, bool):
                text = "true" if v else "false"
            else:
                text = repr(v) if isinstance(v, float) else str(v)
            lines.append(f"{f.name} = {text}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text):
        """Parse ``key = value`` lines; blank lines and ``#`` comments are skipped."""
        types = {f.name: getattr(f.type, "__name__", str(f.type)) for f in dataclasses.fields(cls)}
        values = {}
        for num, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, val = (part.strip() for part in line.partition("="))
            if not sep or key not in types:
                raise ConfigError(f"config line {num}: cannot parse {raw.strip()!r}")
            values[key] = _parse_value(key, val, types[key])
        return cls(**values)

    @classmethod
    def from_file(cls, path):
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise ConfigError(f"{path}: cannot read config ({exc.strerror})") from exc
        return cls.from_text(text)


def _parse_value(key, val, type_name):
    if val.lower() == _NONE:
        if "None" not in type_name:
            raise ConfigError(f"{key} cannot be none")
        return None
    try:
        if type_name.startswith("bool"):
            if val.lower() not in ("true", "false"):
                raise ValueError(val)
            return val.lower() == "true"
        if type_name.startswith("int"):
            return int(val)
        if type_name.startswith("float"):
            return float(val)
    except ValueError:
        raise ConfigError(f"{key}: invalid value {val!r}") from None
    return val


@dataclass
class FusionResult:
    """Everything a pipeline run produced.

    ``segmentations`` and ``maps`` are keyed by source pair ("xy", "xz",
    "yz"). A pair whose images are indistinguishable has no segmentation
    entry and is listed in ``warnings``.
    """

    fused: np.ndarray
    regions: np.ndarray
    decisions: list
    metrics: object
    maps: dict = field(default_factory=dict)
    segmentations: dict = field(default_factory=dict)
    joint: object = None
    warnings: list = field(default_factory=list)


def _load(sources):
    imgs = [as_gray_image(s, f"source {i}") for i, s in enumerate(sources)]
    check_same_shape(*imgs, what="source images")
    return imgs


def fuse_two(x, y, cfg=None):
    """Fuse two sources through one SSNSIM segmentation."""
    cfg = cfg or PipelineConfig()
    x, y = _load([x, y])
    maps = ssnsim_map(x, y, cfg.ssim_params())
    seg = segment(maps.ssnsim, cfg.segmentation_params(2))
    fused, decisions = fuse([x, y], seg.regions)
    return FusionResult(fused=fused, regions=seg.regions, decisions=decisions,
                        metrics=evaluate(fused, [x, y]), maps={"xy": maps},
                        segmentations={"xy": seg})


def segment_pairs(x, y, z, cfg):
    """Segment the three source pairs; degenerate pairs fall back to one class."""
    params = cfg.segmentation_params(3)
    maps, segs, classes, warnings = {}, {}, {}, []
    for key, (a, b) in {"xy": (x, y), "xz": (x, z), "yz": (y, z)}.items():
        maps[key] = ssnsim_map(a, b, cfg.ssim_params())
        try:
            segs[key] = segment(maps[key].ssnsim, params)
            classes[key] = segs[key].classes
        except DegenerateInputError as exc:
            log.warning("pair %s is degenerate: %s", key, exc)
            warnings.append(f"pair {key} is degenerate ({exc}); treated as a single class")
            classes[key] = np.ones(x.shape, dtype=np.int64)
    if len(warnings) == 3:
        raise DegenerateInputError("all three source pairs are indistinguishable")
    return maps, segs, classes, warnings, params.n_cluster


def fuse_three(x, y, z, cfg=None):
    """Fuse three sources through the joint map of their pairwise segmentations."""
    cfg = cfg or PipelineConfig()
    x, y, z = _load([x, y, z])
    maps, segs, classes, warnings, n = segment_pairs(x, y, z, cfg)
    joint = joint_segmentation(classes["xy"], classes["xz"], classes["yz"], n)
    fused, decisions = fuse([x, y, z], joint.regions)
    return FusionResult(fused=fused, regions=joint.regions, decisions=decisions,
                        metrics=evaluate(fused, [x, y, z]), maps=maps,
                        segmentations=segs, joint=joint, warnings=warnings)


def build_report(result, cfg, inputs):
    """JSON-ready dict: config echo, segmentation summary, decisions and metrics.

    Output locations are left out so identical runs give identical reports.
    """
    config = {k: v for k, v in cfg.to_dict().items() if k not in ("out", "dump_dir", "report")}
    segs = {key: {"n_cluster": s.n_cluster,
                  "watershed_basins": int(s.watershed.max()),
                  "regions": s.num_regions,
                  "cluster_centers": s.cluster.centers.tolist()}
            for key, s in result.segmentations.items()}
    report = {
        "schema_version": REPORT_SCHEMA,
        "mode": f"fuse{len(inputs)}",
        "inputs": [str(p) for p in inputs],
        "config": config,
        "warnings": list(result.warnings),
        "segmentation": segs,
        "num_regions": int(result.regions.max()),
        "decisions": [{"region": d.region, "gradients": list(d.gradients), "source": d.source}
                      for d in result.decisions],
        "metrics": result.metrics.to_dict(),
    }
    if result.joint is not None:
        report["joint"] = {"n": result.joint.n, "joint_labels": result.joint.num_joint}
    return report


def write_report(path, report):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(report, indent=2) + "\n")


def dump_intermediates(result, directory):
    """Write similarity maps and label maps (PNG for viewing, .npy for exact values)."""
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    for key, maps in result.maps.items():
        imageio.write_gray(d / f"ssim_{key}.png", imageio.rescale(maps.ssim))
        imageio.write_gray(d / f"ssnsim_{key}.png", imageio.rescale(maps.ssnsim))
    for key, seg in result.segmentations.items():
        for name in ("watershed", "classes", "regions"):
            plane = getattr(seg, name)
            imageio.write_labels(d / f"{name}_{key}.png", plane)
            np.save(d / f"{name}_{key}.npy", plane)
    if result.joint is not None:
        np.save(d / "joint_labels.npy", result.joint.labels)
        imageio.write_labels(d / "joint.png", result.joint.dense)
    imageio.write_labels(d / "final_regions.png", result.regions)
    np.save(d / "final_regions.npy", result.regions)
