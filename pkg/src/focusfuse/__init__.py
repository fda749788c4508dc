"""Region-based multi-focus image fusion guided by signed structural non-similarity."""

from .errors import (ConfigError, DegenerateInputError, DimensionMismatchError, FusionError,
                     ImageReadError)
from .fusion import fuse
from .joint import joint_segmentation
from .metrics import evaluate
from .pipeline import PipelineConfig, fuse_three, fuse_two
from .segmentation import SegmentationParams, segment
from .similarity import SsimParams, ssnsim_map

__version__ = "0.1.0"
