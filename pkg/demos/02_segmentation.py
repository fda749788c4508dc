"""From a noisy SSNSIM map to a handful of focus regions."""

# %%
import numpy as np

from focusfuse.segmentation import SegmentationParams, gradient_magnitude, h_minima, segment, watershed
from focusfuse.similarity import ssnsim_map
from focusfuse.synthetic import make_sources, texture

a, b = make_sources(texture(128, seed=2), "half")
plane = ssnsim_map(a, b).ssnsim

# %% [markdown]
# A plain watershed of the gradient over-segments badly: every tiny dip of
# the gradient becomes a basin.

# %%
grad = gradient_magnitude(plane)
print("raw watershed basins:", watershed(grad).max())

# %% [markdown]
# Filling shallow minima first keeps only basins deeper than h.

# %%
for rel in (0.01, 0.05, 0.2):
    depth = rel * np.ptp(grad)
    print(f"h = {rel:>4} x range -> basins:", watershed(h_minima(grad, depth)).max())

# %% [markdown]
# The full chain clusters the basin means with fuzzy c-means, absorbs the
# watershed lines and splits each class into connected regions.

# %%
seg = segment(plane, SegmentationParams(n_cluster=5))
print("cluster centers:", np.round(seg.cluster.centers, 3))
print("classes used:", np.unique(seg.classes).size, " final regions:", seg.num_regions)
print("watershed lines left:", int((seg.regions == 0).sum()))
