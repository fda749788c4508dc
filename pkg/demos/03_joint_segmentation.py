"""Combining three pairwise class maps into one joint map."""

# %%
import numpy as np

from focusfuse.joint import decode, joint_segmentation, relabel_progressions

# %% [markdown]
# Each pairwise map gets its own digit of a base-(N+1) number. With N = 3,
# classes (2, 2, 1) become 2, 2*4 and 1*16.

# %%
a, b, c = relabel_progressions([[2]], [[2]], [[1]], 3)
print("progressions:", int(a[0, 0]), int(b[0, 0]), int(c[0, 0]), " sum:", int((a + b + c)[0, 0]))
print("decoded back:", [int(d[0, 0]) for d in decode(a + b + c, 3)])

# %% [markdown]
# A left/right split and a top/bottom split intersect into four quadrants.

# %%
lr = np.ones((6, 6), int)
lr[:, 3:] = 2
tb = np.ones((6, 6), int)
tb[3:, :] = 2
jm = joint_segmentation(lr, tb, np.ones((6, 6), int), 2)
print(jm.dense)
print("provenance:", jm.provenance)

# %% [markdown]
# Partial overlap yields the intersection plus both differences.

# %%
x = np.ones((8, 8), int)
x[1:5, 1:5] = 2
y = np.ones((8, 8), int)
y[3:7, 3:7] = 2
jm = joint_segmentation(x, y, np.ones((8, 8), int), 2)
print(jm.dense)
