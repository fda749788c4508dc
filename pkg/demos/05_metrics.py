"""Scoring fused images without a reference."""

# %%
import numpy as np

from focusfuse.metrics import QabfParams, evaluate, q_abf
from focusfuse.pipeline import fuse_two
from focusfuse.synthetic import make_sources, texture

base = texture(128, seed=4)
a, b = make_sources(base, "half")
result = fuse_two(a, b)

# %% [markdown]
# Sharper images have larger spatial frequency and average gradient. The
# fused image should beat both sources on these.

# %%
for name, img in (("source a", a), ("source b", b), ("fused", result.fused)):
    rep = evaluate(img, [a, b])
    print(f"{name:9s} V={rep.v:6.2f} SF={rep.sf:6.2f} AG={rep.ag:6.2f} "
          f"H={rep.h:5.3f} MI={rep.mi:5.3f} Q={rep.q_abf:5.3f}")

# %% [markdown]
# Even a perfect copy does not reach Q = 1 with the published sigmoid
# constants: both sigmoids top out just below their gains.

# %%
print("q_abf(base, [base]):", round(q_abf(base, [base]), 5))
steep = QabfParams(gamma_g=1.0, kappa_g=-1000.0, gamma_a=1.0, kappa_a=-1000.0)
print("with steep unit-gain sigmoids:", round(q_abf(base, [base], steep), 5))
print("constant image:", round(q_abf(np.full(base.shape, 128.0), [base]), 5))
