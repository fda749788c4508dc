"""Running the whole pipeline from the command line.

Equivalent shell session::

    focusfuse synth texture:128 --mode thirds --out data
    focusfuse fuse3 data/source_1.png data/source_2.png data/source_3.png \
        --out fused.png --dump maps --seed 1
    focusfuse score fused.png data/source_*.png
"""

# %%
import json
import sys
import tempfile
from pathlib import Path

from focusfuse.cli import main

work = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(tempfile.mkdtemp())
data = work / "data"

# %%
assert main(["synth", "texture:128", "--mode", "thirds", "--out", str(data)]) == 0
srcs = [str(data / f"source_{i}.png") for i in (1, 2, 3)]
code = main(["fuse3", *srcs, "--out", str(work / "fused.png"), "--dump", str(work / "maps"),
             "--seed", "1"])
print("exit code:", code)

# %%
report = json.loads((work / "fused.json").read_text())
print("joint labels:", report["joint"]["joint_labels"], " final regions:", report["num_regions"])
print({k: round(v, 3) for k, v in report["metrics"].items() if isinstance(v, float)})
print("dumped:", sorted(p.name for p in (work / "maps").iterdir())[:6], "...")

# %% [markdown]
# Identical inputs carry no focus information and exit with code 3.

# %%
print("identical inputs ->", main(["fuse2", srcs[0], srcs[0], "--out", str(work / "x.png")]))
