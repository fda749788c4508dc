"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

The lines are also collected and repeated in the terminal summary.
"""

import itertools
import time
from contextlib import contextmanager

import numpy as np

import conftest
import oracles
from test_joint import RULES, classes_of, intersect_oracle
from focusfuse.cli import main
from focusfuse.fusion import average_gradient_region, fuse, select_region_source
from focusfuse.imageio import write_gray
from focusfuse.joint import decode, encode, joint_segmentation
from focusfuse.metrics import (average_gradient, entropy, mutual_information,
                               mutual_information_pair, q_abf, spatial_frequency, variance)
from focusfuse.pipeline import fuse_three, fuse_two
from focusfuse.segmentation import fcm, h_minima, watershed
from focusfuse.similarity import SsimParams, ssim_component_maps, ssnsim_map, window_stats
from focusfuse.synthetic import make_sources, rmse, texture


@contextmanager
def criterion(num, title):
    info = {}
    try:
        yield info
    except BaseException:
        line = f"criterion {num:>2} FAIL  {title}  {info.get('detail', '')}".rstrip()
        conftest.ACCEPTANCE_LINES.append(line)
        print(line)
        raise
    line = f"criterion {num:>2} PASS  {title}  {info.get('detail', '')}".rstrip()
    conftest.ACCEPTANCE_LINES.append(line)
    print(line)


def test_criterion_01_ssim_identity():
    with criterion(1, "SSIM(x,x) = 1 and SSNSIM(x,x) = 0 on 50 images") as info:
        rng = np.random.default_rng(1)
        start = time.perf_counter()
        worst = 0.0
        for _ in range(50):
            h, w = rng.integers(8, 65, 2)
            x = rng.uniform(0, 255, (h, w))
            maps = ssnsim_map(x, x)
            worst = max(worst, np.abs(maps.ssim - 1).max(), np.abs(maps.ssnsim).max())
        elapsed = time.perf_counter() - start
        info["detail"] = f"(max deviation {worst:.1e}, {elapsed:.2f} s)"
        assert worst <= 1e-12
        assert elapsed < 5.0


def test_criterion_02_window_oracle():
    with criterion(2, "windowed planes match the per-window oracle on 20 pairs") as info:
        rng = np.random.default_rng(2)
        worst = 0.0
        for _ in range(20):
            h, w = rng.integers(2, 17, 2)
            r = int(rng.integers(1, 4))
            x = rng.uniform(0, 255, (h, w))
            y = rng.uniform(0, 255, (h, w))
            p = SsimParams(window_radius=r)
            sx = window_stats(x, r)
            l, c, s = ssim_component_maps(x, y, p)
            maps = ssnsim_map(x, y, p)
            xl, yl = x.tolist(), y.tolist()
            for i in range(h):
                for j in range(w):
                    ol, oc, os_, ossim, osx, osy, osxy = oracles.ssim_pixel(
                        xl, yl, i, j, r, p.c1, p.c2, p.c3)
                    mu = oracles.mean_std(oracles.window_values(xl, i, j, r))[0]
                    got = (sx.mu[i, j], sx.sigma[i, j], maps.stats_y.sigma[i, j],
                           maps.sigma_xy[i, j], l[i, j], c[i, j], s[i, j], maps.ssim[i, j])
                    want = (mu, osx, osy, osxy, ol, oc, os_, ossim)
                    worst = max(worst, max(abs(a - b) for a, b in zip(got, want)))
        info["detail"] = f"(max deviation {worst:.1e})"
        assert worst <= 1e-10


def test_criterion_03_hminima_watershed():
    with criterion(3, "h-minima idempotent and >= input; watershed basin counts") as info:
        rng = np.random.default_rng(3)
        for _ in range(30):
            g = rng.integers(0, 6, (12, 12)).astype(float)
            for h in (0.5, 1.0, 2.0, 3.0):
                once = h_minima(g, h)
                assert np.all(once >= g)
                np.testing.assert_array_equal(h_minima(once, h), once)
        yy, xx = np.mgrid[0:15, 0:21]
        two = np.minimum(np.hypot(yy - 7, xx - 4), np.hypot(yy - 7, xx - 16))
        assert watershed(two).max() == 2
        assert watershed(np.full((9, 9), 4.0)).max() == 1
        info["detail"] = "(120 idempotence checks, 2 basins, 1 region)"


def test_criterion_04_fcm_contract():
    with criterion(4, "FCM memberships, monotone objective, 10-seed partition sweep") as info:
        rng = np.random.default_rng(4)
        x = np.concatenate([rng.normal(-0.5, 0.1, 30), rng.normal(0.2, 0.1, 30),
                            rng.normal(0.8, 0.05, 20)])
        for seed in range(5):
            res = fcm(x, 3, seed=seed, init="random")
            assert np.abs(res.memberships.sum(axis=0) - 1).max() <= 1e-9
            assert np.all(np.diff(res.objective) <= 1e-9)
        feats = [-0.9, -0.8, 0.8, 0.9]
        parts = set()
        for seed in range(10):
            a = fcm(feats, 2, seed=seed, init="random").assignment
            parts.add(tuple(int(v) for v in a))
            assert a[0] == a[1] != a[2] == a[3]
        info["detail"] = f"(partitions seen: {sorted(parts)})"


def test_criterion_05_joint_labels():
    with criterion(5, "joint label encode/decode bijective; four incorporation rules") as info:
        for n in (2, 3, 5):
            triples = list(itertools.product(range(1, n + 1), repeat=3))
            codes = [int(encode(*t, n)) for t in triples]
            assert len(set(codes)) == n ** 3
            assert [tuple(int(v) for v in decode(c, n)) for c in codes] == triples
        for rule, (xy, xz, expected) in sorted(RULES.items()):
            yz = np.ones_like(xy)
            got = classes_of(joint_segmentation(xy, xz, yz, 2).dense)
            assert got == intersect_oracle(xy, xz, yz), rule
            assert len(got) == expected, rule
        info["detail"] = "(N = 2, 3, 5; equal, disjoint, containment, partial)"


def test_criterion_06_gradient_and_selection():
    with criterion(6, "whole-image average gradient oracle on 10 images; tie picks X") as info:
        rng = np.random.default_rng(6)
        worst = 0.0
        for _ in range(10):
            h, w = rng.integers(2, 20, 2)
            img = rng.uniform(0, 255, (h, w))
            got = average_gradient_region(img, np.ones((h, w), int), 1)
            worst = max(worst, abs(got - oracles.average_gradient(img.tolist())))
        assert worst <= 1e-12
        assert select_region_source((2, 2, 1)) == 0
        info["detail"] = f"(max deviation {worst:.1e})"


def test_criterion_07_two_source_synthetic():
    with criterion(7, "half-blur pair: RMSE < 0.8 x best source, SF and AG >= sources") as info:
        base = texture(256, seed=0)
        a, b = make_sources(base, "half", 3.0)
        start = time.perf_counter()
        res = fuse_two(a, b)
        elapsed = time.perf_counter() - start
        e_f, e_a, e_b = rmse(res.fused, base), rmse(a, base), rmse(b, base)
        sf = [spatial_frequency(i) for i in (res.fused, a, b)]
        ag = [average_gradient(i) for i in (res.fused, a, b)]
        info["detail"] = (f"(RMSE {e_f:.2f} vs {e_a:.2f}/{e_b:.2f}, SF {sf[0]:.2f} vs "
                          f"{max(sf[1:]):.2f}, AG {ag[0]:.2f} vs {max(ag[1:]):.2f}, "
                          f"{elapsed:.2f} s)")
        assert e_f < 0.8 * min(e_a, e_b)
        assert sf[0] >= max(sf[1:])
        assert ag[0] >= max(ag[1:])
        assert elapsed < 30.0


def test_criterion_08_three_source_synthetic():
    with criterion(8, "third-blur triple: RMSE below sources; joint map beats pairs on SF") as info:
        base = texture(256, seed=0)
        srcs = make_sources(base, "thirds", 3.0)
        res = fuse_three(*srcs)
        assert res.joint is not None and res.joint.num_joint >= 2
        e_f = rmse(res.fused, base)
        e_src = [rmse(s, base) for s in srcs]
        assert e_f < min(e_src)
        sf_j, ag_j = spatial_frequency(res.fused), average_gradient(res.fused)
        single = [fuse(srcs, seg.regions)[0] for seg in res.segmentations.values()]
        sf_s = [spatial_frequency(f) for f in single]
        ag_s = [average_gradient(f) for f in single]
        info["detail"] = (f"(RMSE {e_f:.2f} vs min {min(e_src):.2f}, SF {sf_j:.2f} vs "
                          f"pairs max {max(sf_s):.2f}, AG {ag_j:.2f} vs pairs max {max(ag_s):.2f})")
        assert len(single) == 3
        assert sf_j >= max(sf_s)


def test_criterion_09_metric_oracles():
    with criterion(9, "metric oracles; H(uniform) = 8; MI(F;F) = H(F); q_abf(A,[A]) >= 0.99") as info:
        assert entropy(np.arange(256.0).reshape(16, 16)) == 8.0
        rng = np.random.default_rng(9)
        f = rng.integers(0, 256, (32, 32)).astype(float)
        assert abs(mutual_information_pair(f, f) - entropy(f)) <= 1e-9
        for seed in range(3):
            r = np.random.default_rng(100 + seed)
            fu, x, y = (r.integers(0, 256, (16, 16)).astype(float) for _ in range(3))
            fl, xl, yl = fu.tolist(), x.tolist(), y.tolist()
            pairs = [
                (variance(fu), oracles.std_dev(fl)),
                (spatial_frequency(fu), oracles.spatial_frequency(fl)),
                (average_gradient(fu), oracles.average_gradient(fl)),
                (entropy(fu), oracles.entropy(fl)),
                (mutual_information(fu, [x, y]),
                 oracles.mutual_information(fl, xl) + oracles.mutual_information(fl, yl)),
                (q_abf(fu, [x, y]), oracles.q_abf(fl, [xl, yl])),
            ]
            for got, want in pairs:
                assert abs(got - want) <= 1e-9
        scores = []
        for seed in range(10):
            a = texture(32, seed=seed) if seed % 2 else rng.uniform(0, 255, (32, 32))
            scores.append(q_abf(a, [a]))
        info["detail"] = f"(q_abf(A,[A]) min {min(scores):.5f} over 10 images)"
        assert min(scores) >= 0.99


def test_criterion_10_determinism(tmp_path):
    with criterion(10, "two fuse3 runs give byte-identical PNG and JSON") as info:
        base = texture(128, seed=5)
        paths = []
        for i, s in enumerate(make_sources(base, "thirds"), 1):
            p = tmp_path / f"src{i}.png"
            write_gray(p, s)
            paths.append(str(p))
        outputs = []
        for k in range(2):
            out = tmp_path / f"fused{k}.png"
            rep = tmp_path / f"fused{k}.json"
            code = main(["fuse3", *paths, "--out", str(out), "--report", str(rep),
                         "--seed", "42"])
            assert code == 0
            outputs.append((out.read_bytes(), rep.read_bytes()))
        assert outputs[0][0] == outputs[1][0]
        assert outputs[0][1] == outputs[1][1]
        info["detail"] = f"({len(outputs[0][0])} byte PNG, {len(outputs[0][1])} byte report)"
