"""Command line interface.

Exit codes: 0 success, 1 I/O error, 2 dimension mismatch, 3 degenerate
input, 4 invalid configuration.
"""

import argparse
import json
import sys
from pathlib import Path

from . import imageio, synthetic
from .errors import ConfigError, DegenerateInputError, DimensionMismatchError, ImageReadError
from .metrics import evaluate
from .pipeline import (PipelineConfig, build_report, dump_intermediates, fuse_three,
                       fuse_two, write_report)

EXIT_OK, EXIT_IO, EXIT_DIMENSION, EXIT_DEGENERATE, EXIT_CONFIG = 0, 1, 2, 3, 4


def _exit_code(exc):
    if isinstance(exc, DimensionMismatchError):
        return EXIT_DIMENSION
    if isinstance(exc, DegenerateInputError):
        return EXIT_DEGENERATE
    if isinstance(exc, ConfigError):
        return EXIT_CONFIG
    return EXIT_IO


def _guarded(fn):
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (ImageReadError, DimensionMismatchError, DegenerateInputError,
                ConfigError, OSError) as exc:
            print(f"focusfuse: error: {exc}", file=sys.stderr)
            return _exit_code(exc)
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _report_path(cfg):
    return Path(cfg.report) if cfg.report else Path(cfg.out).with_suffix(".json")


def _run(paths, cfg, fuser):
    images = [imageio.read_gray(p) for p in paths]
    result = fuser(*images, cfg)
    imageio.write_gray(cfg.out, result.fused)
    write_report(_report_path(cfg), build_report(result, cfg, paths))
    if cfg.dump_intermediates or cfg.dump_dir:
        dump_intermediates(result, cfg.dump_dir or Path(cfg.out).with_suffix(""))
    for w in result.warnings:
        print(f"focusfuse: warning: {w}", file=sys.stderr)
    return EXIT_OK


@_guarded
def run_two(x_path, y_path, cfg=None):
    """Fuse two images and write the fused PNG, the JSON report and optional dumps."""
    return _run([x_path, y_path], cfg or PipelineConfig(), fuse_two)


@_guarded
def run_three(x_path, y_path, z_path, cfg=None):
    """Fuse three images through joint segmentation."""
    return _run([x_path, y_path, z_path], cfg or PipelineConfig(), fuse_three)


@_guarded
def run_metrics(fused_path, source_paths, json_path=None):
    fused = imageio.read_gray(fused_path)
    sources = [imageio.read_gray(p) for p in source_paths]
    report = evaluate(fused, sources).to_dict()
    text = json.dumps(report, indent=2) + "\n"
    if json_path:
        Path(json_path).parent.mkdir(parents=True, exist_ok=True)
        Path(json_path).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


@_guarded
def gen_synthetic(base, mode, blur_sigma, out_dir, seed=0):
    """Write partially blurred sources and the ground truth into `out_dir`.

    `base` is an image path or ``texture[:SIZE]`` for the built-in test texture.
    """
    if str(base).startswith("texture"):
        _, _, size = str(base).partition(":")
        img = synthetic.texture(int(size) if size else 256, seed=seed)
    else:
        img = imageio.read_gray(base)
    sources = synthetic.make_sources(img, mode, blur_sigma)
    out = Path(out_dir)
    imageio.write_gray(out / "ground_truth.png", img)
    for i, src in enumerate(sources, 1):
        imageio.write_gray(out / f"source_{i}.png", src)
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _add_fusion_options(p):
    p.add_argument("--out", help="fused image path (default fused.png)")
    p.add_argument("--report", help="JSON report path (default: --out with .json)")
    p.add_argument("--config", help="key = value config file; flags override it")
    p.add_argument("--dump", metavar="DIR", help="write intermediate maps into DIR")
    p.add_argument("--n-cluster", type=int)
    p.add_argument("--window", type=int, help="window radius")
    p.add_argument("--hmin", type=float, help="h-minima depth (relative unless --hmin-absolute)")
    p.add_argument("--hmin-absolute", action="store_true")
    p.add_argument("--seed", type=int)


def build_parser():
    parser = _Parser(prog="focusfuse", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p2 = sub.add_parser("fuse2", help="fuse two registered images")
    p2.add_argument("x")
    p2.add_argument("y")
    _add_fusion_options(p2)

    p3 = sub.add_parser("fuse3", help="fuse three registered images")
    p3.add_argument("x")
    p3.add_argument("y")
    p3.add_argument("z")
    _add_fusion_options(p3)

    ps = sub.add_parser("score", help="score a fused image against its sources")
    ps.add_argument("fused")
    ps.add_argument("sources", nargs="+")
    ps.add_argument("--json", help="write the report here instead of stdout")

    pg = sub.add_parser("synth", help="make partially blurred test sources")
    pg.add_argument("base", help="image path or texture[:SIZE]")
    pg.add_argument("--mode", choices=["half", "thirds"], default="half")
    pg.add_argument("--sigma", type=float, default=3.0)
    pg.add_argument("--out", required=True, help="output directory")
    pg.add_argument("--seed", type=int, default=0, help="texture seed")
    return parser


@_guarded
def _config_from_args(args):
    cfg = PipelineConfig.from_file(args.config) if args.config else PipelineConfig()
    cfg = cfg.replace(out=args.out, report=args.report, dump_dir=args.dump,
                      n_cluster=args.n_cluster, window_radius=args.window,
                      h=args.hmin, seed=args.seed)
    if args.hmin_absolute:
        cfg = cfg.replace(h_mode="absolute")
    return cfg


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.command == "score":
        return run_metrics(args.fused, args.sources, args.json)
    if args.command == "synth":
        return gen_synthetic(args.base, args.mode, args.sigma, args.out, seed=args.seed)
    cfg = _config_from_args(args)
    if isinstance(cfg, int):
        return cfg
    if args.command == "fuse2":
        return run_two(args.x, args.y, cfg)
    return run_three(args.x, args.y, args.z, cfg)


if __name__ == "__main__":
    sys.exit(main())
