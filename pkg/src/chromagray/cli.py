"""Command-line surface: convert, score and eval subcommands.

Exit codes: 0 success, 1 usage error, 2 I/O error, 3 data error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from PIL import UnidentifiedImageError

from .bench import DataError, MethodId, emit_plot_data, evaluate, export_report, \
    load_dataset, summarize
from .c2gssim import MetricConfig, c2g_ssim, local_stats, similarity_maps
from .colorspace import GrayImage, cie_y_gray, ntsc_gray, srgb_to_lab
from .decolor import DEFAULT_C_GRID, DecolorConfig, decolor_adaptive, decolor_fixed
from .figures import render_summary_figures
from .imgio import load_gray, load_rgb, save_gray
from .lowrank import RankPolicy

__all__ = ["main"]


class UsageError(Exception):
    """Bad flags or flag combinations."""


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; this tool reserves 2 for I/O errors.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _parse_rank(text: str) -> RankPolicy:
    if text == "full":
        return RankPolicy.full()
    if text.startswith("k="):
        try:
            return RankPolicy.fixed(int(text[2:]))
        except ValueError as exc:
            raise UsageError(f"bad rank spec {text!r}: {exc}") from None
    if text.startswith("energy="):
        try:
            return RankPolicy.energy_fraction(float(text[7:]))
        except ValueError as exc:
            raise UsageError(f"bad rank spec {text!r}: {exc}") from None
    raise UsageError(f"bad rank spec {text!r}; expected full, k=<n> or energy=<f>")


_CONFIG_KEYS = ("window_size", "window_sigma", "c1", "c2", "c3", "beta", "gamma",
                "kind", "c_grid", "fixed_c", "rank", "epsilon")


def _read_config_file(path: str | Path) -> dict[str, str]:
    """key=value lines; blank lines and # comments ignored."""
    options: dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value, got {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _CONFIG_KEYS:
            raise UsageError(f"{path}:{lineno}: unknown config key {key!r}")
        options[key] = value
    return options


def _load_options(args) -> dict[str, str]:
    return _read_config_file(args.config) if getattr(args, "config", None) else {}


def _build_metric(options: dict[str, str], kind_flag: str | None) -> MetricConfig:
    kind = kind_flag or options.get("kind", "photographic")
    try:
        return MetricConfig(
            window_size=int(options.get("window_size", 11)),
            window_sigma=float(options.get("window_sigma", 1.5)),
            c1=float(options.get("c1", 1.0)),
            c2=float(options.get("c2", 9.0)),
            c3=float(options.get("c3", 4.5)),
            beta=float(options.get("beta", 1.0)),
            gamma=float(options.get("gamma", 1.0)),
            kind=kind,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _build_decolor_config(options: dict[str, str], args) -> DecolorConfig:
    metric = _build_metric(options, getattr(args, "kind", None))
    rank_text = getattr(args, "rank", None) or options.get("rank", "full")
    grid = DEFAULT_C_GRID
    if "c_grid" in options:
        try:
            grid = tuple(float(v) for v in options["c_grid"].split(","))
        except ValueError as exc:
            raise UsageError(f"bad c_grid: {exc}") from None
    fixed_c = float(options.get("fixed_c", 0.25))
    c_flag = getattr(args, "c", None)
    if c_flag is not None:
        fixed_c = c_flag
    try:
        return DecolorConfig(c_grid=grid, rank_policy=_parse_rank(rank_text),
                             metric=metric, fixed_c=fixed_c)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _cmd_convert(args) -> int:
    options = _load_options(args)
    cfg = _build_decolor_config(options, args)
    if args.c is not None and args.method != "svd-fixed":
        raise UsageError("--c only applies to --method svd-fixed")
    if args.trace and args.method != "svd-adaptive":
        raise UsageError("--trace only applies to --method svd-adaptive")

    img = load_rgb(args.input)
    if args.method == "ntsc":
        gray = ntsc_gray(img)
    elif args.method == "cie-y":
        gray = cie_y_gray(img)
    elif args.method == "svd-fixed":
        gray = decolor_fixed(img, cfg.fixed_c, cfg.rank_policy)
    else:
        result = decolor_adaptive(img, cfg, quantize=True)
        gray = result.gray
        if args.trace:
            trace_path = Path(args.trace)
            trace_path.parent.mkdir(parents=True, exist_ok=True)
            lines = ["c,score"] + [f"{c:g},{s:.6f}" for c, s in result.per_c_scores]
            with open(trace_path, "w", encoding="utf-8", newline="\n") as fh:
                fh.write("\n".join(lines) + "\n")
        print(f"chosen_c={result.chosen_c:g} score={result.score:.6f}")
    save_gray(gray, args.output)
    return 0


def _save_map(plane, path: Path) -> None:
    save_gray(GrayImage(plane), path)


def _cmd_score(args) -> int:
    options = _load_options(args)
    metric = _build_metric(options, args.kind)
    color = load_rgb(args.color)
    gray = load_gray(args.gray)
    if (color.height, color.width) != (gray.height, gray.width):
        raise DataError(
            f"dimension mismatch: {args.color} is {color.height}x{color.width}, "
            f"{args.gray} is {gray.height}x{gray.width}"
        )
    if args.maps:
        stats = local_stats(srgb_to_lab(color), gray, metric)
        maps = similarity_maps(stats, metric)
        outdir = Path(args.maps)
        # L and C are already in (0, 1]; S and q can be negative and are
        # shifted from [-1, 1] onto [0, 1] for the 8-bit dump.
        _save_map(maps.L_map, outdir / "L_map.png")
        _save_map(maps.C_map, outdir / "C_map.png")
        _save_map((maps.S_map + 1.0) / 2.0, outdir / "S_map.png")
        _save_map((maps.q_map + 1.0) / 2.0, outdir / "q_map.png")
        score = float(maps.q_map.mean())
    else:
        score = c2g_ssim(color, gray, metric)
    print(f"{score:.6f}")
    return 0


def _parse_methods(args) -> list[MethodId]:
    externals: dict[str, Path] = {}
    for spec in args.external or []:
        if "=" not in spec:
            raise UsageError(f"bad --external {spec!r}; expected <label>=<dir>")
        label, directory = spec.split("=", 1)
        externals[label] = Path(directory)
    methods = []
    for name in (part.strip() for part in args.methods.split(",")):
        if not name:
            continue
        try:
            if name.startswith("external:"):
                label = name.split(":", 1)[1]
                if label not in externals:
                    raise UsageError(f"method {name!r} has no --external {label}=<dir>")
                methods.append(MethodId(name, source=externals.pop(label)))
            else:
                methods.append(MethodId(name))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if externals:
        raise UsageError(f"--external labels not in --methods: {sorted(externals)}")
    if not methods:
        raise UsageError("--methods must name at least one method")
    return methods


def _cmd_eval(args) -> int:
    options = _load_options(args)
    cfg = _build_decolor_config(options, args)
    epsilon = args.epsilon if args.epsilon is not None else float(options.get("epsilon", 0.0))
    if epsilon < 0:
        raise UsageError("--epsilon must be non-negative")
    if args.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    methods = _parse_methods(args)

    dataset, load_warnings = load_dataset(args.dataset)
    for warning in load_warnings:
        print(f"warning: {warning}", file=sys.stderr)

    report = evaluate(
        dataset, methods, cfg,
        jobs=args.jobs,
        dataset_name=Path(args.dataset).name,
        save_gray_to=Path(args.save_gray) if args.save_gray else None,
    )
    for warning in report.warnings:
        print(f"warning: {warning}", file=sys.stderr)

    stats = summarize(report, epsilon)
    export_report(report, stats, "json", args.report)
    if args.csv:
        export_report(report, stats, "csv", args.csv)
    if args.plot_data:
        emit_plot_data(stats, args.plot_data)
    if args.figures:
        render_summary_figures(stats, args.figures)

    for method in sorted(stats.average_score):
        print(f"{method}: success={stats.success_rate.get(method, 0)}/{stats.n_images} "
              f"average={stats.average_score[method]:.6f}")
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="chromagray",
                     description="Perceptually faithful color-to-grayscale conversion "
                                 "and decolorization benchmarking.")
    sub = parser.add_subparsers(dest="command", required=True)

    conv = sub.add_parser("convert", help="decolorize one image")
    conv.add_argument("--input", required=True)
    conv.add_argument("--output", required=True)
    conv.add_argument("--method", required=True,
                      choices=["ntsc", "cie-y", "svd-fixed", "svd-adaptive"])
    conv.add_argument("--c", type=float, default=None,
                      help="chrominance weight for svd-fixed")
    conv.add_argument("--kind", choices=["photographic", "synthetic"], default=None)
    conv.add_argument("--rank", default=None, help="full, k=<n> or energy=<f>")
    conv.add_argument("--trace", default=None,
                      help="write the per-weight score trace CSV (svd-adaptive)")
    conv.add_argument("--config", default=None, help="key=value defaults file")
    conv.set_defaults(func=_cmd_convert)

    score = sub.add_parser("score", help="score a grayscale against its color original")
    score.add_argument("--color", required=True)
    score.add_argument("--gray", required=True)
    score.add_argument("--kind", choices=["photographic", "synthetic"], default=None)
    score.add_argument("--maps", default=None,
                       help="directory for L/C/S/q similarity-map PNGs")
    score.add_argument("--config", default=None)
    score.set_defaults(func=_cmd_score)

    ev = sub.add_parser("eval", help="evaluate methods over a dataset directory")
    ev.add_argument("--dataset", required=True)
    ev.add_argument("--methods", required=True,
                    help="comma list: ntsc,cie-y,svd-fixed,svd-adaptive,external:<label>")
    ev.add_argument("--external", action="append", metavar="LABEL=DIR",
                    help="grayscale directory for an external:<label> method")
    ev.add_argument("--report", required=True, help="JSON report path")
    ev.add_argument("--csv", default=None)
    ev.add_argument("--plot-data", default=None)
    ev.add_argument("--figures", default=None,
                    help="directory for summary bar-chart PNGs")
    ev.add_argument("--save-gray", default=None,
                    help="directory for the evaluated grayscale outputs")
    ev.add_argument("--epsilon", type=float, default=None,
                    help="success-rate tie tolerance (default 0)")
    ev.add_argument("--jobs", type=int, default=1)
    ev.add_argument("--kind", choices=["photographic", "synthetic"], default=None)
    ev.add_argument("--rank", default=None)
    ev.add_argument("--config", default=None)
    ev.set_defaults(func=_cmd_eval)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except UnidentifiedImageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (FileNotFoundError, NotADirectoryError, IsADirectoryError, PermissionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
