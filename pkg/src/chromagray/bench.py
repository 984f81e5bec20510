"""Dataset evaluation harness: multi-method scoring, summary statistics,
report persistence and plot-data emission.

Grays are snapped to the 8-bit grid before scoring so that a recorded score
can be reproduced exactly by re-scoring the emitted PNG file.
"""

from __future__ import annotations

import dataclasses
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .c2gssim import _ref_stats, _score_gray
from .colorspace import GrayImage, RgbImage, cie_y_gray, ntsc_gray, srgb_to_lab
from .decolor import DecolorConfig, _adaptive_from_stats, _compose_gray, \
    _reconstructed_chroma, quantize_gray
from .imgio import IMAGE_EXTENSIONS, load_gray, load_rgb, save_gray

__all__ = [
    "DataError",
    "MethodId",
    "ReportEntry",
    "QualityReport",
    "SummaryStats",
    "load_dataset",
    "evaluate",
    "success_rate",
    "average_score",
    "summarize",
    "export_report",
    "emit_plot_data",
]

_BUILTIN_METHODS = ("ntsc", "cie-y", "svd-fixed", "svd-adaptive")


class DataError(Exception):
    """Raised for malformed or unusable input data."""


@dataclass(frozen=True)
class MethodId:
    """One decolorization method under evaluation.

    `name` is the unique report label: one of the built-in names, or
    "external:<label>" for precomputed grayscale files read from `source`
    (matched to color images by filename stem). `c` overrides the fixed
    weight for svd-fixed.
    """

    name: str
    c: float | None = None
    source: Path | None = None

    def __post_init__(self) -> None:
        if self.name.startswith("external:"):
            label = self.name.split(":", 1)[1]
            if not label:
                raise ValueError("external method needs a label: external:<label>")
            if self.source is None:
                raise ValueError(f"external method {self.name!r} needs a source directory")
        elif self.name not in _BUILTIN_METHODS:
            raise ValueError(
                f"unknown method {self.name!r}; expected one of {_BUILTIN_METHODS} "
                "or external:<label>"
            )

    @property
    def is_external(self) -> bool:
        return self.name.startswith("external:")


@dataclass(frozen=True)
class ReportEntry:
    image_id: str
    method: str
    score: float
    chosen_c: float | None = None


@dataclass(frozen=True)
class QualityReport:
    """Per-image, per-method scores for one evaluation run."""

    entries: tuple[ReportEntry, ...]
    dataset_name: str
    metric_config: dict
    warnings: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        seen = set()
        for e in self.entries:
            key = (e.image_id, e.method)
            if key in seen:
                raise ValueError(f"duplicate entry for {key}")
            seen.add(key)
            if not np.isfinite(e.score):
                raise ValueError(f"non-finite score for {key}")

    @property
    def image_ids(self) -> tuple[str, ...]:
        return tuple(sorted({e.image_id for e in self.entries}))

    @property
    def methods(self) -> tuple[str, ...]:
        return tuple(sorted({e.method for e in self.entries}))


@dataclass(frozen=True)
class SummaryStats:
    """Success-rate counts and average scores per method."""

    success_rate: dict[str, int]
    average_score: dict[str, float]
    n_images: int


def load_dataset(directory: str | Path) -> tuple[list[tuple[str, RgbImage]], list[str]]:
    """Decode every PNG/JPEG/BMP in a directory, sorted by filename.

    Returns (entries, warnings): entries are (image_id, image) pairs with the
    image_id taken from the filename stem; unreadable files are skipped and
    reported in warnings. An empty directory is an error.
    """
    directory = Path(directory)
    if not directory.is_dir():
        raise FileNotFoundError(f"dataset directory not found: {directory}")
    files = sorted(p for p in directory.iterdir()
                   if p.is_file() and p.suffix.lower() in IMAGE_EXTENSIONS)
    if not files:
        raise DataError(f"no image files in {directory}")
    entries: list[tuple[str, RgbImage]] = []
    warnings: list[str] = []
    seen: set[str] = set()
    for path in files:
        if path.stem in seen:
            raise DataError(f"duplicate image id {path.stem!r} in {directory}")
        try:
            img = load_rgb(path)
        except Exception as exc:  # undecodable file: skip, keep going
            warnings.append(f"skipped unreadable file {path.name}: {exc}")
            continue
        seen.add(path.stem)
        entries.append((path.stem, img))
    if not entries:
        raise DataError(f"no decodable image files in {directory}")
    return entries, warnings


def _find_external_gray(source: Path, image_id: str) -> Path | None:
    for ext in IMAGE_EXTENSIONS:
        for candidate in (source / f"{image_id}{ext}", source / f"{image_id}{ext.upper()}"):
            if candidate.is_file():
                return candidate
    return None


def _evaluate_image(task):
    """Score every method on one image; returns (entries, warnings, grays).

    Module-level so it can run in a worker process. The reference-side
    statistics are computed once and shared across methods; grays are
    8-bit-quantized before scoring.
    """
    image_id, img, methods, cfg, keep_grays = task
    lab = srgb_to_lab(img)
    ref = _ref_stats(lab, cfg.metric)
    entries: list[ReportEntry] = []
    warnings: list[str] = []
    grays: dict[str, GrayImage] = {}

    chroma = None
    for method in methods:
        chosen_c = None
        if method.name == "ntsc":
            gray = quantize_gray(ntsc_gray(img))
        elif method.name == "cie-y":
            gray = quantize_gray(cie_y_gray(img))
        elif method.name == "svd-fixed":
            if chroma is None:
                chroma = _reconstructed_chroma(lab, cfg.rank_policy)
            c = method.c if method.c is not None else cfg.fixed_c
            gray = quantize_gray(_compose_gray(lab.L, chroma, c))
        elif method.name == "svd-adaptive":
            result = _adaptive_from_stats(lab, ref, cfg, quantize=True)
            gray = result.gray
            chosen_c = result.chosen_c
            entries.append(ReportEntry(image_id, method.name, result.score, chosen_c))
            if keep_grays:
                grays[method.name] = gray
            continue
        else:  # external
            path = _find_external_gray(method.source, image_id)
            if path is None:
                warnings.append(f"{method.name}: no grayscale file for {image_id!r}; entry omitted")
                continue
            try:
                gray = load_gray(path)
            except Exception as exc:
                warnings.append(f"{method.name}: unreadable file {path.name}: {exc}; entry omitted")
                continue
            if (gray.height, gray.width) != (img.height, img.width):
                warnings.append(
                    f"{method.name}: {path.name} is {gray.height}x{gray.width}, "
                    f"expected {img.height}x{img.width}; entry omitted"
                )
                continue
        score = _score_gray(ref, gray, cfg.metric)
        entries.append(ReportEntry(image_id, method.name, score, chosen_c))
        if keep_grays:
            grays[method.name] = gray
    return entries, warnings, grays


def evaluate(
    dataset: list[tuple[str, RgbImage]],
    methods: list[MethodId],
    cfg: DecolorConfig | None = None,
    *,
    jobs: int = 1,
    dataset_name: str = "",
    save_gray_to: Path | None = None,
) -> QualityReport:
    """Score every (image, method) pair; deterministic across runs and job counts.

    With save_gray_to set, each method's gray output is written below
    <dir>/<method>/<image_id>.png (method names sanitized for the filesystem).
    """
    if not methods:
        raise ValueError("need at least one method")
    names = [m.name for m in methods]
    if len(set(names)) != len(names):
        raise ValueError(f"method names must be unique, got {names}")
    cfg = cfg or DecolorConfig()
    if "svd-adaptive" in names and "svd-fixed" in names:
        fixed = next(m.c if m.c is not None else cfg.fixed_c
                     for m in methods if m.name == "svd-fixed")
        if fixed not in cfg.c_grid:
            raise DataError(
                f"fixed weight {fixed} is not on the adaptive grid; "
                "dominance against the adaptive method would not be guaranteed"
            )

    keep = save_gray_to is not None
    tasks = [(image_id, img, tuple(methods), cfg, keep) for image_id, img in dataset]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_evaluate_image, tasks, chunksize=1))
    else:
        results = [_evaluate_image(t) for t in tasks]

    entries: list[ReportEntry] = []
    warnings: list[str] = []
    for task, (img_entries, img_warnings, grays) in zip(tasks, results):
        image_id = task[0]
        entries.extend(img_entries)
        warnings.extend(img_warnings)
        if keep:
            for method_name, gray in grays.items():
                safe = method_name.replace(":", "_")
                save_gray(gray, Path(save_gray_to) / safe / f"{image_id}.png")

    entries.sort(key=lambda e: (e.image_id, e.method))
    metric_snapshot = dataclasses.asdict(cfg.metric)
    return QualityReport(entries=tuple(entries), dataset_name=dataset_name,
                         metric_config=metric_snapshot, warnings=tuple(warnings))


def success_rate(report: QualityReport, epsilon: float = 0.0) -> dict[str, int]:
    """Per method, the number of images on which it reaches the maximum score.

    With epsilon > 0 every method within epsilon of the per-image maximum is
    credited; exact ties always credit all tied methods.
    """
    if not report.entries:
        raise ValueError("report is empty")
    if epsilon < 0:
        raise ValueError("epsilon must be non-negative")
    by_image: dict[str, list[ReportEntry]] = {}
    for e in report.entries:
        by_image.setdefault(e.image_id, []).append(e)
    counts = {m: 0 for m in report.methods}
    for group in by_image.values():
        best = max(e.score for e in group)
        for e in group:
            if e.score >= best - epsilon:
                counts[e.method] += 1
    return counts


def average_score(report: QualityReport) -> dict[str, float]:
    """Arithmetic mean score per method over the images it was scored on."""
    if not report.entries:
        raise ValueError("report is empty")
    sums: dict[str, float] = {}
    ns: dict[str, int] = {}
    for e in report.entries:
        sums[e.method] = sums.get(e.method, 0.0) + e.score
        ns[e.method] = ns.get(e.method, 0) + 1
    return {m: sums[m] / ns[m] for m in sorted(sums)}


def summarize(report: QualityReport, epsilon: float = 0.0) -> SummaryStats:
    """Success-rate counts and average scores in one bundle."""
    return SummaryStats(
        success_rate=success_rate(report, epsilon),
        average_score=average_score(report),
        n_images=len(report.image_ids),
    )


def export_report(
    report: QualityReport,
    stats: SummaryStats,
    format: str,
    path: str | Path,
) -> Path:
    """Persist a report as JSON or CSV (UTF-8, LF, scores to 6 decimals in CSV)."""
    if not report.entries:
        raise ValueError("cannot export an empty report")
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if format == "json":
        payload = {
            "dataset": report.dataset_name,
            "metric_config": report.metric_config,
            "entries": [
                {"image_id": e.image_id, "method": e.method,
                 "score": e.score, "chosen_c": e.chosen_c}
                for e in report.entries
            ],
            "success_rate": dict(sorted(stats.success_rate.items())),
            "average_score": dict(sorted(stats.average_score.items())),
        }
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    elif format == "csv":
        lines = ["image_id,method,score,chosen_c"]
        for e in report.entries:
            c = "" if e.chosen_c is None else f"{e.chosen_c:g}"
            lines.append(f"{e.image_id},{e.method},{e.score:.6f},{c}")
        text = "\n".join(lines) + "\n"
    else:
        raise ValueError(f"unknown export format {format!r}")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    return path


def emit_plot_data(stats: SummaryStats, path: str | Path) -> Path:
    """CSV of method,success_rate,average_score for external plotting."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = ["method,success_rate,average_score"]
    for m in sorted(stats.average_score):
        lines.append(f"{m},{stats.success_rate.get(m, 0)},{stats.average_score[m]:.6f}")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    return path
