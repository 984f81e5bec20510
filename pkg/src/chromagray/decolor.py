"""Decolorization by chrominance incorporation.

The fixed-weight method adds a scaled SVD reconstruction of the a*/b*
chrominance planes to the lightness plane and re-projects to gray. The
adaptive method sweeps the weight over a grid and keeps the candidate with
the best perceptual score against the color original.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .c2gssim import MetricConfig, _RefStats, _ref_stats, _score_gray
from .colorspace import (
    D65_WHITE,
    XYZ_TO_SRGB,
    GrayImage,
    LabImage,
    RgbImage,
    _lab_finv,
    _linear_to_srgb,
    srgb_to_lab,
)
from .lowrank import RankPolicy, reconstruct, svd_decompose

__all__ = [
    "DEFAULT_C_GRID",
    "DecolorConfig",
    "DecolorResult",
    "decolor_fixed",
    "decolor_adaptive",
    "quantize_gray",
]

# 20 weights, 0.05 through 1.00 in steps of 0.05.
DEFAULT_C_GRID = tuple(i / 20 for i in range(1, 21))


@dataclass(frozen=True)
class DecolorConfig:
    """Weight grid, rank policy and metric settings for the adaptive method."""

    c_grid: tuple[float, ...] = DEFAULT_C_GRID
    rank_policy: RankPolicy = RankPolicy.full()
    metric: MetricConfig = MetricConfig()
    fixed_c: float = 0.25

    def __post_init__(self) -> None:
        grid = tuple(float(c) for c in self.c_grid)
        if not grid:
            raise ValueError("c_grid must not be empty")
        if any(c <= 0 for c in grid):
            raise ValueError("all weights must be positive")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ValueError("c_grid must be strictly increasing")
        if self.fixed_c <= 0:
            raise ValueError("fixed_c must be positive")
        object.__setattr__(self, "c_grid", grid)


@dataclass(frozen=True)
class DecolorResult:
    """Best gray candidate of a weight sweep, with the full score trace."""

    gray: GrayImage
    chosen_c: float
    score: float
    per_c_scores: tuple[tuple[float, float], ...]


def quantize_gray(gray: GrayImage) -> GrayImage:
    """Snap gray levels to the 8-bit grid (k/255) used by the PNG encoding."""
    return GrayImage(np.round(gray.data * 255.0) / 255.0)


def _reconstructed_chroma(lab: LabImage, policy: RankPolicy) -> np.ndarray:
    """Sum of the rank-reduced a* and b* planes."""
    return (reconstruct(svd_decompose(lab.a), policy)
            + reconstruct(svd_decompose(lab.b), policy))


# Linear RGB of the reference white: (1, 1, 1) up to rounding of the inverse.
_WHITE_LINEAR_RGB = XYZ_TO_SRGB @ D65_WHITE


def _compose_gray(L: np.ndarray, chroma: np.ndarray, c: float) -> GrayImage:
    """Lightness plus c-scaled chrominance, re-projected to gray.

    The boosted lightness plane is clamped to [0, 100], pushed through the
    Lab -> sRGB transform with zero chroma, and the three (identical up to
    rounding) sRGB channels are averaged. With a* = b* = 0 the transform
    reduces to scaling the white point's linear RGB, which spares the full
    matrix product of lab_to_srgb on the hot sweep path.
    """
    g = np.clip(L + c * chroma, 0.0, 100.0)
    v = _lab_finv((g + 16.0) / 116.0)
    linear = v[..., None] * _WHITE_LINEAR_RGB
    rgb = np.clip(_linear_to_srgb(linear), 0.0, 1.0)
    return GrayImage(rgb.mean(axis=2))


def decolor_fixed(img: RgbImage, c: float, policy: RankPolicy | None = None) -> GrayImage:
    """Decolorize with a fixed chrominance weight c > 0."""
    if c <= 0:
        raise ValueError("weight c must be positive")
    policy = policy or RankPolicy.full()
    lab = srgb_to_lab(img)
    return _compose_gray(lab.L, _reconstructed_chroma(lab, policy), c)


def _adaptive_from_stats(
    lab: LabImage,
    ref: _RefStats,
    cfg: DecolorConfig,
    *,
    quantize: bool,
) -> DecolorResult:
    """Weight sweep over a prepared reference; ties go to the smallest c."""
    chroma = _reconstructed_chroma(lab, cfg.rank_policy)
    best_gray = None
    best_c = 0.0
    best_score = -np.inf
    trace = []
    for c in cfg.c_grid:
        gray = _compose_gray(lab.L, chroma, c)
        if quantize:
            gray = quantize_gray(gray)
        score = _score_gray(ref, gray, cfg.metric)
        trace.append((c, score))
        if score > best_score:
            best_gray, best_c, best_score = gray, c, score
    return DecolorResult(gray=best_gray, chosen_c=best_c, score=best_score,
                         per_c_scores=tuple(trace))


def decolor_adaptive(
    img: RgbImage,
    cfg: DecolorConfig | None = None,
    *,
    quantize: bool = False,
) -> DecolorResult:
    """Decolorize with the weight chosen by the perceptual score.

    Every weight in cfg.c_grid is tried; each candidate is scored against the
    color original and the best-scoring gray wins, ties broken toward the
    smallest weight. With quantize=True the candidates are snapped to 8-bit
    gray levels before scoring, so that a candidate written out as a PNG
    reproduces its recorded score exactly when re-scored from the file.
    """
    cfg = cfg or DecolorConfig()
    lab = srgb_to_lab(img)
    ref = _ref_stats(lab, cfg.metric)
    return _adaptive_from_stats(lab, ref, cfg, quantize=quantize)
