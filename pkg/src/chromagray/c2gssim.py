"""Color-to-gray structural similarity (C2G-SSIM).

Scores a grayscale candidate against its color original by comparing, inside
Gaussian-weighted local windows, the lightness means, the mean color / gray
tone differences from the surroundings, and the correlation of those
difference fields. The three similarity maps are combined pointwise and
pooled by the arithmetic mean.

Conventions fixed here (the metric's canonical definition for this library):
11x11 Gaussian window with sigma 1.5, CIE76 color difference, stabilizing
constants scaled to the L* range of 100, symmetric reflection padding at the
borders, gray candidates compared on the L* scale (values in [0,1] times 100).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.ndimage import correlate1d

from .colorspace import GrayImage, LabImage, RgbImage, srgb_to_lab

__all__ = [
    "MetricConfig",
    "LocalStats",
    "SimilarityMaps",
    "gaussian_window",
    "local_stats",
    "similarity_maps",
    "c2g_ssim",
]

# Gray candidates in [0, 1] are compared on the lightness scale.
GRAY_TO_LIGHTNESS = 100.0

_KINDS = ("photographic", "synthetic")


@dataclass(frozen=True)
class MetricConfig:
    """Window, stabilizing constants and exponents of the similarity index.

    The luminance exponent alpha is tied to the image kind: 1 for
    photographic content, 0 for synthetic content. Leave alpha as None to
    derive it from `kind`.
    """

    window_size: int = 11
    window_sigma: float = 1.5
    c1: float = 1.0   # (0.01 * 100)^2
    c2: float = 9.0   # (0.03 * 100)^2
    c3: float = 4.5   # c2 / 2
    alpha: float | None = None
    beta: float = 1.0
    gamma: float = 1.0
    kind: str = "photographic"

    def __post_init__(self) -> None:
        if self.window_size < 3 or self.window_size % 2 == 0:
            raise ValueError("window_size must be odd and >= 3")
        if self.window_sigma <= 0:
            raise ValueError("window_sigma must be positive")
        if min(self.c1, self.c2, self.c3) <= 0:
            raise ValueError("stabilizing constants must be positive")
        if self.kind not in _KINDS:
            raise ValueError(f"kind must be one of {_KINDS}, got {self.kind!r}")
        expected_alpha = 1.0 if self.kind == "photographic" else 0.0
        if self.alpha is None:
            object.__setattr__(self, "alpha", expected_alpha)
        elif self.alpha != expected_alpha:
            raise ValueError(f"kind={self.kind!r} requires alpha={expected_alpha}")
        if self.beta < 0 or self.gamma < 0:
            raise ValueError("exponents must be non-negative")

    def with_kind(self, kind: str) -> "MetricConfig":
        """Same configuration with the image-kind flag (and thus alpha) swapped."""
        return MetricConfig(
            window_size=self.window_size,
            window_sigma=self.window_sigma,
            c1=self.c1,
            c2=self.c2,
            c3=self.c3,
            beta=self.beta,
            gamma=self.gamma,
            kind=kind,
        )


@dataclass(frozen=True)
class LocalStats:
    """Per-pixel windowed statistics of the color reference and gray candidate."""

    u_f: np.ndarray       # weighted mean lightness of the reference
    u_g: np.ndarray       # weighted mean of the gray candidate (L* scale)
    d_f: np.ndarray       # weighted mean color difference from the surroundings
    d_g: np.ndarray       # weighted mean gray tone difference
    sigma_f: np.ndarray   # weighted std of the color difference field
    sigma_g: np.ndarray   # weighted std of the gray difference field
    sigma_fg: np.ndarray  # weighted covariance between the two fields


@dataclass(frozen=True)
class SimilarityMaps:
    """Pointwise luminance / contrast / structure similarities and their product."""

    L_map: np.ndarray
    C_map: np.ndarray
    S_map: np.ndarray
    q_map: np.ndarray


def gaussian_window(size: int, sigma: float) -> np.ndarray:
    """size x size Gaussian weights, radially symmetric, summing to 1."""
    if size < 3 or size % 2 == 0:
        raise ValueError("size must be odd and >= 3")
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    half = size // 2
    yy, xx = np.mgrid[-half:half + 1, -half:half + 1]
    w = np.exp(-(xx**2 + yy**2) / (2.0 * sigma**2))
    return w / w.sum()


def _kernel1d(size: int, sigma: float) -> np.ndarray:
    half = size // 2
    k = np.exp(-np.arange(-half, half + 1, dtype=np.float64) ** 2 / (2.0 * sigma**2))
    return k / k.sum()


def _weighted_mean(plane: np.ndarray, k1: np.ndarray) -> np.ndarray:
    # Separable Gaussian correlation; scipy's 'reflect' is the same
    # half-sample symmetric extension as np.pad(mode="symmetric").
    return correlate1d(correlate1d(plane, k1, axis=0, mode="reflect"),
                       k1, axis=1, mode="reflect")


def _taps(plane: np.ndarray, size: int):
    """The size*size shifted (h, w) views of the reflection-padded plane, in
    row-major window order (matching gaussian_window(...).ravel())."""
    h, w = plane.shape
    padded = np.pad(plane, size // 2, mode="symmetric")
    return [padded[dy:dy + h, dx:dx + w]
            for dy in range(size) for dx in range(size)]


@dataclass(frozen=True)
class _RefStats:
    """Reference-side statistics, reusable across many gray candidates."""

    u_f: np.ndarray
    d_f: np.ndarray
    sigma_f: np.ndarray
    dfw_centered: np.ndarray  # (n, h, w): centered color-difference field, pre-scaled by weight
    weights: np.ndarray       # flattened window weights, (n,)
    kernel1d: np.ndarray
    window_size: int

    @property
    def shape(self) -> tuple[int, int]:
        return self.u_f.shape


def _ref_stats(lab: LabImage, cfg: MetricConfig) -> _RefStats:
    h, w = lab.height, lab.width
    size = cfg.window_size
    n = size * size
    wv = gaussian_window(size, cfg.window_sigma).ravel()
    k1 = _kernel1d(size, cfg.window_sigma)

    u_f = _weighted_mean(lab.L, k1)
    mu_a = _weighted_mean(lab.a, k1)
    mu_b = _weighted_mean(lab.b, k1)
    taps_L = _taps(lab.L, size)
    taps_a = _taps(lab.a, size)
    taps_b = _taps(lab.b, size)

    # Euclidean (CIE76) distance of every window member from the window's
    # weighted mean Lab vector, then its weighted mean / std over the window.
    dfw = np.empty((n, h, w))
    d_f = np.zeros((h, w))
    t = np.empty((h, w))
    for k in range(n):
        df_k = dfw[k]
        np.subtract(taps_L[k], u_f, out=df_k)
        np.square(df_k, out=df_k)
        np.subtract(taps_a[k], mu_a, out=t)
        np.square(t, out=t)
        df_k += t
        np.subtract(taps_b[k], mu_b, out=t)
        np.square(t, out=t)
        df_k += t
        np.sqrt(df_k, out=df_k)
        np.multiply(df_k, wv[k], out=t)
        d_f += t

    var_f = np.zeros((h, w))
    for k in range(n):
        df_k = dfw[k]
        df_k -= d_f
        np.square(df_k, out=t)
        t *= wv[k]
        var_f += t
        df_k *= wv[k]
    sigma_f = np.sqrt(np.maximum(var_f, 0.0))

    return _RefStats(u_f=u_f, d_f=d_f, sigma_f=sigma_f, dfw_centered=dfw,
                     weights=wv, kernel1d=k1, window_size=size)


def _gray_stats(ref: _RefStats, gray: GrayImage):
    """Gray-side windowed statistics against a prepared reference."""
    h, w = ref.shape
    size = ref.window_size
    n = size * size
    wv = ref.weights

    plane = gray.data * GRAY_TO_LIGHTNESS
    u_g = _weighted_mean(plane, ref.kernel1d)
    taps = _taps(plane, size)

    d_g = np.zeros((h, w))
    t = np.empty((h, w))
    scratch = np.empty((h, w))
    for k in range(n):
        np.subtract(taps[k], u_g, out=t)
        np.abs(t, out=t)
        t *= wv[k]
        d_g += t

    var_g = np.zeros((h, w))
    sigma_fg = np.zeros((h, w))
    for k in range(n):
        np.subtract(taps[k], u_g, out=t)
        np.abs(t, out=t)
        t -= d_g
        np.multiply(t, t, out=scratch)
        scratch *= wv[k]
        var_g += scratch
        t *= ref.dfw_centered[k]
        sigma_fg += t
    sigma_g = np.sqrt(np.maximum(var_g, 0.0))

    return u_g, d_g, sigma_g, sigma_fg


def _maps_from_stats(stats: LocalStats, cfg: MetricConfig) -> SimilarityMaps:
    L_map = (2.0 * stats.u_f * stats.u_g + cfg.c1) / (stats.u_f**2 + stats.u_g**2 + cfg.c1)
    C_map = (2.0 * stats.d_f * stats.d_g + cfg.c2) / (stats.d_f**2 + stats.d_g**2 + cfg.c2)
    S_map = (stats.sigma_fg + cfg.c3) / (stats.sigma_f * stats.sigma_g + cfg.c3)
    q_map = L_map**cfg.alpha * C_map**cfg.beta * S_map**cfg.gamma
    return SimilarityMaps(L_map=L_map, C_map=C_map, S_map=S_map, q_map=q_map)


def _score_gray(ref: _RefStats, gray: GrayImage, cfg: MetricConfig) -> float:
    u_g, d_g, sigma_g, sigma_fg = _gray_stats(ref, gray)
    stats = LocalStats(u_f=ref.u_f, u_g=u_g, d_f=ref.d_f, d_g=d_g,
                       sigma_f=ref.sigma_f, sigma_g=sigma_g, sigma_fg=sigma_fg)
    return float(np.mean(_maps_from_stats(stats, cfg).q_map))


def local_stats(ref: LabImage, gray: GrayImage, cfg: MetricConfig | None = None) -> LocalStats:
    """Windowed statistics of a Lab reference against a gray candidate.

    For each pixel, the window members' CIE76 distances from the window's
    weighted mean color give the color-difference field; the gray candidate
    (rescaled to the L* range) is treated analogously. Borders are handled by
    symmetric reflection padding.
    """
    cfg = cfg or MetricConfig()
    if (ref.height, ref.width) != (gray.height, gray.width):
        raise ValueError(
            f"dimension mismatch: reference {ref.height}x{ref.width} "
            f"vs gray {gray.height}x{gray.width}"
        )
    rs = _ref_stats(ref, cfg)
    u_g, d_g, sigma_g, sigma_fg = _gray_stats(rs, gray)
    return LocalStats(u_f=rs.u_f, u_g=u_g, d_f=rs.d_f, d_g=d_g,
                      sigma_f=rs.sigma_f, sigma_g=sigma_g, sigma_fg=sigma_fg)


def similarity_maps(stats: LocalStats, cfg: MetricConfig | None = None) -> SimilarityMaps:
    """Pointwise luminance / contrast / structure maps and their combination."""
    return _maps_from_stats(stats, cfg or MetricConfig())


def c2g_ssim(ref: RgbImage, gray: GrayImage, cfg: MetricConfig | None = None) -> float:
    """Pooled similarity score of a gray candidate against its color original."""
    cfg = cfg or MetricConfig()
    if (ref.height, ref.width) != (gray.height, gray.width):
        raise ValueError(
            f"dimension mismatch: reference {ref.height}x{ref.width} "
            f"vs gray {gray.height}x{gray.width}"
        )
    return _score_gray(_ref_stats(srgb_to_lab(ref), cfg), gray, cfg)
