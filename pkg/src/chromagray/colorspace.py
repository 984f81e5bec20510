"""sRGB / CIE XYZ / CIEL*a*b* conversions and closed-form grayscale baselines.

All planes are float64. sRGB values live in [0, 1], lightness L* in [0, 100].
Conversions use the standard piecewise sRGB transfer function with the D65
white point; the reference white is taken as the exact image of sRGB (1,1,1)
under the forward matrix so the achromatic axis lands on a* = b* = 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "RgbImage",
    "LabImage",
    "GrayImage",
    "srgb_to_lab",
    "lab_to_srgb",
    "ntsc_gray",
    "cie_y_gray",
]

# sRGB -> XYZ for the D65 / 2-degree observer.
SRGB_TO_XYZ = np.array([
    [0.4124564, 0.3575761, 0.1804375],
    [0.2126729, 0.7151522, 0.0721750],
    [0.0193339, 0.1191920, 0.9503041],
])

# Numerical inverse keeps the round trip exact to machine precision.
XYZ_TO_SRGB = np.linalg.inv(SRGB_TO_XYZ)

# White point implied by the matrix: X ~ 0.95047, Y ~ 1.0, Z ~ 1.08883.
D65_WHITE = SRGB_TO_XYZ @ np.ones(3)

# Classic 0.3 : 0.6 : 0.1 luma rule.
NTSC_WEIGHTS = np.array([0.3, 0.6, 0.1])

_DELTA = 6.0 / 29.0


@dataclass(frozen=True)
class RgbImage:
    """h x w x 3 raster of sRGB intensities in [0, 1]."""

    data: np.ndarray

    def __post_init__(self) -> None:
        data = np.asarray(self.data, dtype=np.float64)
        if data.ndim != 3 or data.shape[2] != 3:
            raise ValueError(f"expected an (h, w, 3) array, got shape {np.shape(self.data)}")
        if data.shape[0] < 1 or data.shape[1] < 1:
            raise ValueError("image must contain at least one pixel")
        if not np.isfinite(data).all():
            raise ValueError("image contains non-finite values")
        if data.min() < 0.0 or data.max() > 1.0:
            raise ValueError("sRGB values must lie in [0, 1]")
        object.__setattr__(self, "data", data)

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def width(self) -> int:
        return self.data.shape[1]


@dataclass(frozen=True)
class LabImage:
    """h x w x 3 raster in CIEL*a*b*: L in [0, 100], a/b signed chromatic axes."""

    data: np.ndarray

    def __post_init__(self) -> None:
        data = np.asarray(self.data, dtype=np.float64)
        if data.ndim != 3 or data.shape[2] != 3:
            raise ValueError(f"expected an (h, w, 3) array, got shape {np.shape(self.data)}")
        if data.shape[0] < 1 or data.shape[1] < 1:
            raise ValueError("image must contain at least one pixel")
        if not np.isfinite(data).all():
            raise ValueError("Lab image contains non-finite values")
        object.__setattr__(self, "data", data)

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def L(self) -> np.ndarray:
        return self.data[..., 0]

    @property
    def a(self) -> np.ndarray:
        return self.data[..., 1]

    @property
    def b(self) -> np.ndarray:
        return self.data[..., 2]

    @classmethod
    def from_planes(cls, L: np.ndarray, a: np.ndarray, b: np.ndarray) -> "LabImage":
        return cls(np.stack([L, a, b], axis=-1))


@dataclass(frozen=True)
class GrayImage:
    """h x w raster of gray levels; values are clamped to [0, 1] on construction."""

    data: np.ndarray

    def __post_init__(self) -> None:
        data = np.asarray(self.data, dtype=np.float64)
        if data.ndim != 2:
            raise ValueError(f"expected an (h, w) array, got shape {np.shape(self.data)}")
        if data.shape[0] < 1 or data.shape[1] < 1:
            raise ValueError("image must contain at least one pixel")
        if not np.isfinite(data).all():
            raise ValueError("gray image contains non-finite values")
        object.__setattr__(self, "data", np.clip(data, 0.0, 1.0))

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def width(self) -> int:
        return self.data.shape[1]


def _srgb_to_linear(v: np.ndarray) -> np.ndarray:
    """Piecewise sRGB EOTF: linear segment below the 0.04045 knee."""
    return np.where(v <= 0.04045, v / 12.92, ((v + 0.055) / 1.055) ** 2.4)


def _linear_to_srgb(v: np.ndarray) -> np.ndarray:
    # Negative inputs (out of gamut) take the linear branch; the clamped power
    # argument only avoids NaN noise in the unused branch of np.where.
    safe = np.maximum(v, 0.0)
    return np.where(v <= 0.0031308, 12.92 * v, 1.055 * safe ** (1.0 / 2.4) - 0.055)


def _lab_f(t: np.ndarray) -> np.ndarray:
    return np.where(t > _DELTA**3, np.cbrt(t), t / (3.0 * _DELTA**2) + 4.0 / 29.0)


def _lab_finv(u: np.ndarray) -> np.ndarray:
    return np.where(u > _DELTA, u**3, 3.0 * _DELTA**2 * (u - 4.0 / 29.0))


def srgb_to_lab(img: RgbImage) -> LabImage:
    """Convert sRGB to CIEL*a*b* (sRGB -> linear RGB -> XYZ(D65) -> Lab)."""
    linear = _srgb_to_linear(img.data)
    xyz = linear @ SRGB_TO_XYZ.T
    f = _lab_f(xyz / D65_WHITE)
    fx, fy, fz = f[..., 0], f[..., 1], f[..., 2]
    lab = np.empty_like(f)
    lab[..., 0] = 116.0 * fy - 16.0
    lab[..., 1] = 500.0 * (fx - fy)
    lab[..., 2] = 200.0 * (fy - fz)
    return LabImage(lab)


def lab_to_srgb(lab: LabImage) -> RgbImage:
    """Invert :func:`srgb_to_lab`; out-of-gamut results are clamped per channel."""
    fy = (lab.L + 16.0) / 116.0
    fx = fy + lab.a / 500.0
    fz = fy - lab.b / 200.0
    xyz = np.stack([_lab_finv(fx), _lab_finv(fy), _lab_finv(fz)], axis=-1) * D65_WHITE
    linear = xyz @ XYZ_TO_SRGB.T
    return RgbImage(np.clip(_linear_to_srgb(linear), 0.0, 1.0))


def ntsc_gray(img: RgbImage) -> GrayImage:
    """Pixel-wise 0.3*r + 0.6*g + 0.1*b."""
    return GrayImage(img.data @ NTSC_WEIGHTS)


def cie_y_gray(img: RgbImage) -> GrayImage:
    """CIE XYZ luminance Y of the linearized image, normalized so white -> 1."""
    linear = _srgb_to_linear(img.data)
    y = linear @ SRGB_TO_XYZ[1]
    return GrayImage(y / D65_WHITE[1])
