"""Image file decoding and encoding (8-bit, normalized by 1/255)."""

from __future__ import annotations

from pathlib import Path

import numpy as np
from PIL import Image

from .colorspace import GrayImage, RgbImage

__all__ = ["IMAGE_EXTENSIONS", "load_rgb", "load_gray", "save_gray"]

IMAGE_EXTENSIONS = (".png", ".jpg", ".jpeg", ".bmp")


def load_rgb(path: str | Path) -> RgbImage:
    """Decode an image file as an sRGB raster in [0, 1]."""
    with Image.open(path) as im:
        arr = np.asarray(im.convert("RGB"), dtype=np.float64)
    return RgbImage(arr / 255.0)


def load_gray(path: str | Path) -> GrayImage:
    """Decode an image file as a single gray plane in [0, 1]."""
    with Image.open(path) as im:
        arr = np.asarray(im.convert("L"), dtype=np.float64)
    return GrayImage(arr / 255.0)


def save_gray(gray: GrayImage, path: str | Path) -> None:
    """Write a gray plane as an 8-bit image, value = round(255 * gray)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    arr = np.round(gray.data * 255.0).astype(np.uint8)
    Image.fromarray(arr, mode="L").save(path)
