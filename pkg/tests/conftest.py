"""Shared test helpers: independent scalar/naive oracles and image builders.

The oracles here are deliberately coded apart from the library (scalar math,
explicit double loops) so tests compare two separate implementations.
"""

import math

import numpy as np

# --- independent scalar colorimetry pipeline -------------------------------

_M = (
    (0.4124564, 0.3575761, 0.1804375),
    (0.2126729, 0.7151522, 0.0721750),
    (0.0193339, 0.1191920, 0.9503041),
)
_WHITE = tuple(sum(row) for row in _M)
_D = 6.0 / 29.0


def oracle_linearize(u):
    return u / 12.92 if u <= 0.04045 else ((u + 0.055) / 1.055) ** 2.4


def oracle_encode(u):
    u = max(0.0, min(u, 1.0))
    return 12.92 * u if u <= 0.0031308 else 1.055 * u ** (1 / 2.4) - 0.055


def _f(t):
    return t ** (1.0 / 3.0) if t > _D**3 else t / (3 * _D * _D) + 4.0 / 29.0


def _finv(u):
    return u**3 if u > _D else 3 * _D * _D * (u - 4.0 / 29.0)


def oracle_srgb_to_lab(r, g, b):
    rl, gl, bl = oracle_linearize(r), oracle_linearize(g), oracle_linearize(b)
    x, y, z = (m[0] * rl + m[1] * gl + m[2] * bl for m in _M)
    fx, fy, fz = _f(x / _WHITE[0]), _f(y / _WHITE[1]), _f(z / _WHITE[2])
    return 116 * fy - 16, 500 * (fx - fy), 200 * (fy - fz)


def oracle_lab_to_srgb(L, a, b):
    fy = (L + 16.0) / 116.0
    fx = fy + a / 500.0
    fz = fy - b / 200.0
    xyz = (_finv(fx) * _WHITE[0], _finv(fy) * _WHITE[1], _finv(fz) * _WHITE[2])
    inv = np.linalg.inv(np.array(_M))
    linear = inv @ np.array(xyz)
    return tuple(oracle_encode(v) for v in linear)


# --- naive windowed statistics oracle ---------------------------------------


def oracle_reflect(i, n):
    while i < 0 or i >= n:
        if i < 0:
            i = -1 - i
        elif i >= n:
            i = 2 * n - 1 - i
    return i


def oracle_gaussian_window(size, sigma):
    half = size // 2
    rows = [[math.exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma))
             for dx in range(-half, half + 1)]
            for dy in range(-half, half + 1)]
    total = sum(sum(row) for row in rows)
    return [[v / total for v in row] for row in rows]


def oracle_local_stats(lab, gray, size=11, sigma=1.5):
    """Naive per-window double-loop statistics; returns a dict of planes."""
    lab = np.asarray(lab, dtype=np.float64)
    L, a, b = lab[..., 0], lab[..., 1], lab[..., 2]
    g = np.asarray(gray, dtype=np.float64) * 100.0
    h, w = g.shape
    half = size // 2
    wgt = oracle_gaussian_window(size, sigma)

    names = ("u_f", "u_g", "d_f", "d_g", "sigma_f", "sigma_g", "sigma_fg")
    out = {name: np.zeros((h, w)) for name in names}
    for y in range(h):
        for x in range(w):
            members = []
            for dy in range(-half, half + 1):
                for dx in range(-half, half + 1):
                    yy = oracle_reflect(y + dy, h)
                    xx = oracle_reflect(x + dx, w)
                    members.append((wgt[dy + half][dx + half],
                                    L[yy, xx], a[yy, xx], b[yy, xx], g[yy, xx]))
            mu_L = sum(wk * Lv for wk, Lv, _, _, _ in members)
            mu_a = sum(wk * av for wk, _, av, _, _ in members)
            mu_b = sum(wk * bv for wk, _, _, bv, _ in members)
            mu_g = sum(wk * gv for wk, _, _, _, gv in members)
            df = [math.sqrt((Lv - mu_L) ** 2 + (av - mu_a) ** 2 + (bv - mu_b) ** 2)
                  for _, Lv, av, bv, _ in members]
            dg = [abs(gv - mu_g) for *_, gv in members]
            ws = [wk for wk, *_ in members]
            d_f = sum(wk * v for wk, v in zip(ws, df))
            d_g = sum(wk * v for wk, v in zip(ws, dg))
            out["u_f"][y, x] = mu_L
            out["u_g"][y, x] = mu_g
            out["d_f"][y, x] = d_f
            out["d_g"][y, x] = d_g
            out["sigma_f"][y, x] = math.sqrt(max(
                sum(wk * (v - d_f) ** 2 for wk, v in zip(ws, df)), 0.0))
            out["sigma_g"][y, x] = math.sqrt(max(
                sum(wk * (v - d_g) ** 2 for wk, v in zip(ws, dg)), 0.0))
            out["sigma_fg"][y, x] = sum(
                wk * (vf - d_f) * (vg - d_g) for wk, vf, vg in zip(ws, df, dg))
    return out


# --- image builders ----------------------------------------------------------


def random_rgb(rng, h, w):
    return rng.random((h, w, 3))


def smooth_rgb(rng, h, w, cells=8):
    """Low-frequency color image: random coarse grid, bilinearly upsampled."""
    coarse = rng.random((cells, cells, 3))
    ys = np.linspace(0, cells - 1, h)
    xs = np.linspace(0, cells - 1, w)
    y0 = np.clip(ys.astype(int), 0, cells - 2)
    x0 = np.clip(xs.astype(int), 0, cells - 2)
    fy = (ys - y0)[:, None, None]
    fx = (xs - x0)[None, :, None]
    c00 = coarse[y0][:, x0]
    c01 = coarse[y0][:, x0 + 1]
    c10 = coarse[y0 + 1][:, x0]
    c11 = coarse[y0 + 1][:, x0 + 1]
    return (c00 * (1 - fy) * (1 - fx) + c01 * (1 - fy) * fx
            + c10 * fy * (1 - fx) + c11 * fy * fx)


def achromatic_rgb(rng, h, w):
    return np.repeat(rng.random((h, w, 1)), 3, axis=2)
