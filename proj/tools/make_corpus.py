#!/usr/bin/env python3
"""Regenerate data/corpus and data/samples.

Natural images come from scikit-image's bundled data (public domain / CC0).
Everything else is synthetic and seeded, so reruns give identical files.
"""
import argparse
import pathlib

import numpy as np
from PIL import Image
from skimage import data, transform
from skimage.color import rgb2gray

SIZE = 256


def to_u8(a):
    return np.clip(np.rint(a * 255.0), 0, 255).astype(np.uint8)


def center_square(img):
    h, w = img.shape[:2]
    s = min(h, w)
    y0, x0 = (h - s) // 2, (w - s) // 2
    return img[y0:y0 + s, x0:x0 + s]


def gray_256(img):
    img = img.astype(np.float64)
    if img.max() > 1.0:
        img = img / 255.0
    if img.ndim == 3:
        img = rgb2gray(img[..., :3])
    return transform.resize(center_square(img), (SIZE, SIZE), anti_aliasing=True)


def color_256(img):
    img = img[..., :3].astype(np.float64) / 255.0
    return transform.resize(center_square(img), (SIZE, SIZE), anti_aliasing=True)


def steps_texture(rng):
    """Piecewise-constant blocks, a disc, a fine checkerboard patch and mild ripple."""
    y, x = np.mgrid[0:SIZE, 0:SIZE].astype(np.float64)
    img = np.where(x < SIZE / 2, 0.25, 0.7)
    img = np.where(y > 0.65 * SIZE, img * 0.6 + 0.2, img)
    disc = (x - 170) ** 2 + (y - 80) ** 2 < 40 ** 2
    img = np.where(disc, 0.9, img)
    patch = (x > 30) & (x < 100) & (y > 30) & (y < 100)
    checker = (((x // 2) + (y // 2)) % 2) * 2 - 1
    img = img + np.where(patch, 0.08 * checker, 0.0)
    img = img + 0.01 * np.sin(x / 5.0) * np.cos(y / 7.0)
    img = img + rng.normal(0.0, 0.005, img.shape)
    return np.clip(img, 0.0, 1.0)


def hazy_scene(rng):
    """Clean color scene pushed through the scattering model with a depth ramp."""
    clean = color_256(data.astronaut())
    y, _ = np.mgrid[0:SIZE, 0:SIZE].astype(np.float64)
    t = 0.9 - 0.6 * y / (SIZE - 1)
    a = np.array([0.92, 0.94, 0.97])
    hazy = clean * t[..., None] + a * (1.0 - t[..., None])
    return np.clip(hazy + rng.normal(0.0, 0.002, hazy.shape), 0.0, 1.0)


def write_rgbe(path, rgb):
    h, w, _ = rgb.shape
    m = rgb.max(axis=2)
    mant, expo = np.frexp(m)
    scale = np.where(m > 1e-32, mant * 256.0 / np.maximum(m, 1e-300), 0.0)
    out = np.zeros((h, w, 4), dtype=np.uint8)
    out[..., :3] = np.clip(rgb * scale[..., None], 0, 255).astype(np.uint8)
    out[..., 3] = np.where(m > 1e-32, expo + 128, 0).astype(np.uint8)
    with open(path, "wb") as f:
        f.write(b"#?RADIANCE\nFORMAT=32-bit_rle_rgbe\n\n")
        f.write(f"-Y {h} +X {w}\n".encode())
        f.write(out.tobytes())


def hdr_scene():
    """Window-in-a-dark-room radiance map spanning about four decades."""
    y, x = np.mgrid[0:SIZE, 0:SIZE].astype(np.float64)
    room = 0.05 + 0.1 * (x / SIZE) + 0.02 * np.sin(x / 3.0) * np.sin(y / 4.0)
    window = (x > 140) & (x < 220) & (y > 40) & (y < 140)
    sky = 400.0 + 300.0 * (1.0 - y / SIZE) + 20.0 * np.sin(x / 2.5)
    lum = np.where(window, sky, room)
    lamp = (x - 60) ** 2 + (y - 190) ** 2 < 12 ** 2
    lum = np.where(lamp, 2000.0, lum)
    tint = np.stack([np.where(window, 0.8, 1.1), np.ones_like(lum), np.where(window, 1.25, 0.8)], axis=2)
    return lum[..., None] * tint


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(pathlib.Path(__file__).resolve().parent.parent / "data"))
    args = ap.parse_args()
    root = pathlib.Path(args.out)
    corpus = root / "corpus"
    samples = root / "samples"
    corpus.mkdir(parents=True, exist_ok=True)
    samples.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(20240611)

    gray = {
        "astronaut": data.astronaut(),
        "camera": data.camera(),
        "cat": data.chelsea(),
        "coffee": data.coffee(),
        "coins": data.coins(),
    }
    for name, img in gray.items():
        Image.fromarray(to_u8(gray_256(img))).save(corpus / f"{name}.png")
    Image.fromarray(to_u8(steps_texture(rng))).save(corpus / "steps.png")

    Image.fromarray(to_u8(color_256(data.chelsea()))).save(samples / "cat_color.png")
    Image.fromarray(to_u8(color_256(data.coffee()))).save(samples / "coffee_color.png")
    Image.fromarray(to_u8(hazy_scene(rng))).save(samples / "hazy.png")
    tex = gray_256(data.brick())
    Image.fromarray(to_u8(tex)).save(samples / "texture.png")
    write_rgbe(samples / "window.hdr", hdr_scene())


if __name__ == "__main__":
    main()
