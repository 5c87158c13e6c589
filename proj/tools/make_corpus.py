#!/usr/bin/env python3
"""Rebuild data/corpus/*.pgm from publicly packaged copies of common test images.

Sources (all 512x512 after conversion):
  lena     scipy-0.12.0 sdist, scipy/misc/lena.dat (pickled uint array)
  ascent   scipy-0.12.0 sdist, scipy/misc/ascent.dat
  baboon   npm baboon-image@2.1.0, baboon.png (RGB, converted with BT.601 luma)
  barbara  pyunlocbox-0.6.1 sdist, doc/tutorials/barbara.png
  aero     PyWavelets wheel, pywt/data/aero.npz
  camera   PyWavelets wheel, pywt/data/camera.npz

Usage: make_corpus.py --scipy-sdist scipy-0.12.0.tar.gz --baboon baboon.png \
           --barbara barbara.png --pywt-wheel pywavelets-*.whl --out data/corpus
"""
import argparse
import io
import pathlib
import pickle
import tarfile
import zipfile

import numpy as np
from PIL import Image


def write_pgm(path, img):
    img = np.asarray(img)
    assert img.dtype == np.uint8 and img.ndim == 2
    h, w = img.shape
    with open(path, "wb") as f:
        f.write(f"P5\n{w} {h}\n255\n".encode())
        f.write(img.tobytes())


def to_gray(png):
    im = Image.open(png)
    if im.mode != "L":
        rgb = np.asarray(im.convert("RGB"), dtype=np.float64)
        y = 0.2989 * rgb[..., 0] + 0.5870 * rgb[..., 1] + 0.1140 * rgb[..., 2]
        return np.clip(np.round(y), 0, 255).astype(np.uint8)
    return np.asarray(im, dtype=np.uint8)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--scipy-sdist", required=True)
    ap.add_argument("--baboon", required=True)
    ap.add_argument("--barbara", required=True)
    ap.add_argument("--pywt-wheel", required=True)
    ap.add_argument("--out", default="data/corpus")
    args = ap.parse_args()
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    with tarfile.open(args.scipy_sdist) as tf:
        for name in ("lena", "ascent"):
            member = next(m for m in tf.getmembers() if m.name.endswith(f"scipy/misc/{name}.dat"))
            arr = np.array(pickle.load(tf.extractfile(member), encoding="latin1"))
            write_pgm(out / f"{name}.pgm", arr.astype(np.uint8))

    write_pgm(out / "baboon.pgm", to_gray(args.baboon))
    write_pgm(out / "barbara.pgm", to_gray(args.barbara))

    with zipfile.ZipFile(args.pywt_wheel) as zf:
        for name in ("aero", "camera"):
            arr = np.load(io.BytesIO(zf.read(f"pywt/data/{name}.npz")))["data"]
            write_pgm(out / f"{name}.pgm", arr.astype(np.uint8))


if __name__ == "__main__":
    main()
