"""Binary PGM (P5) reading and writing.

The single supported interchange format: 8-bit grayscale, maxval 255.
Header comments are accepted on read; writing emits the canonical
three-line header.
"""

from __future__ import annotations

import os

import numpy as np


def _next_token(data: bytes, pos: int):
    while pos < len(data):
        ch = data[pos:pos + 1]
        if ch == b"#":
            nl = data.find(b"\n", pos)
            pos = len(data) if nl < 0 else nl + 1
        elif ch.isspace():
            pos += 1
        else:
            break
    start = pos
    while pos < len(data) and not data[pos:pos + 1].isspace():
        pos += 1
    if start == pos:
        raise ValueError("truncated PGM header")
    return data[start:pos], pos


def read_pgm(path) -> np.ndarray:
    """Read a binary PGM file into a 2-D uint8 array."""
    with open(path, "rb") as fh:
        data = fh.read()
    magic, pos = _next_token(data, 0)
    if magic != b"P5":
        raise ValueError(f"unsupported image format {magic!r}: only binary PGM (P5) is handled")
    fields = []
    for _ in range(3):
        tok, pos = _next_token(data, pos)
        fields.append(int(tok))
    width, height, maxval = fields
    if maxval != 255:
        raise ValueError(f"only 8-bit images (maxval 255) are supported, got maxval {maxval}")
    pos += 1  # single whitespace byte after maxval
    pixels = data[pos:pos + width * height]
    if len(pixels) != width * height:
        raise ValueError(f"PGM payload truncated: expected {width * height} bytes, got {len(pixels)}")
    return np.frombuffer(pixels, dtype=np.uint8).reshape(height, width).copy()


def write_pgm(path, img: np.ndarray) -> None:
    """Write a 2-D uint8 array as binary PGM, atomically (temp + rename)."""
    img = np.asarray(img, dtype=np.uint8)
    if img.ndim != 2:
        raise ValueError("expected a 2-D grayscale image")
    height, width = img.shape
    header = f"P5\n{width} {height}\n255\n".encode("ascii")
    tmp = f"{os.fspath(path)}.tmp.{os.getpid()}"
    with open(tmp, "wb") as fh:
        fh.write(header)
        fh.write(img.tobytes())
    os.replace(tmp, path)
