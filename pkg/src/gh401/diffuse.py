"""Fibonacci Q-matrix block diffusion mod 256.

The diffusion matrix is the tenth power of Q = [[1,1],[1,0]]:

    A = Q^10 mod 256 = [[89, 55], [55, 34]]

det A = 89*34 - 55*55 = -1, so det A mod 256 = 255 and A is invertible
mod 256 with A^-1 = [[34, 201], [201, 89]].  The image is tiled into
non-overlapping 2x2 blocks, row-major from the top-left, and every block B
is replaced by (B @ A) mod 256.

The baseline form is linear mod 256, which annihilates the all-zero image;
the GH401 form adds 1 to every element before and after the matrix
multiply so the all-zero block maps to a nonzero block from round one.
"""

from __future__ import annotations

import numpy as np

from gh401.permute import SCHEME_GH401, SCHEME_IEAHF

DIFFUSION_MATRIX = np.array([[89, 55], [55, 34]], dtype=np.int64)
DIFFUSION_MATRIX_INV = np.array([[34, 201], [201, 89]], dtype=np.int64)


def fib_q_power(n: int):
    """Q^n = [[F_{n+1}, F_n], [F_n, F_{n-1}]] with exact integers."""
    if n < 1:
        raise ValueError("n must be at least 1")
    f_prev, f_cur = 0, 1  # F_0, F_1
    for _ in range(n):
        f_prev, f_cur = f_cur, f_prev + f_cur
    # now f_cur = F_{n+1}, f_prev = F_n
    f_next, f_n = f_cur, f_prev
    f_before = f_next - f_n  # F_{n-1}
    return [[f_next, f_n], [f_n, f_before]]


def _as_blocks(img: np.ndarray) -> np.ndarray:
    img = np.asarray(img)
    if img.ndim != 2:
        raise ValueError("expected a 2-D image")
    h, w = img.shape
    if h % 2 or w % 2:
        raise ValueError(f"image dimensions must be even, got {h}x{w}")
    return img.reshape(h // 2, 2, w // 2, 2).transpose(0, 2, 1, 3).astype(np.int64)


def _from_blocks(blocks: np.ndarray, shape) -> np.ndarray:
    h, w = shape
    return blocks.transpose(0, 2, 1, 3).reshape(h, w).astype(np.uint8)


def diffuse_ieahf(img: np.ndarray) -> np.ndarray:
    """Per 2x2 block: (B @ A) mod 256."""
    blocks = _as_blocks(img)
    out = (blocks @ DIFFUSION_MATRIX) % 256
    return _from_blocks(out, np.asarray(img).shape)


def diffuse_gh401(img: np.ndarray) -> np.ndarray:
    """Per 2x2 block: ((B + 1) @ A + 1) mod 256."""
    blocks = _as_blocks(img)
    out = ((blocks + 1) @ DIFFUSION_MATRIX + 1) % 256
    return _from_blocks(out, np.asarray(img).shape)


def inverse_diffuse(img: np.ndarray, scheme: str) -> np.ndarray:
    """Exact inverse of the forward diffusion for either scheme."""
    blocks = _as_blocks(img)
    if scheme == SCHEME_IEAHF:
        out = (blocks @ DIFFUSION_MATRIX_INV) % 256
    elif scheme == SCHEME_GH401:
        out = ((blocks - 1) @ DIFFUSION_MATRIX_INV - 1) % 256
    else:
        raise ValueError(f"unknown scheme {scheme!r}")
    return _from_blocks(out, np.asarray(img).shape)
