"""Byte substitution stage and the transparency-order metric.

The substitution layer is a bijective 256-entry lookup table applied to
every pixel.  Transparency order is the side-channel metric used to rank
tables by their leakage under differential power analysis; for an S-box F
with n input and m output bits it is

    TO(F) = max over beta in {0,1}^m of
        |m - 2*wt(beta)|
        - (2^(2n) - 2^n)^-1 * sum over a != 0 of
            | sum_j (-1)^beta_j * sum_x (-1)^(F_j(x) xor F_j(x xor a)) |

where F_j is the j-th coordinate function and wt the Hamming weight.  The
result lies in [0, m]; lower values are reported as more DPA-resistant.

Two tables ship with the package: the identity (for pipeline isolation
tests) and the well-documented strong "aes" table stored under
``data/aes_sbox.txt``.  Externally constructed tables, such as
genetic-algorithm optimized ones, are accepted through :func:`load_sbox`.
"""

from __future__ import annotations

import os
from importlib import resources

import numpy as np


class SBox8:
    """Bijective byte substitution table with a precomputed inverse."""

    def __init__(self, table, name: str = "custom"):
        table = np.asarray(list(table), dtype=np.int64)
        if table.size != 256:
            raise ValueError(f"S-box must have exactly 256 entries, got {table.size}")
        if table.min() < 0 or table.max() > 255:
            raise ValueError("S-box entries must be bytes in [0, 255]")
        seen = np.full(256, -1, dtype=np.int64)
        for idx, value in enumerate(table):
            if seen[value] >= 0:
                raise ValueError(
                    f"S-box is not bijective: value {int(value)} appears at "
                    f"indices {int(seen[value])} and {idx}"
                )
            seen[value] = idx
        self.table = table.astype(np.uint8)
        self.inverse = np.empty(256, dtype=np.uint8)
        self.inverse[self.table] = np.arange(256, dtype=np.uint8)
        self.name = name

    def __repr__(self):
        return f"SBox8(name={self.name!r})"


def load_sbox(source, name: str | None = None) -> SBox8:
    """Build a validated S-box from bytes, a sequence, or a file path.

    Paths are decoded by extension: ``.txt`` holds 256 whitespace-separated
    decimal byte values, ``.bin`` holds 256 raw bytes.
    """
    if isinstance(source, (str, os.PathLike)):
        path = os.fspath(source)
        stem = os.path.splitext(os.path.basename(path))[0]
        if path.endswith(".txt"):
            with open(path, "r", encoding="utf-8") as fh:
                values = [int(tok) for tok in fh.read().split()]
        elif path.endswith(".bin"):
            with open(path, "rb") as fh:
                values = list(fh.read())
        else:
            raise ValueError(f"unsupported S-box file extension: {path!r} (use .txt or .bin)")
        return SBox8(values, name=name or stem)
    if isinstance(source, (bytes, bytearray)):
        return SBox8(list(source), name=name or "custom")
    return SBox8(source, name=name or "custom")


def bundled_sbox(name: str) -> SBox8:
    """Return one of the tables shipped with the package.

    ``identity`` maps every byte to itself; ``aes`` is the bundled strong
    table.
    """
    if name == "identity":
        return SBox8(np.arange(256), name="identity")
    if name == "aes":
        text = resources.files("gh401").joinpath("data/aes_sbox.txt").read_text()
        return SBox8([int(tok) for tok in text.split()], name="aes")
    raise ValueError(f"unknown bundled S-box {name!r} (known: aes, identity)")


def substitute(img: np.ndarray, s: SBox8, inverse: bool = False) -> np.ndarray:
    """Replace every pixel v by table[v] (or inverse[v])."""
    img = np.asarray(img, dtype=np.uint8)
    lut = s.inverse if inverse else s.table
    return lut[img]


def _autocorrelation(table: np.ndarray, n: int, m: int) -> np.ndarray:
    """AC[j, a] = sum_x (-1)^(F_j(x) xor F_j(x xor a)), shape (m, 2^n)."""
    size = 1 << n
    x = np.arange(size)
    # signs[j, x] = (-1)^(bit j of table[x])
    signs = 1 - 2 * ((table[np.newaxis, :] >> np.arange(m)[:, np.newaxis]) & 1)
    signs = signs.astype(np.int64)
    ac = np.empty((m, size), dtype=np.int64)
    for a in range(size):
        ac[:, a] = (signs * signs[:, x ^ a]).sum(axis=1)
    return ac


def transparency_order(s) -> float:
    """Transparency order of an S-box.

    Accepts an :class:`SBox8` or any table of length 2^n with n <= 8
    output bits (m = n), so small cases can be cross-checked exhaustively.
    """
    table = s.table if isinstance(s, SBox8) else np.asarray(list(s), dtype=np.int64)
    size = table.size
    n = int(size).bit_length() - 1
    if size != 1 << n or n < 1 or n > 8:
        raise ValueError(f"table length must be a power of two in [2, 256], got {size}")
    if table.min() < 0 or table.max() >= size:
        raise ValueError("table entries out of range for its width")
    m = n
    ac = _autocorrelation(table.astype(np.int64), n, m)

    betas = np.arange(1 << m)
    beta_bits = (betas[:, np.newaxis] >> np.arange(m)[np.newaxis, :]) & 1
    beta_signs = (1 - 2 * beta_bits).astype(np.int64)  # (2^m, m)
    weights = beta_bits.sum(axis=1)

    combined = beta_signs @ ac  # (2^m, 2^n)
    inner = np.abs(combined)[:, 1:].sum(axis=1)  # exclude a = 0
    scale = 1.0 / (2.0 ** (2 * n) - 2.0**n)
    values = np.abs(m - 2 * weights) - scale * inner
    return float(values.max())
