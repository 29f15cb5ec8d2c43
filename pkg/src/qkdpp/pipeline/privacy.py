"""Toeplitz hashing for privacy amplification."""

from __future__ import annotations

import numpy as np

from ..errors import DomainError
from .. import kernels
from .bits import BitString


def toeplitz_matrix(seed_bits: BitString, in_len: int, out_len: int) -> np.ndarray:
    """Explicit matrix T[i, j] = seed[i - j + in_len - 1]; for checks and small inputs."""
    s = seed_bits.bits
    i = np.arange(out_len)[:, None]
    j = np.arange(in_len)[None, :]
    return s[i - j + in_len - 1]


def toeplitz_hash(data: BitString, seed_bits: BitString, out_len: int) -> BitString:
    """GF(2) product of the Toeplitz matrix built from ``seed_bits`` with ``data``.

    Seed bits ``0 .. n-1`` read backwards form the first row and bits
    ``n-1 ..`` the first column, so exactly ``len(data) + out_len - 1`` bits
    are needed.
    """
    n = len(data)
    if out_len < 0:
        raise DomainError("output length must be non-negative")
    if out_len == 0:
        return BitString()
    if len(seed_bits) != n + out_len - 1:
        raise DomainError(f"seed has {len(seed_bits)} bits, need {n + out_len - 1}")
    return BitString(kernels.toeplitz_hash(data.bits, seed_bits.bits, out_len))
