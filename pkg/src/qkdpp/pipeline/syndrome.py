"""Syndrome decoding with linear block codes (small-code demonstrator)."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from ..errors import DomainError
from .bits import BitString


def hamming_parity_matrix(r: int) -> np.ndarray:
    """Check matrix of the [2^r - 1, 2^r - 1 - r] Hamming code; column j encodes j + 1."""
    if r < 2:
        raise DomainError("Hamming code needs r >= 2")
    cols = np.arange(1, 2**r)
    return ((cols[None, :] >> np.arange(r)[:, None]) & 1).astype(np.uint8)


def gf2_rank(h: np.ndarray) -> int:
    m = np.array(h, dtype=np.uint8) & 1
    rank = 0
    rows, cols = m.shape
    for c in range(cols):
        pivot = next((r for r in range(rank, rows) if m[r, c]), None)
        if pivot is None:
            continue
        m[[rank, pivot]] = m[[pivot, rank]]
        for r in range(rows):
            if r != rank and m[r, c]:
                m[r] ^= m[rank]
        rank += 1
        if rank == rows:
            break
    return rank


@dataclass(frozen=True)
class SyndromeResult:
    corrected: BitString
    leak_bits: int
    success: bool
    error_weight: int | None  # weight of the applied correction, None if nothing matched


def syndrome(h: np.ndarray, bits: BitString) -> np.ndarray:
    return (h.astype(np.int64) @ bits.bits.astype(np.int64)) & 1


def syndrome_correct(alice: BitString, bob: BitString, parity_matrix, max_weight: int = 2) -> SyndromeResult:
    """Alice sends her syndrome; Bob applies the lowest-weight error pattern explaining the difference.

    Failure is reported when no pattern up to ``max_weight`` matches, or
    when the simulated verification finds the decoded string wrong (a
    miscorrection beyond the code's reach).
    """
    h = np.asarray(parity_matrix, dtype=np.uint8)
    if h.ndim != 2 or h.shape[1] != len(alice):
        raise DomainError(f"parity matrix shape {h.shape} does not match key length {len(alice)}")
    if len(alice) != len(bob):
        raise DomainError(f"length mismatch: {len(alice)} vs {len(bob)}")
    leak = gf2_rank(h)
    diff = syndrome(h, alice) ^ syndrome(h, bob)
    cols = h.T.astype(np.int64)
    n = len(bob)
    for w in range(max_weight + 1):
        for pos in combinations(range(n), w):
            s = cols[list(pos)].sum(axis=0) & 1 if w else np.zeros_like(diff)
            if np.array_equal(s, diff):
                e = np.zeros(n, dtype=np.uint8)
                e[list(pos)] = 1
                fixed = bob ^ BitString(e)
                return SyndromeResult(fixed, leak, fixed == alice, w)
    return SyndromeResult(bob, leak, False, None)


def blockwise_hamming_correct(alice: BitString, bob: BitString, r: int = 3, max_weight: int = 1):
    """Apply a Hamming code independently to consecutive blocks; a short tail is sent in the clear."""
    h = hamming_parity_matrix(r)
    L = h.shape[1]
    n = len(alice)
    out = []
    leak = 0
    ok = True
    nblocks = n // L
    for b in range(nblocks):
        res = syndrome_correct(alice[b * L : (b + 1) * L], bob[b * L : (b + 1) * L], h, max_weight)
        out.append(res.corrected.bits)
        leak += res.leak_bits
        ok &= res.success
    tail = n - nblocks * L
    if tail:
        out.append(alice.bits[nblocks * L :])
        leak += tail
    corrected = BitString(np.concatenate(out)) if out else BitString()
    return corrected, leak, ok


def blockwise_leak(n: int, r: int = 3) -> int:
    L = 2**r - 1
    return (n // L) * r + n % L
