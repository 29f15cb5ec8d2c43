"""Bit strings and seeded randomness for the post-processing simulation.

All randomness is drawn from numpy's PCG64 seeded with
``SeedSequence([seed, *stream])``, where ``stream`` is a short tuple of
integer tags naming the consumer (round id, stage, pass). The tags below
are part of the golden-fixture contract; do not renumber them.
"""

from __future__ import annotations

import numpy as np

from ..errors import DomainError
from .. import kernels

STREAM_SIFT = 1
STREAM_PERMUTE = 2
STREAM_CASCADE = 3
STREAM_PA = 4
STREAM_LEDGER = 5


def rng_for(seed: int, *stream: int) -> np.random.Generator:
    if not 0 <= seed < 2**64:
        raise DomainError(f"seed {seed} is not an unsigned 64-bit integer")
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, *stream])))


class BitString:
    """Immutable bit sequence backed by a uint8 array of 0/1 values."""

    __slots__ = ("_bits",)

    def __init__(self, bits=()):
        a = np.array(bits, dtype=np.uint8).ravel()
        if a.size and a.max() > 1:
            raise DomainError("bits must be 0 or 1")
        a.setflags(write=False)
        self._bits = a

    @classmethod
    def from_str(cls, s: str) -> "BitString":
        if set(s) - {"0", "1"}:
            raise DomainError(f"not a bit string: {s!r}")
        return cls([int(c) for c in s])

    @classmethod
    def random(cls, n: int, rng: np.random.Generator) -> "BitString":
        return cls(rng.integers(0, 2, size=n, dtype=np.uint8))

    @property
    def bits(self) -> np.ndarray:
        return self._bits

    def __len__(self) -> int:
        return self._bits.size

    def __getitem__(self, i):
        n = self._bits.size
        if isinstance(i, slice):
            start, stop, step = i.start, i.stop, i.step
            for v in (start, stop):
                if v is not None and not -n <= v <= n:
                    raise IndexError(f"slice bound {v} out of range for length {n}")
            if step not in (None, 1):
                raise IndexError("only contiguous slices are supported")
            return BitString(self._bits[i])
        if not -n <= i < n:
            raise IndexError(f"bit index {i} out of range for length {n}")
        return int(self._bits[i])

    def __xor__(self, other: "BitString") -> "BitString":
        if len(other) != len(self):
            raise DomainError(f"length mismatch: {len(self)} vs {len(other)}")
        return BitString(self._bits ^ other._bits)

    def __eq__(self, other) -> bool:
        return isinstance(other, BitString) and np.array_equal(self._bits, other._bits)

    def __hash__(self):
        return hash((len(self), self._bits.tobytes()))

    def __str__(self) -> str:
        return "".join("1" if b else "0" for b in self._bits.tolist())

    def __repr__(self) -> str:
        s = str(self)
        return f"BitString('{s if len(s) <= 32 else s[:29] + '...'}', n={len(self)})"

    def concat(self, other: "BitString") -> "BitString":
        return BitString(np.concatenate([self._bits, other._bits]))

    def hamming(self, other: "BitString") -> int:
        if len(other) != len(self):
            raise DomainError(f"length mismatch: {len(self)} vs {len(other)}")
        return int(np.count_nonzero(self._bits != other._bits))

    def weight(self) -> int:
        return int(self._bits.sum())

    def packed(self) -> bytes:
        return np.packbits(self._bits).tobytes()


def simulate_sifted(n: int, q: float, seed: int, round_id: int = 0) -> tuple[BitString, BitString]:
    """Sifted keys: uniform Alice bits, Bob's copy flipped i.i.d. with probability q."""
    if n < 1:
        raise DomainError("n must be >= 1")
    if not 0.0 <= q <= 0.5:
        raise DomainError(f"qber {q} outside [0, 0.5]")
    rng = rng_for(seed, round_id, STREAM_SIFT)
    alice = rng.integers(0, 2, size=n, dtype=np.uint8)
    flips = (rng.random(n) < q).astype(np.uint8)
    return BitString(alice), BitString(alice ^ flips)


def permutation(n: int, rng: np.random.Generator) -> np.ndarray:
    """Fisher-Yates permutation: for i = n-1 .. 1 swap slot i with a uniform j in [0, i]."""
    if n <= 1:
        return np.arange(n, dtype=np.int64)
    swaps = rng.integers(0, np.arange(n, 1, -1), dtype=np.int64)
    return kernels.fisher_yates(swaps)


def permutation_for(n: int, seed: int, round_id: int = 0) -> np.ndarray:
    return permutation(n, rng_for(seed, round_id, STREAM_PERMUTE))


def apply_permutation(k: BitString, seed: int, round_id: int = 0) -> BitString:
    """Reorder ``k`` so position i holds ``k[perm[i]]``; strings sharing a seed move together."""
    return BitString(k.bits[permutation_for(len(k), seed, round_id)])
