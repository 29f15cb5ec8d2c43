"""Cascade information reconciliation with full backtracking."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DomainError
from .. import kernels
from .bits import STREAM_CASCADE, BitString, permutation, rng_for

DEFAULT_PASSES = 4
BLOCK_FACTOR = 0.73


@dataclass(frozen=True)
class CascadeTranscript:
    """Everything Alice disclosed: one row ``(pass, start, stop, parity)`` per parity bit.

    ``start``/``stop`` index the pass's shuffled order. ``success`` records
    the simulated final verification (corrected string equals Alice's).
    """

    n: int
    passes: int
    block_sizes: tuple[int, ...]
    parity_messages: np.ndarray
    success: bool

    @property
    def total_leak_bits(self) -> int:
        return int(self.parity_messages.shape[0])

    def parity_bits(self) -> BitString:
        return BitString(self.parity_messages[:, 3])

    def block_parities(self) -> int:
        """Messages that were top-level block parities rather than bisection steps."""
        return sum(-(-self.n // k) for k in self.block_sizes)


def block_sizes(n: int, q_estimate: float, passes: int = DEFAULT_PASSES) -> tuple[int, ...]:
    k1 = min(max(int(round(BLOCK_FACTOR / q_estimate)), 2), n)
    return tuple(min(k1 << p, n) for p in range(passes))


def cascade_correct(
    alice: BitString,
    bob: BitString,
    q_estimate: float,
    seed: int,
    round_id: int = 0,
    passes: int = DEFAULT_PASSES,
) -> tuple[BitString, CascadeTranscript]:
    """Reconcile Bob's string to Alice's.

    Pass 1 runs in the given order; later passes reshuffle with a fresh
    Fisher-Yates permutation from the seed. Every error found in a later
    pass is traced back through all earlier passes.
    """
    if len(alice) != len(bob):
        raise DomainError(f"length mismatch: {len(alice)} vs {len(bob)}")
    if not 0.0 < q_estimate < 0.5:
        raise DomainError(f"QBER estimate {q_estimate} outside (0, 0.5)")
    if passes < 1:
        raise DomainError("passes must be >= 1")
    n = len(alice)
    sizes = block_sizes(n, q_estimate, passes)
    perms = np.empty((passes, n), dtype=np.int64)
    perms[0] = np.arange(n)
    for p in range(1, passes):
        perms[p] = permutation(n, rng_for(seed, round_id, STREAM_CASCADE, p))
    corrected, msgs = kernels.cascade(alice.bits, bob.bits, np.array(sizes, dtype=np.int64), perms)
    out = BitString(corrected)
    return out, CascadeTranscript(n, passes, sizes, msgs, out == alice)
