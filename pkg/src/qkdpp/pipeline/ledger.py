"""Pre-shared key ledger and one-time-pad encryption.

The ledger is a single append-only pad stream. Debits consume bits from
the front of the unconsumed region; deposits append freshly generated key
at the end. Every movement is logged with the stream position it touched,
so balances and pad usage can be replayed from the log alone.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass

import numpy as np

from ..errors import DomainError, InsufficientKeyError
from .bits import STREAM_LEDGER, BitString, rng_for


@dataclass(frozen=True)
class LedgerEntry:
    round_id: int
    purpose: str
    delta: int  # negative for debits
    start: int  # first pad-stream position consumed or written

    def as_dict(self) -> dict:
        return {"round": self.round_id, "purpose": self.purpose, "delta": self.delta, "start": self.start}


class KeyLedger:
    def __init__(self, initial: BitString):
        self._stream = initial.bits.copy()
        self._cursor = 0
        self._initial = len(initial)
        self._log: list[LedgerEntry] = []

    @classmethod
    def from_seed(cls, balance: int, seed: int) -> "KeyLedger":
        if balance < 0:
            raise DomainError("initial balance must be non-negative")
        return cls(BitString.random(balance, rng_for(seed, STREAM_LEDGER)))

    @property
    def balance(self) -> int:
        return self._stream.size - self._cursor

    @property
    def initial_balance(self) -> int:
        return self._initial

    @property
    def log(self) -> tuple[LedgerEntry, ...]:
        return tuple(self._log)

    def copy(self) -> "KeyLedger":
        """Independent mirror, as held by the other party."""
        return copy.deepcopy(self)

    def debit(self, count: int, round_id: int, purpose: str) -> BitString:
        """Consume ``count`` pad bits. Fails without side effects when the balance is short."""
        if count < 0:
            raise DomainError("debit count must be non-negative")
        if count > self.balance:
            raise InsufficientKeyError(
                f"round {round_id} {purpose}: need {count} key bits, balance is {self.balance}"
            )
        start = self._cursor
        pad = BitString(self._stream[start : start + count])
        self._cursor += count
        self._log.append(LedgerEntry(round_id, purpose, -count, start))
        return pad

    def deposit(self, key: BitString, round_id: int, purpose: str = "key") -> None:
        start = self._stream.size
        self._stream = np.concatenate([self._stream, key.bits])
        self._log.append(LedgerEntry(round_id, purpose, len(key), start))

    def replay(self) -> list[int]:
        """Balance after each log entry, recomputed from the log alone."""
        out = []
        bal = self._initial
        for e in self._log:
            bal += e.delta
            out.append(bal)
        return out

    def consumed_positions(self) -> np.ndarray:
        spans = [np.arange(e.start, e.start - e.delta) for e in self._log if e.delta < 0]
        return np.concatenate(spans) if spans else np.zeros(0, dtype=np.int64)

    def totals(self) -> dict:
        dep = sum(e.delta for e in self._log if e.delta > 0)
        deb = -sum(e.delta for e in self._log if e.delta < 0)
        return {"initial": self._initial, "deposited": dep, "debited": deb, "balance": self.balance}


def otp_encrypt(msg: BitString, ledger: KeyLedger, purpose: str, round_id: int = 0) -> BitString:
    """XOR ``msg`` with the next unused pad bits. Decryption is the same call on a mirrored ledger."""
    pad = ledger.debit(len(msg), round_id, purpose)
    return msg ^ pad


otp_decrypt = otp_encrypt
