"""Single post-processing rounds and multi-round campaigns.

Conventional mode discloses the reconciliation transcript and pays for it
in privacy amplification against the Holevo bound:

    key length = floor(n (1 - chi) - leak)

Encrypted-EC mode sends the same transcript one-time-pad encrypted with
ledger key, so the leak is paid from the ledger instead, and compression
only has to remove Eve's accessible information:

    key length = floor(n (1 - I_acc))

The second formula is valid only if Eve must measure before the hash seed
becomes known to her, modelled by ``pa_cipher_assumed`` (seed sent under a
computational cipher, zero ledger cost). Finite-key terms are ignored.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field, replace

import numpy as np

from ..errors import DomainError, InsufficientKeyError
from ..info import acc_info_two_pure_equiprob, binary_entropy, holevo_quantity
from ..rates import AttackModel, eve_ensemble_bb84
from .bits import STREAM_PA, BitString, apply_permutation, rng_for, simulate_sifted
from .cascade import DEFAULT_PASSES, cascade_correct
from .ledger import KeyLedger, otp_encrypt
from .privacy import toeplitz_hash
from .syndrome import blockwise_hamming_correct, blockwise_leak

CONVENTIONAL = "conventional"
ENCRYPTED = "encrypted-ec"
MODES = (CONVENTIONAL, ENCRYPTED)
EC_SCHEMES = ("cascade", "syndrome")

STATUS_OK = "ok"
STATUS_RESIDUAL = "aborted-residual-errors"


@dataclass(frozen=True)
class RoundConfig:
    n: int
    qber: float
    mode: str = CONVENTIONAL
    pa_cipher_assumed: bool = False
    ec_scheme: str = "cascade"
    seed: int = 0
    cascade_passes: int = DEFAULT_PASSES
    hamming_r: int = 3
    auth_cost: int = 0
    # ledger must hold this multiple of n*h(q) before an encrypted round starts
    ec_reserve: float = 1.5

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("n must be >= 1")
        if not 0.0 <= self.qber <= 0.5:
            raise DomainError(f"qber {self.qber} outside [0, 0.5]")
        if self.mode not in MODES:
            raise DomainError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.ec_scheme not in EC_SCHEMES:
            raise DomainError(f"ec_scheme must be one of {EC_SCHEMES}, got {self.ec_scheme!r}")
        if self.mode == ENCRYPTED and not self.pa_cipher_assumed:
            raise DomainError("encrypted-ec mode requires pa_cipher_assumed")
        if not 0 <= self.seed < 2**64:
            raise DomainError("seed must be an unsigned 64-bit integer")
        if self.cascade_passes < 1 or self.hamming_r < 2 or self.auth_cost < 0 or self.ec_reserve < 0:
            raise DomainError("invalid cascade_passes / hamming_r / auth_cost / ec_reserve")


@dataclass(frozen=True)
class RoundReport:
    round_id: int
    mode: str
    status: str
    empirical_qber: float
    ec_leak_bits: int
    ledger_spent_bits: int
    final_key_bits: int
    net_new_key_bits: int
    residual_errors: int
    eve_info_per_bit: float  # chi (conventional) or I_acc (encrypted) used for compression
    balance_after: int

    def as_dict(self) -> dict:
        return asdict(self)


def required_key(cfg: RoundConfig) -> int:
    """Ledger bits a round must be able to cover before it starts."""
    need = cfg.auth_cost
    if cfg.mode == ENCRYPTED:
        if cfg.ec_scheme == "syndrome":
            need += blockwise_leak(cfg.n, cfg.hamming_r)
        else:
            need += math.ceil(cfg.ec_reserve * cfg.n * binary_entropy(cfg.qber)) + cfg.cascade_passes
    return need


def final_key_length(cfg: RoundConfig, attack: AttackModel, ec_leak: int) -> tuple[int, float]:
    if cfg.mode == CONVENTIONAL:
        eve = holevo_quantity(attack.eve_ensemble)
        return max(0, math.floor(cfg.n * (1.0 - eve) - ec_leak)), eve
    eve = acc_info_two_pure_equiprob(attack.overlap)
    return max(0, math.floor(cfg.n * (1.0 - eve))), eve


def run_round(
    cfg: RoundConfig,
    ledger: KeyLedger,
    attack: AttackModel | None = None,
    round_id: int = 0,
) -> RoundReport:
    """Simulate sifting through privacy amplification and settle the ledger.

    Raises InsufficientKeyError (ledger untouched) if the ledger cannot cover
    the round. A round whose reconciliation leaves errors is aborted: nothing
    is deposited and key already spent on encryption stays spent.
    """
    attack = attack or eve_ensemble_bb84(cfg.qber)
    need = required_key(cfg)
    if ledger.balance < need:
        raise InsufficientKeyError(f"round {round_id}: ledger holds {ledger.balance} bits, round needs {need}")
    start_balance = ledger.balance

    alice, bob = simulate_sifted(cfg.n, cfg.qber, cfg.seed, round_id)
    alice = apply_permutation(alice, cfg.seed, round_id)
    bob = apply_permutation(bob, cfg.seed, round_id)
    emp_qber = alice.hamming(bob) / cfg.n

    if cfg.ec_scheme == "cascade":
        q_est = min(max(emp_qber, 0.5 / cfg.n), 0.49)
        corrected, transcript = cascade_correct(alice, bob, q_est, cfg.seed, round_id, cfg.cascade_passes)
        leak = transcript.total_leak_bits
        disclosed = transcript.parity_bits()
    else:
        corrected, leak, _ = blockwise_hamming_correct(alice, bob, cfg.hamming_r)
        disclosed = None

    if cfg.auth_cost:
        ledger.debit(cfg.auth_cost, round_id, "auth")
    if cfg.mode == ENCRYPTED:
        if disclosed is None:
            disclosed = BitString(np.zeros(leak, dtype=np.uint8))
        otp_encrypt(disclosed, ledger, "ec", round_id)
    spent = start_balance - ledger.balance

    residual = corrected.hamming(alice)
    if residual:
        return RoundReport(round_id, cfg.mode, STATUS_RESIDUAL, emp_qber, leak, spent, 0, -spent,
                           residual, float("nan"), ledger.balance)

    length, eve = final_key_length(cfg, attack, leak)
    if length:
        seed_bits = BitString.random(cfg.n + length - 1, rng_for(cfg.seed, round_id, STREAM_PA))
        key_a = toeplitz_hash(alice, seed_bits, length)
        key_b = toeplitz_hash(corrected, seed_bits, length)
        assert key_a == key_b
        ledger.deposit(key_a, round_id, "key")
    return RoundReport(round_id, cfg.mode, STATUS_OK, emp_qber, leak, spent, length, length - spent,
                       0, eve, ledger.balance)


@dataclass
class CampaignResult:
    reports: list
    ledger: KeyLedger
    status: str = "completed"
    halted_round: int | None = None
    message: str = ""

    def summary(self) -> dict:
        return {
            "status": self.status,
            "rounds_completed": len(self.reports),
            "halted_round": self.halted_round,
            **self.ledger.totals(),
        }


def run_campaign(cfg: RoundConfig, rounds: int, initial_balance: int, attack: AttackModel | None = None) -> CampaignResult:
    """Run rounds back to back on one ledger, halting at the first round it cannot fund."""
    if rounds < 1:
        raise DomainError("rounds must be >= 1")
    ledger = KeyLedger.from_seed(initial_balance, cfg.seed)
    result = CampaignResult([], ledger)
    for r in range(rounds):
        try:
            result.reports.append(run_round(cfg, ledger, attack, round_id=r))
        except InsufficientKeyError as exc:
            result.status = "halted-insufficient-key"
            result.halted_round = r
            result.message = str(exc)
            break
    return result
