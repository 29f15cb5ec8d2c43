from .bits import BitString, apply_permutation, simulate_sifted
from .cascade import CascadeTranscript, cascade_correct
from .ledger import KeyLedger, LedgerEntry, otp_decrypt, otp_encrypt
from .privacy import toeplitz_hash
from .protocol import RoundConfig, RoundReport, run_campaign, run_round
from .syndrome import hamming_parity_matrix, syndrome_correct

__all__ = [
    "BitString",
    "CascadeTranscript",
    "KeyLedger",
    "LedgerEntry",
    "RoundConfig",
    "RoundReport",
    "apply_permutation",
    "cascade_correct",
    "hamming_parity_matrix",
    "otp_decrypt",
    "otp_encrypt",
    "run_campaign",
    "run_round",
    "simulate_sifted",
    "syndrome_correct",
    "toeplitz_hash",
]
