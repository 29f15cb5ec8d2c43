import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qkdpp.errors import DomainError
from qkdpp.pipeline.bits import BitString, simulate_sifted
from qkdpp.pipeline.cascade import block_sizes, cascade_correct


def test_block_sizes():
    assert block_sizes(1024, 0.01) == (73, 146, 292, 584)
    assert block_sizes(100, 0.001) == (100, 100, 100, 100)
    assert block_sizes(1000, 0.45) == (2, 4, 8, 16)


def test_identical_inputs_only_block_parities():
    a, _ = simulate_sifted(4096, 0.0, 3)
    corrected, t = cascade_correct(a, a, 0.05, 1)
    assert corrected == a
    assert t.total_leak_bits == t.block_parities() == sum(-(-4096 // k) for k in t.block_sizes)
    assert t.success


def test_single_flip():
    a = BitString.random(1024, np.random.default_rng(3))
    e = np.zeros(1024, dtype=np.uint8)
    e[517] = 1
    corrected, t = cascade_correct(a, a ^ BitString(e), 0.01, 9)
    assert corrected == a
    # 29 block parities plus one bisection of a 73-bit block; frozen from one run
    assert t.block_parities() == 29
    assert t.total_leak_bits <= 29 + int(np.ceil(np.log2(73)))
    assert t.total_leak_bits == 35


def test_transcript_messages_are_alice_parities():
    a, b = simulate_sifted(2000, 0.05, 8)
    _, t = cascade_correct(a, b, 0.05, 8)
    from qkdpp.pipeline.bits import STREAM_CASCADE, permutation, rng_for

    perms = [np.arange(2000)] + [permutation(2000, rng_for(8, 0, STREAM_CASCADE, p)) for p in range(1, 4)]
    for p, lo, hi, par in t.parity_messages[::37]:
        assert a.bits[perms[p][lo:hi]].sum() % 2 == par


def test_rejects_bad_estimate():
    a = BitString.from_str("1010")
    with pytest.raises(DomainError):
        cascade_correct(a, a, 0.0, 1)
    with pytest.raises(DomainError):
        cascade_correct(a, BitString.from_str("101"), 0.1, 1)


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 3000), st.floats(0.01, 0.12), st.integers(0, 2**32 - 1))
def test_success_flag_is_exact(n, q, seed):
    a, b = simulate_sifted(n, q, seed)
    corrected, t = cascade_correct(a, b, q, seed)
    assert t.success == (corrected == a)
    assert t.total_leak_bits == t.parity_messages.shape[0]
