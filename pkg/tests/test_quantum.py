import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qkdpp.errors import DomainError, InvalidStateError
from qkdpp.info import Ensemble
from qkdpp.quantum import (
    DensityOp,
    Povm,
    PureState,
    born_joint,
    hermitian_eigenvalues,
    hermitian_eigh,
    ket,
    maximally_mixed,
    pure_to_density,
    tensor_product,
    von_neumann_entropy,
)

A = np.pi / 8
C, S = np.cos(A), np.sin(A)


def sigma(x):
    return ket(C, (-1) ** x * S)


def random_density(rng, dim, rank=None):
    rank = rank or dim
    g = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    m = g @ g.conj().T
    m = m / np.trace(m).real
    return DensityOp((m + m.conj().T) / 2)


def test_tensor_of_maximally_mixed():
    t = tensor_product(maximally_mixed(2), maximally_mixed(2))
    np.testing.assert_allclose(t.matrix, np.eye(4) / 4, atol=1e-15)


def test_tensor_of_basis_projectors():
    t = tensor_product(ket(1, 0), ket(0, 1))
    expected = np.zeros((4, 4))
    expected[1, 1] = 1
    np.testing.assert_allclose(t.matrix, expected, atol=1e-15)


def test_tensor_matches_bruteforce_kron():
    v = np.array([C * C, -C * S, S * C, -S * S])  # |psi_0> x |psi_1>
    brute = np.zeros((4, 4))
    for i in range(4):
        for j in range(4):
            brute[i, j] = v[i] * v[j]
    np.testing.assert_allclose(tensor_product(sigma(0), sigma(1)).matrix, brute, atol=1e-14)


def test_pure_to_density():
    np.testing.assert_allclose(pure_to_density(PureState([1, 0])).matrix, np.diag([1, 0]))
    plus = pure_to_density(PureState(np.array([1, 1]) / np.sqrt(2))).matrix
    np.testing.assert_allclose(plus, np.full((2, 2), 0.5), atol=1e-15)
    rho = pure_to_density(PureState([C, S])).matrix
    np.testing.assert_allclose(rho, [[C * C, C * S], [C * S, S * S]], atol=1e-15)
    assert np.linalg.matrix_rank(rho) == 1


def test_pure_state_norm_violation():
    with pytest.raises(InvalidStateError):
        PureState([1, 1])


@pytest.mark.parametrize(
    "m, bad",
    [
        (np.array([[0.5, 0.1], [0.0, 0.5]]), "Hermitian"),
        (np.diag([0.6, 0.6]), "trace"),
        (np.diag([1.2, -0.2]), "negative"),
    ],
)
def test_density_invariants_enforced(m, bad):
    with pytest.raises(InvalidStateError, match=bad):
        DensityOp(m)


def test_density_rejects_nan():
    with pytest.raises(DomainError):
        DensityOp(np.array([[np.nan, 0], [0, 1]]))


def test_eigenvalues_examples():
    np.testing.assert_allclose(hermitian_eigenvalues(np.diag([0.25, 0.75])), [0.75, 0.25])
    np.testing.assert_allclose(hermitian_eigenvalues(np.eye(2) / 2), [0.5, 0.5])
    avg = (sigma(0).matrix + sigma(1).matrix) / 2
    c = np.cos(2 * A)
    # the average is diag(cos^2, sin^2): its spectrum is (1 +/- c)/2
    np.testing.assert_allclose(avg, np.diag([C * C, S * S]), atol=1e-15)
    np.testing.assert_allclose(hermitian_eigenvalues(avg), [(1 + c) / 2, (1 - c) / 2], atol=1e-12)


def test_eigenvalues_reject_non_hermitian():
    with pytest.raises(DomainError):
        hermitian_eigenvalues(np.array([[1, 1], [0, 1]]))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 4))
def test_eigendecomposition_reconstructs(seed, dim):
    rng = np.random.default_rng(seed)
    rho = random_density(rng, dim)
    w, v = hermitian_eigh(rho.matrix)
    assert np.all(np.diff(w) <= 1e-15)
    np.testing.assert_allclose((v * w) @ v.conj().T, rho.matrix, atol=1e-8)
    assert abs(w.sum() - np.trace(rho.matrix).real) < 1e-9


def test_entropy_examples():
    assert von_neumann_entropy(sigma(0)) == pytest.approx(0.0, abs=1e-12)
    assert von_neumann_entropy(maximally_mixed(2)) == pytest.approx(1.0, abs=1e-12)
    expected = -(0.25 * np.log2(0.25) + 0.75 * np.log2(0.75))
    assert von_neumann_entropy(DensityOp(np.diag([0.25, 0.75]))) == pytest.approx(expected, abs=1e-12)
    assert expected == pytest.approx(0.8113, abs=1e-4)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 2), st.integers(1, 2))
def test_product_properties(seed, da, db):
    rng = np.random.default_rng(seed)
    a, b = random_density(rng, 2 * da), random_density(rng, db + 1)
    ab = tensor_product(a, b)
    assert ab.dim == a.dim * b.dim
    assert abs(np.trace(ab.matrix) - np.trace(a.matrix) * np.trace(b.matrix)) < 1e-9
    assert von_neumann_entropy(ab) == pytest.approx(von_neumann_entropy(a) + von_neumann_entropy(b), abs=1e-6)
    assert 0 <= von_neumann_entropy(ab) <= np.log2(ab.dim) + 1e-12


def test_born_joint_examples():
    comp = Povm.from_basis([[1, 0], [0, 1]])
    np.testing.assert_allclose(born_joint(Ensemble.uniform([maximally_mixed(2)]), comp), [[0.5, 0.5]])
    orth = Ensemble.uniform([ket(1, 0), ket(0, 1)])
    np.testing.assert_allclose(born_joint(orth, comp), np.diag([0.5, 0.5]), atol=1e-15)

    had = Povm.from_basis(np.array([[1, 1], [1, -1]]) / np.sqrt(2))
    j = born_joint(Ensemble.uniform([sigma(0), sigma(1)]), had)
    diag = (1 + np.sin(2 * A)) / 4
    np.testing.assert_allclose(np.diag(j), [diag, diag], atol=1e-12)
    np.testing.assert_allclose(j.sum(), 1.0, atol=1e-12)


def test_born_joint_dimension_mismatch():
    with pytest.raises(DomainError):
        born_joint(Ensemble.uniform([maximally_mixed(2)]), Povm.trivial(4))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_born_joint_marginals(seed):
    rng = np.random.default_rng(seed)
    states = [random_density(rng, 2) for _ in range(3)]
    p = rng.dirichlet(np.ones(3))
    e = Ensemble(p, tuple(states))
    u, _ = np.linalg.qr(rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)))
    j = born_joint(e, Povm.from_basis(u.T))
    np.testing.assert_allclose(j.sum(axis=1), p, atol=1e-9)
    assert np.all(j >= 0)


def test_povm_validation():
    with pytest.raises(InvalidStateError):
        Povm((np.diag([1, 0]),))
    with pytest.raises(InvalidStateError):
        Povm((np.diag([1.5, 1]), np.diag([-0.5, 0])))
    assert len(Povm.trivial(3)) == 1
