import numpy as np
import pytest

from qkdpp.errors import DomainError
from qkdpp.info import Ensemble, OptimizerConfig, acc_info_two_pure_equiprob, holevo_quantity, seesaw_acc_info
from qkdpp.locking import (
    bell_basis_info,
    best_separable_info,
    build_init_ensemble,
    locking_point,
    locking_sweep,
    merged_ensemble,
    product_local_info,
    xor_merge,
)
from qkdpp.quantum import von_neumann_entropy

PI8 = np.pi / 8
# oracle values: explicit Born-rule loops over the Bell kets, and a 721 x 721 angle grid
# for product measurements (optimum sits at Hadamard x Hadamard), both in plain numpy
BELL_PI8 = 0.3112781245
SEPARABLE_PI8 = 0.1887218755


def test_init_ensemble_alpha_zero_all_identical():
    e = build_init_ensemble(0.0)
    assert len(e) == 4 and e.dim == 4
    assert np.allclose(e.probs, 0.25)
    for s in e.states[1:]:
        assert np.allclose(s.matrix, e.states[0].matrix)
    assert holevo_quantity(e) == pytest.approx(0, abs=1e-12)


def test_init_ensemble_orthogonal_at_pi4():
    e = build_init_ensemble(np.pi / 4)
    gram = np.array([[np.trace(a.matrix @ b.matrix).real for b in e.states] for a in e.states])
    np.testing.assert_allclose(gram, np.eye(4), atol=1e-12)


def test_init_gram_at_pi8():
    c = np.cos(2 * PI8)
    letters = [np.array([np.cos(PI8), (-1) ** x * np.sin(PI8)]) for x in (0, 1)]
    kets = [np.kron(letters[a], letters[b]) for a in (0, 1) for b in (0, 1)]
    brute = np.array([[abs(u @ v) for v in kets] for u in kets])
    e = build_init_ensemble(PI8)
    gram = np.sqrt(np.clip([[np.trace(a.matrix @ b.matrix).real for b in e.states] for a in e.states], 0, None))
    np.testing.assert_allclose(gram, brute, atol=1e-12)
    assert set(np.round(brute.ravel(), 12)) == set(np.round([1, c, c * c], 12))


def test_xor_merge_structure():
    e = merged_ensemble(PI8)
    assert len(e) == 2 and np.allclose(e.probs, 0.5)
    with pytest.raises(DomainError):
        xor_merge(Ensemble.uniform(build_init_ensemble(PI8).states[:2]))


def test_xor_merge_endpoints():
    assert holevo_quantity(merged_ensemble(0.0)) == pytest.approx(0, abs=1e-12)
    e = merged_ensemble(np.pi / 4)
    assert np.trace(e.states[0].matrix @ e.states[1].matrix).real == pytest.approx(0, abs=1e-12)
    assert seesaw_acc_info(e).value == pytest.approx(1, abs=1e-6)


def test_merged_holevo_by_eigendecomposition():
    e = merged_ensemble(PI8)
    avg = np.linalg.eigvalsh((e.states[0].matrix + e.states[1].matrix) / 2)
    parts = [np.linalg.eigvalsh(s.matrix) for s in e.states]

    def ent(lam):
        lam = lam[lam > 1e-15]
        return -np.sum(lam * np.log2(lam))

    expected = ent(avg) - 0.5 * (ent(parts[0]) + ent(parts[1]))
    assert holevo_quantity(e) == pytest.approx(expected, abs=1e-9)
    assert von_neumann_entropy(e.states[0]) == pytest.approx(ent(parts[0]), abs=1e-9)


def test_bell_info():
    assert bell_basis_info(merged_ensemble(0.0)) == pytest.approx(0, abs=1e-12)
    assert bell_basis_info(merged_ensemble(np.pi / 4)) == pytest.approx(1)
    assert bell_basis_info(merged_ensemble(PI8)) == pytest.approx(BELL_PI8, abs=1e-9)
    with pytest.raises(DomainError):
        bell_basis_info(build_init_ensemble(PI8))


def test_best_separable():
    assert best_separable_info(merged_ensemble(0.0)) == pytest.approx(0, abs=1e-12)
    assert best_separable_info(merged_ensemble(np.pi / 4)) == pytest.approx(1, abs=1e-9)
    sep = best_separable_info(merged_ensemble(PI8))
    assert sep == pytest.approx(SEPARABLE_PI8, abs=1e-6)
    assert BELL_PI8 - sep > 0.12
    with pytest.raises(DomainError):
        best_separable_info(merged_ensemble(PI8), grid_size=8)


def test_product_local_info_matches_two_letter_optimum():
    # Hadamard is the optimal single-letter measurement, so the local value equals twice the closed form
    for a in (0.1, PI8, 0.6):
        assert product_local_info(a) == pytest.approx(2 * acc_info_two_pure_equiprob(np.cos(2 * a)), abs=1e-12)


def test_sweep_endpoints():
    (p0,) = locking_sweep([0.0])
    assert max(abs(p0.i_bell), abs(p0.i_separable_best), abs(p0.i_seesaw), abs(p0.i_product_local)) < 1e-9
    (p1,) = locking_sweep([np.pi / 4])
    assert p1.i_bell == pytest.approx(1) and p1.i_separable_best == pytest.approx(1, abs=1e-9)
    assert p1.gap == pytest.approx(0, abs=1e-9)


def test_near_zero_continuity():
    p = locking_point(0.01)
    assert max(p.i_bell, p.i_separable_best, p.i_seesaw, p.i_product_local) < 0.05


def test_sweep_domain():
    with pytest.raises(DomainError):
        locking_sweep([1.0])


@pytest.mark.parametrize("alpha", [0.2, PI8, 0.6])
def test_init_ensemble_additivity(alpha):
    value = seesaw_acc_info(build_init_ensemble(alpha), OptimizerConfig(restarts=4)).value
    assert value <= 2 * acc_info_two_pure_equiprob(np.cos(2 * alpha)) + 1e-3
