"""Two uses of a two-letter channel, merged by XOR.

Before merging, two independent single-qubit measurements are optimal.
After merging the letters into their parity, the Bell measurement does
strictly better than any product measurement over a range of angles.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.optimize import minimize

from .errors import DomainError
from .info import Ensemble, OptimizerConfig, measurement_info, mutual_information, seesaw_acc_info
from .quantum import DensityOp, Povm, ket, tensor_product

BELL_VECTORS = np.array(
    [[1, 0, 0, 1], [1, 0, 0, -1], [0, 1, 1, 0], [0, 1, -1, 0]], dtype=float
) / np.sqrt(2)
HADAMARD_VECTORS = np.array([[1, 1], [1, -1]], dtype=float) / np.sqrt(2)


@dataclass(frozen=True)
class LockingPoint:
    alpha: float
    i_product_local: float
    i_bell: float
    i_separable_best: float
    i_seesaw: float

    @property
    def gap(self) -> float:
        return self.i_bell - self.i_separable_best


def letter_states(alpha: float) -> tuple[DensityOp, DensityOp]:
    """cos(a)|0> + (-1)^x sin(a)|1> for x = 0, 1."""
    if not 0.0 <= alpha <= np.pi / 4 + 1e-12:
        raise DomainError(f"alpha {alpha} outside [0, pi/4]")
    c, s = np.cos(alpha), np.sin(alpha)
    return ket(c, s), ket(c, -s)


def letter_ensemble(alpha: float) -> Ensemble:
    return Ensemble.uniform(letter_states(alpha))


def build_init_ensemble(alpha: float) -> Ensemble:
    """Four equiprobable two-letter words, index 2a + b for letters (a, b)."""
    e = letter_ensemble(alpha)
    return e.product(e)


def xor_merge(e4: Ensemble) -> Ensemble:
    """Keep only the parity of the two letters: items (even, odd)."""
    if len(e4) != 4 or e4.dim != 4:
        raise DomainError("XOR merge expects the four-word two-qubit ensemble")
    p = e4.probs
    m = [s.matrix for s in e4.states]
    groups = ((0, 3), (1, 2))
    probs = []
    states = []
    for g in groups:
        w = p[list(g)].sum()
        rho = sum(p[i] * m[i] for i in g) / w
        probs.append(w)
        states.append(DensityOp((rho + rho.conj().T) / 2))
    return Ensemble(np.array(probs), tuple(states))


def merged_ensemble(alpha: float) -> Ensemble:
    return xor_merge(build_init_ensemble(alpha))


def bell_povm() -> Povm:
    return Povm.from_basis(BELL_VECTORS)


def _require_two_qubit_binary(e: Ensemble) -> None:
    if e.dim != 4 or len(e) != 2:
        raise DomainError("expected a binary ensemble on two qubits")


def bell_basis_info(e_merged: Ensemble) -> float:
    _require_two_qubit_binary(e_merged)
    return measurement_info(e_merged, bell_povm())


def _rotated_basis(theta: float) -> np.ndarray:
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, s], [-s, c]])


def product_measurement_info(e: Ensemble, theta1: float, theta2: float) -> float:
    """Mutual information of the full four-outcome record of B(theta1) x B(theta2)."""
    vecs = np.kron(_rotated_basis(theta1), _rotated_basis(theta2))
    rhos = e.matrices()
    cond = np.einsum("za,xab,zb->xz", vecs, rhos, vecs).real
    joint = np.clip(e.probs[:, None] * cond, 0.0, None)
    return mutual_information(joint / joint.sum())


def best_separable_info(e_merged: Ensemble, grid_size: int = 32, xtol: float = 1e-4) -> float:
    """Best product projective measurement: grid over [0, pi)^2, then local refinement."""
    _require_two_qubit_binary(e_merged)
    if grid_size < 16:
        raise DomainError("grid_size must be >= 16")
    thetas = np.linspace(0.0, np.pi, grid_size, endpoint=False)
    vals = np.array([[product_measurement_info(e_merged, a, b) for b in thetas] for a in thetas])
    best = float(vals.max())
    # refine the three best grid cells; ties resolved by flat index order
    for flat in np.argsort(-vals, axis=None, kind="stable")[:3]:
        i, j = np.unravel_index(flat, vals.shape)
        res = minimize(
            lambda t: -product_measurement_info(e_merged, t[0], t[1]),
            x0=[thetas[i], thetas[j]],
            method="Nelder-Mead",
            options={"xatol": xtol, "fatol": 1e-13, "initial_simplex": None},
        )
        best = max(best, -float(res.fun))
    return best


def product_local_info(alpha: float) -> float:
    """Two independent Hadamard-basis measurements on the unmerged words."""
    return 2.0 * measurement_info(letter_ensemble(alpha), Povm.from_basis(HADAMARD_VECTORS))


def locking_point(alpha: float, cfg: OptimizerConfig | None = None, grid_size: int = 32) -> LockingPoint:
    e = merged_ensemble(alpha)
    return LockingPoint(
        alpha=float(alpha),
        i_product_local=product_local_info(alpha),
        i_bell=bell_basis_info(e),
        i_separable_best=best_separable_info(e, grid_size),
        i_seesaw=seesaw_acc_info(e, cfg).value,
    )


def locking_sweep(alpha_grid: Sequence[float], cfg: OptimizerConfig | None = None, grid_size: int = 32) -> list[LockingPoint]:
    alphas = [float(a) for a in alpha_grid]
    for a in alphas:
        if not 0.0 <= a <= np.pi / 4 + 1e-12:
            raise DomainError(f"alpha {a} outside [0, pi/4]")
    return [locking_point(a, cfg, grid_size) for a in alphas]


def advantage_range(points: Sequence[LockingPoint], threshold: float = 1e-3) -> tuple[float, float] | None:
    """Smallest and largest swept alpha where Bell beats every product measurement by ``threshold``."""
    hits = [p.alpha for p in points if p.gap > threshold]
    return (min(hits), max(hits)) if hits else None
