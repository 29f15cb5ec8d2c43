"""Classical and quantum information measures, all in bits.

The accessible information of an ensemble is the best mutual information
any measurement can extract. It has a closed form for two equiprobable
pure states; in general :func:`seesaw_acc_info` returns a lower bound
together with the measurement that attains it, and the Holevo quantity
brackets it from above.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DomainError
from .quantum import (
    DEFAULT_TOL,
    DensityOp,
    Povm,
    Tolerances,
    born_joint,
    tensor_product,
    von_neumann_entropy,
)


def as_prob_vector(p, tol: float = DEFAULT_TOL.prob_sum) -> np.ndarray:
    a = np.array(p, dtype=float).ravel()
    if a.size < 1 or not np.all(np.isfinite(a)):
        raise DomainError("probability vector must be finite and non-empty")
    if np.any(a < 0):
        raise DomainError("probabilities must be non-negative")
    if abs(a.sum() - 1.0) > tol:
        raise DomainError(f"probabilities sum to {a.sum():.12g}, not 1")
    return a


def as_joint(j, tol: float = DEFAULT_TOL.prob_sum) -> np.ndarray:
    a = np.array(j, dtype=float)
    if a.ndim != 2 or a.size < 1 or not np.all(np.isfinite(a)):
        raise DomainError("joint distribution must be a finite 2-D table")
    if np.any(a < 0):
        raise DomainError("joint distribution has negative cells")
    if abs(a.sum() - 1.0) > tol:
        raise DomainError(f"joint distribution sums to {a.sum():.12g}, not 1")
    return a


def _entropy(p: np.ndarray) -> float:
    p = p[p > 0]
    return float(-np.sum(p * np.log2(p)))


def shannon_entropy(p) -> float:
    p = as_prob_vector(p)
    return min(max(_entropy(p), 0.0), float(np.log2(p.size)))


def binary_entropy(p: float) -> float:
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"binary entropy argument {p} outside [0, 1]")
    if p == 0.0 or p == 1.0:
        return 0.0
    return float(-p * np.log2(p) - (1 - p) * np.log2(1 - p))


def mutual_information(j) -> float:
    j = as_joint(j)
    px = j.sum(axis=1, keepdims=True)
    pz = j.sum(axis=0, keepdims=True)
    nz = j > 0
    # relative-entropy form: exactly zero on product tables
    mi = float(np.sum(j[nz] * np.log2(j[nz] / (px * pz)[nz])))
    return min(max(mi, 0.0), _entropy(px.ravel()), _entropy(pz.ravel()))


def conditional_entropy(j) -> float:
    """H(X|Y) = H(XY) - H(Y) for a table with X on rows and Y on columns."""
    j = as_joint(j)
    return max(_entropy(j.ravel()) - _entropy(j.sum(axis=0)), 0.0)


@dataclass(frozen=True)
class Ensemble:
    """Classical-quantum source: state ``states[i]`` prepared with probability ``probs[i]``."""

    probs: np.ndarray
    states: tuple

    def __post_init__(self):
        p = as_prob_vector(self.probs)
        states = tuple(self.states)
        if len(states) != p.size:
            raise DomainError(f"{p.size} probabilities for {len(states)} states")
        if not all(isinstance(s, DensityOp) for s in states):
            raise DomainError("ensemble states must be DensityOp instances")
        if len({s.dim for s in states}) != 1:
            raise DomainError("ensemble states must share one dimension")
        p.setflags(write=False)
        object.__setattr__(self, "probs", p)
        object.__setattr__(self, "states", states)

    @classmethod
    def uniform(cls, states: Sequence[DensityOp]) -> "Ensemble":
        return cls(np.full(len(states), 1.0 / len(states)), tuple(states))

    @property
    def dim(self) -> int:
        return self.states[0].dim

    def __len__(self) -> int:
        return len(self.states)

    def average(self) -> DensityOp:
        m = sum(p * s.matrix for p, s in zip(self.probs, self.states))
        return DensityOp((m + m.conj().T) / 2, self.states[0].tol)

    def product(self, other: "Ensemble") -> "Ensemble":
        """Product-form ensemble: letters drawn independently, states tensored (row-major order)."""
        probs = np.outer(self.probs, other.probs).ravel()
        states = tuple(tensor_product(a, b) for a in self.states for b in other.states)
        return Ensemble(probs, states)

    def matrices(self) -> np.ndarray:
        return np.stack([s.matrix for s in self.states])


def holevo_quantity(e: Ensemble) -> float:
    chi = von_neumann_entropy(e.average()) - sum(
        p * von_neumann_entropy(s) for p, s in zip(e.probs, e.states)
    )
    return max(float(chi), 0.0)


def measurement_info(e: Ensemble, m: Povm) -> float:
    return mutual_information(born_joint(e, m))


def acc_info_two_pure_equiprob(overlap: float) -> float:
    """Accessible information of two equiprobable pure states with |<a|b>| = overlap.

    Attained by the symmetric two-outcome projective measurement, whose
    success probability is (1 + sqrt(1 - overlap^2)) / 2.
    """
    if not 0.0 <= overlap <= 1.0:
        raise DomainError(f"overlap {overlap} outside [0, 1]")
    p = (1.0 + np.sqrt(1.0 - overlap * overlap)) / 2.0
    return 1.0 - binary_entropy(min(p, 1.0))


@dataclass(frozen=True)
class OptimizerConfig:
    """Settings for the see-saw search.

    ``elements`` of ``None`` means dim**2 rank-one elements. Restart ``r``
    draws its starting point from ``SeedSequence([seed, r])`` so adding
    restarts never changes the earlier ones.
    """

    restarts: int = 8
    max_iterations: int = 3000
    elements: int | None = None
    seed: int = 0
    tol: float = 1e-10
    initial_step: float = 0.5

    def __post_init__(self):
        if self.restarts < 1:
            raise DomainError("restarts must be >= 1")
        if self.max_iterations < 1:
            raise DomainError("max_iterations must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise DomainError("seed must be an unsigned 64-bit integer")
        if self.tol <= 0 or self.initial_step <= 0:
            raise DomainError("tol and initial_step must be positive")


@dataclass(frozen=True)
class AccInfoResult:
    value: float
    measurement: Povm
    iterations: int
    converged: bool
    restart_values: np.ndarray = field(repr=False, default=None)


def _polar(w: np.ndarray) -> np.ndarray:
    """Map each (d, m) block to the nearest W with W W^dag = I."""
    s = w @ w.conj().transpose(0, 2, 1)
    lam, v = np.linalg.eigh(s)
    inv_sqrt = (v * (1.0 / np.sqrt(lam))[:, None, :]) @ v.conj().transpose(0, 2, 1)
    return inv_sqrt @ w


def _joint(w: np.ndarray, probs: np.ndarray, rhos: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    rw = np.einsum("xab,rbz->rxaz", rhos, w)
    p = np.einsum("raz,rxaz->rxz", w.conj(), rw).real * probs[None, :, None]
    return np.maximum(p, 0.0), rw


def _batch_info(p: np.ndarray) -> np.ndarray:
    px = p.sum(axis=2, keepdims=True)
    pz = p.sum(axis=1, keepdims=True)
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.where(p > 0, p * np.log2(p / (px * pz)), 0.0)
    return t.sum(axis=(1, 2))


def _initial_frames(dim: int, m: int, cfg: OptimizerConfig) -> np.ndarray:
    frames = np.empty((cfg.restarts, dim, m), dtype=np.complex128)
    for r in range(cfg.restarts):
        rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([cfg.seed, r])))
        frames[r] = rng.standard_normal((dim, m)) + 1j * rng.standard_normal((dim, m))
    return _polar(frames)


def seesaw_acc_info(e: Ensemble, cfg: OptimizerConfig | None = None) -> AccInfoResult:
    """Lower bound on accessible information by projected ascent over rank-one POVMs.

    Each restart holds a d x m frame W whose columns w_z give elements
    E_z = w_z w_z^dag. A step moves w_z along G_z w_z, where
    G_z = sum_x p_x rho_x log2(p(x|z) / p_x) is the gradient of the mutual
    information in E_z, then restores completeness with the polar map
    W -> (W W^dag)^(-1/2) W. Steps that do not improve are rejected and the
    step length halved; accepted steps grow it. A restart stops once an
    accepted step gains less than ``cfg.tol`` or the step length collapses.

    Restarts run as one batch but never interact, so the result depends
    only on ``cfg`` and the ensemble.
    """
    cfg = cfg or OptimizerConfig()
    d = e.dim
    m = cfg.elements if cfg.elements is not None else d * d
    if not d <= m <= d * d:
        raise DomainError(f"element count {m} outside [{d}, {d * d}]")
    probs = np.asarray(e.probs)
    rhos = e.matrices()
    px = probs[None, :, None]

    w = _initial_frames(d, m, cfg)
    p, rw = _joint(w, probs, rhos)
    value = _batch_info(p)
    step = np.full(cfg.restarts, cfg.initial_step)
    active = np.ones(cfg.restarts, dtype=bool)
    converged = np.zeros(cfg.restarts, dtype=bool)
    iterations = np.zeros(cfg.restarts, dtype=int)

    for _ in range(cfg.max_iterations):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        iterations[idx] += 1
        pa = p[idx]
        pz = pa.sum(axis=1, keepdims=True)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(pa > 0, np.log2(pa / (px * pz)), 0.0)
        grad_w = np.einsum("rxz,rxaz->raz", ratio * px, rw[idx])
        w_new = _polar(w[idx] + step[idx, None, None] * grad_w)
        p_new, rw_new = _joint(w_new, probs, rhos)
        v_new = _batch_info(p_new)
        gain = v_new - value[idx]
        ok = gain > 0

        acc = idx[ok]
        w[acc], p[acc], rw[acc], value[acc] = w_new[ok], p_new[ok], rw_new[ok], v_new[ok]
        step[acc] = np.minimum(step[acc] * 1.5, 50.0)
        step[idx[~ok]] *= 0.5

        done = (ok & (gain < cfg.tol)) | (step[idx] < 1e-12)
        converged[idx[done]] = True
        active[idx[done]] = False

    best = int(np.argmax(value))
    frame = w[best]
    povm = Povm(tuple(np.outer(frame[:, z], frame[:, z].conj()) for z in range(m)),
                Tolerances(completeness=1e-9))
    return AccInfoResult(
        value=measurement_info(e, povm),
        measurement=povm,
        iterations=int(iterations[best]),
        converged=bool(converged[best]),
        restart_values=value.copy(),
    )
