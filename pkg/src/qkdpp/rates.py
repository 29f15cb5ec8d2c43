"""Key-rate formulas under a one-parameter collective-attack family.

Eve's conditional states are two equiprobable real pure qubit states with
overlap ``1 - 2q`` at QBER ``q`` (label: ``MODEL_NAME``). This is a model
choice that makes both the Holevo quantity and the accessible information
computable; it is not a security claim for any concrete protocol.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError
from .info import (
    Ensemble,
    OptimizerConfig,
    acc_info_two_pure_equiprob,
    binary_entropy,
    holevo_quantity,
)
from .quantum import ket

MODEL_NAME = "pure-pair-symmetric"


@dataclass(frozen=True)
class AttackModel:
    qber: float
    eve_ensemble: Ensemble
    ixy: float
    overlap: float
    name: str = MODEL_NAME

    def __post_init__(self):
        if len(self.eve_ensemble) != 2 or not np.allclose(self.eve_ensemble.probs, 0.5, atol=1e-12):
            raise DomainError("Eve's ensemble must hold two equiprobable states")


@dataclass(frozen=True)
class RatePoint:
    qber: float
    ixy: float
    chi: float
    iacc: float
    rate_dw: float
    rate_acc: float


@dataclass(frozen=True)
class AdditiveBound:
    n: int
    per_signal: float
    total: float


def _check_qber(q: float) -> None:
    if not 0.0 <= q <= 0.5:
        raise DomainError(f"qber {q} outside [0, 0.5]")


def pure_pair(overlap: float) -> Ensemble:
    """Equiprobable real qubit states cos(a)|0> +/- sin(a)|1> with cos(2a) = overlap."""
    if not 0.0 <= overlap <= 1.0:
        raise DomainError(f"overlap {overlap} outside [0, 1]")
    a = np.arccos(overlap) / 2.0
    c, s = np.cos(a), np.sin(a)
    return Ensemble.uniform([ket(c, s), ket(c, -s)])


def eve_ensemble_bb84(q: float) -> AttackModel:
    _check_qber(q)
    s = 1.0 - 2.0 * q
    return AttackModel(qber=q, eve_ensemble=pure_pair(s), ixy=1.0 - binary_entropy(q), overlap=s)


def csiszar_korner_rate(ixy: float, ixz: float) -> float:
    return ixy - ixz


def devetak_winter_rate(m: AttackModel) -> float:
    return m.ixy - holevo_quantity(m.eve_ensemble)


def acc_info_rate(m: AttackModel) -> float:
    return m.ixy - acc_info_two_pure_equiprob(m.overlap)


def additive_bound(m: AttackModel, n: int) -> AdditiveBound:
    if n < 1:
        raise DomainError("n must be >= 1")
    per = acc_info_two_pure_equiprob(m.overlap)
    return AdditiveBound(n=n, per_signal=per, total=n * per)


def rate_point(q: float) -> RatePoint:
    m = eve_ensemble_bb84(q)
    chi = holevo_quantity(m.eve_ensemble)
    iacc = acc_info_two_pure_equiprob(m.overlap)
    return RatePoint(q, m.ixy, chi, iacc, m.ixy - chi, m.ixy - iacc)


def rate_curve(q_grid: Sequence[float], cfg: OptimizerConfig | None = None) -> list[RatePoint]:
    """One RatePoint per grid value, in grid order.

    The accessible information comes from the closed form, so ``cfg`` only
    matters for reproducibility bookkeeping.
    """
    grid = [float(q) for q in q_grid]
    if not grid:
        raise DomainError("empty QBER grid")
    for q in grid:
        _check_qber(q)
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise DomainError("QBER grid must be strictly increasing")
    return [rate_point(q) for q in grid]


def zero_crossing(rate: Callable[[float], float], lo: float, hi: float, tol: float = 1e-4) -> float:
    """Bisection for the QBER where a decreasing rate changes sign."""
    f_lo, f_hi = rate(lo), rate(hi)
    if f_lo <= 0 or f_hi >= 0:
        raise DomainError(f"no sign change on [{lo}, {hi}]")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if rate(mid) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def dw_threshold(tol: float = 1e-4) -> float:
    return zero_crossing(lambda q: devetak_winter_rate(eve_ensemble_bb84(q)), 1e-6, 0.5, tol)


def acc_threshold(tol: float = 1e-4) -> float:
    return zero_crossing(lambda q: acc_info_rate(eve_ensemble_bb84(q)), 1e-6, 0.5, tol)
