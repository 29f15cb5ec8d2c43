"""Dense complex linear algebra for small quantum systems.

States, measurements and the handful of primitives (Kronecker products,
Hermitian spectra, von Neumann entropy, Born-rule joints) that the
information and rate modules are built on. Every object here is at most
4x4, so everything is dense numpy.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, InvalidStateError


@dataclass(frozen=True)
class Tolerances:
    """Validation thresholds. Pass a modified copy to loosen checks on iterates."""

    hermitian: float = 1e-12
    trace: float = 1e-9
    psd: float = 1e-9
    norm: float = 1e-9
    completeness: float = 1e-9
    eig_hermitian: float = 1e-10
    prob_sum: float = 1e-9


DEFAULT_TOL = Tolerances()


def as_complex_matrix(m, name: str = "matrix") -> np.ndarray:
    """Return a read-only complex128 copy of ``m`` after shape/finiteness checks."""
    a = np.array(m, dtype=np.complex128, copy=True)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise DomainError(f"{name} must be a non-empty 2-D array, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise DomainError(f"{name} has non-finite entries")
    a.setflags(write=False)
    return a


def _hermitian_deviation(a: np.ndarray) -> float:
    return float(np.max(np.abs(a - a.conj().T)))


def hermitian_eigenvalues(m, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix, sorted descending.

    LAPACK ``eigh`` is deterministic for a fixed input, which the golden
    fixtures rely on.
    """
    a = as_complex_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise DomainError(f"matrix must be square, got shape {a.shape}")
    if _hermitian_deviation(a) > tol.eig_hermitian:
        raise DomainError("matrix is not Hermitian")
    w = np.linalg.eigvalsh(a)
    return w[::-1].copy()


def hermitian_eigh(m, tol: Tolerances = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigenpairs (descending) of a Hermitian matrix; columns of the second array are eigenvectors."""
    a = as_complex_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise DomainError(f"matrix must be square, got shape {a.shape}")
    if _hermitian_deviation(a) > tol.eig_hermitian:
        raise DomainError("matrix is not Hermitian")
    w, v = np.linalg.eigh(a)
    return w[::-1].copy(), v[:, ::-1].copy()


@dataclass(frozen=True)
class PureState:
    amplitudes: np.ndarray
    tol: Tolerances = field(default=DEFAULT_TOL, repr=False, compare=False)

    def __post_init__(self):
        v = np.array(self.amplitudes, dtype=np.complex128).ravel()
        if v.size < 1 or not np.all(np.isfinite(v)):
            raise InvalidStateError("amplitudes must be a finite non-empty vector")
        if abs(np.linalg.norm(v) - 1.0) > self.tol.norm:
            raise InvalidStateError(f"state norm {np.linalg.norm(v):.12g} is not 1")
        v.setflags(write=False)
        object.__setattr__(self, "amplitudes", v)

    @property
    def dim(self) -> int:
        return self.amplitudes.size


@dataclass(frozen=True)
class DensityOp:
    """Hermitian, unit-trace, positive semidefinite matrix."""

    matrix: np.ndarray
    tol: Tolerances = field(default=DEFAULT_TOL, repr=False, compare=False)

    def __post_init__(self):
        a = as_complex_matrix(self.matrix, "density matrix")
        if a.shape[0] != a.shape[1]:
            raise InvalidStateError(f"density matrix must be square, got {a.shape}")
        if _hermitian_deviation(a) > self.tol.hermitian:
            raise InvalidStateError("density matrix is not Hermitian")
        tr = np.trace(a).real
        if abs(tr - 1.0) > self.tol.trace:
            raise InvalidStateError(f"trace {tr:.12g} is not 1")
        lam_min = np.linalg.eigvalsh(a)[0]
        if lam_min < -self.tol.psd:
            raise InvalidStateError(f"minimum eigenvalue {lam_min:.3g} is negative")
        object.__setattr__(self, "matrix", a)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def eigenvalues(self) -> np.ndarray:
        return hermitian_eigenvalues(self.matrix, self.tol)

    def __matmul__(self, other: "DensityOp") -> "DensityOp":
        return tensor_product(self, other)


@dataclass(frozen=True)
class Povm:
    """Positive operators summing to the identity."""

    elements: tuple
    tol: Tolerances = field(default=DEFAULT_TOL, repr=False, compare=False)

    def __post_init__(self):
        els = tuple(as_complex_matrix(e, "POVM element") for e in self.elements)
        if not els:
            raise InvalidStateError("POVM needs at least one element")
        d = els[0].shape[0]
        total = np.zeros((d, d), dtype=np.complex128)
        for e in els:
            if e.shape != (d, d):
                raise InvalidStateError("POVM elements must share one square shape")
            # looser than DensityOp: elements come out of iterative optimization
            if _hermitian_deviation(e) > self.tol.completeness:
                raise InvalidStateError("POVM element is not Hermitian")
            if np.linalg.eigvalsh(e)[0] < -self.tol.psd:
                raise InvalidStateError("POVM element is not positive semidefinite")
            total += e
        if np.max(np.abs(total - np.eye(d))) > self.tol.completeness:
            raise InvalidStateError("POVM elements do not sum to the identity")
        object.__setattr__(self, "elements", els)

    @property
    def dim(self) -> int:
        return self.elements[0].shape[0]

    def __len__(self) -> int:
        return len(self.elements)

    @classmethod
    def from_basis(cls, vectors: Iterable[Sequence[complex]]) -> "Povm":
        """Projective measurement onto the given orthonormal kets."""
        return cls(tuple(np.outer(v, np.conj(v)) for v in np.asarray(list(vectors), dtype=complex)))

    @classmethod
    def trivial(cls, dim: int) -> "Povm":
        return cls((np.eye(dim, dtype=complex),))


def pure_to_density(s: PureState) -> DensityOp:
    v = s.amplitudes
    m = np.outer(v, v.conj())
    # exact Hermitian symmetry regardless of rounding in the outer product
    m = (m + m.conj().T) / 2
    return DensityOp(m, s.tol)


def ket(*amplitudes) -> DensityOp:
    """Shorthand: density operator of a pure state given by its amplitudes."""
    return pure_to_density(PureState(np.asarray(amplitudes, dtype=complex)))


def tensor_product(a: DensityOp, b: DensityOp) -> DensityOp:
    return DensityOp(np.kron(a.matrix, b.matrix), a.tol)


def maximally_mixed(dim: int) -> DensityOp:
    return DensityOp(np.eye(dim, dtype=complex) / dim)


def von_neumann_entropy(rho: DensityOp) -> float:
    """Entropy in bits; eigenvalues in (-psd_tol, 0) are treated as zero."""
    lam = np.clip(rho.eigenvalues(), 0.0, None)
    lam = lam[lam > 0]
    s = float(-np.sum(lam * np.log2(lam)))
    return min(max(s, 0.0), float(np.log2(rho.dim)))


def born_joint(ensemble, povm: Povm) -> np.ndarray:
    """Joint table p(x, z) = p_x tr(rho_x E_z), rows indexed by ensemble item."""
    if ensemble.dim != povm.dim:
        raise DomainError(f"ensemble dim {ensemble.dim} != POVM dim {povm.dim}")
    rhos = np.stack([s.matrix for s in ensemble.states])
    els = np.stack(povm.elements)
    # tr(rho E) = sum_ab rho_ab E_ba
    cond = np.einsum("xab,zba->xz", rhos, els).real
    joint = ensemble.probs[:, None] * cond
    joint[joint < 0] = 0.0
    return joint
