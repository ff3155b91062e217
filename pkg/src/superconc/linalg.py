"""Dense linear algebra for bipartite pure states.

Amplitudes are stored flat with ``idx(i, j) = i * dim_b + j`` for
``|i>_A |j>_B``; :attr:`PureState.matrix` gives the ``dim_a x dim_b``
coefficient view used by everything else.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

NORM_TOL = 1e-12
MAX_DIM = 64


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized pure state of ``C^dim_a (x) C^dim_b``.

    The constructor rejects amplitudes whose norm is off by more than
    ``1e-12``; use :meth:`normalized` to rescale arbitrary input.
    """

    dim_a: int
    dim_b: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if int(self.dim_a) != self.dim_a or int(self.dim_b) != self.dim_b:
            raise ValueError("dimensions must be integers")
        if self.dim_a < 2 or self.dim_b < 2:
            raise ValueError(f"local dimensions must be >= 2, got {self.dim_a}x{self.dim_b}")
        if self.dim_a > MAX_DIM or self.dim_b > MAX_DIM:
            raise ValueError(f"local dimensions above {MAX_DIM} are not supported")
        amps = np.asarray(self.amplitudes, dtype=complex).ravel()
        if amps.size != self.dim_a * self.dim_b:
            raise ValueError(
                f"expected {self.dim_a * self.dim_b} amplitudes, got {amps.size}")
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state is not normalized (norm = {norm!r})")
        object.__setattr__(self, "amplitudes", _frozen(amps))

    @classmethod
    def normalized(cls, dim_a: int, dim_b: int, amplitudes) -> "PureState":
        amps = np.asarray(amplitudes, dtype=complex).ravel()
        norm = np.linalg.norm(amps)
        if norm == 0 or not np.isfinite(norm):
            raise ValueError("cannot normalize a zero or non-finite vector")
        return cls(dim_a, dim_b, amps / norm)

    @classmethod
    def from_matrix(cls, matrix, normalize: bool = True) -> "PureState":
        m = np.asarray(matrix, dtype=complex)
        if m.ndim != 2:
            raise ValueError("coefficient matrix must be 2-D")
        if normalize:
            return cls.normalized(m.shape[0], m.shape[1], m)
        return cls(m.shape[0], m.shape[1], m)

    @classmethod
    def basis(cls, dim_a: int, dim_b: int, i: int, j: int) -> "PureState":
        amps = np.zeros(dim_a * dim_b, dtype=complex)
        amps[i * dim_b + j] = 1.0
        return cls(dim_a, dim_b, amps)

    @property
    def dims(self) -> tuple[int, int]:
        return (self.dim_a, self.dim_b)

    @property
    def matrix(self) -> np.ndarray:
        """Coefficient matrix ``M[i, j]`` (read-only view)."""
        return self.amplitudes.reshape(self.dim_a, self.dim_b)

    def conj(self) -> "PureState":
        """Entrywise conjugate in the computational product basis."""
        return PureState(self.dim_a, self.dim_b, self.amplitudes.conj())

    def swap_sides(self) -> "PureState":
        """Same state with the roles of A and B exchanged."""
        return PureState(self.dim_b, self.dim_a, self.matrix.T.ravel())

    def local_unitary(self, u_a, u_b) -> "PureState":
        m = np.asarray(u_a) @ self.matrix @ np.asarray(u_b).T
        return PureState.normalized(self.dim_a, self.dim_b, m)


@dataclass(frozen=True)
class SchmidtForm:
    coefficients: np.ndarray   # descending, length min(dim_a, dim_b)
    basis_a: np.ndarray        # columns are |e_i>
    basis_b: np.ndarray        # columns are |f_i>
    rank: int

    def reassemble(self) -> np.ndarray:
        """Flat amplitudes of ``sum_i lambda_i |e_i>|f_i>``."""
        m = (self.basis_a * self.coefficients) @ self.basis_b.T
        return m.ravel()


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """Square operator on one subsystem; may be unnormalized or non-Hermitian
    (cross operators such as ``Tr_B |y><x|``)."""

    dim: int
    entries: np.ndarray

    def __post_init__(self):
        e = np.asarray(self.entries, dtype=complex)
        if e.shape != (self.dim, self.dim):
            raise ValueError(f"expected a {self.dim}x{self.dim} matrix, got {e.shape}")
        object.__setattr__(self, "entries", _frozen(e))

    @property
    def trace(self) -> complex:
        return complex(np.trace(self.entries))

    def is_hermitian(self, tol: float = 1e-12) -> bool:
        return bool(np.max(np.abs(self.entries - self.entries.conj().T), initial=0.0) <= tol)


def _check_dims(x: PureState, y: PureState) -> None:
    if x.dims != y.dims:
        raise ValueError(f"dimension mismatch: {x.dims} vs {y.dims}")


def inner_product(x: PureState, y: PureState) -> complex:
    """<x|y>, conjugate-linear in ``x``."""
    _check_dims(x, y)
    return complex(np.vdot(x.amplitudes, y.amplitudes))


def schmidt_decompose(s: PureState, threshold: float = 1e-12) -> SchmidtForm:
    """Schmidt decomposition from the SVD of the coefficient matrix.

    Each left singular vector is rephased so its largest-magnitude entry is
    real and positive; the matching right vector absorbs the conjugate phase.
    """
    if threshold < 0:
        raise ValueError("threshold must be non-negative")
    u, sv, vh = np.linalg.svd(s.matrix, full_matrices=False)
    v = vh.T  # columns f_i with M = sum_i s_i e_i f_i^T
    idx = np.argmax(np.abs(u), axis=0)
    lead = u[idx, np.arange(u.shape[1])]
    phase = np.where(np.abs(lead) > 0, lead / np.abs(lead), 1.0)
    u = u / phase
    v = v * phase
    rank = int(np.count_nonzero(sv > threshold))
    sv = np.array(sv, dtype=float)
    sv.setflags(write=False)
    return SchmidtForm(sv, _frozen(u), _frozen(v), rank)


def partial_trace_a(x: PureState, y: PureState) -> DensityOperator:
    """``Tr_B |y><x|`` on subsystem A; equals rho_A when ``x is y``.

    Entry ``(i, i')`` is ``sum_j y[i, j] conj(x[i', j])``.
    """
    _check_dims(x, y)
    return DensityOperator(x.dim_a, y.matrix @ x.matrix.conj().T)


def partial_trace_b(x: PureState, y: PureState) -> DensityOperator:
    """``Tr_A |y><x|`` on subsystem B."""
    _check_dims(x, y)
    return DensityOperator(x.dim_b, y.matrix.T @ x.matrix.conj())


def reduced_a(x: PureState) -> DensityOperator:
    return partial_trace_a(x, x)


def reduced_b(x: PureState) -> DensityOperator:
    return partial_trace_b(x, x)


def purity_a(x: PureState) -> float:
    rho = x.matrix @ x.matrix.conj().T
    return float(np.real(np.vdot(rho, rho)))
