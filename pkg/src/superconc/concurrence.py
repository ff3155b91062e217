"""Concurrence vectors, the universal inverter and scalar concurrences.

Generators of SO(N) are ``L^(ij) = |i><j| - |j><i|`` for ``i < j`` in
lexicographic order; with this scale the sum ``sum S sigma^T S`` over
``S = L_a (x) L_b`` reproduces the universal inverter exactly.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

import numpy as np

from .linalg import PureState, _check_dims, inner_product, purity_a


@dataclass(frozen=True, eq=False)
class GeneratorSet:
    dim: int
    pairs: tuple[tuple[int, int], ...]
    generators: np.ndarray  # shape (n(n-1)/2, n, n), real

    def __len__(self) -> int:
        return len(self.pairs)


@functools.lru_cache(maxsize=None)
def generator_set(n: int) -> GeneratorSet:
    if n < 2:
        raise ValueError(f"SO(n) generators need n >= 2, got {n}")
    pairs = tuple(itertools.combinations(range(n), 2))
    gens = np.zeros((len(pairs), n, n))
    for k, (i, j) in enumerate(pairs):
        gens[k, i, j] = 1.0
        gens[k, j, i] = -1.0
    gens.setflags(write=False)
    return GeneratorSet(n, pairs, gens)


@dataclass(frozen=True, eq=False)
class ConcurrenceVector:
    """Components ``C_ab(x, y) = <x| L_a (x) L_b |y*>``; rows index SO(dim_a)
    generators, columns SO(dim_b) generators."""

    components: np.ndarray
    dims: tuple[int, int]
    x: PureState
    y: PureState

    @property
    def shape(self) -> tuple[int, int]:
        return self.components.shape

    def norm(self) -> float:
        return float(np.linalg.norm(self.components))


def concurrence_vector(x: PureState, y: PureState | None = None) -> ConcurrenceVector:
    """Concurrence vector of the pair ``(x, y)``; ``C(x)`` when ``y`` is omitted."""
    if y is None:
        y = x
    _check_dims(x, y)
    comps = np.conj(_bilinear_components(x.matrix, y.matrix))
    comps.setflags(write=False)
    return ConcurrenceVector(comps, x.dims, x, y)


def _bilinear_components(mx: np.ndarray, my: np.ndarray) -> np.ndarray:
    """``x^T (L_a (x) L_b) y`` for all generator pairs; since the generators are
    real, ``<x|S|y*>`` is its complex conjugate."""
    n1, n2 = mx.shape
    ga = generator_set(n1).generators
    gb = generator_set(n2).generators
    w = mx.T @ (ga @ my)                     # (a, n2, n2): sum_ik x_ij L_a[i,k] y_kl
    return w.reshape(len(ga), n2 * n2) @ gb.reshape(len(gb), n2 * n2).T


def concurrence_vector_dot(u: ConcurrenceVector, v: ConcurrenceVector,
                           bilinear: bool = False) -> complex:
    """Inner product ``sum conj(u_ab) v_ab`` of two concurrence vectors.

    ``bilinear=True`` drops the conjugation; that form is not invariant under
    local unitaries and is kept only for comparison.
    """
    if u.shape != v.shape:
        raise ValueError(f"shape mismatch: {u.shape} vs {v.shape}")
    a = u.components if bilinear else u.components.conj()
    return complex(np.sum(a * v.components))


def concurrence(x: PureState) -> float:
    """Norm of the concurrence vector of ``x``."""
    return concurrence_vector(x).norm()


def concurrence_purity(x: PureState) -> float:
    """I-concurrence ``sqrt(2 (1 - Tr rho_A^2))``."""
    return float(np.sqrt(max(0.0, 2.0 * (1.0 - purity_a(x)))))


def concurrence_inverter(x: PureState) -> float:
    """``sqrt(<x| S(|x><x|) |x>)`` through the universal inverter."""
    psi = x.amplitudes
    out = universal_inverter(np.outer(psi, psi.conj()), x.dims)
    return float(np.sqrt(max(0.0, np.real(np.vdot(psi, out @ psi)))))


def _overlap_trace(r1: np.ndarray, r2: np.ndarray) -> float:
    return float(np.real(np.sum(r1 * r2.T)))


def marginal_overlaps(x: PureState, y: PureState) -> tuple[float, float]:
    """``(Tr_A[rho^A_x rho^A_y], Tr_B[rho^B_x rho^B_y])``."""
    _check_dims(x, y)
    mx, my = x.matrix, y.matrix
    ta = _overlap_trace(mx @ mx.conj().T, my @ my.conj().T)
    tb = _overlap_trace(mx.T @ mx.conj(), my.T @ my.conj())
    return ta, tb


def pair_concurrence(x: PureState, y: PureState) -> float:
    """``C(x, y)``, the norm of the pair concurrence vector."""
    return concurrence_vector(x, y).norm()


def pair_concurrence_closed(x: PureState, y: PureState) -> float:
    """``C(x, y)`` from ``1 + |<x|y>|^2 - Tr_A[..] - Tr_B[..]``."""
    ta, tb = marginal_overlaps(x, y)
    c2 = 1.0 + abs(inner_product(x, y)) ** 2 - ta - tb
    return float(np.sqrt(max(0.0, c2)))


def _marginals(sigma: np.ndarray, dims: tuple[int, int]) -> tuple[np.ndarray, np.ndarray]:
    n1, n2 = dims
    t = sigma.reshape(n1, n2, n1, n2)
    return np.einsum("ijkj->ik", t), np.einsum("ijil->jl", t)


def _check_operator(sigma, dims) -> np.ndarray:
    sigma = np.asarray(sigma, dtype=complex)
    n = dims[0] * dims[1]
    if sigma.shape != (n, n):
        raise ValueError(f"operator of shape {sigma.shape} does not match dims {tuple(dims)}")
    return sigma


def universal_inverter(sigma, dims: tuple[int, int]) -> np.ndarray:
    """``Tr(s) I(x)I - s_A (x) I - I (x) s_B + s`` for an operator on A(x)B."""
    sigma = _check_operator(sigma, dims)
    n1, n2 = dims
    sa, sb = _marginals(sigma, dims)
    return (np.trace(sigma) * np.eye(n1 * n2)
            - np.kron(sa, np.eye(n2))
            - np.kron(np.eye(n1), sb)
            + sigma)


def universal_inverter_sum(sigma, dims: tuple[int, int]) -> np.ndarray:
    """``sum_ab S_ab sigma^T S_ab`` with ``S_ab = L_a (x) L_b``."""
    sigma = _check_operator(sigma, dims)
    ga = generator_set(dims[0]).generators
    gb = generator_set(dims[1]).generators
    st = sigma.T
    out = np.zeros_like(st)
    for la in ga:
        for lb in gb:
            s = np.kron(la, lb)
            out += s @ st @ s
    return out


def pair_vector_table(states) -> np.ndarray:
    """All concurrence vectors at once: ``out[p, q] = C(states[p], states[q])``
    with shape ``(m, m, rows, cols)``."""
    dims = states[0].dims
    for s in states[1:]:
        _check_dims(states[0], s)
    m = len(states)
    out = np.empty((m, m, dims[0] * (dims[0] - 1) // 2, dims[1] * (dims[1] - 1) // 2),
                   dtype=complex)
    for p in range(m):
        for q in range(p, m):
            out[p, q] = np.conj(_bilinear_components(states[p].matrix, states[q].matrix))
            out[q, p] = out[p, q]
    return out
