"""Concurrence of superpositions: exact value and lower/upper bounds.

A superposition ``Gamma = sum_i g_i psi_i`` (``sum |g_i|^2 = 1``) is in
general unnormalized.  Every report here is for the normalized state
``Gamma' = Gamma / ||Gamma||``; bounds derived for ``||Gamma||^2 C(Gamma')``
are divided by ``||Gamma||^2`` before being reported.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .concurrence import concurrence, pair_vector_table
from .errors import (ClassPreconditionError, InvariantError, PartitionCapError,
                     VanishingNormError)
from .linalg import PureState
from .orthogonality import DEFAULT_TOL, OrthoClass, classify_set

NORM_FLOOR = 1e-12
DEFAULT_M_CAP = 6
COEFF_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class Superposition:
    coefficients: np.ndarray
    states: tuple[PureState, ...]

    def __post_init__(self):
        coeffs = np.asarray(self.coefficients, dtype=complex).ravel()
        states = tuple(self.states)
        if len(states) == 0:
            raise ValueError("a superposition needs at least one state")
        if coeffs.size != len(states):
            raise ValueError(f"{coeffs.size} coefficients for {len(states)} states")
        dims = states[0].dims
        for s in states[1:]:
            if s.dims != dims:
                raise ValueError(f"dimension mismatch: {dims} vs {s.dims}")
        total = float(np.sum(np.abs(coeffs) ** 2))
        if abs(total - 1.0) > COEFF_TOL:
            raise ValueError(f"coefficients are not normalized (sum |g|^2 = {total!r})")
        coeffs.setflags(write=False)
        object.__setattr__(self, "coefficients", coeffs)
        object.__setattr__(self, "states", states)

    @classmethod
    def normalized(cls, coefficients, states) -> "Superposition":
        c = np.asarray(coefficients, dtype=complex).ravel()
        n = np.linalg.norm(c)
        if n == 0:
            raise ValueError("all coefficients are zero")
        return cls(c / n, states)

    @classmethod
    def pair(cls, alpha, beta, psi: PureState, phi: PureState) -> "Superposition":
        return cls([alpha, beta], (psi, phi))

    @property
    def m(self) -> int:
        return len(self.states)

    @property
    def dims(self) -> tuple[int, int]:
        return self.states[0].dims

    def vector(self) -> np.ndarray:
        """Unnormalized amplitudes of ``sum_i g_i psi_i``."""
        return np.sum([g * s.amplitudes for g, s in zip(self.coefficients, self.states)], axis=0)

    def gram(self) -> np.ndarray:
        """``G[i, j] = <psi_i|psi_j>``."""
        a = np.stack([s.amplitudes for s in self.states])
        return a.conj() @ a.T


@dataclass
class BoundsReport:
    ortho_class: OrthoClass
    theorem: str
    exact: float
    lower: float
    upper: float
    norm_gamma: float
    raw_lower: float
    reference_lower: float | None = None
    reference_upper: float | None = None
    partition_count: int | None = None
    fallback: bool = False
    notes: list[str] = field(default_factory=list)

    def brackets(self, tol: float = 1e-9) -> bool:
        return self.lower - tol <= self.exact <= self.upper + tol

    def to_dict(self) -> dict:
        return {
            "class": self.ortho_class.value,
            "theorem": self.theorem,
            "exact": self.exact,
            "lower": self.lower,
            "upper": self.upper,
            "raw_lower": self.raw_lower,
            "norm": self.norm_gamma,
            "reference_lower": self.reference_lower,
            "reference_upper": self.reference_upper,
            "partition_count": self.partition_count,
            "fallback": self.fallback,
            "notes": list(self.notes),
        }


class ExactValue(NamedTuple):
    norm: float
    exact: float


# ---------------------------------------------------------------------------
# shared per-superposition quantities

class _Terms:
    """Scalars every bound is built from."""

    def __init__(self, s: Superposition):
        self.g = s.coefficients
        self.absg = np.abs(self.g)
        self.conc = np.array([concurrence(x) for x in s.states])
        self.gram = s.gram()
        self.norm = float(np.linalg.norm(s.vector()))
        if self.norm <= NORM_FLOOR:
            raise VanishingNormError(f"superposition norm {self.norm:.3e} is below {NORM_FLOOR}")
        self.norm2 = self.norm ** 2
        m = s.m
        self.pairs = list(itertools.combinations(range(m), 2))
        self.weighted = self.absg ** 2 * self.conc          # |g_i|^2 C(psi_i)
        self.gg = np.array([self.absg[i] * self.absg[j] for i, j in self.pairs])
        ov = np.array([abs(self.gram[i, j]) for i, j in self.pairs])
        self.plus = np.sqrt(1.0 + ov ** 2)
        self.minus = np.sqrt(np.clip(1.0 - ov ** 2, 0.0, None))


def _report(terms: _Terms, cls: OrthoClass, theorem: str, exact: float,
            lower_raw: float, upper_raw: float, **extra) -> BoundsReport:
    lower = lower_raw / terms.norm2
    return BoundsReport(
        ortho_class=cls, theorem=theorem, exact=exact,
        lower=max(0.0, float(lower)), upper=float(upper_raw / terms.norm2),
        norm_gamma=terms.norm, raw_lower=float(lower), **extra)


def _require(s: Superposition, needed: OrthoClass, tol: float) -> OrthoClass:
    if s.m == 1:
        return OrthoClass.BIORTHOGONAL
    got = classify_set(s.states, tol)
    if not got.implies(needed):
        raise ClassPreconditionError(f"states are {got.value}, need {needed.value}")
    return got


def _two_qubit(s: Superposition) -> None:
    if s.dims != (2, 2):
        raise ValueError(f"two-qubit refinement needs dims (2, 2), got {s.dims}")


# ---------------------------------------------------------------------------
# exact value

def superpose_exact(s: Superposition) -> ExactValue:
    """Norm of ``Gamma`` and the concurrence of ``Gamma'``.

    The value comes from expanding the concurrence vector of ``Gamma`` over
    ``C(psi_i)`` and ``C(psi_i, psi_j)``; it is cross-checked against the
    concurrence of the explicitly normalized state.
    """
    norm, exact = superpose_expansion(s)
    direct = superpose_direct(s).exact
    tol = 1e-10 * max(1.0, 1.0 / norm ** 2)
    if abs(exact - direct) > tol:
        raise InvariantError(
            f"expansion ({exact!r}) and direct ({direct!r}) concurrence disagree")
    return ExactValue(norm, exact)


def superpose_expansion(s: Superposition) -> ExactValue:
    """``C(Gamma')`` from ``|| sum_i g_i*^2 C(psi_i) + 2 sum_{i<j} g_i* g_j* C(psi_i, psi_j) ||
    / ||Gamma||^2``."""
    norm = float(np.linalg.norm(s.vector()))
    if norm <= NORM_FLOOR:
        raise VanishingNormError(f"superposition norm {norm:.3e} is below {NORM_FLOOR}")
    table = pair_vector_table(s.states)
    gc = s.coefficients.conj()
    total = np.zeros(table.shape[2:], dtype=complex)
    for i in range(s.m):
        total += gc[i] ** 2 * table[i, i]
    for i, j in itertools.combinations(range(s.m), 2):
        total += 2.0 * gc[i] * gc[j] * table[i, j]
    return ExactValue(norm, float(np.linalg.norm(total)) / norm ** 2)


def superpose_direct(s: Superposition) -> ExactValue:
    """Concurrence of ``Gamma'`` formed explicitly."""
    vec = s.vector()
    norm = float(np.linalg.norm(vec))
    if norm <= NORM_FLOOR:
        raise VanishingNormError(f"superposition norm {norm:.3e} is below {NORM_FLOOR}")
    return ExactValue(norm, concurrence(PureState.normalized(*s.dims, vec)))


# ---------------------------------------------------------------------------
# biorthogonal and one-sided orthogonal states

def _one_sided_upper(t: _Terms) -> float:
    return math.sqrt(float(np.sum(t.weighted ** 2) + 4.0 * np.sum(t.gg ** 2)))


def exact_biorthogonal(s: Superposition, tol: float = DEFAULT_TOL, check: bool = True) -> float:
    """``sqrt(sum |g_i|^4 C^2(psi_i) + 4 sum_{i<j} |g_i g_j|^2)``."""
    if check:
        _require(s, OrthoClass.BIORTHOGONAL, tol)
    return _one_sided_upper(_Terms(s))


def bounds_one_sided(s: Superposition, tol: float = DEFAULT_TOL) -> BoundsReport:
    """``sqrt(sum |g_i|^4 C^2(psi_i))`` below, the biorthogonal value above.

    Either side may carry the orthogonality; the formulas do not depend on it.
    """
    cls = OrthoClass.BIORTHOGONAL if s.m == 1 else classify_set(s.states, tol)
    if not cls.is_one_sided:
        raise ClassPreconditionError(f"states are {cls.value}, need one-sided orthogonal")
    t = _Terms(s)
    exact = superpose_exact(s).exact
    upper = _one_sided_upper(t)
    lower = math.sqrt(float(np.sum(t.weighted ** 2)))
    return _report(t, cls, "one-sided", exact, lower, upper)


# ---------------------------------------------------------------------------
# orthogonal states

def _two_qubit_pair_caps(t: _Terms) -> np.ndarray:
    # two qubits, orthogonal pair: C(psi, phi) <= sqrt(1 - max(C(psi), C(phi))^2)
    d = np.array([max(t.conc[i], t.conc[j]) for i, j in t.pairs])
    return np.sqrt(np.clip(1.0 - d ** 2, 0.0, None))


def bounds_orthogonal(s: Superposition, two_qubit_refine: bool = False,
                      tol: float = DEFAULT_TOL) -> BoundsReport:
    """Triangle-inequality bounds for mutually orthogonal states.

    ``C(psi_i, psi_j) <= 1`` for orthogonal pairs; with ``two_qubit_refine``
    the cap is tightened to ``sqrt(1 - max(C_i, C_j)^2)``.
    """
    cls = _require(s, OrthoClass.ORTHOGONAL, tol)
    if two_qubit_refine:
        _two_qubit(s)
    t = _Terms(s)
    exact = superpose_exact(s).exact
    caps = _two_qubit_pair_caps(t) if two_qubit_refine else np.ones(len(t.pairs))
    cross = 2.0 * float(np.sum(t.gg * caps))
    total = float(np.sum(t.weighted))
    if s.m == 2:
        a, b = t.weighted
        lower = abs(a - b) - cross
    else:
        lower = 2.0 * float(np.max(t.weighted)) - total - cross
    upper = total + cross
    name = "orthogonal-two-qubit" if two_qubit_refine else "orthogonal"
    return _report(t, cls, name, exact, lower, upper)


# ---------------------------------------------------------------------------
# arbitrary states

def bounds_arbitrary_pair(s: Superposition, two_qubit_refine: bool = False,
                          tol: float = DEFAULT_TOL) -> BoundsReport:
    """Bounds for two arbitrary states.

    Besides the direct estimate with ``C(psi, phi) <= sqrt(1 + |<psi|phi>|^2)``
    one state can be split along the other,
    ``phi = <psi|phi> psi + sqrt(1 - |<psi|phi>|^2) psi_perp``, which folds
    the overlap into the coefficient of ``C(psi)`` (and symmetrically for
    ``C(phi)``).  The bounds take the best of the three estimates.
    """
    if s.m != 2:
        raise ValueError(f"pair bounds need exactly two states, got {s.m}")
    if two_qubit_refine:
        _two_qubit(s)
    t = _Terms(s)
    cls = classify_set(s.states, tol)
    exact = superpose_exact(s).exact
    upper, lower = _pair_lines(t, two_qubit_refine)
    return _report(t, cls, "arbitrary-pair", exact, lower, upper)


def _pair_lines(t: _Terms, refine: bool) -> tuple[float, float]:
    alpha, beta = t.g
    c1, c2 = t.conc
    a, b = t.weighted
    ov = t.gram[0, 1]                                  # <psi|phi>
    ab2 = 2.0 * abs(alpha * beta)
    k1 = abs(alpha ** 2 + 2.0 * alpha * beta * ov)     # folded C(psi) weight
    k2 = abs(beta ** 2 + 2.0 * alpha * beta * np.conj(ov))
    plus, minus = float(t.plus[0]), float(t.minus[0])
    cap2 = cap3 = 1.0
    if refine:
        d = max(abs(c1 - abs(ov)), abs(c2 - abs(ov)))
        plus = math.sqrt(max(0.0, 1.0 - d ** 2))
        cap2 = math.sqrt(max(0.0, 1.0 - c2 ** 2))      # C(phi, phi_perp)
        cap3 = math.sqrt(max(0.0, 1.0 - c1 ** 2))      # C(psi, psi_perp)
    upper = min(
        a + b + ab2 * plus,
        a + k2 * c2 + ab2 * minus * cap2,
        k1 * c1 + b + ab2 * minus * cap3,
    )
    lower = max(
        abs(a - b) - ab2 * plus,
        abs(a - k2 * c2) - ab2 * minus * cap2,
        abs(k1 * c1 - b) - ab2 * minus * cap3,
    )
    return upper, lower


def partition_masks(m: int) -> np.ndarray:
    """Every split of the pairs ``i<j`` into a minus set (bit 0) and a plus
    set (bit 1); shape ``(2**P, P)`` with ``P = m(m-1)/2``."""
    p = m * (m - 1) // 2
    codes = np.arange(2 ** p, dtype=np.int64)
    return ((codes[:, None] >> np.arange(p)) & 1).astype(bool)


def partition_coefficients(s: Superposition, masks: np.ndarray | None = None) -> np.ndarray:
    """Folded coefficient of each ``C(psi_t)`` for every partition.

    A minus pair ``(k, l)`` expands ``psi_l`` along ``psi_k`` and adds
    ``2 g_k g_l <psi_k|psi_l>`` to state ``k``; a plus pair ``(r, s)``
    expands ``psi_r`` along ``psi_s`` and adds ``2 g_r g_s <psi_s|psi_r>`` to
    state ``s``.  States that receive nothing keep ``g_t^2``.
    """
    m = s.m
    if masks is None:
        masks = partition_masks(m)
    g, gram = s.coefficients, s.gram()
    pairs = list(itertools.combinations(range(m), 2))
    to_minus = np.zeros((len(pairs), m), dtype=complex)
    to_plus = np.zeros((len(pairs), m), dtype=complex)
    for p, (i, j) in enumerate(pairs):
        to_minus[p, i] = 2.0 * g[i] * g[j] * gram[i, j]
        to_plus[p, j] = 2.0 * g[i] * g[j] * gram[j, i]
    bits = masks.astype(float)
    return g ** 2 + (1.0 - bits) @ to_minus + bits @ to_plus


def _multi_first_line(t: _Terms) -> tuple[float, float]:
    total = float(np.sum(t.weighted))
    cross = 2.0 * float(np.sum(t.gg * t.plus))
    return total + cross, 2.0 * float(np.max(t.weighted)) - total - cross


def bounds_arbitrary_multi(s: Superposition, m_cap: int = DEFAULT_M_CAP,
                           tol: float = DEFAULT_TOL) -> BoundsReport:
    """Bounds for ``m`` arbitrary states, minimised/maximised over all
    ``2**(m(m-1)/2)`` partitions of the pairs."""
    if s.m < 2:
        raise ValueError("multi-state bounds need at least two states")
    if s.m > m_cap:
        raise PartitionCapError(
            f"m = {s.m} exceeds the partition cap {m_cap} "
            f"({2 ** (s.m * (s.m - 1) // 2)} partitions)")
    t = _Terms(s)
    cls = classify_set(s.states, tol)
    exact = superpose_exact(s).exact
    upper1, lower1 = _multi_first_line(t)
    masks = partition_masks(s.m)
    weights = np.abs(partition_coefficients(s, masks)) * t.conc
    cross = 2.0 * float(np.sum(t.gg * t.minus))
    sums = weights.sum(axis=1)
    upper = min(upper1, float(np.min(sums)) + cross)
    lower = max(lower1, float(np.max(2.0 * weights.max(axis=1) - sums)) - cross)
    return _report(t, cls, "arbitrary-multi", exact, lower, upper,
                   partition_count=len(masks))


# ---------------------------------------------------------------------------
# comparison bounds (I-concurrence literature)

def reference_bounds(s: Superposition, tol: float = DEFAULT_TOL) -> tuple[float, float]:
    """Earlier two-state bounds, normalized like :func:`bounds_arbitrary_pair`.

    Orthogonal pairs: upper ``a + b + 2|ab|``, lower
    ``|a - b| - 2|ab|(1 + d)``.  Otherwise upper
    ``a + b + 2|ab| sqrt(1 + |<psi|phi>|^2)`` and lower
    ``|a - b| - 2|ab| sqrt(1 + |<psi|phi>|^2 + d)``, with
    ``d = min(|alpha/beta| C(psi), |beta/alpha| C(phi))``.
    Returns raw (unclamped) values.
    """
    if s.m != 2:
        raise ValueError(f"reference bounds need exactly two states, got {s.m}")
    t = _Terms(s)
    alpha, beta = t.absg
    c1, c2 = t.conc
    a, b = t.weighted
    ab2 = 2.0 * alpha * beta
    cand = []
    if beta > 0:
        cand.append(alpha / beta * c1)
    if alpha > 0:
        cand.append(beta / alpha * c2)
    d = min(cand) if cand else 0.0
    ov = abs(t.gram[0, 1])
    if ov < tol:
        upper = a + b + ab2
        lower = abs(a - b) - ab2 * (1.0 + d)
    else:
        upper = a + b + ab2 * math.sqrt(1.0 + ov ** 2)
        lower = abs(a - b) - ab2 * math.sqrt(1.0 + ov ** 2 + d)
    return lower / t.norm2, upper / t.norm2


# ---------------------------------------------------------------------------
# dispatch

def evaluate(s: Superposition, force_class: OrthoClass | None = None,
             two_qubit_refine: bool = False, reference: bool = False,
             m_cap: int = DEFAULT_M_CAP, tol: float = DEFAULT_TOL) -> BoundsReport:
    """Classify the states and apply the strongest applicable bound.

    ``force_class`` selects a weaker theorem; it must be implied by the
    detected class.  Above ``m_cap`` arbitrary states only get the
    non-partition bounds and the report is flagged.
    """
    if s.m == 1:
        t = _Terms(s)
        exact = superpose_exact(s).exact
        c = float(t.conc[0])
        rep = _report(t, OrthoClass.BIORTHOGONAL, "single", exact, c * t.norm2, c * t.norm2)
        rep.notes.append("single state: bounds equal C(psi_1)")
        return rep
    detected = classify_set(s.states, tol)
    cls = detected
    if force_class is not None:
        if not detected.implies(force_class):
            raise ClassPreconditionError(
                f"cannot force {force_class.value}: states are {detected.value}")
        cls = force_class
    refine_ignored = two_qubit_refine and cls not in (OrthoClass.ORTHOGONAL, OrthoClass.ARBITRARY)
    if two_qubit_refine:
        _two_qubit(s)

    if cls is OrthoClass.BIORTHOGONAL:
        t = _Terms(s)
        val = exact_biorthogonal(s, check=False)
        exact = superpose_exact(s).exact
        rep = _report(t, cls, "biorthogonal-exact", exact, val * t.norm2, val * t.norm2)
    elif cls in (OrthoClass.ONE_SIDED_A, OrthoClass.ONE_SIDED_B):
        rep = bounds_one_sided(s, tol)
    elif cls is OrthoClass.ORTHOGONAL:
        rep = bounds_orthogonal(s, two_qubit_refine, tol)
    elif s.m == 2:
        rep = bounds_arbitrary_pair(s, two_qubit_refine, tol)
    elif s.m <= m_cap:
        rep = bounds_arbitrary_multi(s, m_cap, tol)
        if two_qubit_refine:
            rep.notes.append("two-qubit refinement not available for m > 2")
    else:
        t = _Terms(s)
        exact = superpose_exact(s).exact
        upper, lower = _multi_first_line(t)
        rep = _report(t, cls, "arbitrary-multi-first-line", exact, lower, upper, fallback=True)
        rep.notes.append(f"m = {s.m} above partition cap {m_cap}; partition bounds skipped")
    rep.ortho_class = cls
    if refine_ignored:
        rep.notes.append(f"two-qubit refinement not used: {cls.value} bounds are already tight")
    if force_class is not None and cls is not detected:
        rep.notes.append(f"detected class {detected.value}, forced {cls.value}")
    if reference and s.m == 2:
        lo, up = reference_bounds(s, tol)
        rep.reference_lower, rep.reference_upper = max(0.0, lo), up
    return rep
