"""Seeded random ensembles per orthogonality class and Monte Carlo checks of
every lemma and bound on them.

Randomness: each trial gets its own ``numpy.random.Philox`` stream keyed by
``SeedSequence(seed, spawn_key=(trial,))``, so a report depends only on the
spec and is identical across runs and platforms.  States and coefficients
are Haar distributed (normalized complex Gaussians).
"""
from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass, field

import numpy as np

from . import bounds as B
from .concurrence import pair_concurrence_closed, pair_vector_table
from .errors import VanishingNormError
from .linalg import MAX_DIM, PureState, inner_product
from .orthogonality import OrthoClass, classify_pair, classify_set

SAMPLING = "Haar: normalized standard complex Gaussians (states and coefficients), Philox stream per trial"
MAX_REDRAWS = 100


@dataclass(frozen=True)
class EnsembleSpec:
    dim_a: int
    dim_b: int
    m: int
    ortho_class: OrthoClass
    trials: int
    seed: int
    tolerance: float = 1e-9
    m_cap: int = B.DEFAULT_M_CAP

    def validate(self) -> None:
        n1, n2 = self.dim_a, self.dim_b
        if not (2 <= n1 <= MAX_DIM and 2 <= n2 <= MAX_DIM):
            raise ValueError(f"dims must lie in [2, {MAX_DIM}], got {n1}x{n2}")
        if self.m < 2:
            raise ValueError("m must be at least 2")
        if self.trials < 1:
            raise ValueError("trials must be positive")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        room = {
            OrthoClass.BIORTHOGONAL: min(n1, n2),
            OrthoClass.ONE_SIDED_A: n1,
            OrthoClass.ONE_SIDED_B: n2,
            OrthoClass.ORTHOGONAL: n1 * n2,
            OrthoClass.ARBITRARY: self.m_cap,
        }[self.ortho_class]
        if self.m > room:
            why = ("partition cap" if self.ortho_class is OrthoClass.ARBITRARY
                   else f"dims {n1}x{n2}")
            raise ValueError(
                f"{self.ortho_class.value} set of m = {self.m} is infeasible ({why} allows {room})")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["ortho_class"] = self.ortho_class.value
        return d


@dataclass
class CheckStats:
    evaluated: int = 0
    violations: int = 0
    worst_margin: float = float("inf")

    def record(self, margin: float, tol: float) -> None:
        self.evaluated += 1
        if margin < -tol:
            self.violations += 1
        self.worst_margin = min(self.worst_margin, margin)


@dataclass
class VerificationReport:
    spec: EnsembleSpec
    trials_run: int = 0
    skipped: int = 0
    checks: dict[str, CheckStats] = field(default_factory=dict)

    @property
    def violations(self) -> int:
        return sum(c.violations for c in self.checks.values())

    @property
    def worst_margin(self) -> float:
        return min((c.worst_margin for c in self.checks.values()), default=float("inf"))

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def record(self, name: str, margin: float) -> None:
        self.checks.setdefault(name, CheckStats()).record(margin, self.spec.tolerance)

    def to_dict(self) -> dict:
        return {
            "spec": self.spec.to_dict(),
            "seed": self.spec.seed,
            "sampling": SAMPLING,
            "trials_run": self.trials_run,
            "skipped": self.skipped,
            "violations": self.violations,
            "worst_margin": self.worst_margin,
            "passed": self.passed,
            "checks": {k: asdict(v) for k, v in sorted(self.checks.items())},
        }


# ---------------------------------------------------------------------------
# sampling

def trial_rng(seed: int, trial: int) -> np.random.Generator:
    ss = np.random.SeedSequence(seed, spawn_key=(trial,))
    return np.random.Generator(np.random.Philox(ss))


def _gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_unit_vector(n: int, rng: np.random.Generator) -> np.ndarray:
    v = _gaussian(rng, n)
    return v / np.linalg.norm(v)


def random_pure_state(dims: tuple[int, int], rng: np.random.Generator) -> PureState:
    n1, n2 = dims
    return PureState(n1, n2, random_unit_vector(n1 * n2, rng))


def haar_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    q, r = np.linalg.qr(_gaussian(rng, (n, n)))
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def _ranks(m: int, room: int, rng: np.random.Generator) -> list[int]:
    # Schmidt/support rank 1 or 2 per state, leaving room for the rest
    out, used = [], 0
    for i in range(m):
        spare = room - used - (m - i - 1)
        r = int(rng.integers(1, 3)) if spare >= 2 else 1
        out.append(r)
        used += r
    return out


def _biorthogonal_set(n1, n2, m, rng) -> list[PureState]:
    ranks = _ranks(m, min(n1, n2), rng)
    pa, pb = rng.permutation(n1), rng.permutation(n2)
    ua, ub = haar_unitary(n1, rng), haar_unitary(n2, rng)
    out, used = [], 0
    for r in ranks:
        mat = np.zeros((n1, n2), dtype=complex)
        mat[pa[used:used + r], pb[used:used + r]] = random_unit_vector(r, rng)
        used += r
        out.append(PureState.from_matrix(ua @ mat @ ub.T))
    return out


def _one_sided_a_set(n1, n2, m, rng) -> list[PureState]:
    ranks = _ranks(m, n1, rng)
    pa = rng.permutation(n1)
    ua, ub = haar_unitary(n1, rng), haar_unitary(n2, rng)
    out, used = [], 0
    for r in ranks:
        mat = np.zeros((n1, n2), dtype=complex)
        mat[pa[used:used + r], :] = _gaussian(rng, (r, n2))
        used += r
        out.append(PureState.from_matrix(ua @ mat @ ub.T))
    return out


def _orthogonal_set(n1, n2, m, rng) -> list[PureState]:
    q, _ = np.linalg.qr(_gaussian(rng, (n1 * n2, m)))
    return [PureState.normalized(n1, n2, q[:, k]) for k in range(m)]


def random_class_set(spec: EnsembleSpec, rng: np.random.Generator) -> list[PureState]:
    """States whose set class is exactly ``spec.ortho_class``; measure-zero
    upgrades to a stronger class are redrawn."""
    spec.validate()
    n1, n2, m, cls = spec.dim_a, spec.dim_b, spec.m, spec.ortho_class
    for _ in range(MAX_REDRAWS):
        if cls is OrthoClass.BIORTHOGONAL:
            states = _biorthogonal_set(n1, n2, m, rng)
        elif cls is OrthoClass.ONE_SIDED_A:
            states = _one_sided_a_set(n1, n2, m, rng)
        elif cls is OrthoClass.ONE_SIDED_B:
            states = [s.swap_sides() for s in _one_sided_a_set(n2, n1, m, rng)]
        elif cls is OrthoClass.ORTHOGONAL:
            states = _orthogonal_set(n1, n2, m, rng)
        else:
            states = [random_pure_state((n1, n2), rng) for _ in range(m)]
        if classify_set(states) is cls:
            return states
    raise RuntimeError(f"could not draw a {cls.value} set in {MAX_REDRAWS} attempts")


# ---------------------------------------------------------------------------
# verification

def _bracket_margin(rep: B.BoundsReport) -> float:
    return min(rep.exact - rep.lower, rep.upper - rep.exact)


def _lemma_checks(report: VerificationReport, states, cls: OrthoClass) -> None:
    m = len(states)
    if cls.is_one_sided:
        table = pair_vector_table(states)
        keys = [(i, j) for i in range(m) for j in range(i, m)]
        vecs = np.stack([table[i, j].ravel() for i, j in keys])
        dots = vecs.conj() @ vecs.T
        off = ~np.eye(len(keys), dtype=bool)
        for d in np.abs(dots[off]):
            report.record("lemma2", -float(d))
        if m == 2:
            for d in np.abs(dots[off]):
                report.record("lemma1", -float(d))
    for x, y in itertools.combinations(states, 2):
        pc = pair_concurrence_closed(x, y)
        pair_cls = classify_pair(x, y)
        if pair_cls is OrthoClass.BIORTHOGONAL:
            margin = -abs(pc - 1.0)
        elif pair_cls is OrthoClass.ARBITRARY:
            margin = np.sqrt(1.0 + abs(inner_product(x, y)) ** 2) - pc
        else:
            margin = 1.0 - pc
        report.record("lemma3", float(margin))


def _label(m: int, two: str, many: str) -> str:
    return two if m == 2 else many


def run_trial(report: VerificationReport, states, gamma) -> None:
    spec = report.spec
    cls, m = spec.ortho_class, spec.m
    s = B.Superposition(gamma, states)
    try:
        exact = B.superpose_expansion(s).exact
        direct = B.superpose_direct(s).exact
    except VanishingNormError:
        report.skipped += 1
        return
    report.record("exact-expansion", -abs(exact - direct))
    _lemma_checks(report, states, cls)
    if cls is OrthoClass.BIORTHOGONAL:
        closed = B.exact_biorthogonal(s)
        report.record(_label(m, "thm1", "thm5"), -abs(closed - exact))
    if cls.is_one_sided:
        report.record(_label(m, "thm2", "thm6"), _bracket_margin(B.bounds_one_sided(s)))
    if cls is not OrthoClass.ARBITRARY:
        report.record(_label(m, "thm3", "thm7"), _bracket_margin(B.bounds_orthogonal(s)))
    if m == 2:
        report.record("thm4", _bracket_margin(B.bounds_arbitrary_pair(s)))
    if m <= spec.m_cap:
        report.record("thm8", _bracket_margin(B.bounds_arbitrary_multi(s, spec.m_cap)))


def verify(spec: EnsembleSpec) -> VerificationReport:
    spec.validate()
    report = VerificationReport(spec)
    for t in range(spec.trials):
        rng = trial_rng(spec.seed, t)
        states = random_class_set(spec, rng)
        gamma = random_unit_vector(spec.m, rng)
        run_trial(report, states, gamma)
        report.trials_run += 1
    return report
