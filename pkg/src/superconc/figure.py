"""Sweep of the two-state example in C^3 (x) C^3.

``psi = |00>/sqrt2 + |11>/2 + |22>/2`` and ``phi = |00>/sqrt2 - |11>/2 + |22>/2``
superposed as ``x psi - sqrt(1 - x^2) phi``; at ``x = 1/sqrt2`` the
superposition collapses onto ``|11>``.
"""
from __future__ import annotations

import csv
import math

import numpy as np

from .bounds import Superposition, bounds_arbitrary_pair, reference_bounds
from .linalg import PureState

FIELDS = ("x", "exact", "lower", "upper", "ref_lower", "ref_upper")
CANCELLATION_X = math.sqrt(0.5)


def example_states() -> tuple[PureState, PureState]:
    r = math.sqrt(0.5)
    psi = np.zeros(9, dtype=complex)
    phi = np.zeros(9, dtype=complex)
    psi[[0, 4, 8]] = [r, 0.5, 0.5]
    phi[[0, 4, 8]] = [r, -0.5, 0.5]
    return PureState(3, 3, psi), PureState(3, 3, phi)


def sample_points(samples: int, include_cancellation: bool = True) -> np.ndarray:
    """``samples`` uniform points on [0, 1], plus ``1/sqrt2`` where the
    exact curve touches zero."""
    if samples < 2:
        raise ValueError("need at least two samples")
    xs = np.linspace(0.0, 1.0, samples)
    if include_cancellation and not np.any(xs == CANCELLATION_X):
        xs = np.sort(np.append(xs, CANCELLATION_X))
    return xs


def figure1_rows(samples: int = 201, include_cancellation: bool = True) -> list[dict]:
    psi, phi = example_states()
    rows = []
    for x in sample_points(samples, include_cancellation):
        beta = -math.sqrt(max(0.0, 1.0 - x * x))
        s = Superposition.normalized([x, beta], (psi, phi))
        rep = bounds_arbitrary_pair(s)
        ref_lo, ref_up = reference_bounds(s)
        rows.append({
            "x": float(x), "exact": rep.exact, "lower": rep.lower, "upper": rep.upper,
            "ref_lower": max(0.0, float(ref_lo)), "ref_upper": float(ref_up),
        })
    return rows


def write_csv(rows: list[dict], fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(FIELDS)
    for r in rows:
        w.writerow([f"{r[k]:.10g}" for k in FIELDS])
