"""JSON state files.

A state file is ``{"dim_a": int, "dim_b": int, "amplitudes": [[re, im], ...]}``
in ``i * dim_b + j`` order; a superposition file is
``{"coefficients": [[re, im], ...], "states": [<state>, ...]}``.
"""
from __future__ import annotations

import json
import logging

import numpy as np

from .bounds import Superposition
from .linalg import NORM_TOL, PureState

log = logging.getLogger(__name__)

RENORM_WARN = 1e-9


class StateFileError(ValueError):
    pass


def _complex_list(raw, what: str) -> np.ndarray:
    if not isinstance(raw, list) or not raw:
        raise StateFileError(f"{what} must be a non-empty list of [re, im] pairs")
    out = np.empty(len(raw), dtype=complex)
    for k, pair in enumerate(raw):
        if (not isinstance(pair, (list, tuple)) or len(pair) != 2
                or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in pair)):
            raise StateFileError(f"{what}[{k}] is not an [re, im] pair of numbers")
        out[k] = complex(pair[0], pair[1])
    if not np.all(np.isfinite(out)):
        raise StateFileError(f"{what} contains non-finite values")
    return out


def _renormalize(vec: np.ndarray, what: str) -> np.ndarray:
    norm = np.linalg.norm(vec)
    if norm == 0:
        raise StateFileError(f"{what} has zero norm")
    if abs(norm - 1.0) > RENORM_WARN:
        log.warning("%s renormalized (norm was %.12g)", what, norm)
    if abs(norm - 1.0) <= NORM_TOL:
        return vec  # already normalized; keeps load/save bit-exact
    return vec / norm


def state_from_dict(doc: dict, what: str = "state") -> PureState:
    if not isinstance(doc, dict):
        raise StateFileError(f"{what} must be a JSON object")
    try:
        dim_a, dim_b = doc["dim_a"], doc["dim_b"]
        raw = doc["amplitudes"]
    except KeyError as e:
        raise StateFileError(f"{what} is missing field {e.args[0]!r}") from None
    if not all(isinstance(d, int) and not isinstance(d, bool) for d in (dim_a, dim_b)):
        raise StateFileError(f"{what}: dim_a and dim_b must be integers")
    amps = _complex_list(raw, f"{what}.amplitudes")
    if amps.size != dim_a * dim_b:
        raise StateFileError(
            f"{what}: {amps.size} amplitudes for dims {dim_a}x{dim_b}")
    amps = _renormalize(amps, what)
    try:
        return PureState(dim_a, dim_b, amps)
    except ValueError as e:
        raise StateFileError(f"{what}: {e}") from None


def state_to_dict(s: PureState) -> dict:
    return {
        "dim_a": s.dim_a,
        "dim_b": s.dim_b,
        "amplitudes": [[float(a.real), float(a.imag)] for a in s.amplitudes],
    }


def superposition_from_dict(doc: dict) -> Superposition:
    if not isinstance(doc, dict):
        raise StateFileError("superposition must be a JSON object")
    if "coefficients" not in doc or "states" not in doc:
        raise StateFileError("superposition needs 'coefficients' and 'states'")
    coeffs = _complex_list(doc["coefficients"], "coefficients")
    raw_states = doc["states"]
    if not isinstance(raw_states, list) or not raw_states:
        raise StateFileError("states must be a non-empty list")
    states = [state_from_dict(d, f"states[{k}]") for k, d in enumerate(raw_states)]
    if len(coeffs) != len(states):
        raise StateFileError(f"{len(coeffs)} coefficients for {len(states)} states")
    if any(s.dims != states[0].dims for s in states):
        raise StateFileError("states have mismatched dimensions")
    coeffs = _renormalize(coeffs, "coefficients")
    return Superposition(coeffs, states)


def superposition_to_dict(s: Superposition) -> dict:
    return {
        "coefficients": [[float(c.real), float(c.imag)] for c in s.coefficients],
        "states": [state_to_dict(x) for x in s.states],
    }


def _load(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as e:
        raise StateFileError(f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise StateFileError(f"{path}: invalid JSON ({e.msg} at line {e.lineno})") from None


def load_state(path) -> PureState:
    return state_from_dict(_load(path))


def load_superposition(path) -> Superposition:
    return superposition_from_dict(_load(path))


def save_state(s: PureState, path) -> None:
    with open(path, "w") as fh:
        json.dump(state_to_dict(s), fh, indent=2)
        fh.write("\n")


def save_superposition(s: Superposition, path) -> None:
    with open(path, "w") as fh:
        json.dump(superposition_to_dict(s), fh, indent=2)
        fh.write("\n")
