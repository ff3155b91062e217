"""Orthogonality classes of pairs and sets of bipartite pure states."""
from __future__ import annotations

import enum
import itertools
from collections.abc import Sequence

from .concurrence import marginal_overlaps
from .linalg import PureState, inner_product

DEFAULT_TOL = 1e-9


class OrthoClass(enum.Enum):
    BIORTHOGONAL = "biorthogonal"
    ONE_SIDED_A = "one-sided-a"
    ONE_SIDED_B = "one-sided-b"
    ORTHOGONAL = "orthogonal"
    ARBITRARY = "arbitrary"

    @property
    def strength(self) -> int:
        return _STRENGTH[self]

    def implies(self, other: "OrthoClass") -> bool:
        """True when every pair in class ``self`` also satisfies ``other``."""
        if self is other or other is OrthoClass.ARBITRARY:
            return True
        if self is OrthoClass.BIORTHOGONAL:
            return True
        if self in (OrthoClass.ONE_SIDED_A, OrthoClass.ONE_SIDED_B):
            return other is OrthoClass.ORTHOGONAL
        return False

    @property
    def is_one_sided(self) -> bool:
        return self in (OrthoClass.BIORTHOGONAL, OrthoClass.ONE_SIDED_A, OrthoClass.ONE_SIDED_B)

    @classmethod
    def parse(cls, name: str) -> "OrthoClass":
        key = name.strip().lower().replace("_", "-")
        aliases = {"one-sided": "one-sided-a", "onesided": "one-sided-a",
                   "onesideda": "one-sided-a", "onesidedb": "one-sided-b",
                   "bi": "biorthogonal"}
        key = aliases.get(key, key)
        for c in cls:
            if c.value == key:
                return c
        raise ValueError(f"unknown orthogonality class {name!r}")


_STRENGTH = {
    OrthoClass.BIORTHOGONAL: 3,
    OrthoClass.ONE_SIDED_A: 2,
    OrthoClass.ONE_SIDED_B: 2,
    OrthoClass.ORTHOGONAL: 1,
    OrthoClass.ARBITRARY: 0,
}


def classify_pair(x: PureState, y: PureState, tol: float = DEFAULT_TOL) -> OrthoClass:
    ta, tb = marginal_overlaps(x, y)
    a_ok, b_ok = ta < tol, tb < tol
    if a_ok and b_ok:
        return OrthoClass.BIORTHOGONAL
    if a_ok:
        return OrthoClass.ONE_SIDED_A
    if b_ok:
        return OrthoClass.ONE_SIDED_B
    if abs(inner_product(x, y)) < tol:
        return OrthoClass.ORTHOGONAL
    return OrthoClass.ARBITRARY


def classify_set(states: Sequence[PureState], tol: float = DEFAULT_TOL) -> OrthoClass:
    """Strongest class satisfied by every pair in ``states``.

    Pairs that are one-sided on different subsystems only share the
    orthogonal class.
    """
    if len(states) < 2:
        raise ValueError("classification needs at least two states")
    classes = {classify_pair(x, y, tol) for x, y in itertools.combinations(states, 2)}
    if classes == {OrthoClass.BIORTHOGONAL}:
        return OrthoClass.BIORTHOGONAL
    for side in (OrthoClass.ONE_SIDED_A, OrthoClass.ONE_SIDED_B):
        if classes <= {OrthoClass.BIORTHOGONAL, side}:
            return side
    if OrthoClass.ARBITRARY not in classes:
        return OrthoClass.ORTHOGONAL
    return OrthoClass.ARBITRARY
