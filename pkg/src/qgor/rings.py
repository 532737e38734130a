from __future__ import annotations

from .ideals import IdealHandle
from .invariants import InhomogeneousError, krull_dimension
from .poly import PolynomialRing


class RingSpec:
    """R = S/I for a homogeneous ideal I of a polynomial ring S."""

    def __init__(self, S: PolynomialRing, I=None, name: str = "R"):
        if I is None:
            I = IdealHandle(S, [])
        elif not isinstance(I, IdealHandle):
            I = IdealHandle(S, I)
        if I.ring != S:
            raise ValueError("defining ideal lives in a different ring")
        if not I.is_homogeneous():
            raise InhomogeneousError("defining ideal must be homogeneous")
        self.S = S
        self.I = I
        self.name = name
        self._d = None

    @property
    def n(self) -> int:
        return self.S.nvars

    @property
    def d(self) -> int:
        if self._d is None:
            self._d = krull_dimension(self.I)
        return self._d

    @property
    def field(self):
        return self.S.field

    def ideal(self, gens) -> IdealHandle:
        """Lift of the R-ideal generated by ``gens``: (gens) + I."""
        return IdealHandle(self.S, list(gens) + list(self.I.gens))

    def quotient(self, extra, name: str | None = None) -> RingSpec:
        return RingSpec(self.S, list(self.I.gens) + list(extra), name or f"{self.name}/x")

    def describe(self) -> dict:
        return {
            "name": self.name,
            "field": self.S.field.name,
            "variables": list(self.S.variables),
            "order": str(self.S.order),
            "ideal": [str(g) for g in self.I.gens],
        }

    def __repr__(self):
        gens = ", ".join(str(g) for g in self.I.gens) or "0"
        return f"{self.S!r} / ({gens})"
