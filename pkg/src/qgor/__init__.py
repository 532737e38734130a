"""qgor: quasi-Gorenstein verification for standard graded rings S/I."""

from __future__ import annotations

__version__ = "0.1.0"

from .fields import PrimeField, RationalField, parse_field  # noqa: E402
from .poly import Polynomial, PolynomialRing  # noqa: E402
from .rings import RingSpec  # noqa: E402
from .ideals import IdealHandle, colon, ideal, intersect, saturate  # noqa: E402
from .analysis import (  # noqa: E402
    QGReport,
    RouteDisagreement,
    find_sop,
    limit_closure,
    param_system,
    qg_check,
)

__all__ = [
    "PrimeField", "RationalField", "parse_field", "Polynomial", "PolynomialRing", "RingSpec",
    "IdealHandle", "colon", "ideal", "intersect", "saturate", "QGReport", "RouteDisagreement",
    "find_sop", "limit_closure", "param_system", "qg_check",
]
