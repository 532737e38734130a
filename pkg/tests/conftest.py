from __future__ import annotations

import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from qgor.fields import PrimeField, RationalField  # noqa: E402
from qgor.poly import PolynomialRing  # noqa: E402
from qgor.rings import RingSpec  # noqa: E402

Q = RationalField()
F = PrimeField(32003)


@pytest.fixture
def two_planes():
    S = PolynomialRing(F, "XYZT")
    X, Y, Z, T = S.gens()
    return RingSpec(S, [X * Y, X * T, Z * Y, Z * T], "two-planes")


@pytest.fixture
def cubic3():
    S = PolynomialRing(Q, "xyz")
    x, y, z = S.gens()
    return RingSpec(S, [x**3 + y**3 + z**3], "cubic")


@pytest.fixture
def x4y3():
    S = PolynomialRing(Q, "XY")
    X, Y = S.gens()
    return RingSpec(S, [X**4 * Y**3, X**3 * Y**4], "R/a")


ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def record(criterion: int, passed: bool, detail: str = ""):
    ACCEPTANCE[criterion] = (passed, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
