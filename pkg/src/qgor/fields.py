"""Coefficient fields: exact rationals and prime fields F_p."""

from __future__ import annotations

import re
from fractions import Fraction

DEFAULT_PRIME = 32003


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


class RationalField:
    """The field Q. Elements are ``Fraction`` instances (always reduced)."""

    characteristic = 0
    name = "Q"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "RationalField()"

    def __call__(self, value) -> Fraction:
        return Fraction(value)

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def random_element(self, rng, bound: int = 10):
        # small integers keep rational coefficient growth in check
        return Fraction(rng.randint(-bound, bound))

    def to_str(self, a) -> str:
        a = Fraction(a)
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"

    def to_json(self, a):
        a = Fraction(a)
        return a.numerator if a.denominator == 1 else f"{a.numerator}/{a.denominator}"


class PrimeField:
    """The field F_p for a prime 2 <= p < 2**31; elements are ints in [0, p)."""

    def __init__(self, p: int = DEFAULT_PRIME):
        if not (2 <= p < 2**31) or not _is_prime(p):
            raise ValueError(f"characteristic must be a prime in [2, 2^31), got {p}")
        self.characteristic = p
        self.name = f"F{p}"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("F", self.characteristic))

    def __repr__(self):
        return f"PrimeField({self.characteristic})"

    def __call__(self, value) -> int:
        p = self.characteristic
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise ZeroDivisionError(f"denominator {value.denominator} vanishes mod {p}")
            return value.numerator * pow(value.denominator, -1, p) % p
        return int(value) % p

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def inv(self, a):
        if a % self.characteristic == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.characteristic)

    def random_element(self, rng, bound: int | None = None):
        return rng.randrange(self.characteristic)

    def signed(self, a: int) -> int:
        """Symmetric representative in (-p/2, p/2], used only for display."""
        p = self.characteristic
        return a - p if a > p // 2 else a

    def to_str(self, a) -> str:
        return str(self.signed(a))

    def to_json(self, a):
        return self.signed(a)


_FIELD_RE = re.compile(r"^(?:Q|QQ|F(\d+)|GF\((\d+)\)|ZZ/(\d+))$")


def parse_field(text: str):
    """Parse a field descriptor such as ``Q``, ``F32003`` or ``F101``."""
    m = _FIELD_RE.match(text.strip())
    if not m:
        raise ValueError(f"unknown field descriptor {text!r}")
    digits = next((g for g in m.groups() if g), None)
    if digits is None:
        return RationalField()
    return PrimeField(int(digits))
