"""Polynomial rings S = K[x_1..x_n] and their elements."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .fields import PrimeField, RationalField
from .orders import GREVLEX, MonomialOrder


class MixedRingError(ValueError):
    pass


def monomials_of_degree(n: int, degree: int):
    """All exponent vectors of length ``n`` and total degree ``degree``."""
    if n == 0:
        if degree == 0:
            yield ()
        return
    for c in itertools.combinations_with_replacement(range(n), degree):
        e = [0] * n
        for i in c:
            e[i] += 1
        yield tuple(e)


class PolynomialRing:
    """A standard-graded polynomial ring over Q or F_p with a fixed monomial order."""

    def __init__(self, field, variables, order: MonomialOrder = GREVLEX):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError(f"duplicate variable names in {variables}")
        self.field = field
        self.variables = variables
        self.order = order
        self.nvars = len(variables)
        self._index = {v: i for i, v in enumerate(variables)}

    def __eq__(self, other):
        return (
            isinstance(other, PolynomialRing)
            and self.field == other.field
            and self.variables == other.variables
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.field, self.variables, self.order))

    def __repr__(self):
        return f"{self.field.name}[{','.join(self.variables)}] {self.order}"

    def with_order(self, order: MonomialOrder) -> PolynomialRing:
        return PolynomialRing(self.field, self.variables, order)

    # construction -------------------------------------------------------
    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def one(self) -> Polynomial:
        return self.constant(1)

    def constant(self, c) -> Polynomial:
        c = self.field(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def monomial(self, exp, c=1) -> Polynomial:
        exp = tuple(exp)
        if len(exp) != self.nvars:
            raise ValueError("exponent vector length does not match the ring")
        c = self.field(c)
        return Polynomial(self, {exp: c} if c else {})

    def var(self, name_or_index) -> Polynomial:
        i = self._index[name_or_index] if isinstance(name_or_index, str) else name_or_index
        e = [0] * self.nvars
        e[i] = 1
        return self.monomial(e)

    def gens(self) -> list[Polynomial]:
        return [self.var(i) for i in range(self.nvars)]

    def index(self, name: str) -> int:
        return self._index[name]

    def from_dict(self, coeffs: dict) -> Polynomial:
        """Build from ``{exponent: coefficient}``, coercing and dropping zeros."""
        out = {}
        for e, c in coeffs.items():
            c = self.field(c)
            if c:
                out[tuple(e)] = c
        return Polynomial(self, out)

    def coerce(self, x) -> Polynomial:
        if isinstance(x, Polynomial):
            if x.ring != self:
                raise MixedRingError(f"polynomial from {x.ring!r} used in {self!r}")
            return x
        if isinstance(x, (int, Fraction)):
            return self.constant(x)
        if isinstance(x, str):
            return self.parse(x)
        raise TypeError(f"cannot coerce {type(x).__name__} into {self!r}")

    def parse(self, text: str) -> Polynomial:
        from .parsing import parse_polynomial

        return parse_polynomial(text, self)

    def random_homogeneous_form(self, degree: int, seed: int) -> Polynomial:
        return random_homogeneous_form(self, degree, seed)


class Polynomial:
    """Immutable polynomial: a dict ``exponent -> nonzero coefficient``.

    ``terms`` gives the (exponent, coefficient) pairs strictly descending in
    the ring's monomial order.
    """

    __slots__ = ("ring", "coeffs", "_terms")

    def __init__(self, ring: PolynomialRing, coeffs: dict):
        self.ring = ring
        self.coeffs = coeffs
        self._terms = None

    # inspection ---------------------------------------------------------
    @property
    def terms(self) -> tuple:
        if self._terms is None:
            key = self.ring.order.key
            self._terms = tuple(sorted(self.coeffs.items(), key=lambda t: key(t[0]), reverse=True))
        return self._terms

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    @property
    def lm(self) -> tuple:
        return self.terms[0][0]

    @property
    def lc(self):
        return self.terms[0][1]

    def degree(self) -> int:
        if not self.coeffs:
            return -1
        return max(sum(e) for e in self.coeffs)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.coeffs}) <= 1

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.coeffs)

    def monic(self) -> Polynomial:
        if not self.coeffs:
            return self
        return self.scale(self.ring.field.inv(self.lc))

    # arithmetic ---------------------------------------------------------
    def _check(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise MixedRingError(f"operands live in {self.ring!r} and {other.ring!r}")
            return other
        return self.ring.coerce(other)

    def _p(self):
        return self.ring.field.characteristic

    def __add__(self, other):
        other = self._check(other)
        p = self._p()
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            v = out.get(e, 0) + c
            if p:
                v %= p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def scale(self, c) -> Polynomial:
        c = self.ring.field(c)
        if not c:
            return self.ring.zero()
        p = self._p()
        if p:
            return Polynomial(self.ring, {e: v * c % p for e, v in self.coeffs.items()})
        return Polynomial(self.ring, {e: v * c for e, v in self.coeffs.items()})

    def mul_term(self, exp, c=1) -> Polynomial:
        c = self.ring.field(c)
        if not c:
            return self.ring.zero()
        p = self._p()
        out = {}
        for e, v in self.coeffs.items():
            ne = tuple(a + b for a, b in zip(e, exp))
            out[ne] = v * c % p if p else v * c
        return Polynomial(self.ring, out)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._check(other)
        p = self._p()
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if p:
                    v %= p
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def divide_exact(self, other: Polynomial) -> Polynomial:
        """Exact division by ``other``; raises ``ValueError`` if it leaves a remainder."""
        other = self._check(other)
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        field = self.ring.field
        key = self.ring.order.key
        lm_o, lc_o = other.lm, other.lc
        inv = field.inv(lc_o)
        rem = self
        q = self.ring.zero()
        while rem:
            e, c = max(rem.coeffs.items(), key=lambda t: key(t[0]))
            if any(a < b for a, b in zip(e, lm_o)):
                raise ValueError("division leaves a remainder")
            qe = tuple(a - b for a, b in zip(e, lm_o))
            coef = field(c * inv)
            q = q + self.ring.monomial(qe, coef)
            rem = rem - other.mul_term(qe, coef)
        return q

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == self.ring.constant(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.coeffs.items())))

    def __str__(self):
        from .parsing import format_polynomial

        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({self})"


def random_homogeneous_form(ring: PolynomialRing, degree: int, seed: int) -> Polynomial:
    """Random form of the given degree, reproducible for a fixed seed.

    Coefficients are uniform in F_p, or small integers in [-10, 10] over Q.
    """
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    rng = random.Random(seed)
    field = ring.field
    coeffs = {}
    for e in monomials_of_degree(ring.nvars, degree):
        if isinstance(field, PrimeField):
            c = field.random_element(rng)
        else:
            c = field.random_element(rng, 10)
        if c:
            coeffs[e] = field(c)
    if not coeffs:
        # all-zero draw: fall back to the first monomial so the form is nonzero
        e = next(monomials_of_degree(ring.nvars, degree))
        coeffs[e] = field.one
    return Polynomial(ring, coeffs)


__all__ = [
    "MixedRingError",
    "Polynomial",
    "PolynomialRing",
    "PrimeField",
    "RationalField",
    "monomials_of_degree",
    "random_homogeneous_form",
]
