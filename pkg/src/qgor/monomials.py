"""Bit-packed module terms for the Groebner kernel.

A term ``x^e * e_pos`` is one Python int laid out (low to high) as
``e_1 | e_2 | ... | e_n | deg | pos`` with 16-bit fields. Multiplying by a
monomial is integer addition, and divisibility is a masked subtraction
using the top bit of each field as a borrow guard, so exponents must stay
below 2**15.
"""

from __future__ import annotations

W = 16
FIELD = (1 << W) - 1
MAX_EXPONENT = (1 << (W - 1)) - 1

_KEY_BASE = 1 << 24
_KEY_OFFSET = 1 << 22


class Packing:
    __slots__ = ("n", "degshift", "posshift", "guard", "expmask")

    def __init__(self, nvars: int):
        self.n = nvars
        self.degshift = W * nvars
        self.posshift = W * (nvars + 1)
        g = 0
        for i in range(nvars + 1):
            g |= 1 << (W * i + W - 1)
        self.guard = g
        self.expmask = (1 << self.posshift) - 1

    def pack(self, e, pos: int = 0) -> int:
        t = 0
        d = 0
        for i, x in enumerate(e):
            if x > MAX_EXPONENT:
                raise OverflowError(f"exponent {x} exceeds {MAX_EXPONENT}")
            t |= x << (W * i)
            d += x
        return t | (d << self.degshift) | (pos << self.posshift)

    def unpack(self, t: int):
        e = tuple((t >> (W * i)) & FIELD for i in range(self.n))
        return t >> self.posshift, e

    def exps(self, t: int) -> tuple:
        return tuple((t >> (W * i)) & FIELD for i in range(self.n))

    def pos(self, t: int) -> int:
        return t >> self.posshift

    def degree(self, t: int) -> int:
        return (t >> self.degshift) & FIELD

    def monomial_part(self, t: int) -> int:
        return t & self.expmask

    def with_pos(self, t: int, pos: int) -> int:
        return (t & self.expmask) | (pos << self.posshift)

    def divides(self, a: int, b: int) -> bool:
        if (a >> self.posshift) != (b >> self.posshift):
            return False
        g = self.guard
        return ((b | g) - a) & g == g

    def lcm(self, a: int, b: int) -> int:
        pa, ea = self.unpack(a)
        return self.pack(tuple(max(x, y) for x, y in zip(ea, self.exps(b))), pa)

    def coprime(self, a: int, b: int) -> bool:
        return not any(x and y for x, y in zip(self.exps(a), self.exps(b)))


def order_int_key(order, e) -> int:
    """Encode ``order.key(e)`` as one int with the same comparison result."""
    k = 0
    for c in order.key(e):
        k = k * _KEY_BASE + (c + _KEY_OFFSET)
    return k


def key_span(order, n: int) -> int:
    return _KEY_BASE ** len(order.key((0,) * n))
