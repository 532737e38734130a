"""Monomial orders on exponent vectors.

Every order is realised by a sort key: ``a > b`` in the order exactly when
``order.key(a) > order.key(b)`` as Python tuples. Keys are flat integer
tuples so comparisons stay cheap inside the Groebner kernel.
"""

from __future__ import annotations

from dataclasses import dataclass


def _grevlex_key(e):
    return (sum(e),) + tuple(-x for x in reversed(e))


@dataclass(frozen=True)
class MonomialOrder:
    """``lex``, ``grevlex`` or ``block`` (grevlex on the first ``block``
    variables, then grevlex on the rest; eliminates the first block)."""

    kind: str = "grevlex"
    block: int = 0

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "block" and self.block < 1:
            raise ValueError("block order needs a positive block size")

    def key(self, e: tuple) -> tuple:
        if self.kind == "grevlex":
            return _grevlex_key(e)
        if self.kind == "lex":
            return tuple(e)
        k = self.block
        return _grevlex_key(e[:k]) + _grevlex_key(e[k:])

    @property
    def degree_compatible(self) -> bool:
        return self.kind == "grevlex"

    def compare(self, a: tuple, b: tuple) -> int:
        """Return 1, 0 or -1 as ``a`` is greater than, equal to, or less than ``b``."""
        if len(a) != len(b):
            raise ValueError(f"exponent vectors of different lengths: {len(a)} vs {len(b)}")
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def __str__(self):
        return f"block({self.block})" if self.kind == "block" else self.kind


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def block_order(k: int) -> MonomialOrder:
    return MonomialOrder("block", k)


def compare_monomials(a: tuple, b: tuple, order: MonomialOrder) -> int:
    return order.compare(a, b)
