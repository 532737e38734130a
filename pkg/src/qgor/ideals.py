"""Ideal arithmetic in S; ideals of R = S/I are S-ideals containing I."""

from __future__ import annotations

from .groebner import GroebnerBasis, reduced_gb
from .orders import MonomialOrder, block_order
from .poly import MixedRingError, Polynomial, PolynomialRing


class IdealHandle:
    """Generators plus a lazily computed, cached reduced Groebner basis."""

    def __init__(self, ring: PolynomialRing, gens=()):
        self.ring = ring
        out = []
        for g in gens:
            g = ring.coerce(g)
            if g:
                out.append(g)
        self.gens = tuple(out)
        self._gb = None

    @classmethod
    def from_gb(cls, G: GroebnerBasis) -> IdealHandle:
        J = cls(G.ring, G.polys)
        J._gb = G
        return J

    def gb(self) -> GroebnerBasis:
        if self._gb is None:
            self._gb = reduced_gb(self.gens, self.ring)
        return self._gb

    @property
    def is_gb_cached(self) -> bool:
        return self._gb is not None

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.gens)

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return self.gb().is_unit_ideal()

    def contains(self, f) -> bool:
        f = self.ring.coerce(f)
        return self.gb().contains(f)

    def __contains__(self, f):
        return self.contains(f)

    def normal_form(self, f) -> Polynomial:
        return self.gb().normal_form(self.ring.coerce(f))

    def contains_ideal(self, other: IdealHandle) -> bool:
        _same_ring(self, other)
        return all(self.contains(g) for g in other.gens)

    def __le__(self, other: IdealHandle) -> bool:
        return other.contains_ideal(self)

    def __eq__(self, other):
        if not isinstance(other, IdealHandle):
            return NotImplemented
        return ideal_equal(self, other)

    __hash__ = None

    def __add__(self, other):
        if isinstance(other, IdealHandle):
            return combine("sum", self, other)
        return combine("sum", self, IdealHandle(self.ring, other))

    def __mul__(self, other):
        return combine("product", self, other)

    def __pow__(self, k: int):
        return combine("power", self, k)

    def max_degree(self) -> int:
        return max((g.degree() for g in self.gens), default=0)

    def basis_strings(self) -> list[str]:
        """Reduced basis as text, largest leading monomial first."""
        return [str(f) for f in reversed(self.gb().polys)]

    def __repr__(self):
        return f"IdealHandle({', '.join(str(g) for g in self.gens) or '0'})"


def _same_ring(A, B):
    if A.ring != B.ring:
        raise MixedRingError(f"ideals live in {A.ring!r} and {B.ring!r}")


def ideal(ring: PolynomialRing, *gens) -> IdealHandle:
    if len(gens) == 1 and isinstance(gens[0], (list, tuple)):
        gens = gens[0]
    return IdealHandle(ring, gens)


def maximal_ideal(ring: PolynomialRing) -> IdealHandle:
    return IdealHandle(ring, ring.gens())


def unit_ideal(ring: PolynomialRing) -> IdealHandle:
    return IdealHandle(ring, [ring.one()])


def combine(op: str, A: IdealHandle, B) -> IdealHandle:
    """``sum`` and ``product`` of two ideals, or ``power`` of A by an int."""
    if op == "power":
        k = int(B)
        if k < 0:
            raise ValueError("negative ideal power")
        result = unit_ideal(A.ring)
        for _ in range(k):
            result = combine("product", result, A)
        return result
    _same_ring(A, B)
    if op == "sum":
        return IdealHandle(A.ring, A.gens + B.gens)
    if op == "product":
        return IdealHandle(A.ring, [a * b for a in A.gens for b in B.gens])
    raise ValueError(f"unknown ideal operation {op!r}")


def ideal_equal(A: IdealHandle, B: IdealHandle) -> bool:
    _same_ring(A, B)
    return A.gb().polys == B.gb().polys


# ---------------------------------------------------------------------------
# elimination

def _extended_ring(ring: PolynomialRing, new_vars, order: MonomialOrder) -> PolynomialRing:
    names = list(new_vars)
    taken = set(ring.variables)
    fixed = []
    for v in names:
        while v in taken:
            v = v + "_"
        taken.add(v)
        fixed.append(v)
    return PolynomialRing(ring.field, tuple(fixed) + ring.variables, order)


def _embed(f: Polynomial, target: PolynomialRing, k: int) -> Polynomial:
    z = (0,) * k
    return Polynomial(target, {z + e: c for e, c in f.coeffs.items()})


def _project(f: Polynomial, source_k: int, ring: PolynomialRing) -> Polynomial:
    return Polynomial(ring, {e[source_k:]: c for e, c in f.coeffs.items()})


def eliminate(A: IdealHandle, variables) -> IdealHandle:
    """``A`` intersected with the subring generated by the other variables."""
    ring = A.ring
    names = [v if isinstance(v, str) else ring.variables[v] for v in variables]
    if not names:
        raise ValueError("nothing to eliminate")
    if set(names) >= set(ring.variables):
        raise ValueError("cannot eliminate every variable")
    for v in names:
        ring.index(v)
    keep = [v for v in ring.variables if v not in names]
    perm = [ring.index(v) for v in names] + [ring.index(v) for v in keep]
    T = PolynomialRing(ring.field, tuple(names) + tuple(keep), block_order(len(names)))
    gens = [Polynomial(T, {tuple(e[i] for i in perm): c for e, c in g.coeffs.items()}) for g in A.gens]
    G = reduced_gb(gens, T)
    k = len(names)
    inv = [0] * ring.nvars
    for j, i in enumerate(perm):
        inv[i] = j
    out = []
    for g in G:
        if all(not any(e[:k]) for e in g.coeffs):
            out.append(Polynomial(ring, {tuple(e[inv[i]] for i in range(ring.nvars)): c for e, c in g.coeffs.items()}))
    return IdealHandle(ring, out)


def intersect(A: IdealHandle, B: IdealHandle) -> IdealHandle:
    """``A ∩ B`` as the t-free part of ``t*A + (1-t)*B``."""
    _same_ring(A, B)
    ring = A.ring
    if A.is_zero() or B.is_zero():
        return IdealHandle(ring, [])
    T = _extended_ring(ring, ["t"], block_order(1))
    t = T.var(0)
    gens = [t * _embed(a, T, 1) for a in A.gens]
    gens += [(1 - t) * _embed(b, T, 1) for b in B.gens]
    G = reduced_gb(gens, T)
    out = [_project(g, 1, ring) for g in G if all(e[0] == 0 for e in g.coeffs)]
    return IdealHandle(ring, out)


def intersect_all(ideals) -> IdealHandle:
    ideals = list(ideals)
    if not ideals:
        raise ValueError("empty intersection")
    result = ideals[0]
    for J in ideals[1:]:
        result = intersect(result, J)
    return result


# ---------------------------------------------------------------------------
# colon and saturation

def colon(A: IdealHandle, f) -> IdealHandle:
    """``A : f`` for a polynomial, or ``A : B`` for an ideal."""
    if isinstance(f, IdealHandle):
        _same_ring(A, f)
        parts = [colon(A, b) for b in f.gens]
        if not parts:
            return unit_ideal(A.ring)
        return intersect_all(parts)
    f = A.ring.coerce(f)
    if not f:
        raise ValueError("colon by the zero polynomial")
    if f.is_constant():
        return IdealHandle(A.ring, A.gens)
    if A.contains(f):
        return unit_ideal(A.ring)
    both = intersect(A, IdealHandle(A.ring, [f]))
    return IdealHandle(A.ring, [g.divide_exact(f) for g in both.gb()])


def colon_product(A: IdealHandle, factors) -> IdealHandle:
    """``A : (f_1 * ... * f_k)`` computed as iterated colons."""
    J = A
    for f in factors:
        J = colon(J, f)
        if J.is_unit():
            break
    return J


def saturate(A: IdealHandle, f, max_steps: int = 1000):
    """``(A : f^∞, k)`` with k minimal such that ``A : f^k == A : f^(k+1)``."""
    if isinstance(f, IdealHandle):
        if f.is_zero():
            raise ValueError("saturation by the zero ideal")
    else:
        f = A.ring.coerce(f)
        if not f:
            raise ValueError("saturation by the zero polynomial")
    J = A
    for k in range(max_steps):
        nxt = colon(J, f)
        if ideal_equal(nxt, J):
            return J, k
        J = nxt
    raise RuntimeError("saturation did not stabilize")
