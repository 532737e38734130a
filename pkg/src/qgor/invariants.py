"""Invariants read off leading-term ideals: dimension, Hilbert functions,
lengths, minimal generator counts and socles of Artinian quotients."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .groebner import packing_for
from .ideals import IdealHandle, colon, maximal_ideal


class NotArtinianError(ValueError):
    pass


class InhomogeneousError(ValueError):
    pass


def _lead_packed(J: IdealHandle):
    pk = packing_for(J.ring)
    return pk, [pk.pack(e) for e in J.gb().leading_monomials()]


def krull_dimension(J: IdealHandle) -> int:
    """dim S/J as the largest set of variables carrying no leading monomial.

    The unit ideal gets -1.
    """
    G = J.gb()
    n = J.ring.nvars
    if G.is_unit_ideal():
        return -1
    supports = set()
    for e in G.leading_monomials():
        supports.add(sum(1 << i for i, k in enumerate(e) if k))
    # drop supports containing another one; they add no constraint
    minimal = [s for s in supports if not any(t != s and t & s == t for t in supports)]
    for size in range(n, -1, -1):
        for V in combinations(range(n), size):
            mask = sum(1 << i for i in V)
            if all(s & ~mask for s in minimal):
                return size
    return 0


def is_m_primary(J: IdealHandle) -> bool:
    """Every variable has a pure power among the leading monomials (J proper)."""
    G = J.gb()
    if G.is_unit_ideal():
        return False
    seen = set()
    for e in G.leading_monomials():
        support = [i for i, k in enumerate(e) if k]
        if len(support) == 1:
            seen.add(support[0])
    return len(seen) == J.ring.nvars


def _is_finite_length(J: IdealHandle) -> bool:
    return J.gb().is_unit_ideal() or is_m_primary(J)


def standard_monomials_by_degree(J: IdealHandle, max_degree: int | None = None):
    """Yield ``(e, [exponent vectors of degree e outside in(J)])`` for e = 0, 1, ...

    Stops at ``max_degree`` or at the first empty degree. Standard monomials
    form an order ideal, so each layer is built from the one below.
    """
    pk, leads = _lead_packed(J)
    n = J.ring.nvars
    divides = pk.divides

    def standard(t):
        return not any(divides(m, t) for m in leads)

    one = pk.pack((0,) * n)
    layer = [one] if standard(one) else []
    var_steps = [pk.pack(tuple(1 if j == i else 0 for j in range(n))) for i in range(n)]
    e = 0
    while True:
        yield e, [pk.exps(t) for t in layer]
        if not layer or (max_degree is not None and e >= max_degree):
            return
        nxt = set()
        for t in layer:
            for v in var_steps:
                u = t + v
                if u not in nxt and standard(u):
                    nxt.add(u)
        layer = sorted(nxt)
        e += 1


@dataclass
class HilbertTable:
    """Values of the Hilbert function of S/J up to ``bound``."""

    values: dict = field(default_factory=dict)
    bound: int = 0
    artinian: bool = False

    @property
    def total(self) -> int | None:
        return sum(self.values.values()) if self.artinian else None

    def __getitem__(self, e: int) -> int:
        if e > self.bound and not self.artinian:
            raise KeyError(f"degree {e} is beyond the computed bound {self.bound}")
        return self.values.get(e, 0)

    def as_list(self) -> list[int]:
        return [self.values.get(e, 0) for e in range(self.bound + 1)]


def hilbert_table(J: IdealHandle, bound: int | None = None) -> HilbertTable:
    """Hilbert function of S/J in degrees 0..bound (all degrees when Artinian)."""
    artinian = _is_finite_length(J)
    if bound is None and not artinian:
        raise ValueError("a degree bound is required when S/J is not Artinian")
    values = {}
    for e, layer in standard_monomials_by_degree(J, bound):
        if layer:
            values[e] = len(layer)
    if bound is None:
        bound = max(values, default=0)
    return HilbertTable(values, bound, artinian)


def hilbert_value(J: IdealHandle, e: int) -> int:
    for d, layer in standard_monomials_by_degree(J, e):
        if d == e:
            return len(layer)
    return 0


def vdim_artinian(J: IdealHandle) -> int:
    """vdim_K S/J as the number of standard monomials."""
    if not _is_finite_length(J):
        raise NotArtinianError("S/J is not Artinian")
    return sum(len(layer) for _, layer in standard_monomials_by_degree(J))


def mu_homogeneous(J: IdealHandle, context: IdealHandle | None = None) -> int:
    """Minimal number of generators of J/I over R = S/I, by Nakayama degree by degree.

    In each degree e the count is HF(S/(mJ + I))(e) - HF(S/J)(e).
    """
    ring = J.ring
    if not J.is_homogeneous() or (context is not None and not context.is_homogeneous()):
        raise InhomogeneousError("minimal generator counts need homogeneous input")
    base = context.gens if context is not None else ()
    Jfull = IdealHandle(ring, tuple(J.gens) + tuple(base))
    if Jfull.is_zero():
        return 0
    top = max(g.degree() for g in Jfull.gens)
    mJ = IdealHandle(ring, [x * g for x in ring.gens() for g in Jfull.gens] + list(base))
    hj = hilbert_table(Jfull, top).as_list()
    hm = hilbert_table(mJ, top).as_list()
    return sum(a - b for a, b in zip(hm, hj))


def socle_ideal(a: IdealHandle) -> IdealHandle:
    """``a : m``."""
    return colon(a, maximal_ideal(a.ring))


def socle_dimension(a: IdealHandle, context: IdealHandle | None = None) -> int:
    """vdim of Soc(S/a) as vdim S/a - vdim S/(a:m)."""
    if context is not None:
        a = IdealHandle(a.ring, tuple(a.gens) + tuple(context.gens))
    if not is_m_primary(a):
        raise NotArtinianError("socle dimension needs an m-primary ideal")
    return vdim_artinian(a) - vdim_artinian(socle_ideal(a))


@dataclass
class IrreducibilityCertificate:
    socle_dimension: int
    mu: int
    mu_colon: int
    # whether mu(a:m) == mu(a) + 1; reported, the socle count decides
    mu_identity: bool

    @property
    def criteria_agree(self) -> bool:
        return self.mu_identity == (self.socle_dimension == 1)


def is_irreducible_mprimary(a: IdealHandle, context: IdealHandle | None = None):
    """Irreducibility of an m-primary ideal of R, with the generator-count cross-check.

    Returns ``(verdict, certificate)``. The verdict is socle dimension 1.
    The count identity mu(a:m) = mu(a) + 1 is recorded alongside; it can
    disagree when a minimal generator of a is a variable times a socle
    element (for instance a = (x, y^2)), so it never overrides the socle.
    """
    if context is not None:
        a = IdealHandle(a.ring, tuple(a.gens) + tuple(context.gens))
    if not is_m_primary(a):
        raise NotArtinianError("irreducibility test needs an m-primary ideal")
    s = vdim_artinian(a) - vdim_artinian(socle_ideal(a))
    mu_a = mu_homogeneous(a, context)
    mu_c = mu_homogeneous(socle_ideal(a), context)
    cert = IrreducibilityCertificate(s, mu_a, mu_c, mu_c == mu_a + 1)
    return s == 1, cert
