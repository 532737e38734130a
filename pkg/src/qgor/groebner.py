"""Buchberger engine for ideals and submodules of graded free modules.

Module elements are plain dicts ``{term: coefficient}`` whose keys are
packed terms (see :mod:`qgor.monomials`); an ideal is a submodule of the
rank-one free module. Terms are compared position-over-term: a lower
position index is larger, then the ring's monomial order decides. That
makes the order an elimination order for any leading block of positions,
which is how syzygies are extracted.
"""

from __future__ import annotations

import heapq

from .monomials import Packing, key_span, order_int_key
from .poly import MixedRingError, Polynomial, PolynomialRing

_PACKINGS: dict[int, Packing] = {}


def packing_for(ring: PolynomialRing) -> Packing:
    pk = _PACKINGS.get(ring.nvars)
    if pk is None:
        pk = _PACKINGS[ring.nvars] = Packing(ring.nvars)
    return pk


class TermOrder:
    """Position-over-term order; ``negkey`` is smaller for larger terms."""

    __slots__ = ("order", "pk", "span", "_neg")

    def __init__(self, ring: PolynomialRing):
        self.order = ring.order
        self.pk = packing_for(ring)
        self.span = key_span(ring.order, ring.nvars)
        self._neg = {}

    def negkey(self, t: int) -> int:
        k = self._neg.get(t)
        if k is None:
            pos, e = self.pk.unpack(t)
            k = pos * self.span - order_int_key(self.order, e)
            self._neg[t] = k
        return k

    def leading(self, v: dict) -> int:
        return min(v, key=self.negkey)

    def sorted_terms(self, v: dict):
        return sorted(v.items(), key=lambda item: self.negkey(item[0]))


_ORDERS: dict = {}


def term_order(ring: PolynomialRing) -> TermOrder:
    # shared per (nvars, order) so the key cache survives across calls
    k = (ring.nvars, ring.order)
    t = _ORDERS.get(k)
    if t is None:
        if len(_ORDERS) > 64:
            _ORDERS.clear()
        t = _ORDERS[k] = TermOrder(ring)
    elif len(t._neg) > 2_000_000:
        t._neg.clear()
    return t


def vector_degree(v: dict, pk: Packing, twists):
    """Degree of a homogeneous vector, ``None`` for the zero vector."""
    for t in v:
        return pk.degree(t) + twists[pk.pos(t)]
    return None


def is_homogeneous_vector(v: dict, pk: Packing, twists) -> bool:
    return len({pk.degree(t) + twists[pk.pos(t)] for t in v}) <= 1


class _Reducer:
    """Normal-form service over a growing list of monic elements."""

    def __init__(self, field, tord: TermOrder):
        self.field = field
        self.p = field.characteristic
        self.tord = tord
        self.pk = tord.pk
        self.polys = []
        self.lms = []

    def add(self, v: dict) -> int:
        self.polys.append(v)
        self.lms.append(self.tord.leading(v))
        return len(self.polys) - 1

    def find_divisor(self, m: int, active):
        lms = self.lms
        shift = self.pk.posshift
        g = self.pk.guard
        mp = m >> shift
        mg = m | g
        for gi in active:
            a = lms[gi]
            if (a >> shift) == mp and ((mg - a) & g) == g:
                return gi
        return None

    def reduce(self, f: dict, active, full: bool = True) -> dict:
        """Normal form of ``f`` modulo the elements indexed by ``active``."""
        if not f or not active:
            return dict(f)
        p = self.p
        negkey = self.tord.negkey
        polys, lms = self.polys, self.lms
        shift = self.pk.posshift
        g = self.pk.guard
        act = [(lms[i] >> shift, lms[i], i) for i in active]
        f = dict(f)
        heap = [(negkey(m), m) for m in f]
        heapq.heapify(heap)
        rem = {}
        pop, push = heapq.heappop, heapq.heappush
        while heap:
            m = pop(heap)[1]
            c = f.get(m)
            if c is None:
                continue
            mp = m >> shift
            mg = m | g
            gi = -1
            for ap, a, i in act:
                if ap == mp and ((mg - a) & g) == g:
                    gi = i
                    break
            if gi < 0:
                rem[m] = f.pop(m)
                if not full:
                    rem.update(f)
                    return rem
                continue
            del f[m]
            gm = lms[gi]
            q = m - gm
            if p:
                for t, gc in polys[gi].items():
                    if t == gm:
                        continue
                    nm = t + q
                    old = f.get(nm)
                    if old is None:
                        f[nm] = (-c * gc) % p
                        push(heap, (negkey(nm), nm))
                    else:
                        v = (old - c * gc) % p
                        if v:
                            f[nm] = v
                        else:
                            del f[nm]
            else:
                for t, gc in polys[gi].items():
                    if t == gm:
                        continue
                    nm = t + q
                    old = f.get(nm)
                    if old is None:
                        f[nm] = -c * gc
                        push(heap, (negkey(nm), nm))
                    else:
                        v = old - c * gc
                        if v:
                            f[nm] = v
                        else:
                            del f[nm]
        return rem

    def monic(self, v: dict) -> dict:
        lm = self.tord.leading(v)
        c = v[lm]
        if c == 1:
            return v
        inv = self.field.inv(c)
        p = self.p
        if p:
            return {m: x * inv % p for m, x in v.items()}
        return {m: x * inv for m, x in v.items()}


def _shift(v: dict, q: int) -> dict:
    return {t + q: c for t, c in v.items()}


def _sub_into(f: dict, g: dict, p) -> dict:
    for m, x in g.items():
        v = f.get(m, 0) - x
        if p:
            v %= p
        if v:
            f[m] = v
        else:
            f.pop(m, None)
    return f


def buchberger(gens, ring: PolynomialRing, rank: int | None = None, twists=None):
    """Reduced Groebner basis: monic dicts, ascending by leading term.

    Under grevlex pairs are taken smallest sugar degree first with full
    reduction. Under lex and block orders the smallest lcm goes first and
    only leading terms are reduced until the end. The Gebauer-Moeller
    criteria prune pairs, and the coprime-leading-term criterion is used
    only in rank one where it is valid.
    """
    gens = [g for g in gens if g]
    if not gens:
        return []
    tord = term_order(ring)
    pk = tord.pk
    if rank is None:
        rank = 1 + max(pk.pos(t) for g in gens for t in g)
    if twists is None:
        twists = (0,) * rank
    ideal_mode = rank == 1
    # tails reduced against an incomplete basis can explode in degree when
    # the order is not degree-compatible, so those only top-reduce
    full = ring.order.degree_compatible
    red = _Reducer(ring.field, tord)
    p = red.p
    lms = red.lms
    sugar = []
    G = []
    B = []  # [sugar, negkey(lcm), i, j, lcm]

    def deg(t):
        return pk.degree(t) + twists[t >> pk.posshift]

    def update(h):
        lm_h = lms[h]
        ph = pk.pos(lm_h)
        C = [g for g in G if pk.pos(lms[g]) == ph]
        lc_h = {g: pk.lcm(lm_h, lms[g]) for g in C}
        D = []
        while C:
            g1 = C.pop()
            l1 = lc_h[g1]
            if ideal_mode and pk.coprime(lm_h, lms[g1]):
                D.append(g1)
                continue
            if any(pk.divides(lc_h[g2], l1) for g2 in C) or any(
                pk.divides(lc_h[g2], l1) for g2 in D
            ):
                continue
            D.append(g1)
        new_pairs = []
        for g in D:
            if ideal_mode and pk.coprime(lm_h, lms[g]):
                continue
            lc = lc_h[g]
            dl = pk.degree(lc)
            s = max(sugar[g] + dl - pk.degree(lms[g]), sugar[h] + dl - pk.degree(lm_h))
            new_pairs.append([s, tord.negkey(lc), g, h, lc])
        kept = []
        for pair in B:
            g1, g2, l12 = pair[2], pair[3], pair[4]
            if (
                pk.divides(lm_h, l12)
                and pk.lcm(lms[g1], lm_h) != l12
                and pk.lcm(lms[g2], lm_h) != l12
            ):
                continue
            kept.append(pair)
        B[:] = kept + new_pairs
        G[:] = [g for g in G if not pk.divides(lm_h, lms[g])] + [h]

    def insert(v, s):
        v = red.monic(v)
        h = red.add(v)
        sugar.append(max(s, max(deg(m) for m in v)))
        update(h)

    for g in sorted(gens, key=lambda v: (max(deg(m) for m in v), tord.negkey(tord.leading(v)))):
        h = red.reduce(g, G, full)
        if h:
            insert(h, max(deg(m) for m in g))

    while B:
        if full:
            best = min(range(len(B)), key=lambda i: (B[i][0], B[i][1]))
        else:
            best = max(range(len(B)), key=lambda i: (B[i][1], -B[i][0]))
        s, _, i, j, lc = B.pop(best)
        spoly = _sub_into(_shift(red.polys[i], lc - lms[i]), _shift(red.polys[j], lc - lms[j]), p)
        h = red.reduce(spoly, G, full)
        if h:
            insert(h, s)

    # G is minimal; reduce tails (depends only on leading terms, so
    # reducing against not-yet-reduced siblings is fine)
    final = []
    for gi in G:
        others = [g for g in G if g != gi]
        v = red.polys[gi]
        lm = lms[gi]
        tail = red.reduce({m: c for m, c in v.items() if m != lm}, others)
        tail[lm] = v[lm]
        final.append(tail)
    final.sort(key=lambda v: tord.negkey(tord.leading(v)), reverse=True)
    return final


class ModuleGB:
    """Reduced Groebner basis of a submodule of ``S^rank`` (position-over-term)."""

    def __init__(self, ring: PolynomialRing, rank: int, elements, twists=None):
        self.ring = ring
        self.rank = rank
        self.twists = tuple(twists) if twists is not None else (0,) * rank
        self.elements = list(elements)
        self._tord = term_order(ring)
        self._red = _Reducer(ring.field, self._tord)
        for v in self.elements:
            self._red.add(v)
        self._active = list(range(len(self.elements)))

    @classmethod
    def compute(cls, gens, ring, rank, twists=None):
        return cls(ring, rank, buchberger(gens, ring, rank, twists), twists)

    def reduce(self, v: dict) -> dict:
        return self._red.reduce(v, self._active)

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)

    def leading_terms(self) -> list[int]:
        return list(self._red.lms)

    def __len__(self):
        return len(self.elements)


def module_buchberger_certificate(mgb: ModuleGB) -> bool:
    """Re-check that every S-pair of an emitted basis reduces to zero."""
    red = mgb._red
    pk = red.pk
    n = len(mgb.elements)
    for i in range(n):
        for j in range(i + 1, n):
            li, lj = red.lms[i], red.lms[j]
            if pk.pos(li) != pk.pos(lj):
                continue
            lc = pk.lcm(li, lj)
            s = _sub_into(_shift(red.polys[i], lc - li), _shift(red.polys[j], lc - lj), red.p)
            if mgb.reduce(s):
                return False
    return True


# ---------------------------------------------------------------------------
# conversions

def poly_to_vec(f: Polynomial, pos: int = 0) -> dict:
    pk = packing_for(f.ring)
    return {pk.pack(e, pos): c for e, c in f.coeffs.items()}


def vec_to_poly(v: dict, ring: PolynomialRing, pos: int = 0) -> Polynomial:
    pk = packing_for(ring)
    out = {}
    for t, c in v.items():
        q, e = pk.unpack(t)
        if q == pos:
            out[e] = c
    return Polynomial(ring, out)


def vector_from_polys(polys) -> dict:
    out = {}
    for pos, f in enumerate(polys):
        out.update(poly_to_vec(f, pos))
    return out


def polys_from_vector(v: dict, ring: PolynomialRing, rank: int) -> list[Polynomial]:
    pk = packing_for(ring)
    parts = [dict() for _ in range(rank)]
    for t, c in v.items():
        q, e = pk.unpack(t)
        parts[q][e] = c
    return [Polynomial(ring, d) for d in parts]


# ---------------------------------------------------------------------------
# ideal-level surface

class GroebnerBasis:
    """Reduced Groebner basis of an ideal: monic, inter-reduced, sorted by
    ascending leading monomial. Equal ideals give equal bases."""

    def __init__(self, ring: PolynomialRing, polys):
        self.ring = ring
        self.order = ring.order
        self.polys = tuple(polys)
        self.reduced = True
        self._mgb = ModuleGB(ring, 1, [poly_to_vec(f) for f in self.polys])

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def __getitem__(self, i):
        return self.polys[i]

    def __eq__(self, other):
        return (
            isinstance(other, GroebnerBasis)
            and self.ring == other.ring
            and self.polys == other.polys
        )

    def __hash__(self):
        return hash((self.ring, self.polys))

    def leading_monomials(self) -> list[tuple]:
        return [f.lm for f in self.polys]

    def normal_form(self, f: Polynomial) -> Polynomial:
        if f.ring != self.ring:
            raise MixedRingError("polynomial and basis live in different rings")
        return vec_to_poly(self._mgb.reduce(poly_to_vec(f)), self.ring)

    def contains(self, f: Polynomial) -> bool:
        return not self.normal_form(f)

    def is_unit_ideal(self) -> bool:
        return any(f.is_constant() for f in self.polys)

    def is_buchberger_complete(self) -> bool:
        return module_buchberger_certificate(self._mgb)

    def __repr__(self):
        return f"GroebnerBasis([{', '.join(str(f) for f in self.polys)}])"


def reduced_gb(gens, ring: PolynomialRing) -> GroebnerBasis:
    vecs = []
    for f in gens:
        if f.ring != ring:
            raise MixedRingError("generator from a different ring")
        if f:
            vecs.append(poly_to_vec(f))
    basis = buchberger(vecs, ring, 1)
    return GroebnerBasis(ring, [vec_to_poly(v, ring) for v in basis])


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    return G.normal_form(f)


# ---------------------------------------------------------------------------
# modules and syzygies

def module_gb(gens, ring: PolynomialRing, rank: int, twists=None, quotient_ideal=None) -> ModuleGB:
    """Groebner basis of the submodule of ``S^rank`` spanned by ``gens``.

    With ``quotient_ideal`` (polynomials generating I) the vectors
    ``g*e_j`` for g in I are adjoined, so the basis describes the image
    submodule of ``(S/I)^rank``.
    """
    pk = packing_for(ring)
    gens = [dict(v) for v in gens]
    for v in gens:
        for t in v:
            if pk.pos(t) >= rank:
                raise ValueError(f"vector has position {pk.pos(t)} outside rank {rank}")
    if quotient_ideal:
        for j in range(rank):
            for g in quotient_ideal:
                if g:
                    gens.append(poly_to_vec(g, j))
    return ModuleGB.compute(gens, ring, rank, twists)


def syzygy_basis(columns, ring: PolynomialRing, rank: int, twists=None, source_twists=None,
                 quotient_ideal=None):
    """Generators of the syzygy module of ``columns`` (vectors in ``S^rank``).

    Returns vectors ``u`` in ``S^k`` (k = number of columns) with
    ``sum u_i * columns[i] == 0`` in S^rank, or in ``(S/I)^rank`` when
    ``quotient_ideal`` is given. Computed from a position-over-term basis of
    the graph module spanned by ``(c_i, e_i)``, which eliminates the
    target block.
    """
    pk = packing_for(ring)
    k = len(columns)
    if twists is None:
        twists = (0,) * rank
    if source_twists is None:
        source_twists = []
        for c in columns:
            d = vector_degree(c, pk, twists)
            source_twists.append(0 if d is None else d)
    big_twists = tuple(twists) + tuple(source_twists)
    one = ring.field.one
    gens = []
    for i, c in enumerate(columns):
        v = dict(c)
        v[pk.pack((0,) * ring.nvars, rank + i)] = one
        gens.append(v)
    if quotient_ideal:
        for j in range(rank):
            for g in quotient_ideal:
                if g:
                    gens.append(poly_to_vec(g, j))
    basis = buchberger(gens, ring, rank + k, big_twists)
    shift = pk.posshift
    off = rank << shift
    syz = []
    for v in basis:
        if all((t >> shift) >= rank for t in v):
            syz.append({t - off: c for t, c in v.items()})
    return syz


def apply_matrix(columns, u: dict, ring: PolynomialRing) -> dict:
    """``sum_i u_i * columns[i]`` for a coefficient vector ``u``."""
    pk = packing_for(ring)
    p = ring.field.characteristic
    out = {}
    for t, c in u.items():
        i = pk.pos(t)
        mono = pk.monomial_part(t)
        for ct, cc in columns[i].items():
            m = ct + mono
            v = out.get(m, 0) + c * cc
            if p:
                v %= p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def vec_add(a: dict, b: dict, p: int, scale=1) -> dict:
    out = dict(a)
    for m, x in b.items():
        v = out.get(m, 0) + scale * x
        if p:
            v %= p
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def vec_scale(v: dict, c, p: int) -> dict:
    if p:
        c %= p
        return {m: x * c % p for m, x in v.items()} if c else {}
    return {m: x * c for m, x in v.items()} if c else {}


def vec_mul_poly(v: dict, f: Polynomial) -> dict:
    """Multiply a module vector by a polynomial."""
    pk = packing_for(f.ring)
    p = f.ring.field.characteristic
    fm = [(pk.pack(e), c) for e, c in f.coeffs.items()]
    out = {}
    for t, c in v.items():
        for m0, fc in fm:
            m = t + m0
            x = out.get(m, 0) + c * fc
            if p:
                x %= p
            if x:
                out[m] = x
            else:
                out.pop(m, None)
    return out


def vec_shift_pos(v: dict, ring: PolynomialRing, offset: int) -> dict:
    pk = packing_for(ring)
    d = offset << pk.posshift
    return {t + d: c for t, c in v.items()}
