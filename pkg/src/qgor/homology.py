"""Graded free resolutions, Ext against S and over S/I, annihilators, depth.

Free-module vectors are the packed-term dicts of :mod:`qgor.groebner`.
A matrix is a list of columns; column j is the image of the j-th source
basis vector. Every free module carries degree twists: basis vector j has
degree ``twists[j]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .groebner import (
    ModuleGB,
    apply_matrix,
    buchberger,
    module_gb,
    packing_for,
    poly_to_vec,
    syzygy_basis,
    term_order,
    vec_add,
    vec_scale,
    vec_to_poly,
    vector_degree,
)
from .ideals import IdealHandle, colon, intersect_all
from .poly import Polynomial, PolynomialRing


class ZeroModuleError(ValueError):
    pass


# ---------------------------------------------------------------------------
# vector helpers

def _component(v: dict, r: int, pk) -> dict:
    """Row ``r`` of a column as a position-0 polynomial dict."""
    off = r << pk.posshift
    return {t - off: c for t, c in v.items() if t >> pk.posshift == r}


def _mul(v: dict, f: dict, p: int) -> dict:
    out = {}
    for t, c in v.items():
        for m, fc in f.items():
            u = t + m
            x = out.get(u, 0) + c * fc
            if p:
                x %= p
            if x:
                out[u] = x
            else:
                out.pop(u, None)
    return out


def _drop_row(v: dict, r: int, pk) -> dict:
    """Remove row r (assumed zero) and renumber the rows below it."""
    one = 1 << pk.posshift
    out = {}
    for t, c in v.items():
        q = t >> pk.posshift
        if q > r:
            out[t - one] = c
        elif q < r:
            out[t] = c
    return out


def _unit_entry(v: dict, pk):
    """``(row, coefficient)`` of a nonzero constant entry, else None."""
    mask = pk.expmask
    best = None
    for t, c in v.items():
        if not (t & mask):
            r = t >> pk.posshift
            if best is None or r < best[0]:
                best = (r, c)
    return best


def basis_vector(ring: PolynomialRing, j: int, c=1) -> dict:
    pk = packing_for(ring)
    return {pk.pack((0,) * ring.nvars, j): ring.field(c)}


def _degree(v: dict, pk, twists):
    d = vector_degree(v, pk, twists)
    return 0 if d is None else d


def _echelon_insert(rows: list, v: dict, tord, field, p) -> bool:
    """Reduce ``v`` against an echelon list of monic dict rows (by leading
    term) and append the remainder if nonzero. Returns True if appended."""
    v = dict(v)
    changed = True
    while v and changed:
        changed = False
        for lead, row in rows:
            c = v.get(lead)
            if c:
                v = vec_add(v, row, p, -c)
                changed = True
    if not v:
        return False
    lead = tord.leading(v)
    inv = field.inv(v[lead])
    rows.append((lead, vec_scale(v, inv, p) if p else {t: c * inv for t, c in v.items()}))
    return True


def minimal_generators(vectors, ring: PolynomialRing, rank: int, twists, base=()):
    """A minimal homogeneous generating subset of ``vectors`` modulo ``base``.

    Works degree by degree: candidates of degree e are reduced modulo a
    Groebner basis of the accepted lower-degree generators plus ``base``,
    and then kept only if their normal forms are linearly independent.
    """
    pk = packing_for(ring)
    tord = term_order(ring)
    p = ring.field.characteristic
    cands = [v for v in vectors if v]
    cands.sort(key=lambda v: (_degree(v, pk, twists), tord.negkey(tord.leading(v))))
    accepted = []
    base = [v for v in base if v]
    i = 0
    while i < len(cands):
        e = _degree(cands[i], pk, twists)
        j = i
        while j < len(cands) and _degree(cands[j], pk, twists) == e:
            j += 1
        lower = accepted + base
        mgb = ModuleGB(ring, rank, buchberger(lower, ring, rank, twists), twists) if lower else None
        rows = []
        for v in cands[i:j]:
            nf = mgb.reduce(v) if mgb else dict(v)
            if nf and _echelon_insert(rows, nf, tord, ring.field, p):
                accepted.append(v)
        i = j
    return accepted


# ---------------------------------------------------------------------------
# data types

@dataclass
class ModuleMap:
    """A graded map F_source -> F_target given by its columns."""

    ring: PolynomialRing
    source_twists: tuple
    target_twists: tuple
    columns: list

    @property
    def source_rank(self) -> int:
        return len(self.source_twists)

    @property
    def target_rank(self) -> int:
        return len(self.target_twists)

    def entry(self, r: int, c: int) -> Polynomial:
        return vec_to_poly(self.columns[c], self.ring, r)

    def rows(self) -> list[list[Polynomial]]:
        return [[self.entry(r, c) for c in range(self.source_rank)] for r in range(self.target_rank)]

    def transpose_columns(self) -> list[dict]:
        """Columns of the transpose: row r of this matrix as a vector in F_source."""
        pk = packing_for(self.ring)
        out = [dict() for _ in range(self.target_rank)]
        for c, col in enumerate(self.columns):
            shift = c << pk.posshift
            for t, x in col.items():
                r = t >> pk.posshift
                out[r][(t & pk.expmask) | shift] = x
        return out

    def is_homogeneous(self) -> bool:
        pk = packing_for(self.ring)
        for j, col in enumerate(self.columns):
            for t in col:
                if pk.degree(t) + self.target_twists[pk.pos(t)] != self.source_twists[j]:
                    return False
        return True

    def compose_is_zero(self, other: ModuleMap) -> bool:
        """self * other == 0, with other: F'' -> F_source."""
        return all(not apply_matrix(self.columns, col, self.ring) for col in other.columns)


@dataclass
class ModulePresentation:
    """M = coker(relations: F_1 -> F_0), with F_0 = S^g twisted by ``twists``.

    With ``quotient`` set the module is over S/quotient: the vectors
    quotient * e_j are implicit relations.
    """

    ring: PolynomialRing
    twists: tuple
    relations: list
    quotient: tuple = ()
    minimal: bool = False
    # for Ext modules: the generators as vectors of the ambient dual module
    lifts: list = field(default_factory=list, repr=False)

    @property
    def ngens(self) -> int:
        return len(self.twists)

    @property
    def over_quotient(self) -> bool:
        return bool(self.quotient)

    def is_zero(self) -> bool:
        return self.ngens == 0

    @property
    def mu(self) -> int:
        """Minimal number of generators (after pruning)."""
        return prune(self).ngens

    @classmethod
    def cyclic(cls, ideal: IdealHandle, quotient=()) -> ModulePresentation:
        """S/J, or (S/I)/J when a quotient is given."""
        rels = [poly_to_vec(g) for g in ideal.gens]
        return cls(ideal.ring, (0,), rels, tuple(quotient))

    @classmethod
    def free(cls, ring: PolynomialRing, twists) -> ModulePresentation:
        return cls(ring, tuple(twists), [], minimal=True)

    def all_relations(self) -> list:
        rels = list(self.relations)
        for j in range(self.ngens):
            for g in self.quotient:
                rels.append(poly_to_vec(g, j))
        return rels

    def relation_gb(self) -> ModuleGB:
        return module_gb(self.relations, self.ring, self.ngens, self.twists, self.quotient or None)

    def relation_degrees(self) -> list[int]:
        pk = packing_for(self.ring)
        return [_degree(v, pk, self.twists) for v in self.relations]

    def relation_matrix(self) -> ModuleMap:
        return ModuleMap(self.ring, tuple(self.relation_degrees()), self.twists, list(self.relations))

    def has_unit_entries(self) -> bool:
        pk = packing_for(self.ring)
        return any(_unit_entry(v, pk) for v in self.relations)

    def cyclic_ideal(self) -> IdealHandle:
        if self.ngens != 1:
            raise ValueError("presentation is not cyclic")
        gens = [vec_to_poly(v, self.ring) for v in self.all_relations()]
        return IdealHandle(self.ring, gens)


def prune(M: ModulePresentation) -> ModulePresentation:
    """Minimal presentation: eliminate generators against unit entries of
    the relations, then keep a minimal generating set of the relations."""
    if M.minimal:
        return M
    ring = M.ring
    pk = packing_for(ring)
    p = ring.field.characteristic
    fld = ring.field
    twists = list(M.twists)
    lifts = list(M.lifts)
    rels = [dict(v) for v in M.relations if v]
    while True:
        found = None
        for k, v in enumerate(rels):
            u = _unit_entry(v, pk)
            if u is not None:
                found = (k, u)
                break
        if found is None:
            break
        k, (r, uc) = found
        piv = rels.pop(k)
        inv = fld.inv(uc)
        new = []
        for v in rels:
            f = _component(v, r, pk)
            if f:
                f = {m: -c * inv for m, c in f.items()}
                if p:
                    f = {m: c % p for m, c in f.items()}
                v = vec_add(v, _mul(piv, f, p), p)
            v = _drop_row(v, r, pk)
            if v:
                new.append(v)
        rels = new
        twists.pop(r)
        if lifts:
            lifts.pop(r)
    base = []
    for j in range(len(twists)):
        for g in M.quotient:
            base.append(poly_to_vec(g, j))
    rels = minimal_generators(rels, ring, len(twists), twists, base)
    return ModulePresentation(ring, tuple(twists), rels, M.quotient, True, lifts)


# ---------------------------------------------------------------------------
# resolutions

@dataclass
class ResolutionChain:
    """F_0 <- F_1 <- ... <- F_L with maps[i] : F_{i+1} -> F_i."""

    ring: PolynomialRing
    maps: list
    twists: list  # twists[i] = degrees of the basis of F_i
    complete: bool = False  # True when the resolution reached 0
    quotient: tuple = ()

    @property
    def length(self) -> int:
        return len(self.maps)

    def betti_totals(self) -> list[int]:
        return [len(t) for t in self.twists]

    def graded_betti(self) -> list[dict]:
        out = []
        for tw in self.twists:
            d = {}
            for e in tw:
                d[e] = d.get(e, 0) + 1
            out.append(dict(sorted(d.items())))
        return out

    def betti_rows(self) -> list[str]:
        rows = []
        for i, d in enumerate(self.graded_betti()):
            inner = ", ".join(f"{e}: {c}" for e, c in d.items())
            rows.append(f"{i}: {sum(d.values())} ({inner})")
        return rows

    def is_complex(self) -> bool:
        return all(self.maps[i].compose_is_zero(self.maps[i + 1]) for i in range(len(self.maps) - 1))

    def is_exact(self) -> bool:
        """Image of maps[i+1] equals the kernel of maps[i], by mutual module-GB membership."""
        for i in range(len(self.maps) - 1):
            A, B = self.maps[i], self.maps[i + 1]
            kernel = syzygy_basis(A.columns, self.ring, A.target_rank, A.target_twists,
                                  A.source_twists, self.quotient or None)
            img = module_gb(B.columns, self.ring, B.target_rank, B.target_twists, self.quotient or None)
            ker = module_gb(kernel, self.ring, A.source_rank, A.source_twists, self.quotient or None)
            if not all(img.contains(v) for v in kernel):
                return False
            if not all(ker.contains(v) for v in B.columns):
                return False
        return True

    def is_minimal(self) -> bool:
        pk = packing_for(self.ring)
        return not any(_unit_entry(v, pk) for A in self.maps for v in A.columns)


def _syzygy_step(ring, cols, target_twists, quotient):
    pk = packing_for(ring)
    src = tuple(_degree(v, pk, target_twists) for v in cols)
    syz = syzygy_basis(cols, ring, len(target_twists), target_twists, src, quotient or None)
    base = []
    for j in range(len(cols)):
        for g in quotient:
            base.append(poly_to_vec(g, j))
    return src, minimal_generators(syz, ring, len(cols), src, base)


def free_resolution(M: ModulePresentation, length: int) -> ResolutionChain:
    """Minimal graded free resolution of M up to homological degree ``length``.

    Over a quotient ring the resolution need not terminate; it is truncated.
    """
    if length < 1:
        raise ValueError("resolution length must be at least 1")
    ring = M.ring
    P = prune(M)
    quotient = tuple(M.quotient)
    twists = [tuple(P.twists)]
    maps = []
    cols = list(P.relations)
    complete = False
    while True:
        if not cols:
            complete = True
            break
        src = tuple(_degree(v, packing_for(ring), twists[-1]) for v in cols)
        maps.append(ModuleMap(ring, src, twists[-1], cols))
        twists.append(src)
        if len(maps) >= length:
            break
        _, cols = _syzygy_step(ring, cols, twists[-2], quotient)
    return ResolutionChain(ring, maps, twists, complete, quotient)


# ---------------------------------------------------------------------------
# Ext against S

def _extend(res: ResolutionChain, M: ModulePresentation, length: int) -> ResolutionChain:
    if res.complete or res.length >= length:
        return res
    return free_resolution(M, length)


def ext_module(M: ModulePresentation, i: int, resolution: ResolutionChain | None = None) -> ModulePresentation:
    """Ext^i_S(M, S) as ker(A_{i+1}^T) / im(A_i^T), minimally presented."""
    if i < 0:
        raise ValueError("Ext index must be nonnegative")
    if M.over_quotient:
        raise ValueError("Ext against S needs an S-module presentation")
    ring = M.ring
    res = resolution if resolution is not None else free_resolution(M, i + 1)
    res = _extend(res, M, i + 1)
    if i >= len(res.twists):
        return ModulePresentation(ring, (), [], minimal=True)
    Fi = res.twists[i]
    if not Fi:
        return ModulePresentation(ring, (), [], minimal=True)
    dual_i = tuple(-t for t in Fi)
    pk = packing_for(ring)
    if i < res.length:
        A_next = res.maps[i]  # F_{i+1} -> F_i
        dual_next = tuple(-t for t in A_next.source_twists)
        tcols = A_next.transpose_columns()  # images of F_i* basis in F_{i+1}*
        kernel = syzygy_basis(tcols, ring, len(dual_next), dual_next, dual_i)
        kernel = minimal_generators(kernel, ring, len(Fi), dual_i)
    else:
        kernel = [basis_vector(ring, j) for j in range(len(Fi))]
    if not kernel:
        return ModulePresentation(ring, (), [], minimal=True)
    image = []
    if i >= 1:
        image = res.maps[i - 1].transpose_columns()  # images of F_{i-1}* basis in F_i*
        image = [v for v in image if v]
    g = len(kernel)
    gen_twists = tuple(_degree(v, pk, dual_i) for v in kernel)
    # relations: coefficient vectors c with sum c_j k_j in im(A_i^T)
    cols = kernel + image
    src = gen_twists + tuple(_degree(v, pk, dual_i) for v in image)
    syz = syzygy_basis(cols, ring, len(Fi), dual_i, src)
    rels = []
    cut = g << pk.posshift
    for v in syz:
        r = {t: c for t, c in v.items() if t < cut}
        if r:
            rels.append(r)
    P = ModulePresentation(ring, gen_twists, rels, lifts=list(kernel))
    return prune(P)


def quotient_presentation(R) -> ModulePresentation:
    return ModulePresentation.cyclic(R.I)


def canonical_module(R, resolution: ResolutionChain | None = None) -> ModulePresentation:
    """omega_R = Ext^{n-d}_S(R, S)."""
    return ext_module(quotient_presentation(R), R.n - R.d, resolution)


def annihilator(M: ModulePresentation) -> IdealHandle:
    """ann(M) = intersection over j of (N : e_j), N the relation submodule."""
    ring = M.ring
    if M.ngens == 0:
        return IdealHandle(ring, [ring.one()])
    if M.ngens == 1:
        return M.cyclic_ideal()
    rels = [v for v in M.all_relations() if v]
    pk = packing_for(ring)
    parts = []
    for j in range(M.ngens):
        cols = [basis_vector(ring, j)] + rels
        src = (M.twists[j],) + tuple(_degree(v, pk, M.twists) for v in rels)
        syz = syzygy_basis(cols, ring, M.ngens, M.twists, src)
        parts.append(IdealHandle(ring, [vec_to_poly(v, ring, 0) for v in syz]))
    return intersect_all(parts)


def is_zero_module(M: ModulePresentation) -> bool:
    return prune(M).ngens == 0


def depth(M: ModulePresentation, resolution: ResolutionChain | None = None) -> int:
    """n minus the largest i with Ext^i_S(M, S) nonzero."""
    ring = M.ring
    n = ring.nvars
    if is_zero_module(M):
        raise ZeroModuleError("depth of the zero module")
    res = resolution if resolution is not None else free_resolution(M, n + 1)
    res = _extend(res, M, n + 1)
    for i in range(n, -1, -1):
        if not ext_module(M, i, res).is_zero():
            return n - i
    raise ZeroModuleError("all Ext modules vanish")


def colon_submodule(M: ModulePresentation, x: Polynomial) -> list:
    """Generators of (N :_{F_0} x), N the relation submodule of M."""
    ring = M.ring
    pk = packing_for(ring)
    rels = [v for v in M.all_relations() if v]
    xv = poly_to_vec(x)
    g = M.ngens
    cols = [_mul(basis_vector(ring, j), xv, ring.field.characteristic) for j in range(g)] + rels
    src = tuple(t + x.degree() for t in M.twists) + tuple(_degree(v, pk, M.twists) for v in rels)
    syz = syzygy_basis(cols, ring, g, M.twists, src)
    cut = g << pk.posshift
    out = []
    for v in syz:
        r = {t: c for t, c in v.items() if t < cut}
        if r:
            out.append(r)
    return out


def is_nzd_on_module(x: Polynomial, M: ModulePresentation) -> bool:
    """x is a nonzerodivisor on M iff (N : x) = N."""
    if not x:
        raise ValueError("zero is never a nonzerodivisor")
    if not x.is_homogeneous():
        raise ValueError("nonzerodivisor test needs a homogeneous element")
    if M.ngens == 0:
        return True
    N = M.relation_gb()
    return all(N.contains(v) for v in colon_submodule(M, x))


class ZeroDivisorError(ValueError):
    pass


def is_nzd_on_ring(R, x: Polynomial) -> bool:
    return colon(R.I, x) == R.I


def att_avoidance(x: Polynomial, R, ext_next: ModulePresentation | None = None) -> bool:
    """x avoids the attached primes of H^{d-1}_m(R), i.e. x is a
    nonzerodivisor on Ext^{n-d+1}_S(R, S) (true when that module is zero)."""
    if not x.is_homogeneous():
        raise ValueError("att_avoidance needs a homogeneous element")
    if not is_nzd_on_ring(R, x):
        raise ZeroDivisorError(f"{x} is a zerodivisor on R")
    E = ext_next if ext_next is not None else ext_module(quotient_presentation(R), R.n - R.d + 1)
    if E.is_zero():
        return True
    return is_nzd_on_module(x, E)


# ---------------------------------------------------------------------------
# Ext over R = S/I

def _hom_matrix(A: ModuleMap, B: ModulePresentation, ring) -> tuple:
    """Hom_R(A, B) : Hom(F_t, B) -> Hom(F_s, B) on lifted free modules.

    Hom(F, B) for F with basis twists tw is lifted to F_B^{rank F}; the
    coordinate (j, b) sits at position j * g_B + b with twist tw_B[b] - tw[j].
    Returns the list of columns indexed by the coordinates of Hom(F_t, B).
    """
    pk = packing_for(ring)
    gB = B.ngens
    p = ring.field.characteristic
    cols = []
    for j in range(A.target_rank):
        for b in range(gB):
            # phi = e_{j,b}; (phi o A)_l = A[j][l] * e_b for every source l
            v = {}
            for l, col in enumerate(A.columns):
                f = _component(col, j, pk)
                if not f:
                    continue
                shift = (l * gB + b) << pk.posshift
                for m, c in f.items():
                    key = m + shift
                    x = v.get(key, 0) + c
                    if p:
                        x %= p
                    if x:
                        v[key] = x
                    else:
                        v.pop(key, None)
            cols.append(v)
    return cols


def _hom_twists(tw, B: ModulePresentation) -> tuple:
    return tuple(B.twists[b] - t for t in tw for b in range(B.ngens))


def _hom_relations(rank: int, B: ModulePresentation, ring) -> list:
    """Lifted relations of Hom(F, B) = B^rank."""
    rels = B.all_relations()
    out = []
    for j in range(rank):
        for v in rels:
            out.append({t + ((j * B.ngens) << packing_for(ring).posshift): c for t, c in v.items()})
    return out


def quotient_resolution(A: ModulePresentation, steps: int) -> ResolutionChain:
    if not A.over_quotient:
        raise ValueError("expected a presentation over S/I")
    return free_resolution(A, steps)


@dataclass
class QuotientExtResult:
    index: int
    is_zero: bool
    kernel_generators: int
    resolution_ranks: list


def ext_over_quotient(A: ModulePresentation, B: ModulePresentation, i: int,
                      resolution: ResolutionChain | None = None) -> QuotientExtResult:
    """Decide whether Ext^i_R(A, B) = 0 for i <= 2, R = S/I."""
    if i > 2:
        raise ValueError("only Ext^0, Ext^1 and Ext^2 over the quotient are supported")
    if i < 0:
        raise ValueError("Ext index must be nonnegative")
    if tuple(A.quotient) != tuple(B.quotient) or not A.over_quotient:
        raise ValueError("both modules must be presented over the same S/I")
    ring = A.ring
    pk = packing_for(ring)
    res = resolution if resolution is not None else quotient_resolution(A, 3)
    if res.length < min(i + 1, 3) and not res.complete:
        res = quotient_resolution(A, 3)
    ranks = [len(t) for t in res.twists]
    if i >= len(res.twists) or not res.twists[i] or B.ngens == 0:
        return QuotientExtResult(i, True, 0, ranks)
    tw_i = _hom_twists(res.twists[i], B)
    rank_i = len(tw_i)
    # kernel of Hom(F_i, B) -> Hom(F_{i+1}, B), lifted to F_B^{r_i}
    if i < res.length:
        Ai1 = res.maps[i]
        cols = _hom_matrix(Ai1, B, ring)
        tw_next = _hom_twists(Ai1.source_twists, B)
        relnext = _hom_relations(Ai1.source_rank, B, ring)
        allcols = cols + relnext
        src = tw_i + tuple(_degree(v, pk, tw_next) for v in relnext)
        syz = syzygy_basis(allcols, ring, len(tw_next), tw_next, src)
        cut = rank_i << pk.posshift
        kernel = []
        for v in syz:
            r = {t: c for t, c in v.items() if t < cut}
            if r:
                kernel.append(r)
    else:
        kernel = [basis_vector(ring, j) for j in range(rank_i)]
    # image of Hom(F_{i-1}, B) plus the relations of B^{r_i}
    sub = _hom_relations(len(res.twists[i]), B, ring)
    if i >= 1:
        sub += _hom_matrix(res.maps[i - 1], B, ring)
    gb = module_gb([v for v in sub if v], ring, rank_i, tw_i)
    outside = [v for v in kernel if not gb.contains(v)]
    return QuotientExtResult(i, not outside, len(kernel), ranks)
