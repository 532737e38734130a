"""Independent oracles: dense linear algebra over the coefficient field and
combinatorics of monomial ideals. Nothing here touches the Groebner kernel."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, combinations_with_replacement


def monomials(n, deg):
    out = []
    for c in combinations_with_replacement(range(n), deg):
        e = [0] * n
        for i in c:
            e[i] += 1
        out.append(tuple(e))
    return out


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


class Linear:
    """Row reduction over Q (p = 0) or F_p."""

    def __init__(self, p: int):
        self.p = p

    def norm(self, c):
        return Fraction(c) if self.p == 0 else int(c) % self.p

    def inv(self, c):
        return 1 / Fraction(c) if self.p == 0 else pow(int(c), -1, self.p)

    def rank(self, rows) -> int:
        pivots = {}  # column -> reduced row
        r = 0
        for row in rows:
            v = {k: self.norm(c) for k, c in row.items() if self.norm(c)}
            while v:
                col = min(v)
                if col not in pivots:
                    inv = self.inv(v[col])
                    pivots[col] = {k: self.norm(c * inv) for k, c in v.items()}
                    r += 1
                    break
                piv = pivots[col]
                c = v[col]
                for k, pc in piv.items():
                    nv = self.norm(v.get(k, 0) - c * pc)
                    if nv:
                        v[k] = nv
                    else:
                        v.pop(k, None)
        return r


def field_char(ring) -> int:
    return getattr(ring.field, "characteristic", 0)


def poly_dict(f):
    return dict(f.coeffs)


def degree_piece(gens, n, e):
    """Rows spanning I_e for homogeneous generators (as dicts)."""
    rows = []
    for g in gens:
        if not g:
            continue
        dg = sum(next(iter(g)))
        if dg > e:
            continue
        for m in monomials(n, e - dg):
            rows.append({_add(m, k): c for k, c in g.items()})
    return rows


def _index_rows(rows, index):
    return [{index[k]: c for k, c in r.items()} for r in rows]


def hilbert_function(gens, n, e, p):
    """dim_K (S/I)_e by Macaulay-matrix rank."""
    mons = monomials(n, e)
    index = {m: i for i, m in enumerate(mons)}
    return len(mons) - Linear(p).rank(_index_rows(degree_piece(gens, n, e), index))


def member(f, gens, n, p):
    """Homogeneous f lies in the ideal iff adding it keeps the degree-piece rank."""
    if not f:
        return True
    e = sum(next(iter(f)))
    mons = monomials(n, e)
    index = {m: i for i, m in enumerate(mons)}
    rows = _index_rows(degree_piece(gens, n, e), index)
    L = Linear(p)
    return L.rank(rows) == L.rank(rows + _index_rows([f], index))


def _kernel_dim_mod_ideal(gens, n, e, multipliers, p):
    """dim {f in S_e : m f in I_{e+k} for all multipliers m} minus dim I_e."""
    mons_e = monomials(n, e)
    L = Linear(p)
    total_rank_B = 0
    offset = 0
    target_rows = []
    maps = [{} for _ in mons_e]
    for m in multipliers:
        dm = sum(next(iter(m)))
        tm = monomials(n, e + dm)
        index = {t: offset + i for i, t in enumerate(tm)}
        B = _index_rows(degree_piece(gens, n, e + dm), index)
        total_rank_B += L.rank(B)
        target_rows.extend(B)
        for j, b in enumerate(mons_e):
            for k, c in m.items():
                key = index[_add(k, b)]
                maps[j][key] = maps[j].get(key, 0) + c
        offset += len(tm)
    image_rank = L.rank(target_rows + maps) - total_rank_B
    preimage = len(mons_e) - image_rank
    Ie = Linear(p).rank(_index_rows(degree_piece(gens, n, e), {m: i for i, m in enumerate(mons_e)}))
    return preimage - Ie


def socle_dims(gens, n, p, top):
    """Degreewise socle dimension of S/I for degrees 0..top."""
    xs = [{tuple(1 if j == i else 0 for j in range(n)): 1} for i in range(n)]
    return [_kernel_dim_mod_ideal(gens, n, e, xs, p) for e in range(top + 1)]


def nzd_kernel_dims(gens, n, f, p, top):
    """dim ker(f : R_e -> R_{e+deg f}) for e = 0..top."""
    return [_kernel_dim_mod_ideal(gens, n, e, [f], p) for e in range(top + 1)]


# monomial ideals ------------------------------------------------------------

def lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def minimalize(mons):
    mons = sorted(set(mons), key=lambda m: (sum(m), m))
    out = []
    for m in mons:
        if not any(divides(o, m) for o in out):
            out.append(m)
    return sorted(out)


def mono_intersect(A, B):
    return minimalize([lcm(a, b) for a in A for b in B])


def mono_colon(A, b):
    return minimalize([tuple(max(x - y, 0) for x, y in zip(a, b)) for a in A])


def taylor_betti(gens):
    """Total Betti numbers of S/I from the Taylor complex tensored with K.

    In multidegree b the complex has a basis of subsets F with lcm(F) = b and
    the differential keeps only faces with the same lcm; homology in
    homological degree i gives beta_{i,b}. Computed over F_2 is not enough in
    general, so ranks are taken over Q.
    """
    gens = minimalize(gens)
    k = len(gens)
    by_lcm = {}
    for size in range(0, k + 1):
        for F in combinations(range(k), size):
            m = tuple(0 for _ in gens[0]) if not F else gens[F[0]]
            for i in F[1:]:
                m = lcm(m, gens[i])
            by_lcm.setdefault(m, {}).setdefault(size, []).append(F)
    betti = [0] * (k + 1)
    L = Linear(0)
    for b, layers in by_lcm.items():
        ranks = {}
        for size, faces in layers.items():
            lower = layers.get(size - 1, [])
            index = {F: j for j, F in enumerate(lower)}
            rows = []
            for F in faces:
                row = {}
                for pos in range(len(F)):
                    G = F[:pos] + F[pos + 1:]
                    if G in index:
                        row[index[G]] = (-1) ** pos
                rows.append(row)
            ranks[size] = L.rank(rows) if lower else 0
        for size, faces in layers.items():
            h = len(faces) - ranks.get(size, 0) - ranks.get(size + 1, 0)
            betti[size] += h
    while len(betti) > 1 and betti[-1] == 0:
        betti.pop()
    return betti
