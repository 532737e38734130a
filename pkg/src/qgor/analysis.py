"""Quasi-Gorenstein analysis: parameter systems, limit closures, socle
sequences, the two-route checker, and the Buchsbaum, generalized CM,
deformation and quotient probes."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .homology import (
    ZeroDivisorError,
    annihilator,
    att_avoidance,
    canonical_module,
    depth,
    free_resolution,
    is_nzd_on_ring,
    quotient_presentation,
)
from .ideals import IdealHandle, colon, colon_product, ideal_equal, maximal_ideal
from .invariants import is_irreducible_mprimary, is_m_primary, krull_dimension, socle_dimension
from .poly import Polynomial
from .rings import RingSpec


class BudgetExceeded(RuntimeError):
    """A search or stabilization loop hit its configured cap."""


class SopNotFound(BudgetExceeded):
    pass


class LimitClosureUnstable(BudgetExceeded):
    pass


class RouteDisagreement(AssertionError):
    """The canonical-module route and the socle route gave different verdicts."""

    def __init__(self, report):
        self.report = report
        super().__init__(f"routes disagree on {report.ring}: A={report.verdict_a} B={report.verdict_b}")


# ---------------------------------------------------------------------------
# systems of parameters

@dataclass
class ParamSystem:
    ring: RingSpec
    elements: tuple
    certified: bool
    seed: int | None = None
    attempts: int = 0

    @property
    def degrees(self) -> list[int]:
        return [f.degree() for f in self.elements]

    def __len__(self):
        return len(self.elements)

    def recheck(self) -> bool:
        return check_sop(self.ring, self.elements)

    def describe(self) -> list[str]:
        return [str(f) for f in self.elements]


def check_sop(R: RingSpec, elements) -> bool:
    if len(elements) != R.d:
        return False
    if any(not f.is_homogeneous() or f.is_constant() for f in elements):
        return False
    return is_m_primary(R.ideal(elements))


def param_system(R: RingSpec, elements, seed: int | None = None) -> ParamSystem:
    """Wrap user-supplied elements after verifying they form an s.o.p."""
    elements = tuple(R.S.coerce(f) for f in elements)
    if not check_sop(R, elements):
        raise ValueError(f"({', '.join(map(str, elements))}) is not a system of parameters for R")
    return ParamSystem(R, elements, True, seed)


def _candidates(R: RingSpec, seed: int, max_degree: int, per_degree: int):
    S = R.S
    xs = S.gens()
    for x in xs:
        yield x
    for a, b in itertools.combinations(xs, 2):
        yield a + b
    if len(xs) > 2:
        yield sum(xs[1:], xs[0])
    rng = random.Random(seed)
    for deg in range(1, max_degree + 1):
        for _ in range(per_degree):
            yield S.random_homogeneous_form(deg, rng.getrandbits(64))


def find_sop(R: RingSpec, seed: int = 0, max_degree: int = 3, per_degree: int = 12) -> ParamSystem:
    """Greedy homogeneous s.o.p.: take the first candidate that drops the
    dimension by one, repeat. Candidates are variables, sums of two
    variables, the sum of all variables, then seeded random forms."""
    d = R.d
    if d < 0:
        raise ValueError("the zero ring has no system of parameters")
    chosen = []
    attempts = 0
    while len(chosen) < d:
        target = d - len(chosen) - 1
        found = None
        for f in _candidates(R, seed + len(chosen), max_degree, per_degree):
            attempts += 1
            if krull_dimension(R.ideal(chosen + [f])) == target:
                found = f
                break
        if found is None:
            raise SopNotFound(f"no parameter found after {attempts} attempts up to degree {max_degree}")
        chosen.append(found)
    ps = ParamSystem(R, tuple(chosen), check_sop(R, chosen), seed, attempts)
    if not ps.certified:
        raise SopNotFound("greedy sequence failed certification")
    return ps


def random_linear_sop(R: RingSpec, seed: int, tries: int = 50) -> ParamSystem:
    """d random linear forms (seeded), retried until they form an s.o.p."""
    rng = random.Random(seed)
    for _ in range(tries):
        elems = [R.S.random_homogeneous_form(1, rng.getrandbits(64)) for _ in range(R.d)]
        if check_sop(R, elems):
            return ParamSystem(R, tuple(elems), True, seed)
    raise SopNotFound(f"no random linear s.o.p. in {tries} tries")


# ---------------------------------------------------------------------------
# limit closure

@dataclass
class LimitClosureResult:
    ideal: IdealHandle
    t_stab: int
    chain: list
    window: int
    power: int
    chain_ascending: bool = True

    def generators(self) -> list[str]:
        return self.ideal.basis_strings()


def limit_term(x: ParamSystem, t: int, n: int = 1) -> IdealHandle:
    """((x_1^{n+t}, ..., x_d^{n+t}) + I) : (x_1 ... x_d)^t."""
    R = x.ring
    base = R.ideal([f ** (n + t) for f in x.elements])
    if t == 0:
        return base
    return colon_product(base, [f for f in x.elements for _ in range(t)])


def limit_closure(x: ParamSystem, n: int = 1, window: int = 2, t_max: int = 20) -> LimitClosureResult:
    """The limit closure of x^n, declared stable once ``window`` consecutive
    chain terms coincide."""
    if not x.certified:
        raise ValueError("limit closure needs a certified parameter system")
    if window < 2:
        raise ValueError("window must be at least 2")
    R = x.ring
    if len(x) == 0:
        return LimitClosureResult(R.I, 0, [R.I], window, n)
    chain = []
    ascending = True
    run = 1
    for t in range(t_max + 1):
        J = limit_term(x, t, n)
        if chain:
            prev = chain[-1]
            if not J.contains_ideal(prev):
                ascending = False
            if ideal_equal(J, prev):
                run += 1
            else:
                run = 1
        chain.append(J)
        if run >= window:
            t_stab = t - window + 1
            return LimitClosureResult(chain[t_stab], t_stab, chain, window, n, ascending)
    raise LimitClosureUnstable(f"limit closure chain not stable by t_max = {t_max}")


def is_regular_sequence_via_limit(x: ParamSystem, window: int = 2, t_max: int = 20) -> bool:
    lim = limit_closure(x, 1, window, t_max).ideal
    return ideal_equal(lim, x.ring.ideal(x.elements))


@dataclass
class SocleSequence:
    values: list
    stabilized: bool

    @property
    def value(self) -> int | None:
        return self.values[-1] if self.stabilized and self.values else None


def socle_sequence(x: ParamSystem, n_max: int = 6, window: int = 2, t_max: int = 20) -> SocleSequence:
    """s_n = vdim Soc(R / limit closure of x^n) for n = 1..n_max."""
    R = x.ring
    if len(x) == 0:
        s = socle_dimension(R.I)
        return SocleSequence([s] * n_max, True)
    values = []
    for n in range(1, n_max + 1):
        lim = limit_closure(x, n, window, t_max).ideal
        values.append(socle_dimension(lim))
    stable = len(values) >= 2 and values[-1] == values[-2]
    return SocleSequence(values, stable)


# ---------------------------------------------------------------------------
# the checker

@dataclass
class QGReport:
    ring: str
    n: int
    d: int
    depth: int
    mu_omega: int
    omega_annihilator: list
    faithful: bool
    verdict_a: bool
    unmixed: bool
    sop: list
    socle_sequence: list
    stabilized: bool
    n_used: int
    verdict_b: bool | None
    betti: list
    probes: dict = field(default_factory=dict)

    @property
    def agreement(self) -> bool | None:
        if self.verdict_b is None:
            return None
        return self.verdict_a == self.verdict_b

    @property
    def quasi_gorenstein(self) -> bool:
        return self.verdict_a

    @property
    def cohen_macaulay(self) -> bool:
        return self.depth == self.d

    def as_dict(self) -> dict:
        return {
            "agreement": self.agreement,
            "betti": self.betti,
            "cohen_macaulay": self.cohen_macaulay,
            "d": self.d,
            "depth": self.depth,
            "mu_omega": self.mu_omega,
            "n": self.n,
            "omega_annihilator": self.omega_annihilator,
            "probes": self.probes,
            "quasi_gorenstein": self.quasi_gorenstein,
            "ring": self.ring,
            "route_a": {"faithful": self.faithful, "mu_omega": self.mu_omega, "verdict": self.verdict_a},
            "route_b": {
                "n_used": self.n_used,
                "socle_sequence": self.socle_sequence,
                "sop": self.sop,
                "stabilized": self.stabilized,
                "unmixed": self.unmixed,
                "verdict": self.verdict_b,
            },
            "socle_sequence": self.socle_sequence,
            "unmixed": self.unmixed,
        }


def qg_check(R: RingSpec, x: ParamSystem | None = None, n_max: int = 6, seed: int = 0,
             window: int = 2, t_max: int = 20) -> QGReport:
    """Decide quasi-Gorensteinness twice: omega cyclic and faithful (route A),
    and unmixed with the stabilized socle sequence equal to 1 (route B)."""
    if R.d < 0:
        raise ValueError("R is the zero ring")
    M = quotient_presentation(R)
    res = free_resolution(M, R.n + 1)
    omega = canonical_module(R, res)
    mu = omega.ngens
    ann = annihilator(omega)
    faithful = ideal_equal(ann, R.I)
    verdict_a = mu == 1 and faithful
    if x is None:
        x = find_sop(R, seed)
    seq = socle_sequence(x, n_max, window, t_max)
    verdict_b = (faithful and seq.value == 1) if seq.stabilized else None
    report = QGReport(
        ring=repr(R),
        n=R.n,
        d=R.d,
        depth=depth(M, res),
        mu_omega=mu,
        omega_annihilator=ann.basis_strings(),
        faithful=faithful,
        verdict_a=verdict_a,
        unmixed=faithful,
        sop=x.describe(),
        socle_sequence=seq.values,
        stabilized=seq.stabilized,
        n_used=n_max,
        verdict_b=verdict_b,
        betti=res.betti_totals(),
    )
    if report.agreement is False:
        raise RouteDisagreement(report)
    return report


# ---------------------------------------------------------------------------
# probes

def _contained(J: IdealHandle, products) -> bool:
    return all(J.contains(f) for f in products)


@dataclass
class BuchsbaumResult:
    annihilation: bool
    colon_formula: bool
    limit_closure: list
    colon_ideal: list


def buchsbaum_probe(x: ParamSystem, window: int = 2, t_max: int = 20) -> BuchsbaumResult:
    """m * lim(x) inside (x) + I, and lim(x) == ((x_i^2) + I) : x_1...x_d."""
    R = x.ring
    lim = limit_closure(x, 1, window, t_max).ideal
    base = R.ideal(x.elements)
    ann = _contained(base, [v * g for v in R.S.gens() for g in lim.gb()])
    formula = limit_term(x, 1, 1)
    return BuchsbaumResult(ann, ideal_equal(lim, formula),
                           lim.basis_strings(), formula.basis_strings())


def _colon_powers_of_m(Q: IdealHandle, lim: IdealHandle, cap: int):
    """Smallest k <= cap with lim inside Q : m^k, else None."""
    m = maximal_ideal(Q.ring)
    cur = Q
    for k in range(cap + 1):
        if cur.contains_ideal(lim):
            return k
        cur = colon(cur, m)
    return None


@dataclass
class GCMResult:
    exponent: int | None
    per_system: list
    prefix_check: bool | None
    cap: int

    @property
    def exceeded(self) -> bool:
        return self.exponent is None


def gcm_exponent(systems, n_cap: int = 8, window: int = 2, t_max: int = 20) -> GCMResult:
    """Least n with m^n * lim(x) inside (x) + I for every supplied x, plus the
    prefix consequence m^n ((x_1..x_i) + I : x_{i+1}) inside (x_1..x_i) + I."""
    systems = list(systems)
    if not systems:
        raise ValueError("gcm_exponent needs at least one parameter system")
    per = []
    for x in systems:
        lim = limit_closure(x, 1, window, t_max).ideal
        per.append(_colon_powers_of_m(x.ring.ideal(x.elements), lim, n_cap))
    if any(k is None for k in per):
        return GCMResult(None, per, None, n_cap)
    n = max(per)
    ok = True
    for x in systems:
        R = x.ring
        mn = maximal_ideal(R.S) ** n
        for i in range(len(x)):
            prefix = R.ideal(x.elements[:i])
            col = colon(prefix, x.elements[i])
            prods = [a * b for a in mn.gens for b in col.gb()]
            if not _contained(prefix, prods):
                ok = False
    return GCMResult(n, per, ok, n_cap)


def _require_nzd(R: RingSpec, x: Polynomial):
    if not x or not x.is_homogeneous():
        raise ValueError("probe element must be a nonzero homogeneous polynomial")
    if not is_nzd_on_ring(R, x):
        raise ZeroDivisorError(f"{x} is a zerodivisor on R")


def deformation_probe(R: RingSpec, x: Polynomial, N: int = 3, seed: int = 0, n_max: int = 6) -> list[dict]:
    """qg_check verdicts for R/x^n R, n = 1..N (finite evidence only)."""
    _require_nzd(R, x)
    out = []
    for n in range(1, N + 1):
        Q = R.quotient([x ** n], f"{R.name}/({x})^{n}")
        rep = qg_check(Q, None, n_max, seed)
        out.append({"n": n, "quasi_gorenstein": rep.quasi_gorenstein, "mu_omega": rep.mu_omega,
                    "unmixed": rep.unmixed, "depth": rep.depth, "d": rep.d})
    return out


@dataclass
class QuotientProbe:
    avoidance: bool
    qg_quotient: bool
    consistent: bool
    hypothesis: bool  # R itself quasi-Gorenstein

    def as_dict(self) -> dict:
        return {"avoidance": self.avoidance, "consistent": self.consistent,
                "hypothesis_holds": self.hypothesis, "qg_quotient": self.qg_quotient}


def quotient_probe(R: RingSpec, x: Polynomial, seed: int = 0, n_max: int = 6) -> QuotientProbe:
    """Compare x avoiding Att H^{d-1}_m(R) with R/xR being quasi-Gorenstein."""
    _require_nzd(R, x)
    hyp = qg_check(R, None, n_max, seed).quasi_gorenstein
    avoid = att_avoidance(x, R)
    qq = qg_check(R.quotient([x]), None, n_max, seed).quasi_gorenstein
    return QuotientProbe(avoid, qq, avoid == qq, hyp)


def irreducibility_of_limit(x: ParamSystem, n: int = 1):
    lim = limit_closure(x, n).ideal
    return is_irreducible_mprimary(lim)


def attach_probes(report: QGReport, x: ParamSystem, N: int = 3, seed: int = 0, n_max: int = 6,
                  window: int = 2, t_max: int = 20) -> QGReport:
    """Fill ``report.probes`` with Buchsbaum, generalized CM and deformation data for x."""
    R = x.ring
    probes = {}
    if len(x):
        b = buchsbaum_probe(x, window, t_max)
        probes["buchsbaum"] = {"annihilation": b.annihilation, "colon_formula": b.colon_formula}
        g = gcm_exponent([x], window=window, t_max=t_max)
        probes["gcm_exponent"] = g.exponent
        probes["gcm_prefix_check"] = g.prefix_check
        head = x.elements[0]
        if is_nzd_on_ring(R, head):
            probes["deformation"] = {"element": str(head),
                                     "evidence": deformation_probe(R, head, N, seed, n_max)}
        else:
            probes["deformation"] = {"element": str(head), "evidence": None,
                                     "skipped": "element is a zerodivisor"}
    else:
        probes["skipped"] = "dimension 0: empty parameter system"
    report.probes = probes
    return report
