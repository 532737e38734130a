"""Command-line front end: ``qgor COMMAND -f SESSION [options]``."""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .analysis import (
    BudgetExceeded,
    attach_probes,
    RouteDisagreement,
    buchsbaum_probe,
    deformation_probe,
    find_sop,
    gcm_exponent,
    limit_closure,
    param_system,
    qg_check,
    quotient_probe,
    random_linear_sop,
)
from .groebner import polys_from_vector
from .homology import (
    annihilator,
    canonical_module,
    depth,
    ext_module,
    free_resolution,
    quotient_presentation,
    ModulePresentation,
)
from .ideals import colon, ideal_equal, intersect_all, saturate
from .invariants import (
    hilbert_table,
    is_irreducible_mprimary,
    krull_dimension,
    mu_homogeneous,
    socle_dimension,
)
from .session import Session, SessionError, parse_session

TOOL = "qgor"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_BUDGET = 2
EXIT_INCONSISTENT = 3

COMMANDS = (
    "gb", "dim", "colon", "intersect", "saturate", "hilbert", "mu", "socle", "irreducible",
    "limit-closure", "sop", "resolve", "ext", "canonical", "depth", "qgcheck", "buchsbaum",
    "gcm", "deform", "quotient-probe", "corpus",
)


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------------------
# helpers

def _strs(polys) -> list[str]:
    return [str(f) for f in polys]


def _basis(J) -> list[str]:
    return J.basis_strings()


def _ring_name(session: Session, args):
    if args.ring:
        return args.ring
    if args.seq:
        return session.seqs[args.seq[0]].ring if args.seq[0] in session.seqs else None
    if args.ideal:
        return session.ideals[args.ideal[0]].ring if args.ideal[0] in session.ideals else None
    return None


def _ring(session: Session, args):
    return session.ring(_ring_name(session, args))


def _ideals(session: Session, args, at_least: int = 1, default_defining: bool = False):
    names = list(args.ideal or [])
    if not names and default_defining:
        R = _ring(session, args)
        return R, [("<defining>", R.I)]
    if len(names) < at_least:
        raise UsageError(f"{args.command} needs at least {at_least} --ideal argument(s)")
    out = []
    R = None
    for name in names:
        Rn, J = session.ideal(name)
        if R is not None and Rn is not R:
            raise UsageError("ideals from different rings")
        R = Rn
        out.append((name, J))
    if args.ring and session.ring(args.ring) is not R:
        raise UsageError(f"ideal {names[0]!r} does not belong to ring {args.ring!r}")
    return R, out


def _param(session: Session, args, required: bool = True):
    if not args.seq:
        if required:
            raise UsageError(f"{args.command} needs --seq")
        return None
    out = []
    for name in args.seq:
        R, elems = session.seq(name)
        try:
            out.append(param_system(R, elems, args.seed))
        except ValueError as exc:
            raise UsageError(f"sequence {name!r}: {exc}") from exc
    return out


def _element(session: Session, args):
    if not args.seq:
        raise UsageError(f"{args.command} needs --seq naming the element")
    R, elems = session.seq(args.seq[0])
    if not elems:
        raise UsageError(f"sequence {args.seq[0]!r} is empty")
    idx = args.index or 0
    if not 0 <= idx < len(elems):
        raise UsageError(f"--index {idx} out of range for sequence {args.seq[0]!r}")
    return R, elems[idx]


def _module_dict(M: ModulePresentation) -> dict:
    return {
        "generators": M.ngens,
        "twists": list(M.twists),
        "relations": [_strs(polys_from_vector(v, M.ring, M.ngens)) for v in M.relations],
        "is_zero": M.ngens == 0,
    }


def _budgets(args) -> dict:
    return {"n_max": args.nmax, "t_max": args.tmax, "window": args.window}


# ---------------------------------------------------------------------------
# commands; each returns a JSON-ready dict

def cmd_gb(session, args):
    R, items = _ideals(session, args, 1, True)
    name, J = items[0]
    return {"ideal": name, "basis": _basis(J), "size": len(J.gb())}


def cmd_dim(session, args):
    R, items = _ideals(session, args, 1, True)
    name, J = items[0]
    return {"ideal": name, "dim": krull_dimension(J)}


def cmd_colon(session, args):
    R, items = _ideals(session, args, 2)
    (a, A), (b, B) = items[:2]
    return {"ideal": f"{a} : {b}", "basis": _basis(colon(A, B))}


def cmd_intersect(session, args):
    R, items = _ideals(session, args, 2)
    J = intersect_all([J for _, J in items])
    return {"ideal": " & ".join(n for n, _ in items), "basis": _basis(J)}


def cmd_saturate(session, args):
    R, items = _ideals(session, args, 2)
    (a, A), (b, B) = items[:2]
    J, k = saturate(A, B)
    return {"ideal": f"{a} : ({b})^inf", "basis": _basis(J), "steps": k}


def cmd_hilbert(session, args):
    R, items = _ideals(session, args, 1, True)
    name, J = items[0]
    bound = args.degree
    table = hilbert_table(J, bound)
    if table.artinian and bound is None:
        bound = table.bound
    elif bound is None:
        bound = 10
        table = hilbert_table(J, bound)
    return {"ideal": name, "artinian": table.artinian, "bound": table.bound,
            "values": table.as_list(), "total": table.total}


def _artinian_guard(J):
    from .invariants import is_m_primary

    if not (is_m_primary(J) or J.is_unit()):
        raise UsageError("this command needs an m-primary ideal")


def cmd_mu(session, args):
    R, items = _ideals(session, args, 1)
    name, J = items[0]
    return {"ideal": name, "mu": mu_homogeneous(J, R.I)}


def cmd_socle(session, args):
    R, items = _ideals(session, args, 1, True)
    name, J = items[0]
    _artinian_guard(J)
    return {"ideal": name, "socle_dimension": socle_dimension(J)}


def cmd_irreducible(session, args):
    R, items = _ideals(session, args, 1, True)
    name, J = items[0]
    _artinian_guard(J)
    verdict, cert = is_irreducible_mprimary(J, R.I)
    return {"ideal": name, "irreducible": verdict, "socle_dimension": cert.socle_dimension,
            "mu": cert.mu, "mu_colon": cert.mu_colon, "mu_identity": cert.mu_identity}


def cmd_limit_closure(session, args):
    (x,) = _param(session, args)[:1]
    n = args.power or 1
    lc = limit_closure(x, n, args.window, args.tmax)
    base = x.ring.ideal([f ** n for f in x.elements])
    return {"sequence": args.seq[0], "power": n, "generators": lc.generators(), "t_stab": lc.t_stab,
            "window": lc.window, "chain_ascending": lc.chain_ascending,
            "equals_parameter_ideal": ideal_equal(lc.ideal, base), "budgets": _budgets(args)}


def cmd_sop(session, args):
    R = _ring(session, args)
    ps = find_sop(R, args.seed, args.degree or 3)
    return {"elements": ps.describe(), "degrees": ps.degrees, "certified": ps.certified,
            "attempts": ps.attempts, "seed": args.seed, "d": R.d}


def cmd_resolve(session, args):
    R, items = _ideals(session, args, 1, True)
    name, J = items[0]
    M = ModulePresentation.cyclic(J)
    res = free_resolution(M, args.length or R.n + 1)
    graded = [{str(k): v for k, v in row.items()} for row in res.graded_betti()]
    return {"ideal": name, "betti": res.betti_totals(), "graded_betti": graded, "rows": res.betti_rows(),
            "complete": res.complete, "is_complex": res.is_complex(), "is_exact": res.is_exact(),
            "is_minimal": res.is_minimal()}


def cmd_ext(session, args):
    R = _ring(session, args)
    if args.index is None:
        raise UsageError("ext needs --index")
    E = ext_module(quotient_presentation(R), args.index)
    return {"index": args.index, "module": _module_dict(E)}


def cmd_canonical(session, args):
    R = _ring(session, args)
    w = canonical_module(R)
    ann = annihilator(w)
    return {"module": _module_dict(w), "mu": w.ngens, "annihilator": _basis(ann),
            "faithful": ideal_equal(ann, R.I)}


def cmd_depth(session, args):
    R = _ring(session, args)
    dp = depth(quotient_presentation(R))
    return {"depth": dp, "d": R.d, "cohen_macaulay": dp == R.d}


def cmd_qgcheck(session, args):
    R = _ring(session, args)
    xs = _param(session, args, required=False)
    x = xs[0] if xs else (find_sop(R, args.seed) if R.d >= 0 else None)
    rep = qg_check(R, x, args.nmax, args.seed, args.window, args.tmax)
    if args.probes:
        attach_probes(rep, x, args.count or 3, args.seed, args.nmax, args.window, args.tmax)
    out = rep.as_dict()
    out["budgets"] = _budgets(args)
    return out


def _with_random(session, args, R):
    systems = list(_param(session, args, required=False) or [])
    for k in range(args.count or 0):
        systems.append(random_linear_sop(R, args.seed + k))
    if not systems:
        raise UsageError(f"{args.command} needs --seq or --count")
    return systems


def cmd_buchsbaum(session, args):
    R = _ring(session, args)
    rows = []
    for x in _with_random(session, args, R):
        b = buchsbaum_probe(x, args.window, args.tmax)
        rows.append({"sop": x.describe(), "annihilation": b.annihilation, "colon_formula": b.colon_formula,
                     "limit_closure": b.limit_closure})
    return {"systems": rows, "annihilation": all(r["annihilation"] for r in rows),
            "colon_formula": all(r["colon_formula"] for r in rows)}


def cmd_gcm(session, args):
    R = _ring(session, args)
    systems = _with_random(session, args, R)
    g = gcm_exponent(systems, args.cap, args.window, args.tmax)
    if g.exceeded:
        raise BudgetExceeded(f"generalized CM exponent exceeds cap {args.cap}")
    return {"exponent": g.exponent, "per_system": g.per_system, "prefix_check": g.prefix_check,
            "cap": g.cap, "systems": [x.describe() for x in systems]}


def cmd_deform(session, args):
    R, x = _element(session, args)
    N = args.count or 3
    return {"element": str(x), "N": N, "evidence": deformation_probe(R, x, N, args.seed, args.nmax),
            "note": "finite evidence for n = 1..N only"}


def cmd_quotient_probe(session, args):
    R, x = _element(session, args)
    q = quotient_probe(R, x, args.seed, args.nmax)
    out = q.as_dict()
    out["element"] = str(x)
    if not q.hypothesis:
        out["label"] = "hypothesis violated: R is not quasi-Gorenstein"
    return out


HANDLERS = {
    "gb": cmd_gb, "dim": cmd_dim, "colon": cmd_colon, "intersect": cmd_intersect,
    "saturate": cmd_saturate, "hilbert": cmd_hilbert, "mu": cmd_mu, "socle": cmd_socle,
    "irreducible": cmd_irreducible, "limit-closure": cmd_limit_closure, "sop": cmd_sop,
    "resolve": cmd_resolve, "ext": cmd_ext, "canonical": cmd_canonical, "depth": cmd_depth,
    "qgcheck": cmd_qgcheck, "buchsbaum": cmd_buchsbaum, "gcm": cmd_gcm, "deform": cmd_deform,
    "quotient-probe": cmd_quotient_probe,
}

HELP = {
    "gb": "reduced Groebner basis of an ideal",
    "dim": "Krull dimension of S/J",
    "colon": "colon ideal J1 : J2",
    "intersect": "intersection of the given ideals",
    "saturate": "saturation J1 : J2^inf",
    "hilbert": "Hilbert function of S/J",
    "mu": "minimal number of generators of J/I",
    "socle": "socle dimension of S/J (J m-primary)",
    "irreducible": "irreducibility test for an m-primary ideal",
    "limit-closure": "limit closure of a system of parameters",
    "sop": "find a certified system of parameters",
    "resolve": "minimal graded free resolution of S/J",
    "ext": "Ext^i_S(R, S)",
    "canonical": "canonical module, its generator count and annihilator",
    "depth": "depth of R and the Cohen-Macaulay flag",
    "qgcheck": "two-route quasi-Gorenstein check",
    "buchsbaum": "Buchsbaum colon probes on parameter systems",
    "gcm": "generalized Cohen-Macaulay exponent",
    "deform": "quasi-Gorenstein check of R/(x^n) for n = 1..N",
    "quotient-probe": "attached-prime avoidance versus R/xR",
}


# ---------------------------------------------------------------------------
# reports

def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def envelope(args, result, elapsed_ms=None) -> dict:
    inputs = {k: getattr(args, k) for k in ("file", "ring", "ideal", "seq", "index", "degree",
                                            "length", "count", "power") if getattr(args, k, None) is not None}
    return {
        "tool": TOOL,
        "version": __version__,
        "seed": args.seed,
        "command": args.command,
        "inputs": inputs,
        "result": result,
        "budgets": _budgets(args),
        "timings_ms": elapsed_ms,
    }


def _text(value, indent=0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(value, dict):
        for k in sorted(value):
            v = value[k]
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, (dict, list)) and not _flat(item):
                lines.append(f"{pad}-")
                lines.extend(_text(item, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(item)}")
    else:
        lines.append(pad + _scalar(value))
    return lines


def _flat(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _scalar(v) -> str:
    if v is None:
        return "n/a"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{}"
    return str(v)


def render_text(result: dict, command: str) -> str:
    if command == "limit-closure":
        head = [f"limit closure of {result['sequence']}^{result['power']}:"]
        head += [f"  {g}" for g in result["generators"]]
        head.append(f"t_stab: {result['t_stab']} (window {result['window']})")
        head.append(f"equals parameter ideal: {_scalar(result['equals_parameter_ideal'])}")
        return "\n".join(head) + "\n"
    if command == "gb":
        lines = [f"reduced Groebner basis of {result['ideal']} ({result['size']} elements):"]
        lines += [f"  {g}" for g in result["basis"]]
        return "\n".join(lines) + "\n"
    if command == "resolve":
        lines = [f"betti: {result['betti']}"] + [f"  {r}" for r in result["rows"]]
        for k in ("complete", "is_complex", "is_exact", "is_minimal"):
            lines.append(f"{k}: {_scalar(result[k])}")
        return "\n".join(lines) + "\n"
    return "\n".join(_text(result)) + "\n"


# ---------------------------------------------------------------------------
# entry points

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("-f", "--file", help="session file")
    common.add_argument("--ring", help="ring name")
    common.add_argument("--ideal", action="append", help="ideal name (repeatable)")
    common.add_argument("--seq", action="append", help="sequence name (repeatable)")
    common.add_argument("--json", action="store_true", help="emit canonical JSON")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized steps")
    common.add_argument("--tmax", type=int, default=20, help="limit-closure chain cap")
    common.add_argument("--nmax", type=int, default=6, help="socle-sequence length")
    common.add_argument("--window", type=int, default=2, help="stabilization window")
    common.add_argument("--index", type=int, help="Ext index, or element index within --seq")
    common.add_argument("--degree", type=int, help="degree bound")
    common.add_argument("--length", type=int, help="resolution length")
    common.add_argument("--count", type=int, help="random systems to add, or N for deform")
    common.add_argument("--power", type=int, help="power n for limit-closure")
    common.add_argument("--cap", type=int, default=8, help="exponent cap for gcm")
    common.add_argument("--probes", action="store_true", help="qgcheck: add Buchsbaum/GCM/deformation probes")
    common.add_argument("--timings", action="store_true", help="record wall-clock timings in JSON")

    parser = _Parser(prog=TOOL, description="Quasi-Gorenstein verification for graded rings S/I.")
    parser.add_argument("--version", action="version", version=f"{TOOL} {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True
    for name in COMMANDS:
        if name == "corpus":
            continue
        sub.add_parser(name, parents=[common], help=HELP[name])
    cp = sub.add_parser("corpus", help="run a corpus of session files against sidecar expectations")
    cp.add_argument("directory", nargs="?", help="corpus directory (default: bundled corpus)")
    cp.add_argument("--seed", type=int, default=0)
    cp.add_argument("--json", action="store_true")
    cp.add_argument("--jobs", type=int, default=None, help="worker processes")
    cp.add_argument("--stretch", action="store_true", help="include entries marked stretch")
    return parser


def run_command(session: Session, args) -> tuple[int, dict]:
    """Execute one command; returns ``(exit_code, report)``."""
    t0 = time.perf_counter()
    code = EXIT_OK
    try:
        result = HANDLERS[args.command](session, args)
        if args.command == "qgcheck" and not result["route_b"]["stabilized"]:
            code = EXIT_BUDGET
    except BudgetExceeded as exc:
        result = {"error": str(exc), "kind": "budget"}
        code = EXIT_BUDGET
    except RouteDisagreement as exc:
        result = {"error": str(exc), "kind": "route-disagreement", "report": exc.report.as_dict()}
        code = EXIT_INCONSISTENT
    except (UsageError, SessionError, ValueError) as exc:
        result = {"error": str(exc), "kind": "usage"}
        code = EXIT_USAGE
    elapsed = int((time.perf_counter() - t0) * 1000) if getattr(args, "timings", False) else None
    return code, envelope(args, result, elapsed)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "corpus":
        from .corpus import main_corpus

        return main_corpus(args)
    if not args.file:
        print(f"{TOOL} {args.command}: error: -f FILE is required", file=sys.stderr)
        return EXIT_USAGE
    try:
        session = parse_session(args.file)
    except SessionError as exc:
        print(f"{TOOL}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    code, report = run_command(session, args)
    if args.json:
        sys.stdout.write(canonical_json(report))
    elif "error" in report["result"]:
        print(f"{TOOL}: {report['result']['error']}", file=sys.stderr)
    else:
        sys.stdout.write(render_text(report["result"], args.command))
    return code


if __name__ == "__main__":
    sys.exit(main())
