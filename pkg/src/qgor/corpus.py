"""Corpus runner: every ``*.qg`` session in a directory is paired with a
``*.expect.json`` sidecar listing commands and expected result fields."""

from __future__ import annotations

import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from importlib import resources
from pathlib import Path

from . import __version__
from .cli import EXIT_OK, TOOL, build_parser, canonical_json, run_command
from .session import SessionError, parse_session

EXIT_MISMATCH = 1
_MISSING = object()


def bundled_corpus() -> Path:
    return Path(str(resources.files("qgor") / "data" / "corpus"))


def _lookup(obj, path: str):
    for part in path.split("."):
        if isinstance(obj, dict) and part in obj:
            obj = obj[part]
        elif isinstance(obj, list) and part.isdigit() and int(part) < len(obj):
            obj = obj[int(part)]
        else:
            return _MISSING
    return obj


def _argv(command: str, path: Path, spec: dict, seed: int) -> list[str]:
    argv = [command, "-f", str(path), "--seed", str(seed)]
    for key, value in sorted(spec.items()):
        flag = "--" + key
        if isinstance(value, list):
            for v in value:
                argv += [flag, str(v)]
        elif value is True:
            argv.append(flag)
        else:
            argv += [flag, str(value)]
    return argv


def run_entry(path: str, seed: int) -> dict:
    """Run every check of one session file; never raises."""
    path = Path(path)
    sidecar = path.with_suffix(".expect.json")
    entry = {"file": path.name, "checks": [], "errors": []}
    if not sidecar.exists():
        entry["errors"].append(f"missing sidecar {sidecar.name}")
        return entry
    try:
        expect = json.loads(sidecar.read_text(encoding="utf-8"))
        session = parse_session(path)
    except (ValueError, SessionError) as exc:
        entry["errors"].append(str(exc))
        return entry
    entry["stretch"] = bool(expect.get("stretch", False))
    parser = build_parser()
    for k, check in enumerate(expect.get("checks", [])):
        name = check.get("name", f"{check['command']}#{k}")
        args = parser.parse_args(_argv(check["command"], path, check.get("args", {}), seed))
        code, report = run_command(session, args)
        report["inputs"]["file"] = path.name
        mismatches = []
        want_exit = check.get("exit", EXIT_OK)
        if code != want_exit:
            mismatches.append({"path": "exit", "expected": want_exit, "actual": code})
        for key, want in sorted(check.get("expect", {}).items()):
            got = _lookup(report["result"], key)
            if got is _MISSING:
                mismatches.append({"path": key, "expected": want, "actual": None, "missing": True})
            elif got != want:
                mismatches.append({"path": key, "expected": want, "actual": got})
        entry["checks"].append({"name": name, "command": check["command"], "passed": not mismatches,
                                "mismatches": mismatches, "report": report})
    return entry


def _is_stretch(path: Path) -> bool:
    sidecar = path.with_suffix(".expect.json")
    try:
        return bool(json.loads(sidecar.read_text(encoding="utf-8")).get("stretch", False))
    except (OSError, ValueError):
        return False


def run_corpus(directory=None, seed: int = 0, jobs: int | None = None, stretch: bool = False) -> dict:
    directory = Path(directory) if directory else bundled_corpus()
    files = sorted(p for p in directory.glob("*.qg"))
    skipped = [p.name for p in files if not stretch and _is_stretch(p)]
    files = [p for p in files if p.name not in skipped]
    jobs = jobs or min(4, os.cpu_count() or 1)
    if jobs <= 1 or len(files) <= 1:
        entries = [run_entry(str(p), seed) for p in files]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            entries = list(pool.map(run_entry, [str(p) for p in files], [seed] * len(files)))
    checks = [c for e in entries for c in e["checks"]]
    failures = [f"{e['file']}: {c['name']}" for e in entries for c in e["checks"] if not c["passed"]]
    failures += [f"{e['file']}: {msg}" for e in entries for msg in e["errors"]]
    return {
        "entries": entries,
        "skipped": skipped,
        "summary": {"files": len(entries), "checks": len(checks),
                    "passed": sum(c["passed"] for c in checks), "failures": failures},
    }


def summary_table(result: dict) -> str:
    lines = [f"{'file':<28} {'checks':>6} {'passed':>6}  status"]
    for e in result["entries"]:
        n = len(e["checks"])
        ok = sum(c["passed"] for c in e["checks"])
        status = "ok" if ok == n and not e["errors"] else "FAIL"
        lines.append(f"{e['file']:<28} {n:>6} {ok:>6}  {status}")
        for c in e["checks"]:
            for m in c["mismatches"]:
                lines.append(f"    {c['name']}: {m['path']} expected {m['expected']!r} got {m['actual']!r}")
        for msg in e["errors"]:
            lines.append(f"    error: {msg}")
    for name in result["skipped"]:
        lines.append(f"{name:<28} {'-':>6} {'-':>6}  skipped (stretch)")
    s = result["summary"]
    lines.append(f"total: {s['passed']}/{s['checks']} checks passed, {len(s['failures'])} failure(s)")
    return "\n".join(lines) + "\n"


def main_corpus(args) -> int:
    directory = Path(args.directory) if args.directory else bundled_corpus()
    if not directory.is_dir():
        print(f"{TOOL}: corpus directory {directory} not found", file=sys.stderr)
        return EXIT_MISMATCH
    result = run_corpus(directory, args.seed, args.jobs, args.stretch)
    if args.json:
        report = {
            "tool": TOOL, "version": __version__, "seed": args.seed, "command": "corpus",
            "inputs": {"corpus": directory.name, "stretch": args.stretch},
            "result": result, "budgets": {"n_max": 6, "t_max": 20, "window": 2}, "timings_ms": None,
        }
        sys.stdout.write(canonical_json(report))
    else:
        sys.stdout.write(summary_table(result))
    return EXIT_OK if not result["summary"]["failures"] else EXIT_MISMATCH
