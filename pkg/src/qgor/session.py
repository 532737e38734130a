"""Session files: semicolon-terminated declarations of rings, ideals and
sequences.

    ring R = F32003[X,Y,Z,T] grevlex;
    ideal I = X*Y, X*T, Z*Y, Z*T;   # first ideal after a ring is its defining ideal
    seq s = X+Y, Z+T;

Comments run from ``#`` or ``//`` to the end of the line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .fields import parse_field
from .ideals import IdealHandle
from .orders import GREVLEX, LEX
from .parsing import PolynomialSyntaxError
from .poly import PolynomialRing
from .rings import RingSpec


class SessionError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None, path=None):
        self.line = line
        self.column = column
        self.path = path
        where = ""
        if line is not None:
            where = f"{path or '<session>'}:{line}:{column}: "
        super().__init__(where + message)


_NAME = r"[A-Za-z_][A-Za-z_0-9]*"
_RING_RE = re.compile(
    rf"^ring\s+(?P<name>{_NAME})\s*=\s*(?P<field>[^\[\s]+)\s*\[(?P<vars>[^\]]*)\]\s*(?P<order>{_NAME})?\s*$",
    re.S,
)
_DECL_RE = re.compile(rf"^(?P<kind>ideal|seq)\s+(?P<name>{_NAME})\s*=(?P<body>.*)$", re.S)
_ORDERS = {"grevlex": GREVLEX, "lex": LEX}


@dataclass
class Declaration:
    kind: str
    name: str
    line: int
    column: int


@dataclass
class RingEntry:
    name: str
    S: PolynomialRing
    decl: Declaration
    defining: str | None = None
    _spec: RingSpec | None = None

    def spec(self, session: Session) -> RingSpec:
        if self._spec is None:
            gens = session.ideals[self.defining].gens if self.defining else []
            self._spec = RingSpec(self.S, gens, self.name)
        return self._spec


@dataclass
class IdealEntry:
    name: str
    ring: str
    gens: list
    decl: Declaration
    defining: bool = False


@dataclass
class SeqEntry:
    name: str
    ring: str
    elements: list
    decl: Declaration


@dataclass
class Session:
    path: str | None = None
    rings: dict = field(default_factory=dict)
    ideals: dict = field(default_factory=dict)
    seqs: dict = field(default_factory=dict)
    order: list = field(default_factory=list)

    def names(self):
        return [d.name for d in self.order]

    def ring(self, name: str | None = None) -> RingSpec:
        return self.ring_entry(name).spec(self)

    def ring_entry(self, name: str | None = None) -> RingEntry:
        if name is None:
            if not self.rings:
                raise SessionError("session declares no ring")
            if len(self.rings) > 1:
                raise SessionError("session declares several rings; pick one with --ring")
            return next(iter(self.rings.values()))
        if name not in self.rings:
            raise SessionError(f"undefined ring {name!r}")
        return self.rings[name]

    def ideal(self, name: str) -> tuple[RingSpec, IdealHandle]:
        """The ideal as an ideal of its ring, lifted to S (defining ideal added)."""
        if name not in self.ideals:
            raise SessionError(f"undefined ideal {name!r}")
        entry = self.ideals[name]
        R = self.ring(entry.ring)
        return R, R.ideal(entry.gens)

    def seq(self, name: str):
        if name not in self.seqs:
            raise SessionError(f"undefined sequence {name!r}")
        entry = self.seqs[name]
        return self.ring(entry.ring), list(entry.elements)

    def default_ideal(self, ring: str | None = None) -> str | None:
        entry = self.ring_entry(ring)
        return entry.defining


def _strip_comments(text: str) -> str:
    # blank out comments but keep offsets so positions stay exact
    out = []
    for line in text.split("\n"):
        cut = len(line)
        for marker in ("#", "//"):
            k = line.find(marker)
            if k != -1:
                cut = min(cut, k)
        out.append(line[:cut] + " " * (len(line) - cut))
    return "\n".join(out)


def _position(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    start = text.rfind("\n", 0, offset) + 1
    return line, offset - start + 1


def _split_top_level(body: str, base: int):
    """Split on commas outside parentheses; yield (piece, absolute offset)."""
    depth = 0
    start = 0
    for i, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            yield body[start:i], base + start
            start = i + 1
    yield body[start:], base + start


def parse_session_text(text: str, path=None) -> Session:
    clean = _strip_comments(text)
    session = Session(str(path) if path is not None else None)
    current: RingEntry | None = None
    seen: dict[str, Declaration] = {}

    def fail(msg, offset):
        line, col = _position(text, offset)
        raise SessionError(msg, line, col, path)

    pos = 0
    for m in re.finditer(r";", clean):
        chunk = clean[pos:m.start()]
        offset = pos + (len(chunk) - len(chunk.lstrip()))
        stmt = chunk.strip()
        pos = m.end()
        if not stmt:
            continue
        line, col = _position(text, offset)
        keyword = stmt.split(None, 1)[0]
        if keyword == "ring":
            rm = _RING_RE.match(stmt)
            if not rm:
                fail("malformed ring declaration; expected 'ring NAME = FIELD[v1,...] [grevlex|lex]'", offset)
            name = rm.group("name")
            try:
                K = parse_field(rm.group("field"))
            except ValueError as exc:
                fail(str(exc), offset + rm.start("field"))
            variables = [v.strip() for v in rm.group("vars").split(",") if v.strip()]
            if not variables:
                fail("a ring needs at least one variable", offset)
            bad = [v for v in variables if not re.fullmatch(_NAME, v)]
            if bad:
                fail(f"invalid variable name {bad[0]!r}", offset)
            if len(set(variables)) != len(variables):
                fail("repeated variable name", offset)
            order_name = rm.group("order") or "grevlex"
            if order_name not in _ORDERS:
                fail(f"unknown monomial order {order_name!r}", offset + rm.start("order"))
            decl = Declaration("ring", name, line, col)
            _claim(seen, decl, path)
            current = RingEntry(name, PolynomialRing(K, variables, _ORDERS[order_name]), decl)
            session.rings[name] = current
            session.order.append(decl)
            continue
        dm = _DECL_RE.match(stmt)
        if not dm:
            fail(f"unknown declaration starting with {keyword!r}", offset)
        if current is None:
            fail(f"{dm.group('kind')} declared before any ring", offset)
        kind, name = dm.group("kind"), dm.group("name")
        body_start = offset + dm.start("body")
        polys = []
        for piece, at in _split_top_level(dm.group("body"), body_start):
            src = clean[at:at + len(piece)]
            if not piece.strip():
                if kind == "ideal" and not polys and not dm.group("body").strip():
                    break
                fail("empty polynomial in list", at)
            try:
                f = current.S.parse(src)
            except PolynomialSyntaxError as exc:
                fail(str(exc).rsplit(" at position", 1)[0], at + exc.position)
            except ValueError as exc:
                fail(str(exc), at + len(piece) - len(piece.lstrip()))
            if not f.is_homogeneous():
                fail(f"polynomial {f} is not homogeneous", at + len(piece) - len(piece.lstrip()))
            polys.append(f)
        decl = Declaration(kind, name, line, col)
        _claim(seen, decl, path)
        session.order.append(decl)
        if kind == "ideal":
            entry = IdealEntry(name, current.name, polys, decl)
            if current.defining is None:
                entry.defining = True
                current.defining = name
            session.ideals[name] = entry
        else:
            session.seqs[name] = SeqEntry(name, current.name, polys, decl)
    tail = clean[pos:].strip()
    if tail:
        offset = pos + (len(clean[pos:]) - len(clean[pos:].lstrip()))
        fail("declaration is missing its terminating ';'", offset)
    return session


def _claim(seen: dict, decl: Declaration, path):
    prev = seen.get(decl.name)
    if prev is not None:
        raise SessionError(
            f"duplicate name {decl.name!r}: {prev.kind} at line {prev.line}:{prev.column} "
            f"and {decl.kind} at line {decl.line}:{decl.column}",
            decl.line, decl.column, path,
        )
    seen[decl.name] = decl


def parse_session(path) -> Session:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise SessionError(f"cannot read session file {path}: {exc}") from exc
    return parse_session_text(text, path)
