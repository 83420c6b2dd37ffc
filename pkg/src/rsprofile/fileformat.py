"""
Reading and writing ``.prof`` profile documents.

::

    PROFILE v1
    SHEETS FINITE 2          # or: SHEETS PERIODIC <p>
    COLUMNS 4
    SIGMA 1 = (1 2)          # cycles; fixed points omitted; identity is ()
    SIGMA 2 = MAP 0->1 1->0  # periodic sheets: images of residues 0..p-1
    EDGE <line> <column>     # explicit form, finite sheets only
    ARC <column> <from> > <to>

A document uses either SIGMA lines (one per column) or EDGE/ARC lines.
The SIGMA form is canonical and is what ``serialize_profile`` writes.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .model import Arc, Constellation, EdgeSeg, ProfileGraph, from_constellation
from .perm import Finite, PeriodicIntegers, Permutation, SheetSet
from .validation import require_valid

MAX_SIZE = 10_000

_TOKEN = re.compile(r"->|[()=>]|-?\d+|[A-Za-z_][A-Za-z0-9_]*|\S")


class ProfileParseError(ValueError):
    """Rejected input; ``line`` and ``column`` are 1-based."""

    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column
        self.message = message


@dataclass(frozen=True)
class ProfileDocument:
    sheet_set: SheetSet
    q: int
    sigmas: tuple[Permutation, ...] | None = None
    edges: tuple[EdgeSeg, ...] | None = None
    arcs: tuple[Arc, ...] | None = None
    version: int = 1

    @property
    def is_explicit(self) -> bool:
        return self.sigmas is None

    def profile(self) -> ProfileGraph:
        if self.is_explicit:
            return ProfileGraph.explicit(self.q, self.sheet_set.size, self.edges, self.arcs)
        return from_constellation(Constellation(self.sigmas))

    def constellation(self) -> Constellation:
        """Permutations of the document; explicit documents must be valid (connectivity aside)."""
        if self.is_explicit:
            return require_valid(self.profile(), allow_disconnected=True)
        return Constellation(self.sigmas)

    @classmethod
    def from_constellation(cls, c: Constellation) -> "ProfileDocument":
        return cls(c.sheet_set, c.q, tuple(c.sigmas))

    @classmethod
    def from_profile(cls, profile: ProfileGraph) -> "ProfileDocument":
        if profile.is_implicit:
            return cls.from_constellation(profile.constellation)
        return cls(profile.sheet_set, profile.q, None,
                   tuple(sorted(profile.edges)), tuple(sorted(profile.arcs)))


class _Line:
    def __init__(self, number: int, text: str):
        self.number = number
        self.tokens = [(m.group(), m.start() + 1) for m in _TOKEN.finditer(text)]
        self.pos = 0
        self.end_column = len(text.rstrip()) + 1

    def error(self, message: str, at: int | None = None) -> ProfileParseError:
        if at is None:
            at = self.tokens[self.pos][1] if self.pos < len(self.tokens) else self.end_column
        return ProfileParseError(self.number, at, message)

    def peek(self) -> str | None:
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def column(self) -> int:
        return self.tokens[self.pos][1] if self.pos < len(self.tokens) else self.end_column

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if tok is None:
            raise self.error(f"expected {expected!r}" if expected else "unexpected end of line")
        if expected is not None and tok != expected:
            raise self.error(f"expected {expected!r}, found {tok!r}")
        self.pos += 1
        return tok

    def integer(self, what: str, *, lo: int | None = None, hi: int | None = None) -> tuple[int, int]:
        at = self.column()
        tok = self.peek()
        if tok is None or not re.fullmatch(r"-?\d+", tok):
            raise self.error(f"expected {what}" + (f", found {tok!r}" if tok else ""))
        self.pos += 1
        value = int(tok)
        if lo is not None and value < lo:
            raise self.error(f"{what} {value} is below {lo}", at)
        if hi is not None and value > hi:
            raise self.error(f"{what} {value} is above {hi}", at)
        return value, at

    def finish(self) -> None:
        if self.peek() is not None:
            raise self.error(f"unexpected {self.peek()!r}")


def _lines(text: str | bytes):
    if isinstance(text, bytes):
        try:
            text = text.decode("ascii")
        except UnicodeDecodeError as exc:
            prefix = text[:exc.start]
            line = prefix.count(b"\n") + 1
            column = exc.start - (prefix.rfind(b"\n") + 1) + 1
            raise ProfileParseError(line, column, "non-ASCII byte") from None
    for number, raw in enumerate(text.split("\n"), start=1):
        raw = raw.rstrip("\r")
        for k, ch in enumerate(raw):
            if ch == "#":
                break
            if not (ch == "\t" or " " <= ch <= "~"):
                raise ProfileParseError(number, k + 1, f"invalid character {ch!r}")
        body = raw.split("#", 1)[0]
        if body.strip():
            yield _Line(number, body)


def _parse_cycles(ln: _Line, n: int) -> Permutation:
    cycles = []
    seen = set()
    if ln.peek() is None:
        raise ln.error("expected cycles such as (1 2) or ()")
    while ln.peek() is not None:
        ln.take("(")
        cycle = []
        while ln.peek() != ")":
            if ln.peek() is None:
                raise ln.error("unclosed cycle; expected ')'")
            label, at = ln.integer("sheet label")
            if not 1 <= label <= n:
                raise ln.error(f"label {label} outside 1..{n}", at)
            if label in seen:
                raise ln.error(f"label {label} repeated", at)
            seen.add(label)
            cycle.append(label)
        ln.take(")")
        if cycle:
            cycles.append(cycle)
        elif len(cycles) or ln.peek() is not None or seen:
            raise ln.error("empty cycle () must stand alone")
    return Permutation.from_cycles(n, cycles)


def _parse_map(ln: _Line, p: int) -> Permutation:
    images: dict[int, int] = {}
    start = ln.column()
    while ln.peek() is not None:
        r, at = ln.integer("residue", lo=0, hi=p - 1)
        if r in images:
            raise ln.error(f"residue {r} mapped twice", at)
        ln.take("->")
        images[r], _ = ln.integer("image")
    missing = [r for r in range(p) if r not in images]
    if missing:
        raise ln.error(f"MAP lacks residue {missing[0]}", start)
    try:
        return Permutation.periodic_map([images[r] for r in range(p)])
    except ValueError:
        raise ln.error(f"MAP images are not a bijection modulo {p}", start) from None


def parse_profile(text: str | bytes) -> ProfileDocument:
    """Parse a document; every rejection is a ``ProfileParseError`` with a position."""
    lines = list(_lines(text))
    if not lines:
        raise ProfileParseError(1, 1, "empty document; expected 'PROFILE v1'")

    head = lines[0]
    head.take("PROFILE")
    if head.peek() != "v1":
        raise head.error("unsupported version; expected 'v1'")
    head.take()
    head.finish()

    sheet_set: SheetSet | None = None
    q: int | None = None
    sigmas: dict[int, Permutation] = {}
    edges: list[EdgeSeg] = []
    arcs: list[Arc] = []
    form: str | None = None
    last = lines[0]

    for ln in lines[1:]:
        last = ln
        keyword = ln.peek()
        if keyword == "SHEETS":
            if sheet_set is not None:
                raise ln.error("SHEETS declared twice")
            if form is not None:
                raise ln.error("SHEETS must come before SIGMA/EDGE/ARC lines")
            ln.take()
            kind = ln.peek()
            if kind not in ("FINITE", "PERIODIC"):
                raise ln.error("expected FINITE or PERIODIC")
            ln.take()
            size, _ = ln.integer("sheet count" if kind == "FINITE" else "period", lo=1, hi=MAX_SIZE)
            ln.finish()
            sheet_set = Finite(size) if kind == "FINITE" else PeriodicIntegers(size)
        elif keyword == "COLUMNS":
            if q is not None:
                raise ln.error("COLUMNS declared twice")
            if form is not None:
                raise ln.error("COLUMNS must come before SIGMA/EDGE/ARC lines")
            ln.take()
            q, _ = ln.integer("column count", lo=1, hi=MAX_SIZE)
            ln.finish()
        elif keyword in ("SIGMA", "EDGE", "ARC"):
            if sheet_set is None or q is None:
                raise ln.error(f"{keyword} before SHEETS and COLUMNS")
            this_form = "sigma" if keyword == "SIGMA" else "explicit"
            if form is not None and form != this_form:
                raise ln.error("SIGMA lines cannot be mixed with EDGE/ARC lines")
            form = this_form
            ln.take()
            if keyword == "SIGMA":
                i, at = ln.integer("column index", lo=1, hi=q)
                if i in sigmas:
                    raise ln.error(f"duplicate SIGMA {i}", at)
                ln.take("=")
                if sheet_set.periodic:
                    if ln.peek() != "MAP":
                        raise ln.error("periodic sheets need 'MAP r->image ...'")
                    ln.take()
                    sigmas[i] = _parse_map(ln, sheet_set.size)
                else:
                    if ln.peek() == "MAP":
                        raise ln.error("MAP is only allowed with PERIODIC sheets")
                    sigmas[i] = _parse_cycles(ln, sheet_set.size)
            else:
                if sheet_set.periodic:
                    raise ln.error("EDGE/ARC lines are only allowed with FINITE sheets", 1)
                n = sheet_set.size
                if keyword == "EDGE":
                    line, _ = ln.integer("line", lo=1, hi=n)
                    column, _ = ln.integer("column", lo=1, hi=q)
                    edges.append(EdgeSeg(line, column))
                else:
                    column, _ = ln.integer("column", lo=1, hi=q)
                    a, _ = ln.integer("line", lo=1, hi=n)
                    ln.take(">")
                    b, _ = ln.integer("line", lo=1, hi=n)
                    arcs.append(Arc.at(column, a, b))
            ln.finish()
        else:
            raise ln.error(f"unknown keyword {keyword!r}")

    if sheet_set is None:
        raise last.error("missing SHEETS line", last.end_column)
    if q is None:
        raise last.error("missing COLUMNS line", last.end_column)
    if form is None:
        raise last.error("no SIGMA or EDGE/ARC lines", last.end_column)
    if form == "sigma":
        missing = [i for i in range(1, q + 1) if i not in sigmas]
        if missing:
            raise last.error(f"missing SIGMA {missing[0]}", last.end_column)
        return ProfileDocument(sheet_set, q, tuple(sigmas[i] for i in range(1, q + 1)))
    return ProfileDocument(sheet_set, q, None, tuple(edges), tuple(arcs))


def _header(doc: ProfileDocument) -> list[str]:
    kind = "PERIODIC" if doc.sheet_set.periodic else "FINITE"
    return ["PROFILE v1", f"SHEETS {kind} {doc.sheet_set.size}", f"COLUMNS {doc.q}"]


def serialize_profile(doc: ProfileDocument, form: str = "sigma") -> str:
    """
    Canonical text of a document.

    ``form="sigma"`` writes one SIGMA line per column with cycles started
    at their smallest label and sorted by it.  ``form="explicit"`` writes
    sorted EDGE then ARC lines (finite sheets only).
    """
    out = _header(doc)
    if form == "sigma":
        c = doc.constellation()
        out += [f"SIGMA {i} = {c[i]}" for i in range(1, c.q + 1)]
    elif form == "explicit":
        if doc.sheet_set.periodic:
            raise ValueError("periodic documents have no explicit form")
        g = doc.profile()
        out += [f"EDGE {e.line} {e.from_column}" for e in sorted(g.edges)]
        out += [f"ARC {a.column} {a.from_line} > {a.to_line}"
                for a in sorted(g.arcs, key=lambda a: (a.column, a.from_line, a.to_line))]
    else:
        raise ValueError(f"unknown form {form!r}")
    return "\n".join(out) + "\n"
