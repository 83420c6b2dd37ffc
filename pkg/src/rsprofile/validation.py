"""Profile-type axioms for explicit graphs."""
from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field

from .model import (Constellation, ProfileGraph, Vertex, is_transitive)
from .perm import Permutation

DEGREE = "DEGREE"
ARC_NOT_VERTICAL = "ARC_NOT_VERTICAL"
ARC_NOT_BIJECTIVE = "ARC_NOT_BIJECTIVE"
COLUMN_INCOMPLETE = "COLUMN_INCOMPLETE"
EDGE_SHAPE = "EDGE_SHAPE"
DISCONNECTED = "DISCONNECTED"


@dataclass(frozen=True, order=True)
class Violation:
    code: str
    location: tuple
    message: str = field(compare=False)

    def __str__(self):
        loc = ",".join(map(str, self.location))
        return f"{self.code} ({loc}) {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    @property
    def codes(self) -> set[str]:
        return {v.code for v in self.violations}


class InvalidProfile(ValueError):
    def __init__(self, report: ValidationReport):
        self.report = report
        first = report.violations[0] if report.violations else "?"
        super().__init__(f"not a graph of profile type: {first}")


def _components(g: ProfileGraph) -> int:
    parent = {v: v for v in g.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for e in g.edges:
        union(*e.endpoints(g.q))
    for a in g.arcs:
        union(a.tail, a.head)
    return len({find(v) for v in g.vertices})


def is_connected(g: ProfileGraph | Constellation) -> bool:
    """
    Connectivity of the underlying undirected graph, orientation ignored.

    A constellation (or an implicit periodic profile) is answered through
    transitivity of its permutation group, which is equivalent.
    """
    if isinstance(g, Constellation):
        return is_transitive(g)
    if g.is_implicit:
        return is_transitive(g.constellation)
    return _components(g) <= 1


def validate_profile_type(g: ProfileGraph) -> ValidationReport:
    if g.is_implicit:
        raise ValueError("periodic profiles are validated structurally when they are built")
    q = g.q
    found: list[Violation] = []

    edge_deg: Counter = Counter()
    for e in g.edges:
        for v in e.endpoints(q):
            edge_deg[v] += 1
    outs: Counter = Counter()
    ins: Counter = Counter()
    for a in g.arcs:
        if not a.is_vertical:
            found.append(Violation(ARC_NOT_VERTICAL, tuple(a.tail) + tuple(a.head),
                                   f"arc {a} joins different columns"))
        outs[a.tail] += 1
        ins[a.head] += 1

    for v in sorted(g.vertices):
        slots = outs[v] + ins[v]
        if edge_deg[v] != 2 or slots != 2:
            found.append(Violation(DEGREE, tuple(v),
                                   f"vertex {v} has {edge_deg[v]} edges and {slots} arc slots"))
        elif outs[v] != 1:
            found.append(Violation(ARC_NOT_BIJECTIVE, tuple(v),
                                   f"vertex {v} has {outs[v]} outgoing and {ins[v]} incoming arcs"))

    for i in range(1, q + 1):
        for j in g.lines:
            if Vertex(i, j) not in g.vertices:
                found.append(Violation(COLUMN_INCOMPLETE, (i, j),
                                       f"line {j} has no vertex in column {i}"))

    counts = Counter(g.edges)
    for e, k in sorted(counts.items()):
        if k > 1:
            found.append(Violation(EDGE_SHAPE, (e.line, e.from_column),
                                   f"edge of line {e.line} at column {e.from_column} appears {k} times"))
    for j in g.lines:
        for i in range(1, q + 1):
            a, b = Vertex(i, j), Vertex(g.next_column(i), j)
            if counts[(j, i)] == 0 and a in g.vertices and b in g.vertices:
                what = "infinity edge" if i == q else f"edge at column {i}"
                found.append(Violation(EDGE_SHAPE, (j, i), f"line {j} lacks its {what}"))

    if g.vertices and _components(g) > 1:
        found.append(Violation(DISCONNECTED, (), f"graph has {_components(g)} components"))

    return ValidationReport(tuple(sorted(found)))


def require_valid(profile: ProfileGraph, allow_disconnected: bool = False) -> Constellation:
    """
    Constellation of a valid profile; raise ``InvalidProfile`` otherwise.

    Column ``i`` of the result maps each line to the head of its outgoing
    arc in column ``i``.
    """
    if profile.is_implicit:
        c = profile.constellation
        if not (allow_disconnected or is_transitive(c)):
            raise InvalidProfile(ValidationReport((
                Violation(DISCONNECTED, (), "permutation group is not transitive on the integers"),)))
        return c
    report = validate_profile_type(profile)
    if allow_disconnected:
        report = ValidationReport(tuple(v for v in report.violations if v.code != DISCONNECTED))
    if not report.ok:
        raise InvalidProfile(report)
    images: dict[int, dict[int, int]] = defaultdict(dict)
    for a in profile.arcs:
        images[a.column][a.from_line] = a.to_line
    n = profile.sheet_set.size
    return Constellation(tuple(
        Permutation(profile.sheet_set, tuple(images[i][j] for j in range(1, n + 1)))
        for i in range(1, profile.q + 1)))
