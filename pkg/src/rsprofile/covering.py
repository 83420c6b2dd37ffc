"""
Alternating paths and exact coverings of a profile.

A covering path starts at column 1, takes the arc of its current vertex,
then the edge to the next column, and so on through column ``q``; the edge
through infinity brings it back to column 1.  Arcs are always traversed in
their own direction, which makes the walk from a given line forced and the
exact covering unique when it exists.
"""
from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .model import (Arc, Constellation, EdgeSeg, ProfileGraph, Vertex,
                    monodromy_product)
from .perm import cycle_structure
from .validation import require_valid, validate_profile_type, InvalidProfile

ORACLE_LIMIT = 24


@dataclass(frozen=True)
class Walk:
    """
    Line sequence ``i_0, i_1, ..., i_q`` of a walk through all columns.

    ``i_k`` is the line after the arc of column ``k``.  With
    ``forward=False`` the arcs are traversed against their orientation.
    """

    lines: tuple[int, ...]
    forward: bool = True

    @property
    def q(self) -> int:
        return len(self.lines) - 1

    @property
    def start(self) -> int:
        return self.lines[0]

    @property
    def closed(self) -> bool:
        return self.lines[0] == self.lines[-1]

    @property
    def arcs(self) -> tuple[Arc, ...]:
        ls = self.lines
        if self.forward:
            return tuple(Arc.at(k, ls[k - 1], ls[k]) for k in range(1, len(ls)))
        return tuple(Arc.at(k, ls[k], ls[k - 1]) for k in range(1, len(ls)))

    @property
    def edges(self) -> tuple[EdgeSeg, ...]:
        return tuple(EdgeSeg(self.lines[k], k) for k in range(1, len(self.lines)))

    def steps(self) -> list[tuple[Arc | EdgeSeg, bool]]:
        """Alternating ``(item, forward)`` pairs, arc of column 1 first."""
        out = []
        for a, e in zip(self.arcs, self.edges):
            out.append((a, self.forward))
            out.append((e, True))
        return out

    def vertices(self) -> list[Vertex]:
        """Visited vertices, ending where the walk re-enters column 1."""
        ls = self.lines
        out = [Vertex(1, ls[0])]
        for k in range(1, len(ls)):
            out.append(Vertex(k, ls[k]))
            out.append(Vertex(k % self.q + 1, ls[k]))
        return out

    def __str__(self):
        return " -> ".join(map(str, self.vertices()))


@dataclass(frozen=True)
class CoveringPath(Walk):
    """A closed walk; see ``Walk``."""

    def __post_init__(self):
        if not self.closed:
            raise ValueError(f"walk {self.lines} does not close")


@dataclass(frozen=True)
class ExactCovering:
    """
    Paths sorted by their line at column 1.

    For a periodic profile ``period`` is set and ``paths`` holds one path
    per residue ``0..p-1``; translating each by multiples of ``p`` gives
    the whole covering.
    """

    paths: tuple[CoveringPath, ...]
    period: int | None = None

    def __len__(self):
        return len(self.paths)

    def __iter__(self):
        return iter(self.paths)

    def path_of(self) -> dict:
        """Map every arc and edge to the start line of the path holding it."""
        owner = {}
        for path in self.paths:
            for item in path.arcs + path.edges:
                owner[item] = path.start
        return owner


def _sweep(c: Constellation, start: int) -> Walk:
    lines = [start]
    for sigma in c.sigmas:
        lines.append(sigma(lines[-1]))
    return Walk(tuple(lines))


def forced_walk(profile: ProfileGraph, start_line: int) -> Walk:
    """
    Walk one sweep from ``(1, start_line)``.

    The result is closed when it comes back to ``(1, start_line)``;
    otherwise it is a failure trace that ends on column 1 at another line.
    """
    c = require_valid(profile)
    if start_line not in c.sheet_set:
        raise ValueError(f"line {start_line} not in {c.sheet_set}")
    walk = _sweep(c, start_line)
    return CoveringPath(walk.lines) if walk.closed else walk


def find_exact_covering(profile: ProfileGraph) -> ExactCovering | None:
    c = require_valid(profile)
    paths = []
    for j in c.sheet_set.labels():
        walk = _sweep(c, j)
        if not walk.closed:
            return None
        paths.append(CoveringPath(walk.lines))
    return ExactCovering(tuple(paths), c.sheet_set.size if c.sheet_set.periodic else None)


def first_open_walk(profile: ProfileGraph) -> Walk | None:
    """The first forced walk (by start line) that fails to close."""
    c = require_valid(profile)
    for j in c.sheet_set.labels():
        walk = _sweep(c, j)
        if not walk.closed:
            return walk
    return None


def is_coverable(profile: ProfileGraph) -> bool:
    return monodromy_product(require_valid(profile)).is_identity()


# -- checking candidate paths --

def _normalize_steps(steps) -> list[tuple[Arc | EdgeSeg, bool]]:
    if isinstance(steps, Walk):
        return steps.steps()
    out = []
    for s in steps:
        if isinstance(s, (Arc, EdgeSeg)):
            out.append((s, True))
        elif (isinstance(s, tuple) and len(s) == 2 and isinstance(s[0], (Arc, EdgeSeg))
              and isinstance(s[1], bool)):
            out.append((s[0], s[1]))
        else:
            raise ValueError(f"malformed path step {s!r}")
    if not out:
        raise ValueError("empty path")
    return out


def definition1_problems(profile: ProfileGraph, cycle) -> list[str]:
    """
    Reasons why ``cycle`` is not an alternating path; empty if it is one.

    ``cycle`` is a ``Walk`` or a sequence of steps, each an ``Arc``,
    an ``EdgeSeg``, or an ``(item, forward)`` pair.
    """
    steps = _normalize_steps(cycle)
    q = profile.q
    problems = []
    arcs, edges = set(profile.arcs), set(profile.edges)

    kinds = [isinstance(item, Arc) for item, _ in steps]
    if len(steps) % 2 or any(kinds[k] == kinds[(k + 1) % len(kinds)] for k in range(len(kinds))):
        problems.append("arcs and edges do not alternate")
    for item, _ in steps:
        if item not in (arcs if isinstance(item, Arc) else edges):
            problems.append(f"{item} is not in the profile")
    if len({fwd for item, fwd in steps if isinstance(item, Arc)}) > 1:
        problems.append("arcs are traversed in both orientations")

    ends = []
    for item, fwd in steps:
        a, b = (item.tail, item.head) if isinstance(item, Arc) else item.endpoints(q)
        ends.append((a, b) if fwd else (b, a))
    for k in range(len(ends)):
        if ends[k][1] != ends[(k + 1) % len(ends)][0]:
            what = "does not close" if k == len(ends) - 1 else f"breaks after step {k + 1}"
            problems.append(f"walk {what}")

    edge_steps = [(item, fwd) for item, fwd in steps if isinstance(item, EdgeSeg)]
    if any(not fwd for _, fwd in edge_steps):
        problems.append("an edge is traversed towards a lower column")
    wraps = sum(1 for item, fwd in edge_steps if fwd and item.is_infinity_edge(q))
    if wraps != 1:
        problems.append(f"column indices wrap {wraps} times instead of once")

    visited = [ends[k][0] for k, (item, _) in enumerate(steps)
               if not (isinstance(item, Arc) and item.is_loop)]
    if len(set(visited)) != len(visited):
        problems.append("cycle is not elementary after deleting loops")
    return problems


def is_definition1_path(profile: ProfileGraph, cycle) -> bool:
    return not definition1_problems(profile, cycle)


@dataclass(frozen=True)
class CoverCheck:
    ok: bool
    bad_paths: tuple[tuple[int, tuple[str, ...]], ...] = ()
    missing: tuple = ()
    duplicated: tuple = ()

    def __bool__(self):
        return self.ok

    def diagnostics(self) -> list[str]:
        out = [f"path {k + 1}: {'; '.join(p)}" for k, p in self.bad_paths]
        out += [f"uncovered: {item}" for item in self.missing]
        out += [f"covered more than once: {item}" for item in self.duplicated]
        return out


def _item_key(item):
    # edges before arcs; tuples of different shapes never meet in a comparison
    return isinstance(item, Arc), item


def verify_exact_covering(profile: ProfileGraph, candidate: Iterable) -> CoverCheck:
    """Check that every candidate is a path and that together they use each arc and edge once."""
    if profile.is_implicit:
        raise ValueError("verification needs an explicit finite profile")
    bad = []
    used: Counter = Counter()
    for k, path in enumerate(candidate):
        problems = definition1_problems(profile, path)
        if problems:
            bad.append((k, tuple(problems)))
        for item, _ in _normalize_steps(path):
            used[item] += 1
    everything = Counter(profile.arcs) + Counter(profile.edges)
    missing = tuple(sorted((item for item in everything if used[item] < everything[item]),
                           key=_item_key))
    duplicated = tuple(sorted((item for item in used if used[item] > everything[item]),
                              key=_item_key))
    return CoverCheck(not (bad or missing or duplicated), tuple(bad), missing, duplicated)


# -- independent oracle --

def _all_paths(profile: ProfileGraph, allow_reversed: bool) -> list[Walk]:
    q = profile.q
    out_arcs = defaultdict(list)
    in_arcs = defaultdict(list)
    for a in set(profile.arcs):
        out_arcs[a.tail].append(a)
        in_arcs[a.head].append(a)
    edge_from = defaultdict(list)
    for e in set(profile.edges):
        edge_from[Vertex(e.from_column, e.line)].append(e)

    found = []
    orientations = (True, False) if allow_reversed else (True,)

    def extend(v: Vertex, lines: list[int], forward: bool, start: Vertex):
        column = v.column
        choices = out_arcs[v] if forward else in_arcs[v]
        for a in sorted(choices):
            u = a.head if forward else a.tail
            if not a.is_vertical:
                continue
            for e in edge_from[u]:
                nxt = e.endpoints(q)[1]
                if e.is_infinity_edge(q):
                    if nxt == start:
                        walk = Walk(tuple(lines + [u.line]), forward)
                        if is_definition1_path(profile, walk.steps()):
                            found.append(walk)
                elif nxt.column == column + 1:
                    extend(nxt, lines + [u.line], forward, start)

    for forward in orientations:
        for v in sorted(x for x in profile.vertices if x.column == 1):
            extend(v, [v.line], forward, v)
    return found


def backtracking_cover_oracle(profile: ProfileGraph, allow_reversed: bool = False) -> ExactCovering | None:
    """
    Exhaustive search for an exact covering.

    Every alternating path of the explicit graph is listed by depth-first
    search over its items, then a set of paths that uses every arc and edge
    exactly once is searched for by backtracking (most constrained item
    first).  No permutation algebra is involved.  With ``allow_reversed``
    paths that run against the arcs are admitted too.
    """
    if profile.is_implicit:
        raise ValueError("the oracle needs an explicit finite profile")
    n = profile.sheet_set.size
    if n * profile.q > ORACLE_LIMIT:
        raise ValueError(f"n*q = {n * profile.q} exceeds the oracle limit {ORACLE_LIMIT}")
    report = validate_profile_type(profile)
    if not report.ok:
        raise InvalidProfile(report)

    paths = _all_paths(profile, allow_reversed)
    items_of = [frozenset(w.arcs + w.edges) for w in paths]
    holders = defaultdict(list)
    for k, items in enumerate(items_of):
        for item in items:
            holders[item].append(k)
    universe = set(profile.arcs) | set(profile.edges)

    chosen: list[int] = []

    def search(uncovered: set) -> bool:
        if not uncovered:
            return True
        item = min(uncovered, key=lambda x: (len(holders[x]), isinstance(x, Arc), x))
        for k in holders[item]:
            if items_of[k] <= uncovered:
                chosen.append(k)
                if search(uncovered - items_of[k]):
                    return True
                chosen.pop()
        return False

    if not search(universe):
        return None
    walks = sorted((paths[k] for k in chosen), key=lambda w: (w.start, not w.forward))
    return ExactCovering(tuple(CoveringPath(w.lines, w.forward) for w in walks))


# -- beta cycles and mu objects --

@dataclass(frozen=True)
class BetaCycle:
    line: int
    edges: tuple[EdgeSeg, ...]

    def vertices(self, q: int) -> set[Vertex]:
        return {v for e in self.edges for v in e.endpoints(q)}


def beta_cycles(profile: ProfileGraph) -> list[BetaCycle]:
    """One cycle of ``q`` edges per line, in column order."""
    if profile.is_implicit:
        raise ValueError("beta cycles are listed for finite profiles only")
    by_line = defaultdict(list)
    for e in profile.edges:
        by_line[e.line].append(e)
    return [BetaCycle(j, tuple(sorted(by_line[j], key=lambda e: e.from_column)))
            for j in profile.lines]


@dataclass(frozen=True)
class MuObject:
    """
    A cycle of the permutation of one column.

    A contour lists its lines in arc order and has branch order
    ``len(lines) - 1``.  An infinite path has a nonzero ``shift``: ``lines``
    is one stretch of it, and the path continues with the same stretch
    translated by ``shift``.  ``period`` is set when the object stands for
    a family repeated with that period (periodic sheet sets).
    """

    column: int
    lines: tuple[int, ...]
    shift: int = 0
    period: int | None = None

    @property
    def infinite(self) -> bool:
        return self.shift != 0

    @property
    def order(self) -> float:
        return math.inf if self.infinite else len(self.lines) - 1

    @property
    def is_loop(self) -> bool:
        return not self.infinite and len(self.lines) == 1

    @property
    def is_branch_point(self) -> bool:
        return self.order > 0


def mu_objects(profile: ProfileGraph, column: int) -> list[MuObject]:
    """Contours and infinite paths of the permutation of ``column``; loops are length-1 contours."""
    return column_mu_objects(require_valid(profile), column)


def column_mu_objects(c: Constellation, column: int) -> list[MuObject]:
    sigma = c[column]
    p = sigma.period
    out = []
    for orbit in cycle_structure(sigma):
        if not orbit.infinite:
            out.append(MuObject(column, orbit.elements, 0, p))
            continue
        # a class with shift d holds |d|/p distinct orbits, started at r, r+p, ...
        for t in range(orbit.count):
            start = orbit.elements[0] + t * p
            stretch = [start]
            for _ in range(len(orbit.elements) - 1):
                stretch.append(sigma(stretch[-1]))
            out.append(MuObject(column, tuple(stretch), orbit.shift, p))
    return out
