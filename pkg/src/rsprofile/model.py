"""
Constellations and profile graphs.

A profile has one horizontal line per sheet and one column per base point.
The vertex ``(i, j)`` sits on line ``j`` above base point ``i``.  Each line
carries ``q`` edges: ``EdgeSeg(j, i)`` joins ``(i, j)`` to ``(i + 1, j)``,
and ``EdgeSeg(j, q)`` is the edge through infinity back to column 1.  Each
column carries oriented vertical arcs realizing the sheet permutation of
that base point.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, NamedTuple

from .perm import Permutation, SheetSet, SheetSetMismatch, compose, common_period


@dataclass(frozen=True)
class Constellation:
    """Tuple ``(sigma_1, ..., sigma_q)`` of permutations of one sheet set."""

    sigmas: tuple[Permutation, ...]

    def __post_init__(self):
        sigmas = tuple(self.sigmas)
        if not sigmas:
            raise ValueError("a constellation needs at least one column")
        kinds = {s.sheet_set.periodic for s in sigmas}
        if len(kinds) > 1:
            raise SheetSetMismatch("mixed finite and periodic permutations")
        if sigmas[0].sheet_set.periodic:
            p = common_period(sigmas)
            sigmas = tuple(s.with_period(p) for s in sigmas)
        elif len({s.sheet_set for s in sigmas}) > 1:
            raise SheetSetMismatch("permutations act on different sheet sets")
        object.__setattr__(self, "sigmas", sigmas)

    @property
    def q(self) -> int:
        return len(self.sigmas)

    @property
    def sheet_set(self) -> SheetSet:
        return self.sigmas[0].sheet_set

    def __getitem__(self, column: int) -> Permutation:
        """1-based column access."""
        if not 1 <= column <= self.q:
            raise IndexError(f"column {column} not in 1..{self.q}")
        return self.sigmas[column - 1]

    def __iter__(self):
        return iter(self.sigmas)

    def __len__(self):
        return len(self.sigmas)


def monodromy_product(c: Constellation) -> Permutation:
    """``sigma_q o ... o sigma_1`` with ``sigma_1`` applied first."""
    return reduce(compose, c.sigmas)


def prefix_products(c: Constellation) -> list[Permutation]:
    """``[id, sigma_1, sigma_2 o sigma_1, ...]``; entry ``k`` maps column-1 lines to lines after column ``k``."""
    out = [Permutation.identity(c.sheet_set)]
    for s in c.sigmas:
        out.append(compose(out[-1], s))
    return out


def orbit_count(c: Constellation) -> int | float:
    """Number of orbits of the group generated by the sigmas (``inf`` if infinite)."""
    ss = c.sheet_set
    if not ss.periodic:
        return len(_finite_orbits(c))
    # Residue graph with integer lifts: element r + p*t is the pair (r, t) and
    # sigma sends (r, t) to (sigma(r) % p, t + sigma(r) // p).
    p = ss.size
    adj: dict[int, list[tuple[int, int]]] = {r: [] for r in range(p)}
    for s in c.sigmas:
        for r in range(p):
            a = s(r)
            adj[r].append((a % p, a // p))
            adj[a % p].append((r, -(a // p)))
    potential: dict[int, int] = {}
    components = 0
    g = 0
    for root in range(p):
        if root in potential:
            continue
        components += 1
        potential[root] = 0
        todo = deque([root])
        while todo:
            r = todo.popleft()
            for r2, w in adj[r]:
                if r2 not in potential:
                    potential[r2] = potential[r] + w
                    todo.append(r2)
                else:
                    g = math.gcd(g, potential[r] + w - potential[r2])
    return math.inf if g == 0 else components * g


def _finite_orbits(c: Constellation) -> list[set[int]]:
    seen: set[int] = set()
    orbits = []
    for start in c.sheet_set.labels():
        if start in seen:
            continue
        orbit = {start}
        todo = [start]
        while todo:
            j = todo.pop()
            for s in c.sigmas:
                k = s(j)
                if k not in orbit:
                    orbit.add(k)
                    todo.append(k)
        seen |= orbit
        orbits.append(orbit)
    return orbits


def is_transitive(c: Constellation) -> bool:
    """Transitivity of ``<sigma_1, ..., sigma_q>`` on the sheet set."""
    if not c.sheet_set.periodic:
        # flood fill from sheet 1
        return len(_finite_orbits(c)[0]) == c.sheet_set.size
    return orbit_count(c) == 1


class Vertex(NamedTuple):
    column: int
    line: int

    def __str__(self):
        return f"({self.column},{self.line})"


class EdgeSeg(NamedTuple):
    """Edge of ``line`` from ``from_column`` to the next column (cyclically)."""

    line: int
    from_column: int

    def endpoints(self, q: int) -> tuple[Vertex, Vertex]:
        return Vertex(self.from_column, self.line), Vertex(self.from_column % q + 1, self.line)

    def is_infinity_edge(self, q: int) -> bool:
        return self.from_column == q


class Arc(NamedTuple):
    """Oriented arc ``tail -> head``; vertical arcs have equal columns."""

    tail: Vertex
    head: Vertex

    @classmethod
    def at(cls, column: int, from_line: int, to_line: int) -> "Arc":
        return cls(Vertex(column, from_line), Vertex(column, to_line))

    @property
    def column(self) -> int:
        return self.tail.column

    @property
    def from_line(self) -> int:
        return self.tail.line

    @property
    def to_line(self) -> int:
        return self.head.line

    @property
    def is_loop(self) -> bool:
        return self.tail == self.head

    @property
    def is_vertical(self) -> bool:
        return self.tail.column == self.head.column

    def __str__(self):
        return f"{self.tail}>{self.head}"


@dataclass(frozen=True)
class ProfileGraph:
    """
    A graph of (possibly) profile type.

    Finite profiles are explicit: ``vertices``, ``edges`` and ``arcs`` are
    stored and may be arbitrary, so that validation can inspect broken
    graphs.  ``edges`` and ``arcs`` are tuples because duplicates are legal
    input.  A periodic profile is implicit and is carried by its
    ``constellation``; its item fields are empty.
    """

    q: int
    sheet_set: SheetSet
    vertices: frozenset[Vertex] = frozenset()
    edges: tuple[EdgeSeg, ...] = ()
    arcs: tuple[Arc, ...] = ()
    constellation: Constellation | None = field(default=None, compare=False)

    @classmethod
    def explicit(cls, q: int, n: int, edges: Iterable, arcs: Iterable,
                 vertices: Iterable = ()) -> "ProfileGraph":
        """
        Build an explicit finite graph; vertices are implied by the items.

        Labels outside ``1..q`` / ``1..n`` raise ``ValueError``.
        """
        if q < 1:
            raise ValueError("q must be positive")
        edges = tuple(EdgeSeg(*e) for e in edges)
        arcs = tuple(Arc(Vertex(*a[0]), Vertex(*a[1])) for a in arcs)
        verts = {Vertex(*v) for v in vertices}
        for e in edges:
            verts.update(e.endpoints(q))
        for a in arcs:
            verts.update((a.tail, a.head))
        for v in verts:
            if not (1 <= v.column <= q and 1 <= v.line <= n):
                raise ValueError(f"vertex {v} outside columns 1..{q} / lines 1..{n}")
        for e in edges:
            if not 1 <= e.from_column <= q:
                raise ValueError(f"edge {e} has column outside 1..{q}")
        return cls(q, SheetSet(n), frozenset(verts), edges, arcs)

    @property
    def is_implicit(self) -> bool:
        return self.constellation is not None

    @property
    def lines(self) -> range:
        return self.sheet_set.labels()

    def next_column(self, i: int) -> int:
        return i % self.q + 1

    def without(self, *, vertices=(), edges=(), arcs=()) -> "ProfileGraph":
        """Copy with the given items removed (one occurrence per listed item)."""
        if self.is_implicit:
            raise ValueError("cannot edit an implicit periodic profile")
        drop_v = set(vertices)
        new_edges = list(self.edges)
        for e in edges:
            new_edges.remove(e)
        new_arcs = list(self.arcs)
        for a in arcs:
            new_arcs.remove(a)
        return ProfileGraph(self.q, self.sheet_set, self.vertices - drop_v,
                            tuple(new_edges), tuple(new_arcs))


def from_constellation(c: Constellation) -> ProfileGraph:
    """
    The profile of a constellation.

    Vertices are all pairs (column, sheet), each line gets its ``q`` edges,
    and column ``i`` gets the arcs ``j -> sigma_i(j)``.  A periodic
    constellation yields an implicit profile.
    """
    if c.sheet_set.periodic:
        return ProfileGraph(c.q, c.sheet_set, constellation=c)
    q = c.q
    lines = c.sheet_set.labels()
    vertices = frozenset(Vertex(i, j) for i in range(1, q + 1) for j in lines)
    edges = tuple(EdgeSeg(j, i) for j in lines for i in range(1, q + 1))
    arcs = tuple(Arc.at(i, j, c[i](j)) for i in range(1, q + 1) for j in lines)
    return ProfileGraph(q, c.sheet_set, vertices, edges, arcs)
