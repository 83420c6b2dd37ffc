"""
The surface glued from a covered profile.

Every line contributes one inner half-sheet (bounded by the base curve
split into segments ``L_1..L_q``) and every covering path one outer
half-sheet.  The edge of line ``j`` at column ``i`` glues inner half-sheet
``j`` to the outer half-sheet of the path through that edge, along
``L_i``.  Half-sheets are identified by their line: inner ones by the line
itself, outer ones by the start line (column 1) of their path.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

from .covering import (ExactCovering, column_mu_objects, find_exact_covering,
                       verify_exact_covering)
from .model import (Constellation, EdgeSeg, ProfileGraph, from_constellation,
                    is_transitive, monodromy_product, prefix_products)
from .perm import inverse
from .validation import require_valid

__all__ = [
    "BranchPoint", "Gluing", "GluingRecord", "ColumnBranching", "SurfaceReport",
    "to_constellation", "from_constellation", "glue", "surface_report", "euler_from_cells",
]


class CoveringMismatch(ValueError):
    pass


def to_constellation(profile: ProfileGraph) -> Constellation:
    """Column ``i`` maps each line to the head of its outgoing arc there."""
    return require_valid(profile)


@dataclass(frozen=True)
class Gluing:
    inner: int
    outer: int
    segment: int


@dataclass(frozen=True)
class BranchPoint:
    """
    Point over base point ``column`` where ``order + 1`` sheets meet.

    ``order`` is ``inf`` for a logarithmic point.  ``label`` is the smallest
    participating line (a representative line for periodic families).
    """

    column: int
    order: float
    inner: tuple[int, ...]
    outer: tuple[int, ...]
    label: int
    periodic: bool = False

    @property
    def logarithmic(self) -> bool:
        return math.isinf(self.order)


@dataclass(frozen=True)
class GluingRecord:
    """
    Half-sheets, gluings and branch data of a covered profile.

    ``disks`` lists one entry ``(column, lines)`` per finite contour of a
    column permutation, loops included; these are the small disks around
    the base points on the surface.  For periodic profiles only lines and
    paths of one period window are listed.
    """

    q: int
    inner: tuple[int, ...]
    outer: tuple[int, ...]
    gluings: tuple[Gluing, ...]
    branch_points: tuple[BranchPoint, ...]
    disks: tuple[tuple[int, tuple[int, ...]], ...]
    period: int | None = None


def glue(profile: ProfileGraph, covering: ExactCovering) -> GluingRecord:
    c = require_valid(profile)
    q = c.q
    periodic = c.sheet_set.periodic
    if periodic:
        expected = find_exact_covering(profile)
        if expected is None or covering != expected:
            raise CoveringMismatch("covering does not belong to this profile")
        # path through edge (j, i) starts at P_i^-1(j), P_i = sigma_i o ... o sigma_1
        back = [inverse(P) for P in prefix_products(c)]

        def owner_of_edge(j, i):
            return back[i](j)

        def owner_of_arc(column, from_line):
            return back[column - 1](from_line)
    else:
        check = verify_exact_covering(profile, covering)
        if not check.ok:
            raise CoveringMismatch("; ".join(check.diagnostics()))
        owner = covering.path_of()
        arc_at = {(a.column, a.from_line): a for a in profile.arcs}

        def owner_of_edge(j, i):
            return owner[EdgeSeg(j, i)]

        def owner_of_arc(column, from_line):
            return owner[arc_at[column, from_line]]

    lines = tuple(c.sheet_set.labels())
    gluings = tuple(Gluing(j, owner_of_edge(j, i), i) for j in lines for i in range(1, q + 1))

    branch_points = []
    disks = []
    for i in range(1, q + 1):
        for mu in column_mu_objects(c, i):
            if not mu.infinite:
                disks.append((i, mu.lines))
            if not mu.is_branch_point:
                continue
            outer = tuple(sorted({owner_of_arc(i, j) for j in mu.lines}))
            label = min(j % c.sheet_set.size for j in mu.lines) if periodic else min(mu.lines)
            branch_points.append(BranchPoint(i, mu.order, tuple(sorted(mu.lines)), outer,
                                             label, periodic))
    return GluingRecord(q, lines, tuple(sorted({p.start for p in covering})), gluings,
                        tuple(branch_points), tuple(disks),
                        c.sheet_set.size if periodic else None)


def euler_from_cells(record: GluingRecord) -> int:
    """
    ``V - E + F`` of the cell decomposition given by the gluing.

    Vertices are the profile vertices, edges are profile edges and arcs,
    faces are the half-sheets plus one disk per contour.
    """
    if record.period is not None:
        raise ValueError("cell counts are only finite for finite sheet sets")
    vertices = {(g.segment, g.inner) for g in record.gluings}
    n_arcs = sum(len(lines) for _, lines in record.disks)
    edges = len(record.gluings) + n_arcs
    faces = len(record.inner) + len(record.outer) + len(record.disks)
    return len(vertices) - edges + faces


@dataclass(frozen=True)
class ColumnBranching:
    """Branch points over one base point: finite orders (``>= 1``) and logarithmic count."""

    column: int
    orders: tuple[int, ...]
    logarithmic: int = 0

    @property
    def multiplicities(self) -> dict[int, int]:
        return dict(sorted(Counter(self.orders).items()))


@dataclass(frozen=True)
class SurfaceReport:
    """
    Invariants of the surface of a profile.

    For a periodic profile ``sheets`` is ``None`` and ``period`` is set;
    each entry of ``branching`` then describes one period window, the
    surface is open and no Euler characteristic or genus is given.
    ``realizable`` is false when there is no exact covering; the report
    then stops at the branch data.
    """

    q: int
    sheets: int | None
    period: int | None
    connected: bool
    realizable: bool
    closed: bool
    branching: tuple[ColumnBranching, ...]
    total_branching: int | None
    euler_characteristic: int | None
    genus: int | None

    def as_dict(self) -> dict:
        return {
            "sheets": self.sheets,
            "period": self.period,
            "columns": self.q,
            "connected": self.connected,
            "realizable": self.realizable,
            "closed": self.closed,
            "branching": [
                {"column": b.column, "orders": list(b.orders), "logarithmic": b.logarithmic}
                for b in self.branching
            ],
            "total_branching": self.total_branching,
            "euler_characteristic": self.euler_characteristic,
            "genus": self.genus,
        }


def surface_report(profile: ProfileGraph) -> SurfaceReport:
    c = require_valid(profile, allow_disconnected=True)
    periodic = c.sheet_set.periodic
    branching = []
    for i in range(1, c.q + 1):
        mus = column_mu_objects(c, i)
        orders = tuple(sorted(int(m.order) for m in mus if m.is_branch_point and not m.infinite))
        branching.append(ColumnBranching(i, orders, sum(1 for m in mus if m.infinite)))
    connected = is_transitive(c)
    realizable = monodromy_product(c).is_identity()

    if periodic:
        return SurfaceReport(c.q, None, c.sheet_set.size, connected, realizable, False,
                             tuple(branching), None, None, None)
    n = c.sheet_set.size
    total = sum(sum(b.orders) for b in branching)
    if not realizable:
        return SurfaceReport(c.q, n, None, connected, False, False, tuple(branching),
                             total, None, None)
    # Riemann-Hurwitz for an n-sheeted cover of the sphere
    chi = 2 * n - total
    genus = (2 - chi) // 2 if connected else None
    return SurfaceReport(c.q, n, None, connected, True, True, tuple(branching), total, chi, genus)
