import pytest

from rsprofile import (EdgeSeg, euler_from_cells, find_exact_covering, from_constellation, glue,
                       is_transitive, surface_report, to_constellation)
from rsprofile.enumeration import EnumFilter, enumerate_constellations
from rsprofile.surface import CoveringMismatch
from rsprofile.validation import InvalidProfile, require_valid

from conftest import const, identity_constellation, sqrt_constellation, torus_constellation


def glued(c):
    g = from_constellation(c)
    return glue(g, find_exact_covering(g))


# -- profile <-> constellation --

def test_to_constellation_examples(torus, sqrt_profile):
    assert to_constellation(torus) == torus_constellation()
    assert to_constellation(sqrt_profile) == sqrt_constellation()
    ident = to_constellation(from_constellation(identity_constellation(1, 2)))
    assert ident.q == 2 and all(s.is_identity() for s in ident)


def test_to_constellation_rejects_invalid(torus):
    with pytest.raises(InvalidProfile):
        to_constellation(torus.without(arcs=torus.arcs[:1]))


@pytest.mark.parametrize("c,counts", [
    (sqrt_constellation(), (4, 4, 4)),
    (identity_constellation(1, 1), (1, 1, 1)),
    (torus_constellation(), (8, 8, 8)),
])
def test_from_constellation_counts(c, counts):
    g = from_constellation(c)
    assert (len(g.vertices), len(g.edges), len(g.arcs)) == counts


def test_single_vertex_profile():
    g = from_constellation(identity_constellation(1, 1))
    (edge,) = g.edges
    (arc,) = g.arcs
    assert edge.is_infinity_edge(1) and arc.is_loop


@pytest.mark.parametrize("n,q", [(n, q) for n in range(1, 5) for q in range(1, 4)])
def test_round_trips(n, q):
    for c in enumerate_constellations(n, q):
        g = from_constellation(c)
        if is_transitive(c):
            assert to_constellation(g) == c
        # disconnected graphs fail validation but still encode their constellation
        back = require_valid(g, allow_disconnected=True)
        assert back == c and from_constellation(back) == g


# -- glue --

def test_glue_torus():
    rec = glued(torus_constellation())
    assert rec.inner == (1, 2) and rec.outer == (1, 2)
    assert len(rec.gluings) == 8
    assert [b.order for b in rec.branch_points] == [1, 1, 1, 1]
    assert [b.column for b in rec.branch_points] == [1, 2, 3, 4]


def test_glue_sphere():
    rec = glued(identity_constellation(1, 3))
    assert len(rec.inner) == 1 and len(rec.outer) == 1
    assert len(rec.gluings) == 3 and not rec.branch_points


def test_glue_sqrt():
    rec = glued(sqrt_constellation())
    assert len(rec.inner) + len(rec.outer) == 4
    assert len(rec.gluings) == 4
    assert [b.order for b in rec.branch_points] == [1, 1]


def test_glue_edge_owner_is_the_covering_path(torus):
    cov = find_exact_covering(torus)
    owner = cov.path_of()
    for gl in glue(torus, cov).gluings:
        assert owner[EdgeSeg(gl.inner, gl.segment)] == gl.outer


def test_glue_rejects_foreign_covering(torus, sqrt_profile):
    with pytest.raises(CoveringMismatch):
        glue(torus, find_exact_covering(sqrt_profile))


def test_glue_arcsin(arcsin):
    rec = glue(arcsin, find_exact_covering(arcsin))
    assert rec.period == 2
    finite = [b for b in rec.branch_points if not b.logarithmic]
    logs = [b for b in rec.branch_points if b.logarithmic]
    assert [(b.column, b.order, b.label) for b in finite] == [(1, 1, 0), (2, 1, 0)]
    assert len(logs) == 2 and {b.column for b in logs} == {3}
    assert all(b.periodic for b in rec.branch_points)
    with pytest.raises(ValueError):
        euler_from_cells(rec)


# -- surface report --

@pytest.mark.parametrize("c,n,B,chi,g", [
    (torus_constellation(), 2, 4, 0, 1),
    (sqrt_constellation(), 2, 2, 2, 0),
    (identity_constellation(1, 1), 1, 0, 2, 0),
    (identity_constellation(1, 4), 1, 0, 2, 0),
    (const(2, *([[(1, 2)]] * 6)), 2, 6, -2, 2),
    (const(3, [(1, 2)], [(2, 3)], [(1, 2, 3)]), 3, 4, 2, 0),
])
def test_surface_report_examples(c, n, B, chi, g):
    r = surface_report(from_constellation(c))
    assert (r.sheets, r.total_branching, r.euler_characteristic, r.genus) == (n, B, chi, g)
    assert r.connected and r.realizable and r.closed


def test_surface_report_not_realizable(bad3):
    r = surface_report(bad3)
    assert not r.realizable and not r.closed
    assert r.genus is None and r.euler_characteristic is None
    assert [b.orders for b in r.branching] == [(2,), (2,)]


def test_surface_report_disconnected():
    r = surface_report(from_constellation(identity_constellation(2, 2)))
    assert not r.connected and r.genus is None
    assert r.euler_characteristic == 4


def test_surface_report_arcsin(arcsin):
    r = surface_report(arcsin)
    assert r.sheets is None and r.period == 2
    assert not r.closed and r.genus is None and r.euler_characteristic is None
    assert [(b.orders, b.logarithmic) for b in r.branching] == [((1,), 0), ((1,), 0), ((), 2)]


def test_multiplicities():
    r = surface_report(from_constellation(const(5, [(1, 2), (3, 4)], [(1, 2), (3, 4)])))
    assert r.branching[0].multiplicities == {1: 2}


def test_as_dict_key_order(torus):
    assert list(surface_report(torus).as_dict()) == [
        "sheets", "period", "columns", "connected", "realizable", "closed",
        "branching", "total_branching", "euler_characteristic", "genus"]


# -- euler_from_cells --

@pytest.mark.parametrize("c,chi", [
    (torus_constellation(), 0),
    (sqrt_constellation(), 2),
    (identity_constellation(1, 2), 2),
])
def test_euler_from_cells_examples(c, chi):
    assert euler_from_cells(glued(c)) == chi


# -- invariants over the census --

def coverable(n, q):
    f = EnumFilter(require_transitive=True, require_identity_product=True)
    return enumerate_constellations(n, q, f)


@pytest.mark.parametrize("n,q", [(n, q) for n in range(1, 5) for q in range(1, 4)])
def test_chi_agreement_and_parity(n, q):
    for c in coverable(n, q):
        g = from_constellation(c)
        r = surface_report(g)
        rec = glue(g, find_exact_covering(g))
        assert r.euler_characteristic == euler_from_cells(rec)
        assert r.euler_characteristic % 2 == 0
        assert r.genus >= 0 and r.euler_characteristic == 2 - 2 * r.genus


@pytest.mark.parametrize("n,q", [(3, 3), (4, 2), (4, 3)])
def test_gluing_structure(n, q):
    for c in coverable(n, q):
        rec = glued(c)
        assert len(rec.gluings) == n * q
        # each boundary segment of each inner half-sheet is glued once
        assert len({(gl.inner, gl.segment) for gl in rec.gluings}) == n * q
        # and each outer half-sheet receives q segments
        for start in rec.outer:
            assert sorted(gl.segment for gl in rec.gluings if gl.outer == start) == list(range(1, q + 1))
        for b in rec.branch_points:
            assert len(b.inner) == b.order + 1 == len(b.outer)
