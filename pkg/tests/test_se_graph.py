import json
import random
from itertools import product

import pytest

from qminor.algebra import NCPolynomial
from qminor.se_graph import (Edge, SEGraph, all_paths, cauchon, edge_weight, enumerate_paths, from_json,
                             grid, is_cauchon_diagram, is_lower, parse_graph_spec,
                             path_commutation_ratio, path_edges, path_weight, random_cauchon,
                             telescoped_weight, validate, weakly_intersecting)


def test_grid_is_valid():
    for m, n in product(range(1, 4), repeat=2):
        assert validate(grid(m, n)) == []


def test_grid_1x1():
    g = grid(1, 1)
    assert g.inner == ("t11",)
    assert len(g.edges) == 2
    assert enumerate_paths(g, 1, 1) == [("r1", "t11", "c1")]


@pytest.mark.parametrize("m,n,i,j,count", [(1, 1, 1, 1, 1), (2, 2, 2, 2, 2), (3, 3, 3, 3, 6),
                                           (2, 2, 1, 2, 1), (2, 2, 2, 1, 1), (3, 3, 3, 1, 1)])
def test_path_counts(m, n, i, j, count):
    # from r_i the path moves right along row i and down; counts are lattice paths
    assert len(enumerate_paths(grid(m, n), i, j)) == count


def test_reversed_edge_is_rejected():
    g = grid(2, 2)
    edges = list(g.edges)
    k = next(k for k, e in enumerate(edges) if e.kind == "H" and e.tail.startswith("t"))
    e = edges[k]
    edges[k] = Edge(e.head, e.tail, "H")
    bad = validate(SEGraph(2, 2, g.coords, tuple(edges), g.sources, g.sinks))
    assert any("SE2" in b for b in bad)


def test_isolated_inner_vertex_is_rejected():
    g = grid(1, 1)
    coords = dict(g.coords, t99=(5, 5))
    bad = validate(SEGraph(1, 1, coords, g.edges, g.sources, g.sinks))
    assert any("SE4" in b for b in bad)


def test_cauchon_all_white_is_grid():
    a = grid(2, 3)
    b = cauchon(2, 3, {(i, j) for i in (1, 2) for j in (1, 2, 3)})
    assert a.coords == b.coords and set(a.edges) == set(b.edges)


def test_single_white_cell():
    g = cauchon(1, 2, {(1, 1)})
    assert g.inner == ("t11",)
    assert enumerate_paths(g, 1, 1) == [("r1", "t11", "c1")]
    assert enumerate_paths(g, 1, 2) == []


def test_cauchon_condition_matches_valid_graph():
    cells = [(i, j) for i in range(1, 4) for j in range(1, 4)]
    good = 0
    for bits in product([0, 1], repeat=9):
        white = {c for c, b in zip(cells, bits) if b}
        ok = is_cauchon_diagram(3, 3, white)
        try:
            cauchon(3, 3, white)
            built = True
        except ValueError:
            built = False
        assert ok == built, white
        good += ok
    # Cauchon diagrams of a 3x3 rectangle are counted by the poly-Bernoulli number B_3^(-3)
    assert good == 230


def test_random_cauchon_is_valid():
    rng = random.Random(1)
    for _ in range(20):
        g = random_cauchon(3, 4, rng)
        assert validate(g) == []


def test_commutation_table_grid_2x2():
    t = grid(2, 2).table
    assert t.c("t11", "t12") == 1
    assert t.c("t21", "t11") == -1
    assert t.c("t11", "t22") == 0
    assert t.c("t12", "t21") == 0


def test_edge_weights():
    g = grid(2, 2)
    T = g.table
    gen = lambda v, e=1: NCPolynomial.generator(T, v, e)
    assert edge_weight(g, ("r1", "t11")) == gen("t11")
    assert edge_weight(g, ("t21", "t11")) == NCPolynomial.constant(T)
    assert edge_weight(g, ("t21", "t22")) == gen("t21", -1) * gen("t22")


def test_path_weights():
    g = grid(2, 2)
    T = g.table
    gen = lambda v, e=1: NCPolynomial.generator(T, v, e)
    assert path_weight(g, ("r1", "t11", "c1")) == gen("t11")
    assert path_weight(g, ("r2", "t21", "t22", "t12", "c2")) == gen("t22")
    assert path_weight(g, ("r2", "t21", "t11", "t12", "c2")) == gen("t21") * gen("t11", -1) * gen("t12")


@pytest.mark.parametrize("m,n", [(2, 2), (2, 3), (3, 3)])
def test_telescoped_weight_agrees(m, n):
    g = grid(m, n)
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            for P in enumerate_paths(g, i, j):
                assert path_weight(g, P) == telescoped_weight(g, P)


def test_graph_spec_parsing(tmp_path):
    assert parse_graph_spec("grid:2x3").n == 3
    g = parse_graph_spec("cauchon:2,2:11/10")  # top row first
    assert set(g.inner) == {"t11", "t21", "t22"}
    p = tmp_path / "g.json"
    p.write_text(json.dumps(grid(2, 2).to_json()))
    h = parse_graph_spec(str(p))
    assert set(h.edges) == set(grid(2, 2).edges)
    for bad in ("grid:2by3", "cauchon:2,2:111/10", "nope"):
        with pytest.raises(ValueError):
            parse_graph_spec(bad)


def test_from_json_rejects_invalid():
    data = grid(2, 2).to_json()
    data["edges"][0] = [data["edges"][0][1], data["edges"][0][0], "H"]
    with pytest.raises(ValueError):
        from_json(data)


def endpoint_prediction(g, P, Q):
    """Exponent of w(P)w(Q) / w(Q)w(P) from the endpoint abscissas, or None
    when none of the cases applies."""
    a = lambda v: g.coords[v][0]
    b = lambda v: g.coords[v][1]
    sP, tP, sQ, tQ = P[0], P[-1], Q[0], Q[-1]
    if not ({a(sP), a(tP)} & {a(sQ), a(tQ)}) - {0}:
        return 0
    if a(sP) == a(sQ) > 0 and a(tP) != a(tQ):
        return 1 if is_lower(g, P, Q) else -1
    if a(tP) == a(tQ) and (a(sP) != a(sQ) or a(sP) == 0):
        return 1 if is_lower(g, P, Q) else -1
    if a(tP) == a(sQ):
        return 1 if b(tP) >= b(sQ) else -1
    if a(tQ) == a(sP):
        return -1 if b(tQ) >= b(sP) else 1
    return None


def test_commutation_of_weakly_intersecting_paths():
    g = grid(3, 3)
    standard = [P for P in all_paths(g) if any(e.kind == "H" for e in path_edges(g, P))]
    checked = 0
    for P in standard:
        for Q in standard:
            if P >= Q or not weakly_intersecting(P, Q):
                continue
            want = endpoint_prediction(g, P, Q)
            if want is None:
                continue
            assert path_commutation_ratio(g, P, Q) == want, (P, Q)
            checked += 1
    assert checked > 1000


def test_vertical_then_horizontal_touching_paths():
    g = grid(2, 2)
    P = ("t21", "t11")  # a V-path commutes with everything
    Q = ("t11", "t12")
    assert path_commutation_ratio(g, P, Q) == 0
    # P ends where Q starts
    P = ("r2", "t21", "t11")
    assert path_commutation_ratio(g, P, Q) == 1
