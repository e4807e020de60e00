"""Planar SE-graphs: grids, Cauchon graphs, validation and path weights.

Vertices carry integer plane coordinates (x, y).  Horizontal edges point
right, vertical edges point down.  Sources r_1..r_m sit on the line x = 0,
sinks c_1..c_n on the line y = 0.  Every inner vertex is a generator of the
quasi-commuting algebra attached to the graph.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import NamedTuple

import numpy as np

from .algebra import CommutationTable, NCPolynomial

GPath = tuple  # vertex ids along a directed path


class Edge(NamedTuple):
    tail: str
    head: str
    kind: str  # "H" or "V"


def inner_label(i: int, j: int) -> str:
    return f"t{i}{j}" if i < 10 and j < 10 else f"t{i}_{j}"


@dataclass(frozen=True, eq=False)
class SEGraph:
    m: int
    n: int
    coords: dict = field(repr=False)
    edges: tuple = field(repr=False)
    sources: tuple = ()
    sinks: tuple = ()

    @cached_property
    def out_edges(self) -> dict[str, list[Edge]]:
        out = {v: [] for v in self.coords}
        for e in self.edges:
            out[e.tail].append(e)
        for v in out:
            out[v].sort(key=lambda e: e.head)
        return out

    @cached_property
    def in_edges(self) -> dict[str, list[Edge]]:
        inn = {v: [] for v in self.coords}
        for e in self.edges:
            inn[e.head].append(e)
        return inn

    @cached_property
    def inner(self) -> tuple[str, ...]:
        """Inner vertices in generator order: by row (y) then column (x)."""
        rc = set(self.sources) | set(self.sinks)
        return tuple(sorted((v for v in self.coords if v not in rc),
                            key=lambda v: (self.coords[v][1], self.coords[v][0], v)))

    @cached_property
    def source_index(self) -> dict[str, int]:
        return {v: i + 1 for i, v in enumerate(self.sources)}

    @cached_property
    def sink_index(self) -> dict[str, int]:
        return {v: j + 1 for j, v in enumerate(self.sinks)}

    @cached_property
    def table(self) -> CommutationTable:
        return commutation_table(self)

    @cached_property
    def edge_vectors(self) -> dict[tuple[str, str], np.ndarray]:
        return {(e.tail, e.head): _edge_vector(self, e) for e in self.edges}

    def source(self, i: int) -> str:
        return self.sources[i - 1]

    def sink(self, j: int) -> str:
        return self.sinks[j - 1]

    def to_json(self) -> dict:
        return {
            "m": self.m, "n": self.n,
            "vertices": [[v, x, y] for v, (x, y) in self.coords.items()],
            "edges": [list(e) for e in self.edges],
            "sources": list(self.sources), "sinks": list(self.sinks),
        }


def _reach(adj: dict[str, list[str]], start: str) -> set[str]:
    seen, stack = set(), [start]
    while stack:
        v = stack.pop()
        for w in adj.get(v, ()):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def _kind_adjacency(g: SEGraph, kind: str) -> dict[str, list[str]]:
    adj: dict[str, list[str]] = {}
    for e in g.edges:
        if e.kind == kind:
            adj.setdefault(e.tail, []).append(e.head)
    return adj


def _segments_meet(p, q):
    """Intersection of two axis-parallel segments: None, a point, or 'overlap'."""
    (ax, ay), (bx, by) = p
    (cx, cy), (dx, dy) = q
    x0, x1 = max(min(ax, bx), min(cx, dx)), min(max(ax, bx), max(cx, dx))
    y0, y1 = max(min(ay, by), min(cy, dy)), min(max(ay, by), max(cy, dy))
    if x0 > x1 or y0 > y1:
        return None
    if (x0, y0) != (x1, y1):
        return "overlap"
    return (x0, y0)


def validate(g: SEGraph) -> list[str]:
    """All violated conditions, as readable strings; empty when g is valid."""
    bad: list[str] = []
    C = g.coords
    srcs, snks = set(g.sources), set(g.sinks)
    if len(g.sources) != g.m or len(g.sinks) != g.n:
        bad.append(f"SE3: expected {g.m} sources and {g.n} sinks")
    seen_edges = set()
    for e in g.edges:
        if e.tail not in C or e.head not in C:
            bad.append(f"edge {e.tail}->{e.head} references an unknown vertex")
            continue
        if (e.tail, e.head) in seen_edges:
            bad.append(f"duplicate edge {e.tail}->{e.head}")
        seen_edges.add((e.tail, e.head))
        (tx, ty), (hx, hy) = C[e.tail], C[e.head]
        if e.kind == "H":
            if not (ty == hy and hx > tx):
                bad.append(f"SE2: H-edge {e.tail}->{e.head} does not point right")
        elif e.kind == "V":
            if not (tx == hx and hy < ty):
                bad.append(f"SE2: V-edge {e.tail}->{e.head} does not point down")
        else:
            bad.append(f"edge {e.tail}->{e.head} has unknown kind {e.kind!r}")
    if bad:
        return bad

    # sources and sinks
    prev = 0
    for v in g.sources:
        x, y = C[v]
        if x != 0 or y <= prev:
            bad.append(f"SE3: source {v} at {(x, y)} is off the line x=0 or out of order")
        prev = y
        if g.in_edges[v] or any(e.kind != "H" for e in g.out_edges[v]):
            bad.append(f"SE3: source {v} touches a non-H edge or has an entering edge")
    prev = 0
    for v in g.sinks:
        x, y = C[v]
        if y != 0 or x <= prev:
            bad.append(f"SE3: sink {v} at {(x, y)} is off the line y=0 or out of order")
        prev = x
        if g.out_edges[v] or any(e.kind != "V" for e in g.in_edges[v]):
            bad.append(f"SE3: sink {v} touches a non-V edge or has a leaving edge")
    for v in g.inner:
        x, y = C[v]
        if x <= 0 or y <= 0:
            bad.append(f"SE3: inner vertex {v} at {(x, y)} is not in the open quadrant")

    # planarity of the drawing
    pos: dict[tuple, str] = {}
    for v, p in C.items():
        if p in pos:
            bad.append(f"SE1: vertices {pos[p]} and {v} share the point {p}")
        pos[p] = v
    segs = [(e, (C[e.tail], C[e.head])) for e in g.edges]
    for a in range(len(segs)):
        ea, sa = segs[a]
        for b in range(a + 1, len(segs)):
            eb, sb = segs[b]
            hit = _segments_meet(sa, sb)
            if hit is None:
                continue
            if hit == "overlap" or hit not in sa or hit not in sb:
                bad.append(f"SE1: edges {ea.tail}->{ea.head} and {eb.tail}->{eb.head} cross")
    for v, p in C.items():
        for e, s in segs:
            if p not in s and _segments_meet(s, (p, p)) is not None:
                bad.append(f"SE1: vertex {v} lies inside edge {e.tail}->{e.head}")

    # every inner vertex lies on a source-to-sink path
    adj = {v: [e.head for e in es] for v, es in g.out_edges.items()}
    radj = {v: [e.tail for e in es] for v, es in g.in_edges.items()}
    from_r = set().union(*(_reach(adj, s) for s in g.sources)) if g.sources else set()
    to_c = set().union(*(_reach(radj, t) for t in g.sinks)) if g.sinks else set()
    for v in g.inner:
        if v not in from_r or v not in to_c:
            bad.append(f"SE4: vertex {v} is not on any source-to-sink path")

    # equal abscissa (ordinate) only along a vertical (horizontal) path
    hadj, vadj = _kind_adjacency(g, "H"), _kind_adjacency(g, "V")
    hreach = {v: _reach(hadj, v) for v in C}
    vreach = {v: _reach(vadj, v) for v in C}
    names = list(C)
    for a in range(len(names)):
        u = names[a]
        for b in range(a + 1, len(names)):
            v = names[b]
            if (u in srcs and v in srcs) or (u in snks and v in snks):
                continue
            if C[u][0] == C[v][0] and v not in vreach[u] and u not in vreach[v]:
                bad.append(f"coordinates: {u} and {v} share x without a vertical path")
            if C[u][1] == C[v][1] and v not in hreach[u] and u not in hreach[v]:
                bad.append(f"coordinates: {u} and {v} share y without a horizontal path")
    return bad


def _build(m, n, coords, edges) -> SEGraph:
    sources = tuple(f"r{i}" for i in range(1, m + 1))
    sinks = tuple(f"c{j}" for j in range(1, n + 1))
    return SEGraph(m, n, coords, tuple(edges), sources, sinks)


def grid(m: int, n: int) -> SEGraph:
    """The m x n grid: t_ij at (j, i), sources on the left, sinks below."""
    if m < 1 or n < 1:
        raise ValueError("grid dimensions must be positive")
    return cauchon(m, n, {(i, j) for i in range(1, m + 1) for j in range(1, n + 1)})


def cauchon(m: int, n: int, white) -> SEGraph:
    """Graph on the white cells of an m x n diagram.

    Each white cell is joined to the next white cell to its right and to the
    next white cell below it (or to the sink of its column).  Raises
    ValueError listing the violations when the result is not an SE-graph.
    """
    white = {(int(i), int(j)) for i, j in white}
    for i, j in white:
        if not (1 <= i <= m and 1 <= j <= n):
            raise ValueError(f"cell {(i, j)} outside the {m}x{n} diagram")
    coords = {f"r{i}": (0, i) for i in range(1, m + 1)}
    coords.update({f"c{j}": (j, 0) for j in range(1, n + 1)})
    edges = []
    for i in range(1, m + 1):
        row = sorted(j for (a, j) in white if a == i)
        prev = f"r{i}"
        for j in row:
            coords[inner_label(i, j)] = (j, i)
            edges.append(Edge(prev, inner_label(i, j), "H"))
            prev = inner_label(i, j)
    for j in range(1, n + 1):
        col = sorted((a for (a, b) in white if b == j), reverse=True)
        for a, b in zip(col, col[1:] + [None]):
            edges.append(Edge(inner_label(a, j), f"c{j}" if b is None else inner_label(b, j), "V"))
    g = _build(m, n, coords, edges)
    bad = validate(g)
    if bad:
        raise ValueError("not an SE-graph: " + "; ".join(bad))
    return g


def is_cauchon_diagram(m: int, n: int, white) -> bool:
    """A black cell has only black cells to its right or only black cells above."""
    white = set(white)
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            if (i, j) in white:
                continue
            right = all((i, b) not in white for b in range(j + 1, n + 1))
            above = all((a, j) not in white for a in range(i + 1, m + 1))
            if not (right or above):
                return False
    return True


def random_cauchon(m: int, n: int, rng) -> SEGraph:
    """A uniformly chosen Cauchon diagram, by rejection sampling."""
    cells = [(i, j) for i in range(1, m + 1) for j in range(1, n + 1)]
    while True:
        white = {c for c in cells if rng.random() < 0.75}
        if is_cauchon_diagram(m, n, white):
            return cauchon(m, n, white)


def from_json(data: dict) -> SEGraph:
    """Graph from {m, n, vertices, edges[, sources, sinks]}; validated."""
    try:
        m, n = int(data["m"]), int(data["n"])
        coords = {}
        for v in data["vertices"]:
            vid, x, y = (v["id"], v["x"], v["y"]) if isinstance(v, dict) else v
            coords[str(vid)] = (int(x), int(y))
        edges = tuple(Edge(str(e[0]), str(e[1]), str(e[2])) for e in data["edges"])
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise ValueError(f"malformed graph description: {exc}") from exc
    sources = tuple(data.get("sources") or (f"r{i}" for i in range(1, m + 1)))
    sinks = tuple(data.get("sinks") or (f"c{j}" for j in range(1, n + 1)))
    g = SEGraph(m, n, coords, edges, sources, sinks)
    bad = validate(g)
    if bad:
        raise ValueError("not an SE-graph: " + "; ".join(bad))
    return g


def parse_graph_spec(spec: str) -> SEGraph:
    """``grid:MxN``, ``cauchon:M,N:<rows>`` (top row first, '1' = white,
    rows separated by '/') or a path to a JSON file."""
    if spec.startswith("grid:"):
        try:
            m, n = (int(t) for t in spec[5:].lower().split("x"))
        except ValueError as exc:
            raise ValueError(f"bad grid spec {spec!r}") from exc
        return grid(m, n)
    if spec.startswith("cauchon:"):
        try:
            dims, rows = spec[8:].split(":", 1)
            m, n = (int(t) for t in dims.split(","))
        except ValueError as exc:
            raise ValueError(f"bad cauchon spec {spec!r}") from exc
        rows = rows.replace(",", "/").split("/")
        if len(rows) != m or any(len(r) != n or set(r) - {"0", "1"} for r in rows):
            raise ValueError(f"cauchon spec needs {m} rows of {n} characters 0/1")
        white = {(m - k, j + 1) for k, r in enumerate(rows) for j, ch in enumerate(r) if ch == "1"}
        return cauchon(m, n, white)
    p = Path(spec)
    if not p.exists():
        raise ValueError(f"unknown graph spec {spec!r}")
    try:
        data = json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise ValueError(f"{spec}: invalid JSON ({exc})") from exc
    return from_json(data)


def commutation_table(g: SEGraph) -> CommutationTable:
    """c(u, v) = +1 along a horizontal path u -> v, -1 along a vertical one."""
    pairs = {}
    hadj, vadj = _kind_adjacency(g, "H"), _kind_adjacency(g, "V")
    inner = set(g.inner)
    for u in g.inner:
        for v in _reach(hadj, u) & inner:
            pairs[(u, v)] = 1
        for v in _reach(vadj, u) & inner:
            pairs[(u, v)] = -1
    return CommutationTable(g.inner, pairs)


def _edge_vector(g: SEGraph, e: Edge) -> np.ndarray:
    t = g.table
    vec = np.zeros(len(t), dtype=np.int64)
    if e.kind == "V":
        return vec
    if e.tail in g.source_index:
        vec[t.index[e.head]] += 1
    else:
        vec[t.index[e.tail]] -= 1
        vec[t.index[e.head]] += 1
    return vec


def edge_weight(g: SEGraph, e) -> NCPolynomial:
    e = e if isinstance(e, Edge) else _find_edge(g, *e)
    return NCPolynomial.monomial(g.table, g.table.monomial(g.edge_vectors[(e.tail, e.head)]))


def _find_edge(g: SEGraph, tail: str, head: str) -> Edge:
    for e in g.out_edges.get(tail, ()):
        if e.head == head:
            return e
    raise ValueError(f"no edge {tail}->{head}")


def path_edges(g: SEGraph, P: GPath) -> list[Edge]:
    return [_find_edge(g, a, b) for a, b in zip(P, P[1:])]


def weight_vector(g: SEGraph, P: GPath) -> tuple[np.ndarray, int]:
    """Exponent vector and q-power of the ordered product of edge weights."""
    t = g.table
    acc = np.zeros(len(t), dtype=np.int64)
    qp = 0
    for a, b in zip(P, P[1:]):
        try:
            e = g.edge_vectors[(a, b)]
        except KeyError:
            raise ValueError(f"no edge {a}->{b}") from None
        qp += t.reorder_power(acc, e)
        acc = acc + e
    return acc, qp


def path_weight(g: SEGraph, P: GPath) -> NCPolynomial:
    vec, qp = weight_vector(g, P)
    return NCPolynomial(g.table, vec[None, :], [qp], [1])


def turn_vertices(g: SEGraph, P: GPath) -> list[tuple[str, str]]:
    """Turning vertices along P: ('HV', u) for right-then-down, ('VH', v) otherwise."""
    kinds = [e.kind for e in path_edges(g, P)]
    return [("HV" if a == "H" else "VH", P[k + 1])
            for k, (a, b) in enumerate(zip(kinds, kinds[1:])) if a != b]


def telescoped_weight(g: SEGraph, P: GPath) -> NCPolynomial:
    """u1 v1^-1 u2 ... ud built from the turning vertices of a source-to-sink path."""
    out = NCPolynomial.constant(g.table)
    for kind, v in turn_vertices(g, P):
        out = out * NCPolynomial.generator(g.table, v, 1 if kind == "HV" else -1)
    return out


def enumerate_paths(g: SEGraph, i: int, j: int) -> list[GPath]:
    """All directed paths from r_i to c_j, in lexicographic order of edges."""
    return paths_between(g, g.source(i), g.sink(j))


def paths_between(g: SEGraph, s: str, t: str) -> list[GPath]:
    out: list[GPath] = []

    def walk(path):
        v = path[-1]
        if v == t:
            out.append(tuple(path))
            return
        for e in g.out_edges[v]:
            path.append(e.head)
            walk(path)
            path.pop()

    walk([s])
    return out


def all_paths(g: SEGraph) -> list[GPath]:
    """Every directed path with at least one edge."""
    out: list[GPath] = []

    def walk(path):
        if len(path) > 1:
            out.append(tuple(path))
        for e in g.out_edges[path[-1]]:
            path.append(e.head)
            walk(path)
            path.pop()

    for v in g.coords:
        walk([v])
    return out


def weakly_intersecting(P: GPath, Q: GPath) -> bool:
    """P and Q meet only in common end vertices."""
    ends = {P[0], P[-1]} & {Q[0], Q[-1]}
    return set(P) & set(Q) <= ends


def path_commutation_ratio(g: SEGraph, P: GPath, Q: GPath) -> int:
    """d with w(P) w(Q) = q^d w(Q) w(P) for weakly intersecting paths."""
    from .algebra import poly_qpower_ratio

    if not weakly_intersecting(P, Q):
        raise ValueError("paths are not weakly intersecting")
    a, b = path_weight(g, P), path_weight(g, Q)
    d = poly_qpower_ratio(a * b, b * a)
    assert d is not None
    return d


def _range_at(pts, x):
    """(lowest, highest) ordinate of a polyline above abscissa x, or None."""
    ys = []
    for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
        if min(x0, x1) <= x <= max(x0, x1):
            ys += [y0, y1] if x0 == x1 else [y0]
    if len(pts) == 1 and pts[0][0] == x:
        ys.append(pts[0][1])
    return (min(ys), max(ys)) if ys else None


def is_lower_points(P, Q) -> bool:
    """Some point of polyline P lies strictly below a point of Q on a common vertical line.

    Polylines are monotone staircases given by their corner points.
    """
    xs = sorted({p[0] for p in P} | {p[0] for p in Q})
    probes = xs + [(a + b) / 2 for a, b in zip(xs, xs[1:])]
    for x in probes:
        rp, rq = _range_at(P, x), _range_at(Q, x)
        if rp and rq and rp[0] < rq[1]:
            return True
    return False


def is_lower(g: SEGraph, P: GPath, Q: GPath) -> bool:
    return is_lower_points([g.coords[v] for v in P], [g.coords[v] for v in Q])
