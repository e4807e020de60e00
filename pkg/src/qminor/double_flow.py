"""Double flows: decomposition into exchange paths, flow exchange, q-ratios.

A double flow is a pair (phi, phi') of flows for the two minors of a
cortege.  The symmetric difference of their edge sets, with every vertex of
degree four split in two, falls apart into paths joining ground elements and
cycles.  Exchanging phi and phi' along a set of those paths yields another
double flow whose weight differs from the original by a power of q.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .cortege import Cortege, Couple, elem_key, index_exchange, make_couple, zeta
from .flows import Flow, flow_vector
from .matchings import CircularMatching, is_feasible
from .se_graph import SEGraph, is_lower_points

__all__ = [
    "DoubleFlow", "ExchangePath", "decompose", "matching_of", "flow_exchange",
    "exchange_ratio", "predicted_exponent", "zeta", "index_exchange", "snake_gamma",
    "closed_cycle", "DegenerateError",
]


class DegenerateError(ValueError):
    """Bends or sinks of an exchange path share an abscissa."""


@dataclass(frozen=True)
class DoubleFlow:
    phi: Flow
    phip: Flow

    @property
    def cortege(self) -> Cortege:
        return Cortege(self.phi.I, self.phi.J, self.phip.I, self.phip.J)


@dataclass(frozen=True)
class ExchangePath:
    """A path component, walked from ``vertices[0]``; ``colors[k]`` is the
    color ('w' for phi, 'b' for phi') of the step vertices[k] -> vertices[k+1],
    and ``forward[k]`` tells whether that step follows the edge direction."""

    couple: Couple
    vertices: tuple
    colors: tuple
    forward: tuple

    @property
    def edges(self) -> frozenset:
        return frozenset((a, b) if f else (b, a)
                         for a, b, f in zip(self.vertices, self.vertices[1:], self.forward))

    def reversed(self) -> "ExchangePath":
        return ExchangePath(self.couple, self.vertices[::-1], self.colors[::-1],
                            tuple(not f for f in self.forward[::-1]))

    def snakes(self) -> list[tuple[str, tuple]]:
        """Maximal one-colored pieces as (color, directed vertex path), in walk order."""
        out = []
        start = 0
        for k in range(1, len(self.colors) + 1):
            if k == len(self.colors) or self.colors[k] != self.colors[start]:
                seg = self.vertices[start:k + 1]
                out.append((self.colors[start], seg if self.forward[start] else seg[::-1]))
                start = k
        return out

    def bends(self) -> list:
        """Vertices where consecutive snakes meet, in walk order."""
        return [self.vertices[k] for k in range(1, len(self.colors))
                if self.colors[k] != self.colors[k - 1]]


def _terminal(g: SEGraph, v):
    if v in g.source_index:
        return ("R", g.source_index[v])
    if v in g.sink_index:
        return ("C", g.sink_index[v])
    return None


def decompose(g: SEGraph, df: DoubleFlow) -> tuple[list[ExchangePath], list[list]]:
    """Exchange paths (ordered by couple) and cycles of the double flow.

    Cycles are returned as lists of (tail, head, color) edges.
    """
    Ew, Eb = df.phi.edges, df.phip.edges
    U = sorted([(a, b, "w") for a, b in Ew - Eb] + [(a, b, "b") for a, b in Eb - Ew])
    deg = Counter()
    for a, b, _ in U:
        deg[a] += 1
        deg[b] += 1

    def node(v, role):
        return (v, role) if deg[v] == 4 else (v, "")

    ends = []
    adj: dict = {}
    for k, (a, b, _) in enumerate(U):
        ends.append((node(a, "out"), node(b, "in")))
        adj.setdefault(ends[k][0], []).append(k)
        adj.setdefault(ends[k][1], []).append(k)
    for x, ks in adj.items():
        if len(ks) > 2:
            raise RuntimeError(f"vertex {x[0]} has degree {len(ks)} after splitting")

    used = [False] * len(U)
    paths = []
    starts = sorted((x for x, ks in adj.items() if len(ks) == 1),
                    key=lambda x: elem_key(_terminal(g, x[0]) or ("Z", 0)))
    for x in starts:
        if used[adj[x][0]]:
            continue
        verts, colors, fwd = [x[0]], [], []
        cur, prev = x, None
        while True:
            nxt = [k for k in adj[cur] if k != prev and not used[k]]
            if not nxt:
                break
            k = nxt[0]
            used[k] = True
            a, b = ends[k]
            forward = a == cur
            cur = b if forward else a
            verts.append(cur[0])
            colors.append(U[k][2])
            fwd.append(forward)
            prev = k
        t0, t1 = _terminal(g, verts[0]), _terminal(g, verts[-1])
        if t0 is None or t1 is None:
            raise RuntimeError("exchange path does not end at sources or sinks")
        paths.append(ExchangePath(make_couple(t0, t1), tuple(verts), tuple(colors), tuple(fwd)))

    cycles = []
    for k0 in range(len(U)):
        if used[k0]:
            continue
        cyc, k, cur = [], k0, ends[k0][1]
        while not used[k]:
            used[k] = True
            cyc.append(U[k])
            nxt = [j for j in adj[cur] if not used[j]]
            if not nxt:
                break
            k = nxt[0]
            a, b = ends[k]
            cur = b if a == cur else a
        cycles.append(cyc)
    paths.sort(key=lambda p: (elem_key(p.couple[0]), elem_key(p.couple[1])))
    return paths, cycles


def matching_of(g: SEGraph, df: DoubleFlow) -> CircularMatching:
    paths, _ = decompose(g, df)
    M = CircularMatching(tuple(p.couple for p in paths))
    if not is_feasible(M, df.cortege):
        raise RuntimeError(f"matching {M.render()} of a double flow is not feasible")
    return M


def _flow_from_edges(g: SEGraph, edges, I, J) -> Flow:
    succ = {}
    for a, b in edges:
        if a in succ:
            raise RuntimeError(f"two edges leave {a}")
        succ[a] = b
    paths, seen = [], 0
    for i in I:
        P = [g.source(i)]
        while P[-1] in succ:
            P.append(succ[P[-1]])
        paths.append(tuple(P))
        seen += len(P) - 1
    sinks = tuple(g.sink_index.get(P[-1]) for P in paths)
    if sinks != tuple(J) or seen != len(edges):
        raise RuntimeError("exchanged edge set is not a flow")
    return Flow(tuple(I), tuple(J), tuple(paths))


def flow_exchange(g: SEGraph, df: DoubleFlow, pi) -> DoubleFlow:
    """Swap phi and phi' along the exchange paths of the couples in pi."""
    paths, _ = decompose(g, df)
    by_couple = {p.couple: p for p in paths}
    E = set()
    for c in pi:
        c = make_couple(*c)
        if c not in by_couple:
            raise ValueError(f"{c} is not a couple of this double flow")
        E |= by_couple[c].edges
    new = index_exchange(df.cortege, [make_couple(*c) for c in pi])
    psi = _flow_from_edges(g, df.phi.edges ^ E, new.I, new.J)
    psip = _flow_from_edges(g, df.phip.edges ^ E, new.Ip, new.Jp)
    return DoubleFlow(psi, psip)


def double_flow_vector(g: SEGraph, df: DoubleFlow):
    a, qa = flow_vector(g, df.phi)
    b, qb = flow_vector(g, df.phip)
    return a + b, qa + qb + g.table.reorder_power(a, b)


def exchange_ratio(g: SEGraph, df: DoubleFlow, pi) -> tuple[int, DoubleFlow]:
    """(d, (psi, psi')) with w(phi) w(phi') = q^d w(psi) w(psi')."""
    new = flow_exchange(g, df, pi)
    v0, q0 = double_flow_vector(g, df)
    v1, q1 = double_flow_vector(g, new)
    if (v0 != v1).any():
        raise RuntimeError("exchange changed the monomial")
    return q0 - q1, new


def predicted_exponent(c: Cortege, pi) -> int:
    w, b = zeta(c, pi)
    return w - b


def _path_points(g: SEGraph, P):
    return [g.coords[v] for v in P]


def _check_nondegenerate(g: SEGraph, df: DoubleFlow, bends):
    c = df.cortege
    xs = [g.coords[v][0] for v in bends] + sorted(set(c.J) | set(c.Jp))
    if len(set(xs)) != len(xs):
        raise DegenerateError("bends and sinks do not have distinct abscissas")


def _gamma(white, black) -> int:
    return 1 if is_lower_points(white, black) else -1


def _find_path(g: SEGraph, df: DoubleFlow, couple) -> ExchangePath:
    couple = make_couple(*couple)
    for p in decompose(g, df)[0]:
        if p.couple == couple:
            return p
    raise ValueError(f"{couple} is not a couple of this double flow")


def snake_gamma(g: SEGraph, df: DoubleFlow, couple) -> int:
    """Sum over the bends of the exchange path of +1 (white snake lower) or -1."""
    Z = _find_path(g, df, couple)
    _check_nondegenerate(g, df, Z.bends())
    snakes = Z.snakes()
    total = 0
    for (c1, s1), (c2, s2) in zip(snakes, snakes[1:]):
        w, b = (s1, s2) if c1 == "w" else (s2, s1)
        total += _gamma(_path_points(g, w), _path_points(g, b))
    return total


def closed_cycle(g: SEGraph, df: DoubleFlow, couple) -> tuple[int, bool]:
    """Close the exchange path of a couple into a colored cycle.

    Handles the three orientations where the smaller end of an R- or C-couple
    is white, or both ends of an RC-couple are white.  Returns the bend sum
    over the cycle and whether the cycle runs clockwise.
    """
    Z = _find_path(g, df, couple)
    c = df.cortege
    f, h = Z.couple
    kind = "RC" if f[0] != h[0] else f[0]
    if c.color(f) != "w" or (kind == "RC" and c.color(h) != "w"):
        raise ValueError("orientation not handled; exchange the couple first")
    _check_nondegenerate(g, df, Z.bends())
    if kind == "R":
        Z = Z.reversed()  # start at the black source r_g
    elif kind == "RC":
        Z = Z.reversed()  # start at the sink
    snakes = [(col, _path_points(g, P)) for col, P in Z.snakes()]
    poly = _path_points(g, Z.vertices)
    if kind == "C":
        col, pts = snakes[0]
        snakes[0] = (col, pts + [g.coords[g.sink(h[1])]])
    elif kind == "R":
        col, pts = snakes[-1]
        snakes[-1] = (col, [g.coords[g.source(h[1])]] + pts)
    else:
        r, s = g.coords[g.source(f[1])], g.coords[g.sink(h[1])]
        snakes.append(("b", [r, (0, 0), s]))
        poly = poly + [(0, 0)]
    total = 0
    for k in range(len(snakes)):
        (c1, s1), (c2, s2) = snakes[k], snakes[(k + 1) % len(snakes)]
        w, b = (s1, s2) if c1 == "w" else (s2, s1)
        total += _gamma(w, b)
    area2 = sum(x0 * y1 - x1 * y0 for (x0, y0), (x1, y1) in zip(poly, poly[1:] + poly[:1]))
    return total, area2 < 0
