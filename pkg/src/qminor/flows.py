"""Path matrices, flows and q-minors of an SE-graph."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations

import numpy as np

from .algebra import CommutationTable, LaurentScalar, NCPolynomial
from .se_graph import GPath, SEGraph, enumerate_paths, weight_vector

MAX_MINOR = 6


@dataclass(frozen=True)
class Flow:
    """Vertex-disjoint paths; the l-th path runs from r_{I[l]} to c_{J[l]}."""

    I: tuple
    J: tuple
    paths: tuple

    @property
    def edges(self) -> frozenset:
        return frozenset((a, b) for P in self.paths for a, b in zip(P, P[1:]))

    @property
    def vertices(self) -> frozenset:
        return frozenset(v for P in self.paths for v in P)


def _check_index_sets(g: SEGraph, I, J):
    I, J = tuple(I), tuple(J)
    if len(I) != len(J):
        raise ValueError(f"|I| = {len(I)} differs from |J| = {len(J)}")
    if list(I) != sorted(set(I)) or list(J) != sorted(set(J)):
        raise ValueError("index sets must be strictly increasing")
    if I and (I[0] < 1 or I[-1] > g.m):
        raise ValueError(f"row index out of range 1..{g.m}")
    if J and (J[0] < 1 or J[-1] > g.n):
        raise ValueError(f"column index out of range 1..{g.n}")
    return I, J


@lru_cache(maxsize=None)
def _paths(g: SEGraph, i: int, j: int) -> tuple:
    return tuple((P, frozenset(P)) for P in enumerate_paths(g, i, j))


@lru_cache(maxsize=None)
def _path_vec(g: SEGraph, P: GPath):
    return weight_vector(g, P)


def enumerate_flows(g: SEGraph, I, J) -> list[Flow]:
    """All flows from R_I to C_J.

    Disjoint paths in a planar SE-graph always join the sources and sinks in
    increasing order, so only that pairing is searched.
    """
    I, J = _check_index_sets(g, I, J)
    out: list[Flow] = []
    chosen: list[GPath] = []

    def rec(level, used):
        if level == len(I):
            out.append(Flow(I, J, tuple(chosen)))
            return
        for P, vs in _paths(g, I[level], J[level]):
            if used.isdisjoint(vs):
                chosen.append(P)
                rec(level + 1, used | vs)
                chosen.pop()

    rec(0, frozenset())
    return out


def flow_vector(g: SEGraph, f: Flow) -> tuple[np.ndarray, int]:
    t = g.table
    acc = np.zeros(len(t), dtype=np.int64)
    qp = 0
    for P in f.paths:
        vec, pq = _path_vec(g, P)
        qp += pq + t.reorder_power(acc, vec)
        acc = acc + vec
    return acc, qp


def flow_weight(g: SEGraph, f: Flow) -> NCPolynomial:
    vec, qp = flow_vector(g, f)
    return NCPolynomial(g.table, vec[None, :], [qp], [1])


@lru_cache(maxsize=4096)
def qminor_flows(g: SEGraph, I, J) -> NCPolynomial:
    """Sum of flow weights over all flows from R_I to C_J."""
    I, J = _check_index_sets(g, I, J)
    flows = enumerate_flows(g, I, J)
    if not flows:
        return NCPolynomial.zero(g.table)
    vecs = [flow_vector(g, f) for f in flows]
    return NCPolynomial(g.table, np.array([v for v, _ in vecs]), [q for _, q in vecs],
                        np.ones(len(vecs), dtype=np.int64))


@lru_cache(maxsize=None)
def path_matrix_entry(g: SEGraph, i: int, j: int) -> NCPolynomial:
    paths = _paths(g, i, j)
    if not paths:
        return NCPolynomial.zero(g.table)
    vecs = [_path_vec(g, P) for P, _ in paths]
    return NCPolynomial(g.table, np.array([v for v, _ in vecs]), [q for _, q in vecs],
                        np.ones(len(vecs), dtype=np.int64))


def path_matrix(g: SEGraph) -> list[list[NCPolynomial]]:
    return [[path_matrix_entry(g, i, j) for j in range(1, g.n + 1)] for i in range(1, g.m + 1)]


def inversions(seq) -> int:
    return sum(1 for a, b in combinations(seq, 2) if a > b)


def qminor_det(entries, I, J, table: CommutationTable) -> NCPolynomial:
    """Quantum minor sum over permutations s of (-q)^inv(s) a[i1,j_s1] ... a[ik,j_sk].

    ``entries[i-1][j-1]`` must be the (i, j) entry of a matrix over ``table``.
    """
    I, J = tuple(I), tuple(J)
    if len(I) != len(J):
        raise ValueError("|I| must equal |J|")
    if len(I) > MAX_MINOR:
        raise ValueError(f"minors larger than {MAX_MINOR} are not supported")
    total = NCPolynomial.zero(table)
    for perm in permutations(range(len(J))):
        term = NCPolynomial.constant(table)
        for d, s in enumerate(perm):
            term = term * entries[I[d] - 1][J[s] - 1]
            if term.is_zero():
                break
        ell = inversions(perm)
        total = total + term.scale(LaurentScalar.q(ell, (-1) ** ell))
    return total


@dataclass
class ManinReport:
    ok: bool
    checked: int
    failure: str | None = None


def manin_relations(x, m: int, n: int):
    """Yield (description, lhs, rhs) for every defining relation of a quantum matrix."""
    for i in range(1, m + 1):
        for j, k in combinations(range(1, n + 1), 2):
            a, b = x[i - 1][j - 1], x[i - 1][k - 1]
            yield f"row: x{i}{j} x{i}{k} = q x{i}{k} x{i}{j}", a * b, (b * a).shift(1)
    for j in range(1, n + 1):
        for i, l in combinations(range(1, m + 1), 2):
            a, b = x[i - 1][j - 1], x[l - 1][j - 1]
            yield f"column: x{i}{j} x{l}{j} = q x{l}{j} x{i}{j}", a * b, (b * a).shift(1)
    for i, l in combinations(range(1, m + 1), 2):
        for j, k in combinations(range(1, n + 1), 2):
            xij, xik = x[i - 1][j - 1], x[i - 1][k - 1]
            xlj, xlk = x[l - 1][j - 1], x[l - 1][k - 1]
            yield f"antidiagonal: x{i}{k} x{l}{j} = x{l}{j} x{i}{k}", xik * xlj, xlj * xik
            yield (f"diagonal: x{i}{j} x{l}{k} - x{l}{k} x{i}{j} = (q - q^-1) x{i}{k} x{l}{j}",
                   xij * xlk - xlk * xij, (xik * xlj).scale(LaurentScalar({1: 1, -1: -1})))


def check_manin(g: SEGraph) -> ManinReport:
    x = path_matrix(g)
    count = 0
    for desc, lhs, rhs in manin_relations(x, g.m, g.n):
        count += 1
        if lhs != rhs:
            return ManinReport(False, count, desc)
    return ManinReport(True, count)
